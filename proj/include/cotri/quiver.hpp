#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cotri {

struct Arrow {
  std::string label;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// A path stored in traversal order: arrows[0] is traversed first.
/// A trivial path has no arrows and source == target.
///
/// Composition convention: for an arrow a and a path p with t(p) = s(a), the path
/// "a p" is p followed by a, i.e. `p.arrows` with `a` appended.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

/// Finite quiver Q = (Q0, Q1, s, t).
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  /// 1 -> 2
  static Quiver a2();
  /// 1 -> 2 -> 3
  static Quiver a3();
  /// 1 -> 2 <- 3
  static Quiver zigzag3();
  static Quiver discrete(std::size_t n);
  /// One vertex with one loop labelled `label`.
  static Quiver loop(const std::string& label = "x");
  /// Built-in names: A2, A3, zigzag3, discrete2.
  static std::optional<Quiver> builtin(const std::string& name);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::optional<std::size_t> vertex_index(const std::string& name) const;
  std::optional<std::size_t> arrow_index(const std::string& label) const;

  std::vector<std::size_t> arrows_into(std::size_t v) const;
  std::vector<std::size_t> arrows_out_of(std::size_t v) const;

  bool is_acyclic() const { return acyclic_; }
  bool is_discrete() const { return arrows_.empty(); }
  /// No infinite path of the shape ... -> . -> . (peeling of sources exhausts Q0).
  bool is_left_rooted() const { return left_rooted_; }
  /// No infinite path of the shape . -> . -> ... (peeling of sinks exhausts Q0).
  bool is_right_rooted() const { return right_rooted_; }

  std::string path_label(const Path& p) const;

  std::string name;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  bool acyclic_ = true;
  bool left_rooted_ = true;
  bool right_rooted_ = true;
};

/// Q(i, j): every path from i to j, including the trivial path when i == j.
/// Throws PreconditionError on a quiver with oriented cycles.
std::vector<Path> path_set(const Quiver& q, std::size_t i, std::size_t j);

/// All paths of an acyclic quiver, trivial paths first, then by length.
std::vector<Path> all_paths(const Quiver& q);

/// Paths of length at most `max_length`; works on cyclic quivers.
std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_length);

/// The composite "second after first", or nullopt when t(first) != s(second).
std::optional<Path> concatenate(const Path& first, const Path& second);

}  // namespace cotri
