#include "cotri/quiver.hpp"

#include <algorithm>

#include "cotri/error.hpp"

namespace cotri {

namespace {

// Repeatedly removes vertices all of whose incoming (or outgoing) arrows come
// from already removed vertices; true when every vertex is eventually removed.
bool peel(const std::vector<std::string>& vertices, const std::vector<Arrow>& arrows, bool from_sources) {
  std::vector<bool> removed(vertices.size(), false);
  std::size_t count = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (removed[v]) continue;
      bool free = true;
      for (const auto& a : arrows) {
        const std::size_t here = from_sources ? a.target : a.source;
        const std::size_t there = from_sources ? a.source : a.target;
        if (here == v && !removed[there]) {
          free = false;
          break;
        }
      }
      if (free) {
        removed[v] = true;
        ++count;
        progress = true;
      }
    }
  }
  return count == vertices.size();
}

}  // namespace

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (const auto& a : arrows_) {
    if (a.source >= vertices_.size() || a.target >= vertices_.size())
      throw Error("Quiver: arrow '" + a.label + "' has an endpoint outside the vertex set");
  }
  left_rooted_ = peel(vertices_, arrows_, true);
  right_rooted_ = peel(vertices_, arrows_, false);
  // for a finite quiver either peeling succeeds exactly when there is no oriented cycle
  acyclic_ = left_rooted_;
}

Quiver Quiver::a2() {
  Quiver q({"1", "2"}, {{"a", 0, 1}});
  q.name = "A2";
  return q;
}

Quiver Quiver::a3() {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
  q.name = "A3";
  return q;
}

Quiver Quiver::zigzag3() {
  Quiver q({"1", "2", "3"}, {{"a", 0, 1}, {"b", 2, 1}});
  q.name = "zigzag3";
  return q;
}

Quiver Quiver::discrete(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i + 1));
  Quiver q(std::move(v), {});
  q.name = "discrete" + std::to_string(n);
  return q;
}

Quiver Quiver::loop(const std::string& label) {
  Quiver q({"1"}, {{label, 0, 0}});
  q.name = "loop";
  return q;
}

std::optional<Quiver> Quiver::builtin(const std::string& name) {
  if (name == "A2") return a2();
  if (name == "A3") return a3();
  if (name == "zigzag3") return zigzag3();
  if (name == "discrete2") return discrete(2);
  return std::nullopt;
}

std::optional<std::size_t> Quiver::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Quiver::arrow_index(const std::string& label) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].label == label) return i;
  return std::nullopt;
}

std::vector<std::size_t> Quiver::arrows_into(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].target == v) out.push_back(i);
  return out;
}

std::vector<std::size_t> Quiver::arrows_out_of(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].source == v) out.push_back(i);
  return out;
}

std::string Quiver::path_label(const Path& p) const {
  if (p.arrows.empty()) return "e" + vertices_[p.source];
  // written in composition order: last arrow leftmost
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += arrows_[*it].label;
  }
  return out;
}

std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_length) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path{v, v, {}});
  out = frontier;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (auto a : q.arrows_out_of(p.target)) {
        Path np = p;
        np.arrows.push_back(a);
        np.target = q.arrows()[a].target;
        next.push_back(std::move(np));
      }
    }
    if (next.empty()) break;
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Path> all_paths(const Quiver& q) {
  if (!q.is_acyclic()) throw PreconditionError("all_paths: quiver has oriented cycles");
  return paths_up_to(q, q.vertex_count());
}

std::vector<Path> path_set(const Quiver& q, std::size_t i, std::size_t j) {
  if (!q.is_acyclic()) throw PreconditionError("path_set: quiver has oriented cycles");
  if (i >= q.vertex_count() || j >= q.vertex_count()) throw Error("path_set: vertex out of range");
  std::vector<Path> out;
  for (auto& p : all_paths(q))
    if (p.source == i && p.target == j) out.push_back(std::move(p));
  return out;
}

std::optional<Path> concatenate(const Path& first, const Path& second) {
  if (first.target != second.source) return std::nullopt;
  Path p{first.source, second.target, first.arrows};
  p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
  return p;
}

}  // namespace cotri
