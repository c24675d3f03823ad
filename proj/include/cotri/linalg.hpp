#pragma once

// Dense exact linear algebra over prime fields F_p.
//
// Every matrix carries its characteristic; binary operations on matrices of
// different characteristic throw MismatchError. Entries are always reduced
// into [0, p).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cotri {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

/// Arithmetic in F_p for a prime p < 2^31.
struct PrimeField {
  std::uint32_t p;

  Residue reduce(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<Residue>(r < 0 ? r + p : r);
  }
  Residue add(Residue a, Residue b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p ? s - p : s);
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + (p - b); }
  Residue neg(Residue a) const { return a == 0 ? 0 : p - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((std::uint64_t{a} * b) % p);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Multiplicative inverse; a must be nonzero.
  Residue inv(Residue a) const;
};

/// True when n is prime (trial division; n < 2^32).
bool is_prime(std::uint64_t n);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static ExactMatrix identity(std::size_t n, std::uint32_t p);
  /// Entries are reduced mod p, so negative literals are accepted.
  static ExactMatrix from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows);
  static ExactMatrix from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t field_char() const { return p_; }
  PrimeField field() const { return PrimeField{p_}; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long value);
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;
  const std::vector<Residue>& entries() const { return data_; }

  ExactMatrix transpose() const;
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b);
  /// Columns listed in `cols`, in that order.
  ExactMatrix select_columns(std::span<const std::size_t> cols) const;

  bool is_zero() const;
  bool is_identity() const;
  Vec apply(const Vec& x) const;

  bool operator==(const ExactMatrix& o) const = default;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  /// this += c * o
  void add_scaled(Residue c, const ExactMatrix& o);
  ExactMatrix scaled(Residue c) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<Residue> data_;
};

ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b);
ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b);
ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);

/// Throws MismatchError when the characteristics differ.
void require_same_field(const ExactMatrix& a, const ExactMatrix& b, const char* where);

ExactMatrix hstack(std::span<const ExactMatrix> blocks, std::size_t rows, std::uint32_t p);
ExactMatrix vstack(std::span<const ExactMatrix> blocks, std::size_t cols, std::uint32_t p);
ExactMatrix block_diagonal(std::span<const ExactMatrix> blocks, std::uint32_t p);

struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Unique reduced row-echelon form.
RowEchelon rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

/// Basis of the right null space {x : m x = 0}; cols - rank vectors.
std::vector<Vec> kernel_basis(const ExactMatrix& m);

/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const ExactMatrix& m, const Vec& b);

/// Some X with a X = b, or nullopt.
std::optional<ExactMatrix> solve_matrix(const ExactMatrix& a, const ExactMatrix& b);

/// A matrix whose columns form a basis of the column space of m (the pivot columns of m).
ExactMatrix column_basis(const ExactMatrix& m);

/// Standard basis vectors e_j (as columns) completing the columns of `sub` to a basis of F_p^n.
ExactMatrix complement_basis(const ExactMatrix& sub);

std::optional<ExactMatrix> inverse(const ExactMatrix& m);
bool is_nilpotent(const ExactMatrix& m);
ExactMatrix matrix_power(const ExactMatrix& m, std::size_t e);

}  // namespace cotri
