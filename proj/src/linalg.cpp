#include "cotri/linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "cotri/error.hpp"

namespace cotri {

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % p;
  Residue base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  // extended Euclid on signed 64-bit values
  long long t = 0, new_t = 1;
  long long r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error("PrimeField::inv: element is not invertible");
  return reduce(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (p < 2) throw Error("ExactMatrix: characteristic must be a prime");
}

ExactMatrix ExactMatrix::identity(std::size_t n, std::uint32_t p) {
  ExactMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.front().size();
  ExactMatrix m(nr, nc, p);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].size() != nc) throw Error("ExactMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(std::uint32_t p, std::size_t rows, std::span<const Vec> columns) {
  ExactMatrix m(rows, columns.size(), p);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("ExactMatrix::from_columns: column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.data_[r * m.cols_ + c] = columns[c][r] % p;
  }
  return m;
}

void ExactMatrix::set(std::size_t r, std::size_t c, long long value) {
  data_[r * cols_ + c] = field().reduce(value);
}

Vec ExactMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("ExactMatrix::block: out of range");
  ExactMatrix b(nr, nc, p_);
  for (std::size_t r = 0; r < nr; ++r)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                b.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  return b;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
  require_same_field(*this, b, "set_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error("ExactMatrix::set_block: out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(r * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
}

ExactMatrix ExactMatrix::select_columns(std::span<const std::size_t> cols) const {
  ExactMatrix m(rows_, cols.size(), p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m.data_[r * cols.size() + j] = at(r, cols[j]);
  return m;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1U : 0U)) return false;
  return true;
}

Vec ExactMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw Error("ExactMatrix::apply: dimension mismatch");
  Vec y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += std::uint64_t{at(r, c)} * x[c];
      if (acc >= (std::uint64_t{1} << 62)) acc %= p_;
    }
    y[r] = static_cast<Residue>(acc % p_);
  }
  return y;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  require_same_field(*this, o, "operator+");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("ExactMatrix::operator+: shape mismatch");
  const PrimeField f = field();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = f.add(data_[i], o.data_[i]);
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  require_same_field(*this, o, "operator-");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("ExactMatrix::operator-: shape mismatch");
  const PrimeField f = field();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = f.sub(data_[i], o.data_[i]);
  return *this;
}

void ExactMatrix::add_scaled(Residue c, const ExactMatrix& o) {
  require_same_field(*this, o, "add_scaled");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("ExactMatrix::add_scaled: shape mismatch");
  if (c == 0) return;
  const PrimeField f = field();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = f.add(data_[i], f.mul(c, o.data_[i]));
}

ExactMatrix ExactMatrix::scaled(Residue c) const {
  ExactMatrix m = *this;
  const PrimeField f = field();
  for (auto& v : m.data_) v = f.mul(v, c);
  return m;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << at(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void require_same_field(const ExactMatrix& a, const ExactMatrix& b, const char* where) {
  if (a.field_char() != b.field_char()) {
    std::ostringstream os;
    os << where << ": characteristic mismatch (" << a.field_char() << " vs " << b.field_char() << ')';
    throw MismatchError(os.str());
  }
}

ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_field(a, b, "operator*");
  if (a.cols() != b.rows()) throw Error("ExactMatrix::operator*: shape mismatch");
  const std::uint32_t p = a.field_char();
  ExactMatrix out(a.rows(), b.cols(), p);
  std::vector<std::uint64_t> acc(b.cols());
  // number of products that can be accumulated on top of a reduced value without overflow
  const std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
  const std::uint64_t flush_every = sq == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} - p) / sq;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t pending = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue x = a.at(r, k);
      if (x == 0) continue;
      auto brow = b.row(k);
      for (std::size_t c = 0; c < b.cols(); ++c) acc[c] += std::uint64_t{x} * brow[c];
      if (++pending == flush_every) {
        for (auto& v : acc) v %= p;
        pending = 0;
      }
    }
    auto orow = out.row(r);
    for (std::size_t c = 0; c < b.cols(); ++c) orow[c] = static_cast<Residue>(acc[c] % p);
  }
  return out;
}

ExactMatrix hstack(std::span<const ExactMatrix> blocks, std::size_t rows, std::uint32_t p) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error("hstack: row mismatch");
    cols += b.cols();
  }
  ExactMatrix m(rows, cols, p);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c0, b);
    c0 += b.cols();
  }
  return m;
}

ExactMatrix vstack(std::span<const ExactMatrix> blocks, std::size_t cols, std::uint32_t p) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error("vstack: column mismatch");
    rows += b.rows();
  }
  ExactMatrix m(rows, cols, p);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, 0, b);
    r0 += b.rows();
  }
  return m;
}

ExactMatrix block_diagonal(std::span<const ExactMatrix> blocks, std::uint32_t p) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ExactMatrix m(rows, cols, p);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

namespace {

// Gauss-Jordan over F_2 on bit-packed rows.
RowEchelon rref_gf2(const ExactMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  const std::size_t words = (nc + 63) / 64;
  std::vector<std::uint64_t> bits(nr * words, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < nc; ++c)
      if (row[c]) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
  }
  RowEchelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < nc && pivot_row < nr; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t sel = nr;
    for (std::size_t r = pivot_row; r < nr; ++r) {
      if (bits[r * words + w] & mask) {
        sel = r;
        break;
      }
    }
    if (sel == nr) continue;
    if (sel != pivot_row)
      std::swap_ranges(bits.begin() + static_cast<std::ptrdiff_t>(sel * words),
                       bits.begin() + static_cast<std::ptrdiff_t>((sel + 1) * words),
                       bits.begin() + static_cast<std::ptrdiff_t>(pivot_row * words));
    const std::uint64_t* prow = bits.data() + pivot_row * words;
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == pivot_row) continue;
      std::uint64_t* row = bits.data() + r * words;
      if (row[w] & mask)
        for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = out.pivot_cols.size();
  out.reduced = ExactMatrix(nr, nc, 2);
  for (std::size_t r = 0; r < out.rank; ++r)
    for (std::size_t c = 0; c < nc; ++c)
      if (bits[r * words + c / 64] & (std::uint64_t{1} << (c % 64))) out.reduced.set(r, c, 1);
  return out;
}

RowEchelon rref_generic(const ExactMatrix& m) {
  const PrimeField f = m.field();
  ExactMatrix a = m;
  const std::size_t nr = a.rows(), nc = a.cols();
  RowEchelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < nc && pivot_row < nr; ++c) {
    std::size_t sel = nr;
    for (std::size_t r = pivot_row; r < nr; ++r) {
      if (a.at(r, c) != 0) {
        sel = r;
        break;
      }
    }
    if (sel == nr) continue;
    if (sel != pivot_row) {
      auto x = a.row(sel);
      auto y = a.row(pivot_row);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    auto prow = a.row(pivot_row);
    const Residue inv = f.inv(prow[c]);
    for (std::size_t k = c; k < nc; ++k) prow[k] = f.mul(prow[k], inv);
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == pivot_row) continue;
      auto row = a.row(r);
      const Residue factor = row[c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < nc; ++k) row[k] = f.sub(row[k], f.mul(factor, prow[k]));
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = out.pivot_cols.size();
  out.reduced = std::move(a);
  return out;
}

}  // namespace

RowEchelon rref(const ExactMatrix& m) {
  return m.field_char() == 2 ? rref_gf2(m) : rref_generic(m);
}

std::size_t rank(const ExactMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // row rank of the shorter orientation is cheaper
  return m.rows() < m.cols() ? rref(m.transpose()).rank : rref(m).rank;
}

std::vector<Vec> kernel_basis(const ExactMatrix& m) {
  const RowEchelon e = rref(m);
  const PrimeField f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.rank; ++i) v[e.pivot_cols[i]] = f.neg(e.reduced.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const ExactMatrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error("solve: right-hand side has wrong length");
  ExactMatrix aug(m.rows(), m.cols() + 1, m.field_char());
  aug.set_block(0, 0, m);
  for (std::size_t r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
  const RowEchelon e = rref(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < e.rank; ++i) x[e.pivot_cols[i]] = e.reduced.at(i, m.cols());
  return x;
}

std::optional<ExactMatrix> solve_matrix(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_field(a, b, "solve_matrix");
  if (a.rows() != b.rows()) throw Error("solve_matrix: row mismatch");
  ExactMatrix aug(a.rows(), a.cols() + b.cols(), a.field_char());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  const RowEchelon e = rref(aug);
  for (auto c : e.pivot_cols)
    if (c >= a.cols()) return std::nullopt;
  ExactMatrix x(a.cols(), b.cols(), a.field_char());
  for (std::size_t i = 0; i < e.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(e.pivot_cols[i], j, e.reduced.at(i, a.cols() + j));
  return x;
}

ExactMatrix column_basis(const ExactMatrix& m) {
  const RowEchelon e = rref(m);
  return m.select_columns(e.pivot_cols);
}

ExactMatrix complement_basis(const ExactMatrix& sub) {
  const std::size_t n = sub.rows();
  ExactMatrix aug(n, sub.cols() + n, sub.field_char());
  aug.set_block(0, 0, sub);
  aug.set_block(0, sub.cols(), ExactMatrix::identity(n, sub.field_char()));
  const RowEchelon e = rref(aug);
  std::vector<std::size_t> extra;
  for (auto c : e.pivot_cols)
    if (c >= sub.cols()) extra.push_back(c);
  return aug.select_columns(extra);
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve_matrix(m, ExactMatrix::identity(m.rows(), m.field_char()));
  if (!x) return std::nullopt;
  // a solution of m X = I for square m is automatically two-sided
  return x;
}

ExactMatrix matrix_power(const ExactMatrix& m, std::size_t e) {
  ExactMatrix result = ExactMatrix::identity(m.rows(), m.field_char());
  ExactMatrix base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

bool is_nilpotent(const ExactMatrix& m) {
  if (m.rows() == 0) return true;
  return matrix_power(m, m.rows()).is_zero();
}

}  // namespace cotri
