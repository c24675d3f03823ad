#pragma once

// Brute-force oracles that use only matrix arithmetic and the structure
// constants of the algebra, independent of the library's Hom/Ext machinery.

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/linalg.hpp"

namespace oracle {

using cotri::ExactMatrix;
using cotri::Module;
using cotri::Residue;

// Calls f on every rows x cols matrix over F_p.
inline void for_each_matrix(std::size_t rows, std::size_t cols, std::uint32_t p,
                            const std::function<void(const ExactMatrix&)>& f) {
  const std::size_t n = rows * cols;
  if (n > 24) throw std::runtime_error("for_each_matrix: too many entries");
  std::vector<Residue> digits(n, 0);
  ExactMatrix m(rows, cols, p);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) m.set(i / cols, i % cols, digits[i]);
    f(m);
    std::size_t i = 0;
    while (i < n && ++digits[i] == p) digits[i++] = 0;
    if (i == n) return;
  }
}

inline std::size_t log_p(std::uint64_t count, std::uint32_t p) {
  std::size_t e = 0;
  while (count > 1) {
    if (count % p) throw std::runtime_error("log_p: not a power of p");
    count /= p;
    ++e;
  }
  return e;
}

inline bool intertwines(const Module& m, const Module& n, const ExactMatrix& f) {
  for (std::size_t a = 0; a < m.algebra().dim(); ++a)
    if (!(f * m.action(a) == n.action(a) * f)) return false;
  return true;
}

/// dim Hom(M, N) by counting every intertwining linear map.
inline std::size_t hom_dim(const Module& m, const Module& n) {
  std::uint64_t count = 0;
  for_each_matrix(n.dim(), m.dim(), m.field_char(), [&](const ExactMatrix& f) { count += intertwines(m, n, f); });
  return log_p(count, m.field_char());
}

/// An invertible intertwining map exists.
inline bool isomorphic(const Module& m, const Module& n) {
  if (m.dim() != n.dim()) return false;
  bool found = false;
  for_each_matrix(n.dim(), m.dim(), m.field_char(), [&](const ExactMatrix& f) {
    if (!found && intertwines(m, n, f) && cotri::rank(f) == m.dim()) found = true;
  });
  return found;
}

/// dim Ext^1(M, N) by Yoneda enumeration. Every extension 0 -> N -> E -> M -> 0
/// splits over the field, so E acts by [[N_a, D_a], [0, M_a]]; the tuples D that
/// make E a module are the cocycles, and two give equivalent extensions exactly
/// when they differ by a coboundary D_a = N_a f - f M_a.
inline std::size_t yoneda_ext1_dim(const Module& m, const Module& n) {
  const cotri::Algebra& a = m.algebra();
  const std::size_t d = a.dim(), dm = m.dim(), dn = n.dim();
  const std::uint32_t p = a.field_char();
  if (dm == 0 || dn == 0) return 0;
  const std::size_t per = dn * dm, total = per * d;
  if (total > 24) throw std::runtime_error("yoneda_ext1_dim: search space too large");

  auto key = [](const std::vector<ExactMatrix>& ds) {
    std::vector<Residue> k;
    for (const auto& x : ds) k.insert(k.end(), x.entries().begin(), x.entries().end());
    return k;
  };
  auto is_cocycle = [&](const std::vector<ExactMatrix>& ds) {
    ExactMatrix u(dn, dm, p);
    for (std::size_t k = 0; k < d; ++k)
      if (a.unit()[k]) u.add_scaled(a.unit()[k], ds[k]);
    if (!u.is_zero()) return false;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        // top-right block of E_i E_j
        ExactMatrix lhs = n.action(i) * ds[j] + ds[i] * m.action(j);
        ExactMatrix rhs(dn, dm, p);
        for (std::size_t k = 0; k < d; ++k)
          if (const auto c = a.constant(i, j, k)) rhs.add_scaled(c, ds[k]);
        if (!(lhs == rhs)) return false;
      }
    return true;
  };

  std::uint64_t cocycles = 0;
  std::vector<Residue> digits(total, 0);
  std::vector<ExactMatrix> ds(d, ExactMatrix(dn, dm, p));
  while (true) {
    for (std::size_t i = 0; i < total; ++i) ds[i / per].set((i % per) / dm, i % dm, digits[i]);
    cocycles += is_cocycle(ds);
    std::size_t i = 0;
    while (i < total && ++digits[i] == p) digits[i++] = 0;
    if (i == total) break;
  }
  std::set<std::vector<Residue>> boundaries;
  for_each_matrix(dn, dm, p, [&](const ExactMatrix& f) {
    std::vector<ExactMatrix> b;
    for (std::size_t k = 0; k < d; ++k) b.push_back(n.action(k) * f - f * m.action(k));
    boundaries.insert(key(b));
  });
  return log_p(cocycles, p) - log_p(boundaries.size(), p);
}

}  // namespace oracle
