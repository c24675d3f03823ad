#include "doctest.h"

#include <random>

#include "cotri/error.hpp"
#include "cotri/linalg.hpp"

using namespace cotri;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::uint32_t p) {
  ExactMatrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<long long>(rng() % p));
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const PrimeField f{7};
  CHECK(f.inv(3) == 5);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.neg(0) == 0);
  CHECK(f.pow(3, 6) == 1);
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("negative entries reduce mod p") {
  const auto m = ExactMatrix::from_rows(5, {{-1, 7}, {10, -6}});
  CHECK(m.at(0, 0) == 4);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 4);
}

TEST_CASE("rank, kernel and inverse") {
  const auto m = ExactMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(m.apply(ker[0]) == Vec(3, 0));
  CHECK_FALSE(inverse(m).has_value());
  const auto a = ExactMatrix::from_rows(3, {{1, 2}, {0, 1}});
  const auto inv = inverse(a);
  REQUIRE(inv);
  CHECK((a * *inv).is_identity());
}

TEST_CASE("nilpotence and powers") {
  const auto n = ExactMatrix::from_rows(2, {{0, 1}, {0, 0}});
  CHECK(is_nilpotent(n));
  CHECK(matrix_power(n, 2).is_zero());
  CHECK_FALSE(is_nilpotent(ExactMatrix::identity(2, 2)));
}

TEST_CASE("mismatched fields and shapes are rejected") {
  CHECK_THROWS_AS(ExactMatrix::identity(2, 2) * ExactMatrix::identity(2, 3), MismatchError);
  CHECK_THROWS_AS(ExactMatrix::identity(2, 2) * ExactMatrix::identity(3, 2), Error);
}

TEST_CASE("property: rank-nullity and solve on random matrices") {
  std::mt19937_64 rng(17);
  for (const std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      const auto m = random_matrix(rng, r, c, p);
      CHECK(rank(m) + kernel_basis(m).size() == c);
      CHECK(rank(m) == rank(m.transpose()));
      const auto x = random_matrix(rng, c, 1, p).column(0);
      const auto b = m.apply(x);
      const auto sol = solve(m, b);
      REQUIRE(sol);
      CHECK(m.apply(*sol) == b);
      const auto cb = column_basis(m);
      CHECK(cb.cols() == rank(m));
      CHECK(rank(cb) == rank(m));
    }
  }
}

TEST_CASE("property: multiplication is associative and distributes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_matrix(rng, 3, 4, 3), b = random_matrix(rng, 4, 2, 3), c = random_matrix(rng, 2, 3, 3);
    const auto b2 = random_matrix(rng, 4, 2, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + b2) == a * b + a * b2);
  }
}
