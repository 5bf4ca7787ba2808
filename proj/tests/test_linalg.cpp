#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "tpa/linalg.hpp"

using namespace tpa;

namespace {

FpMatrix from_rows(std::uint32_t p, std::vector<Vec> rows) {
  FpMatrix M(p, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) M.at(i, j) = rows[i][j];
  return M;
}

FpMatrix random_matrix(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
  FpMatrix M(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = static_cast<Scalar>(rng() % p);
  return M;
}

FpMatrix companion(std::uint32_t p, const Vec& monic_coeffs /* lowest first, top 1 */) {
  PrimeField F(p);
  std::size_t n = monic_coeffs.size() - 1;
  FpMatrix M(p, n, n);
  for (std::size_t i = 1; i < n; ++i) M.at(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) M.at(i, n - 1) = F.neg(monic_coeffs[i]);
  return M;
}

}  // namespace

TEST_CASE("matrix basics") {
  FpMatrix I = FpMatrix::identity(5, 3);
  CHECK(I * I == I);
  CHECK(I.pow(7) == I);
  FpMatrix J = from_rows(5, {{0, 1}, {0, 0}});
  CHECK(J.pow(2).is_zero());
  Vec v{2, 3};
  CHECK(from_rows(5, {{1, 2}, {3, 4}}).apply(v) == Vec{3, 3});  // (2+6, 6+12) mod 5
}

TEST_CASE("nullspace: stated cases") {
  CHECK(nullspace(FpMatrix::identity(5, 2)).dim() == 0);
  Subspace S = nullspace(from_rows(5, {{1, 2}, {2, 4}}));
  CHECK(S.dim() == 1);
  // Spanned by a multiple of (3, 1): canonical RREF basis is (1, 2).
  CHECK(S.contains(Vec{3, 1}));
  CHECK(nullspace(FpMatrix(5, 3, 3)).dim() == 3);
}

TEST_CASE("nullspace vectors solve the system; rank-nullity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    FpMatrix M = random_matrix(5, 4 + trial % 3, rng);
    Subspace K = nullspace(M);
    for (const Vec& v : K.basis) {
      Vec img = M.apply(v);
      CHECK(std::all_of(img.begin(), img.end(), [](Scalar x) { return x == 0; }));
    }
    // rank from the row span
    RrefBasis rows(5, M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
      Vec r(M.cols());
      for (std::size_t j = 0; j < M.cols(); ++j) r[j] = M.at(i, j);
      rows.insert(r);
    }
    CHECK(rows.rank() + K.dim() == M.cols());
  }
}

TEST_CASE("canonical bases: insertion order does not matter") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> vs;
    for (int i = 0; i < 6; ++i) {
      Vec v(5);
      for (auto& x : v) x = static_cast<Scalar>(rng() % 7);
      vs.push_back(v);
    }
    Subspace a = span_of(7, 5, vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    Subspace b = span_of(7, 5, vs);
    CHECK(a == b);
  }
}

TEST_CASE("solve: stated cases") {
  FpMatrix I = FpMatrix::identity(5, 3);
  CHECK(*solve(I, Vec{1, 2, 3}) == Vec{1, 2, 3});
  CHECK_FALSE(solve(from_rows(5, {{1, 2}, {2, 4}}), Vec{1, 0}).has_value());
  CHECK(*solve(from_rows(5, {{2}}), Vec{1}) == Vec{3});
  CHECK_THROWS_AS(solve(I, Vec{1, 2}), std::invalid_argument);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    FpMatrix M = random_matrix(7, 5, rng);
    Vec b(5);
    for (auto& x : b) x = static_cast<Scalar>(rng() % 7);
    auto x = solve(M, b);
    if (x) CHECK(M.apply(*x) == b);
  }
}

TEST_CASE("char_poly: stated cases") {
  CHECK(char_poly(FpMatrix::identity(5, 2)).coeffs == Vec{1, 3, 1});
  CHECK(char_poly(from_rows(5, {{0, 1}, {0, 0}})).coeffs == Vec{0, 0, 1});
  FpMatrix D = from_rows(5, {{1, 0}, {0, 2}});
  CHECK(char_poly(D).coeffs == Vec{2, 2, 1});  // (t-1)(t-2) = t^2 - 3t + 2
}

TEST_CASE("char_poly of a companion matrix recovers the polynomial") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Vec coeffs(5);
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) coeffs[i] = static_cast<Scalar>(rng() % 7);
    coeffs.back() = 1;
    CHECK(char_poly(companion(7, coeffs)).coeffs == coeffs);
  }
}

TEST_CASE("Cayley-Hamilton on randomized matrices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 2 + trial % 7;  // up to dim 8
    FpMatrix M = random_matrix(5, n, rng);
    CHECK(char_poly(M).eval_matrix(M).is_zero());
  }
}

TEST_CASE("min_poly annihilates and divides behavior") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    FpMatrix M = random_matrix(5, 4, rng);
    FpPolynomial mp = min_poly(M);
    CHECK(mp.eval_matrix(M).is_zero());
    CHECK(mp.degree() <= 4);
    CHECK(mp.coeffs.back() == 1);
  }
  // Diagonal with distinct entries: min poly = char poly.
  FpMatrix D(5, 3, 3);
  D.at(0, 0) = 1;
  D.at(1, 1) = 2;
  D.at(2, 2) = 3;
  CHECK(min_poly(D) == char_poly(D));
  // Identity: min poly = t - 1.
  CHECK(min_poly(FpMatrix::identity(5, 4)).coeffs == Vec{4, 1});
}

TEST_CASE("eigenvalues_in_Fp: stated cases") {
  EigenResult e = eigenvalues_in_Fp(FpMatrix::identity(5, 2));
  REQUIRE(e.roots.size() == 1);
  CHECK(e.roots[0] == std::pair<Scalar, std::size_t>{1, 2});
  CHECK(e.splits);

  // companion of t^2 + 1 over F_5: roots 2, 3
  e = eigenvalues_in_Fp(companion(5, Vec{1, 0, 1}));
  REQUIRE(e.roots.size() == 2);
  CHECK(e.roots[0].first == 2);
  CHECK(e.roots[1].first == 3);
  CHECK(e.splits);

  // companion of t^2 + t + 1 over F_5: irreducible
  e = eigenvalues_in_Fp(companion(5, Vec{1, 1, 1}));
  CHECK(e.roots.empty());
  CHECK_FALSE(e.splits);
}

TEST_CASE("generalized eigenspaces: stated cases") {
  FpMatrix J = from_rows(5, {{1, 1}, {0, 1}});
  CHECK(generalized_eigenspace(J, 1).dim() == 2);
  CHECK(generalized_eigenspace(J, 0).dim() == 0);
  FpMatrix D = from_rows(5, {{1, 0}, {0, 2}});
  Subspace S = generalized_eigenspace(D, 2);
  REQUIRE(S.dim() == 1);
  CHECK(S.basis[0] == Vec{0, 1});
}

TEST_CASE("generalized eigenspaces are independent and exhaust iff splitting") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + trial % 5;  // up to dim 6
    FpMatrix M = random_matrix(5, n, rng);
    EigenResult e = eigenvalues_in_Fp(M);
    std::size_t total = 0;
    std::vector<Subspace> spaces;
    for (const auto& [lambda, mult] : e.roots) {
      Subspace S = generalized_eigenspace(M, lambda);
      CHECK(S.dim() == mult);  // algebraic multiplicity
      total += S.dim();
      spaces.push_back(std::move(S));
    }
    for (std::size_t a = 0; a < spaces.size(); ++a)
      for (std::size_t b = a + 1; b < spaces.size(); ++b)
        CHECK(intersect(spaces[a], spaces[b]).dim() == 0);
    CHECK((total == n) == e.splits);
  }
}

TEST_CASE("root multiplicity") {
  // (t-1)^2 (t-2) over F_5 = expand: t^3 - 4t^2 + 5t - 2 == t^3 + t^2 + 0t + 3
  FpPolynomial f{5, Vec{3, 0, 1, 1}};
  CHECK(f.root_multiplicity(1) == 2);
  CHECK(f.root_multiplicity(2) == 1);
  CHECK(f.root_multiplicity(3) == 0);
}

TEST_CASE("nullspace_of_rows matches nullspace") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    FpMatrix M = random_matrix(7, 6, rng);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < 6; ++i) {
      Vec r(6);
      for (std::size_t j = 0; j < 6; ++j) r[j] = M.at(i, j);
      rows.push_back(r);
    }
    CHECK(nullspace_of_rows(7, 6, rows) == nullspace(M));
  }
}

TEST_CASE("subspace coordinates round-trip") {
  std::mt19937_64 rng(43);
  Subspace S = span_of(5, 6, {{1, 2, 3, 0, 0, 1}, {0, 0, 1, 1, 4, 0}, {2, 4, 0, 0, 3, 2}});
  PrimeField F(5);
  for (int trial = 0; trial < 10; ++trial) {
    Vec v(6, 0);
    for (const Vec& b : S.basis) {
      Scalar c = static_cast<Scalar>(rng() % 5);
      for (std::size_t i = 0; i < 6; ++i) v[i] = F.add(v[i], F.mul(c, b[i]));
    }
    auto coords = S.coordinates(v);
    REQUIRE(coords.has_value());
    Vec rebuilt(6, 0);
    for (std::size_t r = 0; r < S.dim(); ++r)
      for (std::size_t i = 0; i < 6; ++i)
        rebuilt[i] = F.add(rebuilt[i], F.mul((*coords)[r], S.basis[r][i]));
    CHECK(rebuilt == v);
  }
  Vec probe{0, 1, 0, 0, 0, 0};
  CHECK(S.coordinates(probe).has_value() == S.contains(probe));
}
