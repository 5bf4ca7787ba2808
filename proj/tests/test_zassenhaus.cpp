#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "tpa/zassenhaus.hpp"

using namespace tpa;
using boost::multiprecision::cpp_int;

namespace {

cpp_int big_binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return 0;
  cpp_int r = 1;
  for (std::int64_t j = 1; j <= k; ++j) {
    r *= n - j + 1;
    r /= j;
  }
  return r;
}

Scalar big_mod(const cpp_int& v, std::uint32_t p) {
  cpp_int m = v % p;
  if (m < 0) m += p;
  return static_cast<Scalar>(static_cast<std::uint64_t>(m));
}

Vec random_q(const ZassenhausPair& Z, std::mt19937_64& rng) {
  Vec q(Z.N, 0);
  for (auto& c : q) c = static_cast<Scalar>(rng() % Z.p);
  return q;
}

}  // namespace

TEST_CASE("structure constants: stated values") {
  ZassenhausPair Z3 = build_zassenhaus(3, 1);
  CHECK(Z3.N == 3);
  PrimeField F3(3);
  // [e_0, e_{-1}] = -e_{-1}
  Vec v = Z3.bracket_mul(Z3.basis_vec(0), Z3.basis_vec(-1));
  CHECK(v == Vec{F3.neg(1), 0, 0});
  // [e_{-1}, e_j] = e_{j-1}
  CHECK(Z3.bracket_mul(Z3.basis_vec(-1), Z3.basis_vec(0)) == Z3.basis_vec(-1));
  CHECK(Z3.bracket_mul(Z3.basis_vec(-1), Z3.basis_vec(1)) == Z3.basis_vec(0));
  // e_0 . e_0 = C(2,1) e_1 = 2 e_1
  CHECK(Z3.bullet_mul(Z3.basis_vec(0), Z3.basis_vec(0)) == Vec{0, 0, 2});
  // e_{-1} is the bullet unit
  for (std::int64_t i = -1; i <= 1; ++i)
    CHECK(Z3.bullet_mul(Z3.unit(), Z3.basis_vec(i)) == Z3.basis_vec(i));

  ZassenhausPair Z5 = build_zassenhaus(5, 1);
  for (std::int64_t j = 0; j <= 3; ++j)
    CHECK(Z5.bracket_mul(Z5.basis_vec(-1), Z5.basis_vec(j)) == Z5.basis_vec(j - 1));
}

TEST_CASE("structure constants agree with the big-integer binomial oracle") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {5, 2}}) {
    ZassenhausPair Z = build_zassenhaus(p, n);
    std::int64_t top = static_cast<std::int64_t>(Z.N) - 2;
    for (std::int64_t i = -1; i <= top; ++i)
      for (std::int64_t j = -1; j <= top; ++j) {
        Vec br = Z.bracket_mul(Z.basis_vec(i), Z.basis_vec(j));
        Vec bu = Z.bullet_mul(Z.basis_vec(i), Z.basis_vec(j));
        for (std::int64_t k = -1; k <= top; ++k) {
          Scalar want_br = 0, want_bu = 0;
          if (k == i + j && i + j >= -1)
            want_br = big_mod(big_binom(i + j + 1, j) - big_binom(i + j + 1, i), p);
          if (k == i + j + 1 && i + j + 1 <= top)
            want_bu = big_mod(big_binom(i + j + 2, j + 1), p);
          CHECK(br[Z.pos(k)] == want_br);
          CHECK(bu[Z.pos(k)] == want_bu);
        }
      }
  }
}

TEST_CASE("divided powers: products, derivation, inverses") {
  ZassenhausPair Z = build_zassenhaus(5, 2);
  const DividedPowerAlgebra& O = Z.O;
  // x^{(i)} x^{(j)} = C(i+j, j) x^{(i+j)}
  for (std::size_t i = 0; i < O.N; ++i)
    for (std::size_t j = 0; j < O.N; ++j) {
      Vec prod = O.mul(O.basis_vec(i), O.basis_vec(j));
      Vec want(O.N, 0);
      if (i + j < O.N) want[i + j] = big_mod(big_binom(i + j, j), 5);
      CHECK(prod == want);
    }
  CHECK(O.derive(O.basis_vec(3)) == O.basis_vec(2));
  CHECK(O.derive(O.one()) == Vec(O.N, 0));
  Vec f = O.one();
  f[1] = 2;
  auto g = O.inverse(f);
  REQUIRE(g.has_value());
  CHECK(O.mul(f, *g) == O.one());
  CHECK_FALSE(O.inverse(O.basis_vec(1)).has_value());
}

TEST_CASE("size budget") {
  CHECK_THROWS_AS(build_zassenhaus(5, 3, 100), ResourceError);
  CHECK_NOTHROW(build_zassenhaus(5, 3, 125));
}

TEST_CASE("mutations: stated cases") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  TwoProductAlgebra A = mutate(Z, Z.unit());
  CHECK(A.circ == Z.bullet);
  CHECK(A.bracket == Z.bracket);
  CHECK(A.tp_verified);

  TwoProductAlgebra B = mutate(Z, Vec(5, 0));
  CHECK(B.circ == StructureTensor(5, 5));

  TwoProductAlgebra C = mutate(Z, Z.basis_vec(3));
  CHECK(C.circ.product(Z.unit(), Z.unit()) == Z.basis_vec(3));
}

TEST_CASE("all mutations are transposed Poisson") {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {5u, 7u}) {
    ZassenhausPair Z = build_zassenhaus(p, 1);
    for (std::size_t i = 0; i < Z.N; ++i) CHECK(mutate(Z, Z.basis_vec(Z.idx(i))).tp_verified);
    for (int t = 0; t < 3; ++t) CHECK(mutate(Z, random_q(Z, rng)).tp_verified);
  }
  ZassenhausPair Z25 = build_zassenhaus(5, 2);
  for (int t = 0; t < 2; ++t) CHECK(mutate(Z25, random_q(Z25, rng)).tp_verified);
}

TEST_CASE("recover_mutation_parameter") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    Vec q = random_q(Z, rng);
    auto rec = recover_mutation_parameter(Z, mutate(Z, q).circ);
    REQUIRE(rec.has_value());
    CHECK(*rec == q);
  }
  StructureTensor broken = mutate(Z, Z.unit()).circ;
  broken.set(2, 3, 0, (broken.at(2, 3, 0) + 1) % 5);
  broken.finalize();
  CHECK_FALSE(recover_mutation_parameter(Z, broken).has_value());
}

TEST_CASE("bullet inverses") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  auto inv = bullet_inverse(Z, Z.unit());
  REQUIRE(inv.has_value());
  CHECK(*inv == Z.unit());

  Vec q(5, 0);
  q[Z.pos(-1)] = 1;
  q[Z.pos(0)] = 1;  // e_{-1} + e_0
  auto inv2 = bullet_inverse(Z, q);
  REQUIRE(inv2.has_value());
  CHECK(*inv2 == Vec{1, 4, 2, 4, 4});
  CHECK(Z.bullet_mul(q, *inv2) == Z.unit());

  CHECK_FALSE(bullet_inverse(Z, Z.basis_vec(0)).has_value());
}

TEST_CASE("nu and E_set") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  CHECK(nu(Z.basis_vec(3)) == 3);
  Vec q(5, 0);
  q[Z.pos(-1)] = 2;
  q[Z.pos(2)] = 1;
  CHECK(nu(q) == -1);
  CHECK_THROWS_AS(nu(Vec(5, 0)), std::invalid_argument);

  CHECK(E_set(5, 1, 0) == std::vector<std::size_t>{4});
  CHECK(E_set(5, 1, 1) == std::vector<std::size_t>{3});
  CHECK(E_set(5, 1, 2) == std::vector<std::size_t>{2});
  CHECK(E_set(5, 1, 4) == std::vector<std::size_t>{});
  CHECK(E_set(5, 2, 0) == std::vector<std::size_t>{4, 24});
  CHECK(E_set(5, 2, 2) == std::vector<std::size_t>{2, 3, 4, 7, 8, 12, 13, 17, 18, 22});
  CHECK_THROWS_AS(E_set(5, 1, 5), std::invalid_argument);

  // Oracle: definition applied directly with big-integer binomials.
  for (std::size_t m = 0; m <= 24; ++m) {
    std::vector<std::size_t> want;
    for (std::size_t s = 1; m + s <= 24; ++s) {
      bool pj = (s == 4) || (s == 24);
      bool binz = big_mod(big_binom(static_cast<std::int64_t>(m + s + 1),
                                    static_cast<std::int64_t>(m)), 5) == 0;
      if (pj || binz) want.push_back(s);
    }
    CHECK(E_set(5, 2, m) == want);
  }
}

TEST_CASE("admissible automorphisms: stated actions") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  AutomorphismAction id = admissible_automorphism(Z, identity_params(5, 1));
  CHECK(id.phi == FpMatrix::identity(5, 5));
  CHECK(id.psi == FpMatrix::identity(5, 5));

  Scalar lambda = 3;
  AutomorphismAction sc = admissible_automorphism(Z, scaling_params(5, 1, lambda));
  PrimeField F(5);
  for (std::int64_t i = -1; i <= 3; ++i) {
    Scalar li = i >= 0 ? F.pow(lambda, static_cast<std::uint64_t>(i)) : F.inv(lambda);
    Vec want = Z.basis_vec(i);
    for (auto& c : want) c = F.mul(c, li);
    CHECK(sc.psi.apply(Z.basis_vec(i)) == want);
  }

  // y = x + x^{(2)}: phi(x^{(2)}) = x^{(2)} + 3 x^{(3)} + 3 x^{(4)}
  AutomorphismParams pr = identity_params(5, 1);
  pr.alpha[2] = 1;
  AutomorphismAction act = admissible_automorphism(Z, pr);
  CHECK(act.phi.apply(Z.O.basis_vec(2)) == Vec{0, 0, 1, 3, 3});

  AutomorphismParams bad = identity_params(5, 1);
  bad.alpha[1] = 0;
  CHECK_THROWS_AS(admissible_automorphism(Z, bad), std::invalid_argument);
  AutomorphismParams bad2 = identity_params(5, 2);
  bad2.alpha[5] = 1;  // alpha_{p} must vanish
  CHECK_FALSE(bad2.admissible());
}

TEST_CASE("psi is a twisted bullet morphism") {
  // psi(x . y) = psi(e_{-1})^{-1} . psi(x) . psi(y)
  ZassenhausPair Z = build_zassenhaus(5, 1);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    AutomorphismParams pr = identity_params(5, 1);
    pr.alpha[1] = static_cast<Scalar>(1 + rng() % 4);
    for (std::size_t i = 2; i <= 4; ++i) pr.alpha[i] = static_cast<Scalar>(rng() % 5);
    AutomorphismAction act = admissible_automorphism(Z, pr);
    Vec u = act.psi.apply(Z.unit());
    auto uinv = bullet_inverse(Z, u);
    REQUIRE(uinv.has_value());
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        Vec lhs = act.psi.apply(Z.bullet.basis_product(i, j));
        Vec rhs = Z.bullet_mul(*uinv, Z.bullet_mul(act.psi.apply(Z.basis_vec(Z.idx(i))),
                                                   act.psi.apply(Z.basis_vec(Z.idx(j)))));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("apply_isoq: stated cases") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  PrimeField F(5);
  Vec q(5, 0);
  q[Z.pos(1)] = 2;
  q[Z.pos(3)] = 3;
  CHECK(apply_isoq(Z, q, admissible_automorphism(Z, identity_params(5, 1))) == q);

  Scalar lambda = 3;
  AutomorphismAction sc = admissible_automorphism(Z, scaling_params(5, 1, lambda));
  for (std::int64_t v = -1; v <= 3; ++v) {
    Vec qe = Z.basis_vec(v);
    Vec got = apply_isoq(Z, qe, sc);
    Vec want(5, 0);
    want[Z.pos(v)] = F.pow(lambda, static_cast<std::uint64_t>(v + 2));
    CHECK(got == want);
  }

  Vec two_unit(5, 0);
  two_unit[Z.pos(-1)] = 2;
  CHECK(apply_isoq(Z, two_unit, sc) == Z.unit());  // 3^1 * 2 = 6 = 1
}

TEST_CASE("normal form: stated cases") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  NormalFormResult r1 = normal_form(Z, Z.basis_vec(3));
  CHECK(r1.q_nf == Z.basis_vec(3));
  CHECK(r1.leading_coeff_one);

  Vec q2(5, 0);
  q2[Z.pos(0)] = 2;  // 2 e_0: 2 is not a square mod 5, coefficient stays
  NormalFormResult r2 = normal_form(Z, q2);
  CHECK(r2.q_nf == q2);
  CHECK_FALSE(r2.leading_coeff_one);

  Vec q3(5, 0);
  q3[Z.pos(0)] = 1;
  q3[Z.pos(1)] = 1;  // e_0 + e_1: support shrinks into {0} union (0 + E_1) = {0, 3}
  NormalFormResult r3 = normal_form(Z, q3);
  CHECK(r3.leading_coeff_one);
  CHECK(r3.q_nf[Z.pos(0)] == 1);
  CHECK(r3.q_nf[Z.pos(1)] == 0);
  CHECK(r3.q_nf[Z.pos(2)] == 0);

  CHECK_THROWS_AS(normal_form(Z, Vec(5, 0)), std::invalid_argument);
}

TEST_CASE("normal form: support, idempotence, trace replay, soundness") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  std::mt19937_64 rng(4242);
  int checked = 0;
  while (checked < 8) {
    Vec q = random_q(Z, rng);
    if (std::all_of(q.begin(), q.end(), [](Scalar c) { return c == 0; })) continue;
    ++checked;
    NormalFormResult r = normal_form(Z, q);

    // Support is {nu} union (nu + E_{nu+1}).
    std::int64_t v = nu(q);
    CHECK(nu(r.q_nf) == v);
    std::vector<std::size_t> E = E_set(5, 1, static_cast<std::size_t>(v + 1));
    for (std::int64_t i = v + 1; i <= 3; ++i) {
      bool allowed = std::find(E.begin(), E.end(), static_cast<std::size_t>(i - v)) != E.end();
      if (!allowed) CHECK(r.q_nf[Z.pos(i)] == 0);
    }

    // Replaying the trace on q reproduces q_nf.
    Vec replay = q;
    for (const AutomorphismParams& step : r.trace)
      replay = apply_isoq(Z, replay, admissible_automorphism(Z, step));
    CHECK(replay == r.q_nf);

    // Idempotence.
    NormalFormResult again = normal_form(Z, r.q_nf);
    CHECK(again.q_nf == r.q_nf);

    // Soundness: an admissible automorphism carrying q to q_nf exists.
    auto iso = brute_force_iso(Z, q, r.q_nf);
    CHECK(iso.has_value());
  }
}

TEST_CASE("brute force isomorphism search") {
  ZassenhausPair Z = build_zassenhaus(5, 1);
  Vec q(5, 0);
  q[Z.pos(0)] = 1;
  q[Z.pos(2)] = 3;
  auto self = brute_force_iso(Z, q, q);
  REQUIRE(self.has_value());
  CHECK(apply_isoq(Z, q, admissible_automorphism(Z, *self)) == q);

  Vec two_unit(5, 0);
  two_unit[Z.pos(-1)] = 2;
  auto sc = brute_force_iso(Z, two_unit, Z.unit());
  REQUIRE(sc.has_value());
  CHECK(apply_isoq(Z, two_unit, admissible_automorphism(Z, *sc)) == Z.unit());

  CHECK_FALSE(brute_force_iso(Z, Z.unit(), Z.basis_vec(3)).has_value());

  CHECK_THROWS_AS(brute_force_iso(Z, q, q, 10), ResourceError);
}

TEST_CASE("ad(e_{-1}) is nilpotent with one-dimensional kernel") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {5, 2}}) {
    ZassenhausPair Z = build_zassenhaus(p, n);
    TwoProductAlgebra W = bullet_bracket_algebra(Z);
    FpMatrix ad = W.left_mult(Product::bracket, Z.unit());
    CHECK(ad.pow(Z.N).is_zero());
    Subspace K = nullspace(ad);
    CHECK(K.dim() == 1);
    CHECK(K.contains(Z.unit()));
  }
}
