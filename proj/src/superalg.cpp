#include "tpa/superalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpa {

namespace {

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

}  // namespace

SuperAlgebra kantor_double(const TwoProductAlgebra& A) {
  if (!A.tp_verified)
    throw std::invalid_argument("kantor_double: input must pass the transposed Poisson axioms");
  std::size_t d = A.dim;
  SuperAlgebra S{A.p, d, d, StructureTensor(A.p, 2 * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Scalar c = A.circ.at(i, j, k);
        if (c) {
          S.product.set(i, j, k, c);              // x * y = x o y
          S.product.set(i, d + j, d + k, c);      // x * y^s = (x o y)^s
          S.product.set(d + i, j, d + k, c);      // x^s * y = (x o y)^s
        }
        Scalar b = A.bracket.at(i, j, k);
        if (b) S.product.set(d + i, d + j, k, b);  // x^s * y^s = [x, y]
      }
  S.product.finalize();
  IdentityReport sc = check_super_commutativity(S);
  if (!sc.holds) throw std::logic_error("kantor_double: super-commutativity failed");
  return S;
}

IdentityReport check_super_commutativity(const SuperAlgebra& S) {
  PrimeField F(S.p);
  std::size_t n = S.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec uv = S.product.basis_product(i, j);
      Vec vu = S.product.basis_product(j, i);
      // Grading: the product of parities |i|, |j| must land in parity |i|+|j|.
      unsigned target = (S.parity(i) + S.parity(j)) % 2;
      for (std::size_t k = 0; k < n; ++k)
        if (uv[k] && S.parity(k) != target) {
          Vec res(n, 0);
          res[k] = uv[k];
          return IdentityReport{"super_grading", false, IdentityWitness{{i, j}, res}};
        }
      Scalar sign = (S.parity(i) && S.parity(j)) ? F.neg(1) : 1;
      Vec residual(n, 0);
      bool nonzero = false;
      for (std::size_t k = 0; k < n; ++k) {
        residual[k] = F.sub(uv[k], F.mul(sign, vu[k]));
        nonzero |= (residual[k] != 0);
      }
      if (nonzero)
        return IdentityReport{"super_commutativity", false, IdentityWitness{{i, j}, residual}};
    }
  return IdentityReport{"super_commutativity", true, std::nullopt};
}

IdentityReport check_jordan_super(const SuperAlgebra& S) {
  PrimeField F(S.p);
  std::size_t n = S.dim();
  // One cyclic summand of the identity applied to w:
  // sign * ([L_{a*b}, L_c]^s w) with |L_{a*b}| = |a| + |b|.
  auto term = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t w, Scalar sign,
                  Vec& acc) {
    Vec ab = S.product.basis_product(a, b);
    if (vec_is_zero(ab)) {
      // Only the L_{a*b} L_c part vanishes; the super-commutator's second
      // part also involves L_{a*b}, so the whole term is zero.
      return;
    }
    Vec ew(n, 0);
    ew[w] = 1;
    Vec cw = S.product.basis_product(c, w);
    Vec first = S.product.product(ab, cw);
    Vec second_inner = S.product.product(ab, ew);
    Vec ec(n, 0);
    ec[c] = 1;
    Vec second = S.product.product(ec, second_inner);
    unsigned pab = (S.parity(a) + S.parity(b)) % 2;
    Scalar comm_sign = (pab && S.parity(c)) ? F.neg(1) : 1;
    for (std::size_t k = 0; k < n; ++k) {
      Scalar v = F.sub(first[k], F.mul(comm_sign, second[k]));
      acc[k] = F.add(acc[k], F.mul(sign, v));
    }
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Scalar s1 = (S.parity(x) && S.parity(z)) ? F.neg(1) : 1;
        Scalar s2 = (S.parity(y) && S.parity(x)) ? F.neg(1) : 1;
        Scalar s3 = (S.parity(z) && S.parity(y)) ? F.neg(1) : 1;
        for (std::size_t w = 0; w < n; ++w) {
          Vec acc(n, 0);
          term(x, y, z, w, s1, acc);
          term(y, z, x, w, s2, acc);
          term(z, x, y, w, s3, acc);
          if (!vec_is_zero(acc))
            return IdentityReport{"jordan_super", false, IdentityWitness{{x, y, z, w}, acc}};
        }
      }
  return IdentityReport{"jordan_super", true, std::nullopt};
}

OneProductAlgebra depolarize(const TwoProductAlgebra& A) {
  PrimeField F(A.p);
  OneProductAlgebra L{A.p, A.dim, StructureTensor(A.p, A.dim)};
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j)
      for (std::size_t k = 0; k < A.dim; ++k)
        L.product.set(i, j, k, F.add(A.circ.at(i, j, k), A.bracket.at(i, j, k)));
  L.product.finalize();
  return L;
}

TwoProductAlgebra polarize(const OneProductAlgebra& L) {
  PrimeField F(L.p);
  Scalar half = F.inv(2 % L.p);
  TwoProductAlgebra A = make_algebra(L.p, L.dim);
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = 0; j < L.dim; ++j)
      for (std::size_t k = 0; k < L.dim; ++k) {
        Scalar xy = L.product.at(i, j, k), yx = L.product.at(j, i, k);
        A.circ.set(i, j, k, F.mul(half, F.add(xy, yx)));
        A.bracket.set(i, j, k, F.mul(half, F.sub(xy, yx)));
      }
  A.circ.finalize();
  A.bracket.finalize();
  return A;
}

IdentityReport check_weak_leibniz(const OneProductAlgebra& L) {
  PrimeField F(L.p);
  Scalar two = 2 % L.p;
  std::size_t n = L.dim;
  auto basis_vec = [n](std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Vec xy = L.product.basis_product(x, y);
        Vec yx = L.product.basis_product(y, x);
        Vec yz = L.product.basis_product(y, z);
        Vec xz = L.product.basis_product(x, z);
        Vec zy = L.product.basis_product(z, y);
        // (x.y).z - (y.x).z - 2 x.(y.z) + 2 y.(x.z)
        Vec r1(n, 0);
        {
          Vec a = L.product.product(xy, basis_vec(z));
          Vec b = L.product.product(yx, basis_vec(z));
          Vec c = L.product.product(basis_vec(x), yz);
          Vec d = L.product.product(basis_vec(y), xz);
          for (std::size_t k = 0; k < n; ++k)
            r1[k] = F.add(F.sub(a[k], b[k]), F.mul(two, F.sub(d[k], c[k])));
        }
        if (!vec_is_zero(r1))
          return IdentityReport{"weak_leibniz_1", false, IdentityWitness{{x, y, z}, r1}};
        // x.(y.z) - x.(z.y) - 2 (x.y).z + 2 (x.z).y
        Vec r2(n, 0);
        {
          Vec a = L.product.product(basis_vec(x), yz);
          Vec b = L.product.product(basis_vec(x), zy);
          Vec c = L.product.product(xy, basis_vec(z));
          Vec d = L.product.product(xz, basis_vec(y));
          for (std::size_t k = 0; k < n; ++k)
            r2[k] = F.add(F.sub(a[k], b[k]), F.mul(two, F.sub(d[k], c[k])));
        }
        if (!vec_is_zero(r2))
          return IdentityReport{"weak_leibniz_2", false, IdentityWitness{{x, y, z}, r2}};
      }
  return IdentityReport{"weak_leibniz", true, std::nullopt};
}

QpResult qp_operator(const TwoProductAlgebra& A) {
  auto unit = find_unit(A);
  if (!unit)
    throw std::invalid_argument(
        "qp_operator: the circ product is not unital (the mutation W_n(q) is unital "
        "iff q is bullet-invertible)");
  QpResult res;
  res.Q = A.left_mult(Product::bracket, *unit);
  res.minimal_polynomial = min_poly(res.Q);
  // Diagonalizable over F_p iff the minimal polynomial splits with simple roots.
  std::size_t root_count = 0;
  bool squarefree = true;
  std::vector<Scalar> roots;
  for (Scalar lambda = 0; lambda < A.p; ++lambda) {
    std::size_t mult = res.minimal_polynomial.root_multiplicity(lambda);
    if (!mult) continue;
    roots.push_back(lambda);
    root_count += mult;
    if (mult > 1) squarefree = false;
  }
  if (squarefree && root_count == res.minimal_polynomial.degree()) {
    res.diagnosis = QpDiagnosis::diagonalizable;
    // Spectrum from the characteristic polynomial (same root set).
    for (const auto& [lambda, mult] : eigenvalues_in_Fp(res.Q).roots) {
      (void)mult;
      res.spectrum.push_back(lambda);
    }
  } else if (res.Q.pow(A.dim).is_zero()) {
    res.diagnosis = QpDiagnosis::nilpotent;
  } else {
    res.diagnosis = QpDiagnosis::neither;
  }
  return res;
}

}  // namespace tpa
