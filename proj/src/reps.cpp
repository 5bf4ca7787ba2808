#include "tpa/reps.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace tpa {

namespace {

FpMatrix combine(const std::vector<FpMatrix>& images, const Vec& x, std::uint32_t p,
                 std::size_t md) {
  PrimeField F(p);
  FpMatrix out(p, md, md);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    out = out + images[i].scaled(x[i]);
  }
  return out;
}

}  // namespace

FpMatrix Representation::alpha_of(const Vec& x) const {
  return combine(alpha, x, algebra.p, module_dim);
}

FpMatrix Representation::beta_of(const Vec& x) const {
  return combine(beta, x, algebra.p, module_dim);
}

Representation build_M(const ZassenhausPair& Z, const Vec& q, const Vec& a) {
  if (q.size() != Z.N || a.size() != Z.N)
    throw std::invalid_argument("build_M: q and a must live in W(1;n)");
  Representation R;
  R.algebra = mutate(Z, q);
  R.module_dim = Z.N;
  auto bullet_mult_matrix = [&](const Vec& f) {
    FpMatrix M(Z.p, Z.N, Z.N);
    for (std::size_t j = 0; j < Z.N; ++j) {
      Vec ej(Z.N, 0);
      ej[j] = 1;
      Vec col = Z.bullet_mul(f, ej);
      for (std::size_t i = 0; i < Z.N; ++i) M.at(i, j) = col[i];
    }
    return M;
  };
  auto ad_matrix = [&](const Vec& f) {
    FpMatrix M(Z.p, Z.N, Z.N);
    for (std::size_t j = 0; j < Z.N; ++j) {
      Vec ej(Z.N, 0);
      ej[j] = 1;
      Vec col = Z.bracket_mul(f, ej);
      for (std::size_t i = 0; i < Z.N; ++i) M.at(i, j) = col[i];
    }
    return M;
  };
  for (std::size_t i = 0; i < Z.N; ++i) {
    Vec ei(Z.N, 0);
    ei[i] = 1;
    R.alpha.push_back(bullet_mult_matrix(Z.bullet_mul(ei, q)));
    R.beta.push_back(ad_matrix(ei) + bullet_mult_matrix(Z.bullet_mul(ei, a)));
  }
  return R;
}

IdentityReport check_representation(const Representation& R) {
  const TwoProductAlgebra& A = R.algebra;
  std::size_t d = A.dim;
  auto fail = [&](const char* id, std::vector<std::size_t> tuple, const FpMatrix& residual) {
    return IdentityReport{id, false, IdentityWitness{std::move(tuple), residual.flat()}};
  };
  PrimeField F(A.p);
  Scalar two = 2 % A.p;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      FpMatrix r = R.alpha[i] * R.alpha[j] - R.alpha_of(A.circ.basis_product(i, j));
      if (!r.is_zero()) return fail("alpha_associative", {i, j}, r);
      r = R.beta[i] * R.beta[j] - R.beta[j] * R.beta[i] -
          R.beta_of(A.bracket.basis_product(i, j));
      if (!r.is_zero()) return fail("beta_lie", {i, j}, r);
      // 2 alpha(x) beta(y) = beta(x o y) + beta(y) alpha(x)
      r = (R.alpha[i] * R.beta[j]).scaled(two) - R.beta_of(A.circ.basis_product(i, j)) -
          R.beta[j] * R.alpha[i];
      if (!r.is_zero()) return fail("repcomp1", {i, j}, r);
      // 2 alpha([x, y]) = beta(x) alpha(y) - beta(y) alpha(x)
      r = R.alpha_of(A.bracket.basis_product(i, j)).scaled(two) - R.beta[i] * R.alpha[j] +
          R.beta[j] * R.alpha[i];
      if (!r.is_zero()) return fail("repcomp2", {i, j}, r);
      // alpha(x) beta(y) - alpha(y) beta(x) + alpha([x, y]) = 0
      r = R.alpha[i] * R.beta[j] - R.alpha[j] * R.beta[i] +
          R.alpha_of(A.bracket.basis_product(i, j));
      if (!r.is_zero()) return fail("rel1", {i, j}, r);
    }
  // Cached products of the basis-pair images for the triple relations.
  std::vector<FpMatrix> b_br(d * d), b_circ(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      b_br[i * d + j] = R.beta_of(A.bracket.basis_product(i, j));
      b_circ[i * d + j] = R.beta_of(A.circ.basis_product(i, j));
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        FpMatrix bij_ak = b_br[i * d + j] * R.alpha[k];
        // cyclic: beta([x,y]) alpha(z) + beta([y,z]) alpha(x) + beta([z,x]) alpha(y) = 0
        FpMatrix r = bij_ak + b_br[j * d + k] * R.alpha[i] + b_br[k * d + i] * R.alpha[j];
        if (!r.is_zero()) return fail("rel3", {i, j, k}, r);
        // beta([x,y]) alpha(z) = beta(z o x) beta(y) - beta(z o y) beta(x)
        r = bij_ak - b_circ[k * d + i] * R.beta[j] + b_circ[k * d + j] * R.beta[i];
        if (!r.is_zero()) return fail("rel3b", {i, j, k}, r);
      }
  bool beta_nonzero =
      std::any_of(R.beta.begin(), R.beta.end(), [](const FpMatrix& m) { return !m.is_zero(); });
  if (beta_nonzero) {
    if (auto unit = find_unit(A)) {
      FpMatrix r = R.alpha_of(*unit) - FpMatrix::identity(A.p, R.module_dim);
      if (!r.is_zero()) return fail("alpha_unit", {}, r);
    }
  }
  (void)F;
  return IdentityReport{"representation", true, std::nullopt};
}

namespace {

Subspace invariant_closure(const Representation& R, const Vec& seed) {
  RrefBasis basis(R.algebra.p, R.module_dim);
  std::deque<Vec> work;
  if (basis.insert(seed)) work.push_back(seed);
  while (!work.empty()) {
    Vec v = std::move(work.front());
    work.pop_front();
    for (const auto* images : {&R.alpha, &R.beta})
      for (const FpMatrix& M : *images) {
        Vec w = M.apply(v);
        if (basis.insert(w)) work.push_back(std::move(w));
      }
    if (basis.rank() == R.module_dim) break;
  }
  return basis.to_subspace();
}

}  // namespace

IrreducibilityResult irreducible(const Representation& R, std::uint64_t seed,
                                 std::size_t random_budget) {
  IrreducibilityResult res;
  if (R.module_dim == 1) {
    // No proper nonzero subspace exists.
    res.verdict = Irreducibility::irreducible;
    res.envelope_dim = 1;
    return res;
  }
  // Tier (a): closures of standard basis vectors.
  for (std::size_t i = 0; i < R.module_dim; ++i) {
    Vec v(R.module_dim, 0);
    v[i] = 1;
    Subspace S = invariant_closure(R, v);
    if (S.dim() > 0 && S.dim() < R.module_dim) {
      res.verdict = Irreducibility::reducible;
      res.witness = S;
      return res;
    }
  }
  // Tier (b): Burnside.
  std::vector<FpMatrix> gens;
  for (const auto* images : {&R.alpha, &R.beta})
    for (const FpMatrix& M : *images)
      if (!M.is_zero()) gens.push_back(M);
  res.envelope_dim = operator_envelope_dim(R.algebra.p, R.module_dim, gens);
  if (res.envelope_dim == R.module_dim * R.module_dim) {
    res.verdict = Irreducibility::irreducible;
    return res;
  }
  // Tier (c): seeded random closures.
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < random_budget; ++t) {
    Vec v(R.module_dim, 0);
    bool nonzero = false;
    for (std::size_t i = 0; i < R.module_dim; ++i) {
      v[i] = static_cast<Scalar>(rng() % R.algebra.p);
      nonzero |= (v[i] != 0);
    }
    if (!nonzero) continue;
    Subspace S = invariant_closure(R, v);
    if (S.dim() > 0 && S.dim() < R.module_dim) {
      res.verdict = Irreducibility::reducible;
      res.witness = S;
      return res;
    }
  }
  res.verdict = Irreducibility::undecided;
  return res;
}

Representation twist(const Representation& R, const ZassenhausPair& Z, const Vec& q,
                     bool converse) {
  Vec u;
  if (converse) {
    if (!bullet_inverse(Z, q))
      throw std::invalid_argument("twist: q is not bullet-invertible");
    u = q;
  } else {
    auto inv = bullet_inverse(Z, q);
    if (!inv) throw std::invalid_argument("twist: q is not bullet-invertible");
    u = *inv;
  }
  Representation out;
  out.module_dim = R.module_dim;
  out.beta = R.beta;
  for (std::size_t i = 0; i < Z.N; ++i) {
    Vec ei(Z.N, 0);
    ei[i] = 1;
    out.alpha.push_back(R.alpha_of(Z.bullet_mul(ei, u)));
  }
  // If the input algebra is the mutation by s, the twisted alpha acts
  // associatively for the mutation by s . u.
  Vec s(Z.N, 0);
  for (std::size_t k = 0; k < Z.N; ++k) s[k] = R.algebra.circ.at(0, 0, k);
  out.algebra = mutate(Z, Z.bullet_mul(s, u));
  return out;
}

Representation rep_direct_sum(const Representation& a, const Representation& b) {
  if (a.algebra.p != b.algebra.p || a.algebra.dim != b.algebra.dim ||
      !(a.algebra.circ == b.algebra.circ) || !(a.algebra.bracket == b.algebra.bracket))
    throw std::invalid_argument("rep_direct_sum: representations of different algebras");
  Representation out;
  out.algebra = a.algebra;
  out.module_dim = a.module_dim + b.module_dim;
  auto block = [&](const FpMatrix& top, const FpMatrix& bottom) {
    FpMatrix M(a.algebra.p, out.module_dim, out.module_dim);
    for (std::size_t i = 0; i < a.module_dim; ++i)
      for (std::size_t j = 0; j < a.module_dim; ++j) M.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < b.module_dim; ++i)
      for (std::size_t j = 0; j < b.module_dim; ++j)
        M.at(a.module_dim + i, a.module_dim + j) = bottom.at(i, j);
    return M;
  };
  for (std::size_t i = 0; i < a.algebra.dim; ++i) {
    out.alpha.push_back(block(a.alpha[i], b.alpha[i]));
    out.beta.push_back(block(a.beta[i], b.beta[i]));
  }
  return out;
}

std::optional<FpMatrix> rep_iso_search(const Representation& r1, const Representation& r2,
                                       std::uint64_t seed, std::size_t budget) {
  if (r1.module_dim != r2.module_dim || r1.algebra.dim != r2.algebra.dim ||
      r1.algebra.p != r2.algebra.p)
    return std::nullopt;
  std::uint32_t p = r1.algebra.p;
  std::size_t md = r1.module_dim, cols = md * md;
  PrimeField F(p);
  // Intertwiner space: T alpha1(e_i) = alpha2(e_i) T and likewise for beta.
  std::vector<Vec> rows;
  for (std::size_t g = 0; g < r1.algebra.dim; ++g)
    for (const auto& [m1, m2] : {std::pair<const FpMatrix&, const FpMatrix&>{r1.alpha[g], r2.alpha[g]},
                                 std::pair<const FpMatrix&, const FpMatrix&>{r1.beta[g], r2.beta[g]}})
      for (std::size_t i = 0; i < md; ++i)
        for (std::size_t j = 0; j < md; ++j) {
          Vec row(cols, 0);
          bool nonzero = false;
          for (std::size_t k = 0; k < md; ++k) {
            // (T m1 - m2 T)[i][j]
            Scalar c1 = m1.at(k, j);
            if (c1) {
              row[i * md + k] = F.add(row[i * md + k], c1);
              nonzero = true;
            }
            Scalar c2 = m2.at(i, k);
            if (c2) {
              row[k * md + j] = F.sub(row[k * md + j], c2);
              nonzero = true;
            }
          }
          if (nonzero) rows.push_back(std::move(row));
        }
  Subspace sol = nullspace_of_rows(p, cols, rows);
  if (sol.dim() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  auto invertible = [&](const FpMatrix& T) {
    RrefBasis b(p, md);
    for (std::size_t i = 0; i < md; ++i) {
      Vec row(md);
      for (std::size_t j = 0; j < md; ++j) row[j] = T.at(i, j);
      b.insert(std::move(row));
    }
    return b.rank() == md;
  };
  for (std::size_t t = 0; t < budget + sol.dim(); ++t) {
    Vec flat(cols, 0);
    for (std::size_t b = 0; b < sol.dim(); ++b) {
      Scalar c = (t < sol.dim()) ? (b == t ? 1 : 0) : static_cast<Scalar>(rng() % p);
      if (!c) continue;
      for (std::size_t i = 0; i < cols; ++i)
        flat[i] = F.add(flat[i], F.mul(c, sol.basis[b][i]));
    }
    FpMatrix T = FpMatrix::from_flat(p, md, md, flat);
    if (!T.is_zero() && invertible(T)) return T;
  }
  return std::nullopt;
}

}  // namespace tpa
