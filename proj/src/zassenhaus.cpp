#include "tpa/zassenhaus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tpa {

namespace {

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

std::size_t checked_pow_dim(std::uint32_t p, std::uint32_t n, std::size_t max_dim) {
  std::size_t N = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    N *= p;
    if (N > max_dim)
      throw ResourceError("build_zassenhaus: p^n = " + std::to_string(p) + "^" +
                          std::to_string(n) + " exceeds the size bound " +
                          std::to_string(max_dim));
  }
  return N;
}

}  // namespace

Vec DividedPowerAlgebra::basis_vec(std::size_t i) const {
  Vec v(N, 0);
  v[i] = 1;
  return v;
}

Vec DividedPowerAlgebra::derive(const Vec& f) const {
  Vec out(N, 0);
  for (std::size_t i = 1; i < N; ++i) out[i - 1] = f[i];
  return out;
}

std::optional<Vec> DividedPowerAlgebra::inverse(const Vec& f) const {
  if (f[0] == 0) return std::nullopt;
  FpMatrix L(p, N, N);
  for (std::size_t j = 0; j < N; ++j) {
    Vec col = mul(f, basis_vec(j));
    for (std::size_t i = 0; i < N; ++i) L.at(i, j) = col[i];
  }
  return solve(L, one());
}

Vec ZassenhausPair::basis_vec(std::int64_t i) const {
  Vec v(N, 0);
  v[pos(i)] = 1;
  return v;
}

ZassenhausPair build_zassenhaus(std::uint32_t p, std::uint32_t n, std::size_t max_dim) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("build_zassenhaus: p must be an odd prime");
  if (n < 1) throw std::invalid_argument("build_zassenhaus: n must be positive");
  std::size_t N = checked_pow_dim(p, n, max_dim);

  ZassenhausPair Z;
  Z.p = p;
  Z.n = n;
  Z.N = N;
  Z.O = DividedPowerAlgebra{p, n, N, StructureTensor(p, N)};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j + i < N; ++j)
      Z.O.tensor.set(i, j, i + j, binom_mod_p(i + j, static_cast<std::int64_t>(j), p));
  Z.O.tensor.finalize();

  Z.bullet = StructureTensor(p, N);
  Z.bracket = StructureTensor(p, N);
  PrimeField F(p);
  for (std::int64_t i = -1; i <= static_cast<std::int64_t>(N) - 2; ++i)
    for (std::int64_t j = -1; j <= static_cast<std::int64_t>(N) - 2; ++j) {
      if (i + j + 1 <= static_cast<std::int64_t>(N) - 2) {
        Scalar c = F.sub(binom_mod_p(static_cast<std::uint64_t>(i + j + 2), j + 1, p), 0);
        Z.bullet.set(Z.pos(i), Z.pos(j), Z.pos(i + j + 1), c);
      }
      if (i + j >= -1 && i + j <= static_cast<std::int64_t>(N) - 2) {
        Scalar c = F.sub(binom_mod_p(static_cast<std::uint64_t>(i + j + 1), j, p),
                         binom_mod_p(static_cast<std::uint64_t>(i + j + 1), i, p));
        Z.bracket.set(Z.pos(i), Z.pos(j), Z.pos(i + j), c);
      }
    }
  Z.bullet.finalize();
  Z.bracket.finalize();

  // Construction-time invariant verification.
  {
    TwoProductAlgebra O_alg = make_algebra(p, N);
    O_alg.circ = Z.O.tensor;
    for (const char* id : {"commutativity", "associativity"})
      if (!check_identity(O_alg, id).holds)
        throw std::logic_error(std::string("build_zassenhaus: O(1;n) fails ") + id);
    for (std::size_t j = 0; j < N; ++j)
      if (Z.O.mul(Z.O.one(), Z.O.basis_vec(j)) != Z.O.basis_vec(j))
        throw std::logic_error("build_zassenhaus: x^{(0)} is not the O(1;n) unit");

    TwoProductAlgebra W_alg = bullet_bracket_algebra(Z);
    for (const char* id : {"commutativity", "associativity", "anticommutativity", "jacobi"})
      if (!check_identity(W_alg, id).holds)
        throw std::logic_error(std::string("build_zassenhaus: W(1;n) fails ") + id);
    for (std::size_t j = 0; j < N; ++j) {
      Vec ej(N, 0);
      ej[j] = 1;
      if (Z.bullet_mul(Z.unit(), ej) != ej)
        throw std::logic_error("build_zassenhaus: e_{-1} is not the bullet unit");
    }
  }
  return Z;
}

namespace {

std::vector<std::string> zass_labels(std::size_t N) {
  std::vector<std::string> labels(N);
  for (std::size_t t = 0; t < N; ++t)
    labels[t] = "e" + std::to_string(static_cast<std::int64_t>(t) - 1);
  return labels;
}

}  // namespace

TwoProductAlgebra bullet_bracket_algebra(const ZassenhausPair& Z) {
  TwoProductAlgebra A = make_algebra(Z.p, Z.N);
  A.basis_labels = zass_labels(Z.N);
  A.circ = Z.bullet;
  A.bracket = Z.bracket;
  return A;
}

TwoProductAlgebra bracket_only_algebra(const ZassenhausPair& Z) {
  TwoProductAlgebra A = make_algebra(Z.p, Z.N);
  A.basis_labels = zass_labels(Z.N);
  A.bracket = Z.bracket;
  return A;
}

TwoProductAlgebra mutate(const ZassenhausPair& Z, const Vec& q) {
  if (q.size() != Z.N) throw std::invalid_argument("mutate: q has wrong dimension");
  TwoProductAlgebra A = make_algebra(Z.p, Z.N);
  A.basis_labels = zass_labels(Z.N);
  A.bracket = Z.bracket;
  for (std::size_t i = 0; i < Z.N; ++i) {
    Vec ei(Z.N, 0);
    ei[i] = 1;
    Vec eiq = Z.bullet_mul(ei, q);
    for (std::size_t j = 0; j < Z.N; ++j) {
      Vec ej(Z.N, 0);
      ej[j] = 1;
      Vec prod = Z.bullet_mul(eiq, ej);
      for (std::size_t k = 0; k < Z.N; ++k) A.circ.set(i, j, k, prod[k]);
    }
  }
  A.circ.finalize();
  verify_tp(A);
  return A;
}

std::optional<Vec> recover_mutation_parameter(const ZassenhausPair& Z,
                                              const StructureTensor& circ) {
  if (circ.dim != Z.N || circ.p != Z.p) return std::nullopt;
  // e_{-1} o_q e_{-1} = e_{-1} . q . e_{-1} = q.
  Vec q(Z.N, 0);
  for (std::size_t k = 0; k < Z.N; ++k) q[k] = circ.at(0, 0, k);
  TwoProductAlgebra M = mutate(Z, q);
  if (!(M.circ == circ)) return std::nullopt;
  return q;
}

std::optional<Vec> bullet_inverse(const ZassenhausPair& Z, const Vec& q) {
  if (q.size() != Z.N) throw std::invalid_argument("bullet_inverse: q has wrong dimension");
  if (q[0] == 0) return std::nullopt;  // Lemma: invertible iff the e_{-1} coefficient is nonzero
  FpMatrix L(Z.p, Z.N, Z.N);
  for (std::size_t j = 0; j < Z.N; ++j) {
    Vec ej(Z.N, 0);
    ej[j] = 1;
    Vec col = Z.bullet_mul(q, ej);
    for (std::size_t i = 0; i < Z.N; ++i) L.at(i, j) = col[i];
  }
  return solve(L, Z.unit());
}

std::int64_t nu(const Vec& q) {
  for (std::size_t t = 0; t < q.size(); ++t)
    if (q[t]) return static_cast<std::int64_t>(t) - 1;
  throw std::invalid_argument("nu: q must be nonzero");
}

std::vector<std::size_t> E_set(std::uint32_t p, std::uint32_t n, std::size_t m) {
  std::size_t N = 1;
  for (std::uint32_t i = 0; i < n; ++i) N *= p;
  if (m > N - 1) throw std::invalid_argument("E_set: m out of range");
  std::vector<std::size_t> out;
  for (std::size_t s = 1; m + s <= N - 1; ++s) {
    bool member = false;
    for (std::size_t pj = p; pj - 1 <= s; pj *= p)
      if (pj - 1 == s) {
        member = true;
        break;
      }
    if (!member && binom_mod_p(m + s + 1, static_cast<std::int64_t>(m), p) == 0) member = true;
    if (member) out.push_back(s);
  }
  return out;
}

bool AutomorphismParams::admissible() const {
  if (alpha.size() < 2 || alpha[1] % p == 0) return false;
  std::size_t N = alpha.size();
  for (std::size_t pj = p; pj < N; pj *= p)
    if (alpha[pj] % p != 0) return false;
  return true;
}

AutomorphismParams identity_params(std::uint32_t p, std::uint32_t n) {
  return scaling_params(p, n, 1);
}

AutomorphismParams scaling_params(std::uint32_t p, std::uint32_t n, Scalar lambda) {
  std::size_t N = 1;
  for (std::uint32_t i = 0; i < n; ++i) N *= p;
  AutomorphismParams params{p, n, Vec(N, 0)};
  params.alpha[1] = lambda % p;
  return params;
}

AutomorphismAction admissible_automorphism(const ZassenhausPair& Z,
                                           const AutomorphismParams& params) {
  if (params.p != Z.p || params.n != Z.n || params.alpha.size() != Z.N || !params.admissible())
    throw std::invalid_argument("admissible_automorphism: inadmissible parameters");
  const std::size_t N = Z.N;
  PrimeField F(Z.p);

  // Divided powers y^{(k)} of y = sum alpha_a x^{(a)}, built one monomial at
  // a time via (u+v)^{(k)} = sum_{i+j=k} u^{(i)} v^{(j)} and
  // (lambda x^{(a)})^{(j)} = lambda^j dp_power_coeff(a, j) x^{(aj)}.
  std::vector<Vec> pow(N, Vec(N, 0));
  pow[0] = Z.O.one();
  for (std::size_t a = 1; a < N; ++a) {
    Scalar lam = params.alpha[a] % Z.p;
    if (!lam) continue;
    std::vector<Vec> vpow(N, Vec(N, 0));
    vpow[0] = Z.O.one();
    for (std::size_t j = 1; j < N; ++j) {
      if (a * j >= N) break;
      Scalar c = F.mul(F.pow(lam, j), dp_power_coeff(static_cast<std::uint32_t>(a),
                                                     static_cast<std::uint32_t>(j), Z.p));
      if (c) vpow[j][a * j] = c;
    }
    std::vector<Vec> next(N, Vec(N, 0));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i <= k; ++i) {
        if (vec_is_zero(vpow[k - i])) continue;
        Vec term = Z.O.mul(pow[i], vpow[k - i]);
        for (std::size_t t = 0; t < N; ++t) next[k][t] = F.add(next[k][t], term[t]);
      }
    pow = std::move(next);
  }

  AutomorphismAction act;
  act.phi = FpMatrix(Z.p, N, N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t t = 0; t < N; ++t) act.phi.at(t, k) = pow[k][t];

  // Verify phi is a unital algebra automorphism of O(1;n).
  if (pow[0] != Z.O.one())
    throw std::logic_error("admissible_automorphism: phi does not fix the unit");
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j + i < N; ++j) {
      Vec lhs = vec_is_zero(pow[i + j]) && binom_mod_p(i + j, static_cast<std::int64_t>(j), Z.p) == 0
                    ? Vec(N, 0)
                    : [&] {
                        Vec v(N, 0);
                        Scalar c = binom_mod_p(i + j, static_cast<std::int64_t>(j), Z.p);
                        for (std::size_t t = 0; t < N; ++t) v[t] = F.mul(c, pow[i + j][t]);
                        return v;
                      }();
      if (lhs != Z.O.mul(pow[i], pow[j]))
        throw std::logic_error("admissible_automorphism: phi is not multiplicative");
    }

  act.h_inverse = Z.O.derive(pow[1]);
  auto h = Z.O.inverse(act.h_inverse);
  if (!h) throw std::logic_error("admissible_automorphism: d(phi(x)) is not invertible");

  // psi(e_i) = h phi(x^{(i+1)}) d; the O index t corresponds to the W
  // position t via x^{(t)} d = e_{t-1}.
  act.psi = FpMatrix(Z.p, N, N);
  for (std::size_t t = 0; t < N; ++t) {
    Vec g = Z.O.mul(*h, pow[t]);
    for (std::size_t r = 0; r < N; ++r) act.psi.at(r, t) = g[r];
  }

  // Verify psi is a Lie automorphism of W(1;n).
  for (std::size_t i = 0; i < N; ++i) {
    Vec pi(N, 0);
    for (std::size_t r = 0; r < N; ++r) pi[r] = act.psi.at(r, i);
    for (std::size_t j = 0; j < N; ++j) {
      Vec pj(N, 0);
      for (std::size_t r = 0; r < N; ++r) pj[r] = act.psi.at(r, j);
      if (act.psi.apply(Z.bracket.basis_product(i, j)) != Z.bracket_mul(pi, pj))
        throw std::logic_error("admissible_automorphism: psi does not preserve the bracket");
    }
  }
  return act;
}

Vec apply_isoq(const ZassenhausPair& Z, const Vec& q, const AutomorphismAction& act) {
  Vec s = act.psi.apply(Z.unit());
  auto sinv = bullet_inverse(Z, s);
  if (!sinv) throw std::logic_error("apply_isoq: psi(e_{-1}) is not bullet-invertible");
  Vec sinv2 = Z.bullet_mul(*sinv, *sinv);
  Vec qprime = Z.bullet_mul(sinv2, act.psi.apply(q));

  // psi must intertwine o_q and o_{q'} on all basis pairs.
  for (std::size_t i = 0; i < Z.N; ++i) {
    Vec ei(Z.N, 0);
    ei[i] = 1;
    Vec pi = act.psi.apply(ei);
    Vec eiq = Z.bullet_mul(ei, q);
    Vec piq = Z.bullet_mul(pi, qprime);
    for (std::size_t j = 0; j < Z.N; ++j) {
      Vec ej(Z.N, 0);
      ej[j] = 1;
      if (act.psi.apply(Z.bullet_mul(eiq, ej)) != Z.bullet_mul(piq, act.psi.apply(ej)))
        throw std::logic_error("apply_isoq: psi does not intertwine the mutations");
    }
  }
  return qprime;
}

namespace {

// One elementary automorphism applied to q through apply_isoq.
Vec elementary_step(const ZassenhausPair& Z, const Vec& q, const AutomorphismParams& params) {
  return apply_isoq(Z, q, admissible_automorphism(Z, params));
}

}  // namespace

NormalFormResult normal_form(const ZassenhausPair& Z, const Vec& q0) {
  if (q0.size() != Z.N) throw std::invalid_argument("normal_form: q has wrong dimension");
  if (vec_is_zero(q0)) throw std::invalid_argument("normal_form: q must be nonzero");
  PrimeField F(Z.p);
  NormalFormResult res;
  res.q_nf = q0;
  const std::int64_t v = nu(q0);
  const std::size_t m = Z.pos(v);  // O-index of the leading term

  // Leading coefficient: under y = lambda x the coefficient at index nu
  // becomes lambda^{nu+2} q_nu.
  {
    Scalar lead = res.q_nf[m];
    std::uint64_t expo = static_cast<std::uint64_t>(v + 2);
    Scalar best = lead, best_lambda = 1;
    for (Scalar lam = 1; lam < Z.p; ++lam) {
      Scalar cand = F.mul(F.pow(lam, expo), lead);
      if (cand == 1) {
        best = 1;
        best_lambda = lam;
        break;
      }
      if (cand < best) {
        best = cand;
        best_lambda = lam;
      }
    }
    res.leading_coeff_one = (best == 1);
    if (best_lambda != 1) {
      AutomorphismParams params = scaling_params(Z.p, Z.n, best_lambda);
      res.q_nf = elementary_step(Z, res.q_nf, params);
      res.trace.push_back(std::move(params));
    }
  }

  std::vector<std::size_t> keep = E_set(Z.p, Z.n, m);
  auto kept = [&](std::size_t s) {
    return std::binary_search(keep.begin(), keep.end(), s);
  };

  for (std::size_t sweep = 0; sweep < Z.N; ++sweep) {
    bool changed = false;
    for (std::size_t s = 1; m + s <= Z.N - 1; ++s) {
      if (kept(s) || res.q_nf[m + s] == 0) continue;
      // y = x^{(1)} + lambda x^{(s+1)} with the lambda that clears the
      // coefficient at index nu + s; the derived value is tried first and the
      // step is always re-verified, falling back to a scan over F_p.
      Scalar binc = binom_mod_p(m + s + 1, static_cast<std::int64_t>(m), Z.p);
      Scalar derived =
          F.neg(F.mul(res.q_nf[m + s], F.inv(F.mul(res.q_nf[m], binc))));
      bool done = false;
      for (Scalar attempt = 0; attempt <= Z.p && !done; ++attempt) {
        Scalar lam = (attempt == 0) ? derived : (attempt - 1 == derived ? 0 : attempt - 1);
        if (lam == 0) continue;
        AutomorphismParams params = identity_params(Z.p, Z.n);
        params.alpha[s + 1] = lam;
        if (!params.admissible()) break;  // s + 1 = p^j cannot occur for s outside E_m
        Vec next = elementary_step(Z, res.q_nf, params);
        if (next[m + s] != 0) continue;
        bool lower_ok = true;
        for (std::size_t t = 0; t < m + s; ++t)
          if (next[t] != res.q_nf[t]) {
            lower_ok = false;
            break;
          }
        if (!lower_ok) continue;
        res.q_nf = std::move(next);
        res.trace.push_back(std::move(params));
        done = changed = true;
      }
      if (!done)
        throw std::logic_error("normal_form: no elimination parameter clears index " +
                               std::to_string(static_cast<std::int64_t>(m + s) - 1));
    }
    if (!changed) break;
  }

  for (std::size_t t = 0; t < Z.N; ++t) {
    if (res.q_nf[t] == 0 || t == m) continue;
    if (t < m || !kept(t - m))
      throw std::logic_error("normal_form: support is not contained in {nu} + E_m");
  }
  return res;
}

std::optional<AutomorphismParams> brute_force_iso(const ZassenhausPair& Z, const Vec& q,
                                                  const Vec& q2, std::size_t budget) {
  const std::size_t N = Z.N;
  std::vector<std::size_t> free_positions;
  for (std::size_t i = 2; i < N; ++i) {
    bool forced_zero = false;
    for (std::size_t pj = Z.p; pj < N; pj *= Z.p)
      if (i == pj) forced_zero = true;
    if (!forced_zero) free_positions.push_back(i);
  }
  std::size_t total = Z.p - 1;
  for (std::size_t k = 0; k < free_positions.size(); ++k) {
    if (total > budget) break;
    total *= Z.p;
  }
  if (total > budget)
    throw ResourceError("brute_force_iso: parameter space exceeds budget " +
                        std::to_string(budget));

  AutomorphismParams params{Z.p, Z.n, Vec(N, 0)};
  for (Scalar a1 = 1; a1 < Z.p; ++a1) {
    params.alpha.assign(N, 0);
    params.alpha[1] = a1;
    // Mixed-radix enumeration of the free coefficients.
    std::vector<Scalar> digits(free_positions.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < free_positions.size(); ++k)
        params.alpha[free_positions[k]] = digits[k];
      if (apply_isoq(Z, q, admissible_automorphism(Z, params)) == q2) return params;
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == Z.p) digits[pos++] = 0;
      if (pos == digits.size() && !digits.empty()) break;
      if (digits.empty()) break;
    }
  }
  return std::nullopt;
}

}  // namespace tpa
