#ifndef TPA_ZASSENHAUS_HPP
#define TPA_ZASSENHAUS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tpa/algebra.hpp"

namespace tpa {

/// Thrown when a configured size or enumeration budget is exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated divided-power algebra O(1;n) over F_p: basis x^{(0)}..x^{(N-1)}
/// with x^{(i)} x^{(j)} = C(i+j, j) x^{(i+j)} and N = p^n. Coefficient vectors
/// are indexed by the divided-power exponent.
struct DividedPowerAlgebra {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::size_t N = 0;
  StructureTensor tensor;

  Vec mul(const Vec& f, const Vec& g) const { return tensor.product(f, g); }
  Vec basis_vec(std::size_t i) const;
  Vec one() const { return basis_vec(0); }
  /// The derivation d with d(x^{(i)}) = x^{(i-1)}, d(x^{(0)}) = 0.
  Vec derive(const Vec& f) const;
  /// Multiplicative inverse in O(1;n); exists iff the x^{(0)} coefficient is
  /// nonzero.
  std::optional<Vec> inverse(const Vec& f) const;
};

/// The Zassenhaus algebra W(1;n) = O(1;n)d with basis e_{-1}..e_{N-2}
/// (e_i = x^{(i+1)}d, stored at position i+1), its bracket, and the
/// commutative associative bullet product e_i . e_j = C(i+j+2, j+1) e_{i+j+1}.
struct ZassenhausPair {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::size_t N = 0;
  DividedPowerAlgebra O;
  StructureTensor bullet;
  StructureTensor bracket;

  /// Storage position of e_i for i in [-1, N-2].
  std::size_t pos(std::int64_t i) const { return static_cast<std::size_t>(i + 1); }
  /// Basis index of the storage position.
  std::int64_t idx(std::size_t position) const { return static_cast<std::int64_t>(position) - 1; }

  Vec basis_vec(std::int64_t i) const;
  Vec unit() const { return basis_vec(-1); }  // bullet unit e_{-1}
  Vec bullet_mul(const Vec& x, const Vec& y) const { return bullet.product(x, y); }
  Vec bracket_mul(const Vec& x, const Vec& y) const { return bracket.product(x, y); }
};

/// Builds O(1;n) and W(1;n) and verifies the structural invariants
/// (commutativity, associativity, unit, anticommutativity, Jacobi) at
/// construction. Throws ResourceError when p^n exceeds max_dim.
ZassenhausPair build_zassenhaus(std::uint32_t p, std::uint32_t n, std::size_t max_dim = 1024);

/// The pair (bullet, bracket) packaged as a TwoProductAlgebra.
TwoProductAlgebra bullet_bracket_algebra(const ZassenhausPair& Z);
/// Bracket only (circ identically zero), for Lie-algebra level computations.
TwoProductAlgebra bracket_only_algebra(const ZassenhausPair& Z);

/// The mutation W_n(q): x o_q y = x . q . y with the bracket unchanged.
/// The transposed Poisson axioms are verified and tp_verified is set.
TwoProductAlgebra mutate(const ZassenhausPair& Z, const Vec& q);

/// Recovers q from a mutation's circ tensor (q = e_{-1} o e_{-1}), or nullopt
/// when the tensor is not the mutation by that element.
std::optional<Vec> recover_mutation_parameter(const ZassenhausPair& Z, const StructureTensor& circ);

/// Bullet inverse of q; exists iff the e_{-1} coefficient of q is nonzero.
std::optional<Vec> bullet_inverse(const ZassenhausPair& Z, const Vec& q);

/// nu(q) = min{ i : q_i != 0 } in the e-indexing [-1, N-2]. Throws
/// std::invalid_argument when q = 0.
std::int64_t nu(const Vec& q);

/// E_m = { s > 0, m+s <= p^n - 1 : s = p^j - 1 for some j >= 1, or
/// C(m+s+1, m) = 0 mod p }, sorted ascending. Throws std::invalid_argument
/// when m is out of [0, p^n - 1].
std::vector<std::size_t> E_set(std::uint32_t p, std::uint32_t n, std::size_t m);

/// Coefficients alpha_1..alpha_{N-1} of y = sum alpha_i x^{(i)}; alpha[i]
/// holds alpha_i and alpha[0] is unused. Admissible means alpha_1 != 0 and
/// alpha_{p^j} = 0 for 1 <= j <= n-1.
struct AutomorphismParams {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  Vec alpha;

  bool admissible() const;
  bool operator==(const AutomorphismParams& rhs) const = default;
};

AutomorphismParams identity_params(std::uint32_t p, std::uint32_t n);
AutomorphismParams scaling_params(std::uint32_t p, std::uint32_t n, Scalar lambda);

/// phi acts on O(1;n) coordinates, psi on W(1;n) coordinates;
/// h_inverse = d(phi(x^{(1)})) in O(1;n), so psi(f d) = h phi(f) d.
struct AutomorphismAction {
  FpMatrix phi;
  FpMatrix psi;
  Vec h_inverse;
};

/// Builds the admissible automorphism determined by params via divided-power
/// calculus and verifies that phi is a unital algebra automorphism and psi a
/// Lie automorphism. Throws std::invalid_argument on inadmissible params.
AutomorphismAction admissible_automorphism(const ZassenhausPair& Z, const AutomorphismParams& params);

/// q' = psi(e_{-1})^{-2} . psi(q); verifies that psi intertwines o_q and
/// o_{q'} on all basis pairs before returning.
Vec apply_isoq(const ZassenhausPair& Z, const Vec& q, const AutomorphismAction& act);

struct NormalFormResult {
  Vec q_nf;
  std::vector<AutomorphismParams> trace;
  /// True when the leading coefficient was scaled to 1; false when
  /// lambda^{nu+2} = q_nu^{-1} has no solution in F_p and the smallest
  /// achievable leading coefficient was kept instead.
  bool leading_coeff_one = true;
};

/// Normal form of q under admissible automorphisms (support in
/// {nu} union (nu + E_{nu+1}), leading coefficient normalized as far as the
/// field allows). Every elementary step is re-applied through apply_isoq.
/// Throws std::invalid_argument when q = 0.
NormalFormResult normal_form(const ZassenhausPair& Z, const Vec& q);

/// Exhaustive search for admissible params with apply_isoq(q) = q2.
/// Throws ResourceError when the parameter space exceeds the budget.
std::optional<AutomorphismParams> brute_force_iso(const ZassenhausPair& Z, const Vec& q,
                                                  const Vec& q2, std::size_t budget = 500);

}  // namespace tpa

#endif
