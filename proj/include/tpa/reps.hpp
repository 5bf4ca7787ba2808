#ifndef TPA_REPS_HPP
#define TPA_REPS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tpa/zassenhaus.hpp"

namespace tpa {

/// A representation (alpha, beta, V) of a transposed Poisson algebra:
/// alpha[i], beta[i] are the images of the i-th basis element as
/// module_dim x module_dim matrices over F_p.
struct Representation {
  TwoProductAlgebra algebra;
  std::size_t module_dim = 0;
  std::vector<FpMatrix> alpha;
  std::vector<FpMatrix> beta;

  FpMatrix alpha_of(const Vec& x) const;
  FpMatrix beta_of(const Vec& x) const;
};

/// The representation M_q(a) of W_n(q) on W(1;n) itself:
/// alpha(e_i) = bullet multiplication by e_i . q,
/// beta(e_i)  = ad(e_i) + bullet multiplication by e_i . a.
Representation build_M(const ZassenhausPair& Z, const Vec& q, const Vec& a);

/// Checks the four defining conditions (alpha associative action, beta Lie
/// action, the two compatibility equations) plus the derived relations on all
/// basis tuples; when the algebra is unital and beta != 0, also checks
/// alpha(unit) = identity. The failing condition's name is reported with a
/// witness (residual = flattened matrix).
IdentityReport check_representation(const Representation& R);

enum class Irreducibility { irreducible, reducible, undecided };

struct IrreducibilityResult {
  Irreducibility verdict = Irreducibility::undecided;
  std::optional<Subspace> witness;  // proper nonzero invariant subspace when reducible
  std::size_t envelope_dim = 0;
};

/// Tier (a): invariant subspaces generated by standard basis vectors;
/// tier (b): Burnside — envelope of the alpha/beta images spanning all of
/// End(V); tier (c): seeded random vector closures; else undecided.
IrreducibilityResult irreducible(const Representation& R, std::uint64_t seed = 0,
                                 std::size_t random_budget = 32);

/// Lemma 5.12 twist: alpha replaced by x -> alpha(x . q^{-1}) (or
/// x -> alpha(x . q) when converse is set), beta unchanged; the algebra
/// reference is replaced by the correspondingly mutated algebra.
/// Throws std::invalid_argument when q is not bullet-invertible.
Representation twist(const Representation& R, const ZassenhausPair& Z, const Vec& q,
                     bool converse = false);

/// Block-diagonal direct sum of two representations of the same algebra.
Representation rep_direct_sum(const Representation& a, const Representation& b);

/// Experimental seeded heuristic: searches for an invertible T with
/// T alpha_1(x) = alpha_2(x) T and T beta_1(x) = beta_2(x) T by solving the
/// intertwiner space and sampling; nullopt means "none found", not a proof.
std::optional<FpMatrix> rep_iso_search(const Representation& r1, const Representation& r2,
                                       std::uint64_t seed = 0, std::size_t budget = 32);

}  // namespace tpa

#endif
