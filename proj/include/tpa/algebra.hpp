#ifndef TPA_ALGEBRA_HPP
#define TPA_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpa/linalg.hpp"

namespace tpa {

/// Structure-constant 3-tensor of a bilinear product on F_p^dim.
/// c[i][j][k] is the e_k coefficient of e_i * e_j. A sparse per-pair view is
/// kept alongside the dense storage and must be refreshed via finalize()
/// after direct writes.
struct StructureTensor {
  std::uint32_t p = 0;
  std::size_t dim = 0;
  Vec dense;  // dim^3 entries, index (i*dim + j)*dim + k

  StructureTensor() = default;
  StructureTensor(std::uint32_t prime, std::size_t d)
      : p(prime), dim(d), dense(d * d * d, 0), rows_(d * d) {}

  Scalar at(std::size_t i, std::size_t j, std::size_t k) const {
    return dense[(i * dim + j) * dim + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, Scalar c) {
    dense[(i * dim + j) * dim + k] = c % p;
  }
  void finalize();

  const std::vector<std::pair<std::uint32_t, Scalar>>& row(std::size_t i, std::size_t j) const {
    return rows_[i * dim + j];
  }

  /// Product of two coefficient vectors.
  Vec product(const Vec& x, const Vec& y) const;
  /// e_i * e_j as a coefficient vector.
  Vec basis_product(std::size_t i, std::size_t j) const;

  bool operator==(const StructureTensor& rhs) const {
    return p == rhs.p && dim == rhs.dim && dense == rhs.dense;
  }

 private:
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows_;
};

enum class Product { circ, bracket };

/// Finite-dimensional algebra over F_p with a commutative product candidate
/// (circ) and a bracket candidate. The tp_verified flag records that the
/// transposed Poisson axioms have been checked.
struct TwoProductAlgebra {
  std::uint32_t p = 0;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  StructureTensor circ;
  StructureTensor bracket;
  bool tp_verified = false;

  const StructureTensor& tensor(Product which) const {
    return which == Product::circ ? circ : bracket;
  }
  Vec circ_mul(const Vec& x, const Vec& y) const { return circ.product(x, y); }
  Vec bracket_mul(const Vec& x, const Vec& y) const { return bracket.product(x, y); }

  Vec basis_vec(std::size_t i) const;
  /// Left multiplication operator of x for the chosen product (P_x or Q_x).
  FpMatrix left_mult(Product which, const Vec& x) const;
  FpMatrix P_of(std::size_t i) const;  // P_{e_i}
  FpMatrix Q_of(std::size_t i) const;  // Q_{e_i}
};

TwoProductAlgebra make_algebra(std::uint32_t p, std::size_t dim);
TwoProductAlgebra zero_algebra(std::uint32_t p, std::size_t dim);
TwoProductAlgebra direct_sum(const TwoProductAlgebra& a, const TwoProductAlgebra& b);

struct IdentityWitness {
  std::vector<std::size_t> tuple;  // basis indices, order as in the identity
  Vec residual;                    // nonzero element witnessing the failure
};

struct IdentityReport {
  std::string identity_id;
  bool holds = true;
  std::optional<IdentityWitness> witness;
};

/// Identity catalog:
///   commutativity, associativity, anticommutativity, jacobi,
///   transposed_leibniz, lemma21, lemma22_rel3,
///   lemma22_<k>   (operator relations P_x^{2k} Q_y = ... for the given k >= 1),
///   lemma23_<k>_<s> (binomial operator relations for 1 <= s <= k).
/// Throws std::invalid_argument on an unknown id.
std::size_t identity_arity(const std::string& identity_id);

/// Residual of the identity at the given basis tuple; the zero vector means
/// the identity holds there. Used for witness replay.
Vec evaluate_identity_at(const TwoProductAlgebra& A, const std::string& identity_id,
                         const std::vector<std::size_t>& tuple);

/// Evaluates the identity on all basis tuples of the required arity.
/// Multilinearity makes the basis check exhaustive.
IdentityReport check_identity(const TwoProductAlgebra& A, const std::string& identity_id);

/// Runs the full transposed Poisson axiom suite (commutativity, associativity,
/// anticommutativity, jacobi, transposed_leibniz) and returns the first
/// failing report, or a passing report with id "tp_axioms".
IdentityReport check_tp_axioms(const TwoProductAlgebra& A);

/// Sets tp_verified after a successful axiom check; throws on failure.
void verify_tp(TwoProductAlgebra& A);

/// Smallest subspace containing the generators and closed under all P_x, Q_x.
Subspace ideal_closure(const TwoProductAlgebra& A, const std::vector<Vec>& generators);

std::optional<Vec> find_unit(const TwoProductAlgebra& A);

/// Smallest m with A^m = 0 for the descending power sequence of the chosen
/// product, or nullopt if none appears within dim + 1 steps.
std::optional<std::size_t> nilpotency_index(const TwoProductAlgebra& A, Product which);

/// Dimension of the span-closure of the generators under matrix
/// multiplication (the associative envelope), with early exit at dim^2.
std::size_t operator_envelope_dim(std::uint32_t p, std::size_t dim,
                                  const std::vector<FpMatrix>& generators);

enum class Simplicity { simple, not_simple, undecided };

struct SimplicityResult {
  Simplicity verdict = Simplicity::undecided;
  std::optional<Subspace> witness_ideal;  // present when not_simple (may be empty
                                          // for the flagged 1-dim convention)
  std::size_t envelope_dim = 0;
};

/// Three tiers: basis-generator ideal search, Burnside envelope, then a
/// seeded randomized submodule search. The 1-dimensional zero algebra is
/// reported not_simple unless trivial_one_dim_simple is set.
SimplicityResult simplicity(const TwoProductAlgebra& A, std::uint64_t seed = 0,
                            std::size_t random_budget = 64,
                            bool trivial_one_dim_simple = false);

enum class BlockKind { unital, nilpotent };

struct DecompositionBlock {
  Subspace space;
  BlockKind kind;
  std::optional<Vec> unit;  // in ambient coordinates, present for unital blocks
};

struct DecompositionResult {
  std::vector<DecompositionBlock> blocks;
};

struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Splits A along generalized eigenspaces of P_x (basis elements first, then
/// seeded random elements), refines leaves that are direct sums of ideals
/// found from generator closures, and classifies each leaf as unital or
/// circ-nilpotent. Throws DecompositionError when some leaf is neither or a
/// needed characteristic polynomial does not split over F_p.
DecompositionResult decompose(const TwoProductAlgebra& A, std::uint64_t seed = 0,
                              std::size_t random_budget = 16);

/// Structure constants of A restricted to an ideal, in the ideal's stored basis.
TwoProductAlgebra induced_algebra(const TwoProductAlgebra& A, const Subspace& block);

/// Rebuilds structure constants from the blocks (cross products zero); equals
/// the input tensors exactly for a valid decomposition.
TwoProductAlgebra reassemble(const TwoProductAlgebra& A, const DecompositionResult& dec);

/// Space of linear maps D with 2 D(x*y) = D(x)*y + x*D(y) for the chosen
/// product, as a subspace of the dim^2 operator space (row-major, D[r][c] at
/// index r*dim + c, columns are images of basis vectors).
Subspace half_derivations(const TwoProductAlgebra& A, Product which);

FpMatrix operator_from_flat(const TwoProductAlgebra& A, const Vec& flat);

/// Basis of the space of symmetric bilinear products satisfying the
/// transposed Leibniz rule against L's bracket. Associativity is not imposed.
/// Throws std::invalid_argument when the bracket is not a Lie bracket.
std::vector<StructureTensor> tp_structures_on(const TwoProductAlgebra& L);

/// Checks that psi(x, y) = lambda(x o y) is a commutative 2-cocycle of the
/// bracket; the report also notes (via witness absence) whether it holds.
IdentityReport cocycle_check(const TwoProductAlgebra& A, const Vec& lambda);

/// Whether lambda(x o y) is not identically zero on basis pairs.
bool cocycle_nonzero(const TwoProductAlgebra& A, const Vec& lambda);

}  // namespace tpa

#endif
