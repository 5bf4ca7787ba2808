#ifndef TPA_SUPERALG_HPP
#define TPA_SUPERALG_HPP

#include <cstdint>
#include <vector>

#include "tpa/algebra.hpp"

namespace tpa {

/// Z_2-graded algebra over F_p; basis is the even basis followed by the odd
/// basis. The product tensor respects the grading and super-commutativity
/// (verified at construction sites, not enforced by the type).
struct SuperAlgebra {
  std::uint32_t p = 0;
  std::size_t even_dim = 0;
  std::size_t odd_dim = 0;
  StructureTensor product;

  std::size_t dim() const { return even_dim + odd_dim; }
  /// Parity of the i-th basis element (0 = even, 1 = odd).
  unsigned parity(std::size_t i) const { return i < even_dim ? 0 : 1; }
};

/// Algebra with a single product and no symmetry assumption.
struct OneProductAlgebra {
  std::uint32_t p = 0;
  std::size_t dim = 0;
  StructureTensor product;
};

/// Kantor double J(P) = P + P^s with x*y = x o y, x*y^s = (x o y)^s,
/// x^s*y = (x o y)^s, x^s*y^s = [x, y]. Requires A.tp_verified; the grading
/// and super-commutativity invariants are checked before returning.
SuperAlgebra kantor_double(const TwoProductAlgebra& A);

/// Super-commutativity u*v = (-1)^{|u||v|} v*u on homogeneous basis pairs.
IdentityReport check_super_commutativity(const SuperAlgebra& S);

/// Linearized operator-form graded Jordan identity on homogeneous basis
/// quadruples (x, y, z, w):
///   ((-1)^{|x||z|} [L_{x*y}, L_z]^s + (-1)^{|y||x|} [L_{y*z}, L_x]^s
///    + (-1)^{|z||y|} [L_{z*x}, L_y]^s)(w) = 0,
/// with [A, B]^s = AB - (-1)^{|A||B|} BA.
IdentityReport check_jordan_super(const SuperAlgebra& S);

/// x . y = x o y + [x, y].
OneProductAlgebra depolarize(const TwoProductAlgebra& A);

/// x o y = (x.y + y.x)/2, [x, y] = (x.y - y.x)/2. Exact inverse of
/// depolarize.
TwoProductAlgebra polarize(const OneProductAlgebra& L);

/// The two weak-Leibniz identities on all basis triples:
///   (x.y).z - (y.x).z = 2 x.(y.z) - 2 y.(x.z)        ("weak_leibniz_1")
///   x.(y.z) - x.(z.y) = 2 (x.y).z - 2 (x.z).y        ("weak_leibniz_2")
IdentityReport check_weak_leibniz(const OneProductAlgebra& L);

enum class QpDiagnosis { diagonalizable, nilpotent, neither };

struct QpResult {
  FpMatrix Q;  // bracket-adjoint of the circ unit
  QpDiagnosis diagnosis = QpDiagnosis::neither;
  std::vector<Scalar> spectrum;    // eigenvalues when diagonalizable
  FpPolynomial minimal_polynomial; // reported for the "neither" case too
};

/// Diagnostics of the distinguished operator Q = ad(1) of a unital algebra.
/// Throws std::invalid_argument when A has no circ unit.
QpResult qp_operator(const TwoProductAlgebra& A);

}  // namespace tpa

#endif
