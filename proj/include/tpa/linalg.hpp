#ifndef TPA_LINALG_HPP
#define TPA_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tpa/ffield.hpp"

namespace tpa {

/// Dense matrix over F_p with exact arithmetic.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static FpMatrix identity(std::uint32_t p, std::size_t n);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  FpMatrix operator-(const FpMatrix& rhs) const;
  FpMatrix scaled(Scalar c) const;
  FpMatrix pow(std::uint64_t e) const;
  Vec apply(const Vec& v) const;
  bool is_zero() const;
  bool operator==(const FpMatrix& rhs) const = default;

  /// Row-major flattening, used to treat operators as vectors of length rows*cols.
  const Vec& flat() const { return a_; }
  static FpMatrix from_flat(std::uint32_t p, std::size_t rows, std::size_t cols, const Vec& flat);

 private:
  std::uint32_t p_ = 0;
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

/// Linear subspace of F_p^n stored with a canonical reduced-echelon basis,
/// so equal subspaces compare equal field by field.
struct Subspace {
  std::uint32_t p = 0;
  std::size_t ambient = 0;
  std::vector<Vec> basis;  // reduced echelon rows, sorted by pivot

  std::size_t dim() const { return basis.size(); }
  bool contains(const Vec& v) const;
  /// Coordinates of v in the stored basis, or nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool operator==(const Subspace& rhs) const = default;
};

/// Incrementally maintained reduced echelon basis. Insertion keeps the full
/// RREF invariant, so to_subspace() is canonical at any point.
class RrefBasis {
 public:
  RrefBasis(std::uint32_t p, std::size_t ambient);

  /// Reduces v against the current rows and inserts the residual if nonzero.
  /// Returns true when the rank grew.
  bool insert(Vec v);
  /// Residual of v after reduction against the current rows.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  Subspace to_subspace() const;

 private:
  PrimeField F_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;  // parallel to rows_, strictly increasing
};

Subspace span_of(std::uint32_t p, std::size_t ambient, const std::vector<Vec>& vectors);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Full solution space of M v = 0.
Subspace nullspace(const FpMatrix& M);

/// Common solution space of the given equation rows (each of length cols),
/// built incrementally; suited to large sparse systems assembled row by row.
Subspace nullspace_of_rows(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows);

/// One solution of M v = b, or nullopt when the system is inconsistent.
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<Vec> solve(const FpMatrix& M, const Vec& b);

/// Polynomial over F_p, coefficients stored lowest degree first with the
/// top coefficient nonzero (the zero polynomial has an empty list).
struct FpPolynomial {
  std::uint32_t p = 0;
  Vec coeffs;

  bool is_zero() const { return coeffs.empty(); }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Scalar eval(Scalar x) const;
  FpMatrix eval_matrix(const FpMatrix& M) const;
  void trim();
  /// Multiplicity of lambda as a root (count of (t - lambda) factors).
  std::size_t root_multiplicity(Scalar lambda) const;
  bool operator==(const FpPolynomial& rhs) const = default;
};

/// Characteristic polynomial det(tI - M) by the division-free Berkowitz
/// recursion, valid over any F_p. Throws on a non-square matrix.
FpPolynomial char_poly(const FpMatrix& M);

/// Minimal polynomial, from the first linear dependence among I, M, M^2, ...
FpPolynomial min_poly(const FpMatrix& M);

struct EigenResult {
  std::vector<std::pair<Scalar, std::size_t>> roots;  // (lambda, multiplicity)
  bool splits = false;  // multiplicities sum to dim
};

/// All eigenvalues of M in F_p, by scanning the p field elements.
EigenResult eigenvalues_in_Fp(const FpMatrix& M);

/// Kernel of (M - lambda I)^dim.
Subspace generalized_eigenspace(const FpMatrix& M, Scalar lambda);

}  // namespace tpa

#endif
