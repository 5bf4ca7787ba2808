#include "tpa/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpa {

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix I(p, n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("FpMatrix: shape mismatch in product");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t aik = at(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) = static_cast<Scalar>((out.at(i, j) + aik * rhs.at(k, j)) % p_);
      }
    }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("FpMatrix: shape mismatch in sum");
  PrimeField F(p_);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.add(out.a_[i], rhs.a_[i]);
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("FpMatrix: shape mismatch in difference");
  PrimeField F(p_);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F.sub(out.a_[i], rhs.a_[i]);
  return out;
}

FpMatrix FpMatrix::scaled(Scalar c) const {
  PrimeField F(p_);
  FpMatrix out = *this;
  for (Scalar& x : out.a_) x = F.mul(x, c);
  return out;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("FpMatrix::pow: non-square matrix");
  FpMatrix r = identity(p_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

Vec FpMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("FpMatrix::apply: size mismatch");
  Vec out(rows_, 0);
  for (std::size_t j = 0; j < cols_; ++j) {
    std::uint64_t vj = v[j];
    if (!vj) continue;
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = static_cast<Scalar>((out[i] + vj * at(i, j)) % p_);
  }
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Scalar x) { return x == 0; });
}

FpMatrix FpMatrix::from_flat(std::uint32_t p, std::size_t rows, std::size_t cols, const Vec& flat) {
  if (flat.size() != rows * cols) throw std::invalid_argument("FpMatrix::from_flat: size mismatch");
  FpMatrix M(p, rows, cols);
  std::copy(flat.begin(), flat.end(), M.a_.begin());
  return M;
}

// ---------------------------------------------------------------------------

RrefBasis::RrefBasis(std::uint32_t p, std::size_t ambient) : F_(p), ambient_(ambient) {}

Vec RrefBasis::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = v[pivots_[r]];
    if (!c) continue;
    const Vec& row = rows_[r];
    for (std::size_t j = pivots_[r]; j < ambient_; ++j)
      if (row[j]) v[j] = F_.sub(v[j], F_.mul(c, row[j]));
  }
  return v;
}

bool RrefBasis::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
}

bool RrefBasis::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < ambient_ && v[piv] == 0) ++piv;
  if (piv == ambient_) return false;
  Scalar inv = F_.inv(v[piv]);
  for (std::size_t j = piv; j < ambient_; ++j) v[j] = F_.mul(v[j], inv);
  // Eliminate the new pivot from existing rows to keep full RREF.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = rows_[r][piv];
    if (!c) continue;
    for (std::size_t j = piv; j < ambient_; ++j)
      if (v[j]) rows_[r][j] = F_.sub(rows_[r][j], F_.mul(c, v[j]));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, piv);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

Subspace RrefBasis::to_subspace() const {
  return Subspace{F_.p, ambient_, rows_};
}

Subspace span_of(std::uint32_t p, std::size_t ambient, const std::vector<Vec>& vectors) {
  RrefBasis b(p, ambient);
  for (const Vec& v : vectors) b.insert(v);
  return b.to_subspace();
}

bool Subspace::contains(const Vec& v) const {
  RrefBasis b(p, ambient);
  for (const Vec& row : basis) b.insert(row);
  return b.contains(v);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  PrimeField F(p);
  Vec rem = v, coords(basis.size(), 0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    std::size_t piv = 0;
    while (piv < ambient && basis[r][piv] == 0) ++piv;
    Scalar c = rem[piv];  // pivot entry of basis[r] is 1
    coords[r] = c;
    if (!c) continue;
    for (std::size_t j = piv; j < ambient; ++j)
      if (basis[r][j]) rem[j] = F.sub(rem[j], F.mul(c, basis[r][j]));
  }
  if (!std::all_of(rem.begin(), rem.end(), [](Scalar x) { return x == 0; })) return std::nullopt;
  return coords;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.p != b.p || a.ambient != b.ambient)
    throw std::invalid_argument("intersect: mismatched ambient spaces");
  // Zassenhaus-style: kernel of the map (x, y) -> x - y restricted to A x B.
  std::size_t da = a.dim(), db = b.dim(), n = a.ambient;
  FpMatrix M(a.p, n, da + db);
  PrimeField F(a.p);
  for (std::size_t c = 0; c < da; ++c)
    for (std::size_t i = 0; i < n; ++i) M.at(i, c) = a.basis[c][i];
  for (std::size_t c = 0; c < db; ++c)
    for (std::size_t i = 0; i < n; ++i) M.at(i, da + c) = F.neg(b.basis[c][i]);
  Subspace ker = nullspace(M);
  RrefBasis out(a.p, n);
  for (const Vec& k : ker.basis) {
    Vec v(n, 0);
    for (std::size_t c = 0; c < da; ++c)
      for (std::size_t i = 0; i < n; ++i) v[i] = F.add(v[i], F.mul(k[c], a.basis[c][i]));
    out.insert(v);
  }
  return out.to_subspace();
}

Subspace nullspace(const FpMatrix& M) {
  std::uint32_t p = M.prime();
  PrimeField F(p);
  std::size_t rows = M.rows(), cols = M.cols();
  // RREF of M.
  std::vector<Vec> a(rows, Vec(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = M.at(i, j);
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    Scalar inv = F.inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = F.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  // Free columns parameterize the kernel.
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  RrefBasis basis(p, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(cols, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = F.neg(a[i][c]);
    basis.insert(std::move(v));
  }
  return basis.to_subspace();
}

Subspace nullspace_of_rows(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows) {
  PrimeField F(p);
  RrefBasis rref(p, cols);
  for (const Vec& r : rows) rref.insert(r);
  Subspace rs = rref.to_subspace();
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(cols, false);
  for (const Vec& row : rs.basis) {
    std::size_t piv = 0;
    while (row[piv] == 0) ++piv;
    pivots.push_back(piv);
    is_pivot[piv] = true;
  }
  RrefBasis kernel(p, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(cols, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(rs.basis[r][c]);
    kernel.insert(std::move(v));
  }
  return kernel.to_subspace();
}

std::optional<Vec> solve(const FpMatrix& M, const Vec& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("solve: dimension mismatch");
  std::uint32_t p = M.prime();
  PrimeField F(p);
  std::size_t rows = M.rows(), cols = M.cols();
  std::vector<Vec> a(rows, Vec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = M.at(i, j);
    a[i][cols] = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    Scalar inv = F.inv(a[r][c]);
    for (std::size_t j = c; j <= cols; ++j) a[r][j] = F.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;  // inconsistent
  Vec x(cols, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = a[i][cols];
  return x;
}

// ---------------------------------------------------------------------------

Scalar FpPolynomial::eval(Scalar x) const {
  PrimeField F(p);
  Scalar acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
  return acc;
}

FpMatrix FpPolynomial::eval_matrix(const FpMatrix& M) const {
  FpMatrix acc(p, M.rows(), M.cols());
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * M;
    for (std::size_t d = 0; d < M.rows(); ++d)
      acc.at(d, d) = PrimeField(p).add(acc.at(d, d), coeffs[i]);
  }
  return acc;
}

void FpPolynomial::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::size_t FpPolynomial::root_multiplicity(Scalar lambda) const {
  PrimeField F(p);
  Vec c = coeffs;
  std::size_t mult = 0;
  while (c.size() > 0) {
    // Synthetic division by (t - lambda): quotient q, remainder rem.
    Vec q(c.size() > 1 ? c.size() - 1 : 0, 0);
    Scalar carry = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      Scalar v = F.add(c[i], F.mul(carry, lambda));
      if (i == 0) {
        if (v != 0) return mult;
      } else {
        q[i - 1] = v;
      }
      carry = v;
    }
    ++mult;
    c = std::move(q);
  }
  return mult;
}

FpPolynomial char_poly(const FpMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("char_poly: non-square matrix");
  std::uint32_t p = A.prime();
  PrimeField F(p);
  std::size_t n = A.rows();
  // Berkowitz recursion; poly stored highest degree first during the loop.
  Vec poly = {1};
  for (std::size_t r = 1; r <= n; ++r) {
    // Toeplitz coefficients t_0..t_r for the leading principal r x r block.
    Vec t(r + 1, 0);
    t[0] = 1;
    t[1] = F.neg(A.at(r - 1, r - 1));
    if (r >= 2) {
      std::size_t m = r - 1;
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = A.at(i, r - 1);
      for (std::size_t k = 2; k <= r; ++k) {
        std::uint64_t dot = 0;
        for (std::size_t i = 0; i < m; ++i) dot += static_cast<std::uint64_t>(A.at(r - 1, i)) * v[i];
        t[k] = F.neg(static_cast<Scalar>(dot % p));
        if (k < r) {
          Vec nv(m, 0);
          for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < m; ++j)
              acc += static_cast<std::uint64_t>(A.at(i, j)) * v[j];
            nv[i] = static_cast<Scalar>(acc % p);
          }
          v = std::move(nv);
        }
      }
    }
    Vec next(r + 1, 0);
    for (std::size_t i = 0; i <= r; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < poly.size(); ++j)
        if (i >= j && i - j <= r) acc += static_cast<std::uint64_t>(t[i - j]) * poly[j];
      next[i] = static_cast<Scalar>(acc % p);
    }
    poly = std::move(next);
  }
  FpPolynomial out{p, Vec(poly.rbegin(), poly.rend())};
  out.trim();
  return out;
}

FpPolynomial min_poly(const FpMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("min_poly: non-square matrix");
  std::uint32_t p = M.prime();
  std::size_t n = M.rows();
  PrimeField F(p);
  // Vectorized powers I, M, M^2, ... until the first linear dependence.
  std::vector<Vec> powers;
  RrefBasis basis(p, n * n);
  FpMatrix P = FpMatrix::identity(p, n);
  while (true) {
    powers.push_back(P.flat());
    if (!basis.insert(P.flat())) break;
    P = P * M;
  }
  std::size_t d = powers.size() - 1;  // M^d depends on lower powers
  FpMatrix K(p, n * n, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < n * n; ++i) K.at(i, c) = powers[c][i];
  Vec target = powers[d];
  Vec sol = *solve(K, target);
  FpPolynomial out{p, Vec(d + 1, 0)};
  for (std::size_t i = 0; i < d; ++i) out.coeffs[i] = F.neg(sol[i]);
  out.coeffs[d] = 1;
  return out;
}

EigenResult eigenvalues_in_Fp(const FpMatrix& M) {
  FpPolynomial chi = char_poly(M);
  EigenResult res;
  std::size_t total = 0;
  for (Scalar lambda = 0; lambda < M.prime(); ++lambda) {
    if (chi.eval(lambda) != 0) continue;
    std::size_t mult = chi.root_multiplicity(lambda);
    res.roots.emplace_back(lambda, mult);
    total += mult;
  }
  res.splits = (total == M.rows());
  return res;
}

Subspace generalized_eigenspace(const FpMatrix& M, Scalar lambda) {
  if (M.rows() != M.cols()) throw std::invalid_argument("generalized_eigenspace: non-square");
  PrimeField F(M.prime());
  FpMatrix S = M;
  for (std::size_t i = 0; i < S.rows(); ++i) S.at(i, i) = F.sub(S.at(i, i), lambda);
  return nullspace(S.pow(M.rows()));
}

}  // namespace tpa
