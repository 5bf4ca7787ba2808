#ifndef TPA_FFIELD_HPP
#define TPA_FFIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tpa {

/// Canonical representative of an element of F_p, always in [0, p).
using Scalar = std::uint32_t;

/// Coefficient vector of an algebra element over a fixed ordered basis.
using Vec = std::vector<Scalar>;

bool is_prime(std::uint32_t m);

/// Arithmetic in the prime field F_p for an odd prime p >= 3.
/// All inputs are assumed reduced; all outputs are reduced.
struct PrimeField {
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime);

  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
  }
  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p ? s - p : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p);
  }
  Scalar pow(Scalar base, std::uint64_t e) const;
  Scalar inv(Scalar a) const;  // throws std::domain_error on a == 0
};

/// C(n, k) mod p computed digit-wise in base p (Lucas). Returns 0 when
/// k < 0 or k > n. Throws std::invalid_argument unless p is an odd prime.
Scalar binom_mod_p(std::uint64_t n, std::int64_t k, std::uint32_t p);

/// Coefficient of x^{(ak)} in the k-th divided power of x^{(a)}, mod p.
/// Computed as the division-free product prod_{j=1..k} C(ja-1, a-1);
/// the integer value is (ak)! / (k! (a!)^k).
Scalar dp_power_coeff(std::uint32_t a, std::uint32_t k, std::uint32_t p);

}  // namespace tpa

#endif
