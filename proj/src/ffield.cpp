#include "tpa/ffield.hpp"

namespace tpa {

bool is_prime(std::uint32_t m) {
  if (m < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime(p) || p < 3)
    throw std::invalid_argument("PrimeField: p must be an odd prime >= 3");
}

Scalar PrimeField::pow(Scalar base, std::uint64_t e) const {
  std::uint64_t r = 1, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Scalar>(r);
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p == 0) throw std::domain_error("PrimeField::inv: zero is not invertible");
  return pow(a % p, p - 2);
}

namespace {

// C(n, k) for digits 0 <= k <= n < p, by the multiplicative formula.
Scalar digit_binom(const PrimeField& F, std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Scalar num = 1, den = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    num = F.mul(num, (n - j + 1) % F.p);
    den = F.mul(den, j % F.p);
  }
  return F.mul(num, F.inv(den));
}

}  // namespace

Scalar binom_mod_p(std::uint64_t n, std::int64_t k, std::uint32_t p) {
  PrimeField F(p);
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  std::uint64_t kk = static_cast<std::uint64_t>(k);
  Scalar result = 1;
  while (n || kk) {
    std::uint32_t nd = static_cast<std::uint32_t>(n % p);
    std::uint32_t kd = static_cast<std::uint32_t>(kk % p);
    if (kd > nd) return 0;
    result = F.mul(result, digit_binom(F, nd, kd));
    n /= p;
    kk /= p;
  }
  return result;
}

Scalar dp_power_coeff(std::uint32_t a, std::uint32_t k, std::uint32_t p) {
  if (a < 1) throw std::invalid_argument("dp_power_coeff: a must be >= 1");
  PrimeField F(p);
  Scalar result = 1;
  for (std::uint64_t j = 1; j <= k; ++j)
    result = F.mul(result, binom_mod_p(j * a - 1, a - 1, p));
  return result;
}

}  // namespace tpa
