#include "qfp/zp_math.hpp"

#include <cmath>
#include <string>

namespace qfp {

namespace {
constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t value) : value_(value) {
  if (value < 2 || value > kMaxModulus) {
    throw PreconditionError("modulus out of supported range [2, 2^31]: " + std::to_string(value));
  }
  if (!is_prime(value)) {
    throw PreconditionError("modulus is not prime: " + std::to_string(value));
  }
}

ZpElement make_zp(std::int64_t raw, Prime p) noexcept {
  const std::int64_t m = p.value();
  std::int64_t v = raw % m;
  if (v < 0) v += m;
  return ZpElement{v, p};
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) noexcept {
  return (a % p) * (b % p) % p;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) noexcept {
  std::int64_t acc = 1 % p;
  std::int64_t b = base % p;
  if (b < 0) b += p;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return acc;
}

std::int64_t mod_inverse(std::int64_t a, const Prime& p) {
  const std::int64_t m = p.value();
  std::int64_t v = a % m;
  if (v < 0) v += m;
  if (v == 0) throw PreconditionError("no inverse: element is zero mod " + std::to_string(m));
  return mod_pow(v, m - 2, m);
}

ZpElement mod_inverse(const ZpElement& a) {
  return ZpElement{mod_inverse(a.value, a.modulus), a.modulus};
}

ZpElement primitive_root(const Prime& p) {
  const std::int64_t m = p.value();
  if (m == 2) return ZpElement{1, p};

  // Prime factors of p-1, for the order test g^((p-1)/q) != 1.
  std::vector<std::int64_t> factors;
  std::int64_t n = m - 1;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      factors.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) factors.push_back(n);

  for (std::int64_t g = 2; g < m; ++g) {
    bool generator = true;
    for (std::int64_t q : factors) {
      if (mod_pow(g, (m - 1) / q, m) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return ZpElement{g, p};
  }
  throw PreconditionError("no primitive root found (unreachable for prime modulus)");
}

std::int64_t multiplicative_order(std::int64_t a, const Prime& p) {
  const std::int64_t m = p.value();
  std::int64_t v = a % m;
  if (v < 0) v += m;
  if (v == 0) throw PreconditionError("order undefined for zero element");
  std::int64_t acc = v;
  std::int64_t order = 1;
  while (acc != 1) {
    acc = acc * v % m;
    ++order;
  }
  return order;
}

std::vector<std::int64_t> primes_in_range(double lo, double hi) {
  if (!(lo > 0.0) || !(lo < hi)) {
    throw PreconditionError("primes_in_range requires 0 < lo < hi");
  }
  std::vector<std::int64_t> out;
  std::int64_t first = static_cast<std::int64_t>(std::floor(lo)) + 1;
  if (first < 2) first = 2;
  const std::int64_t last = static_cast<std::int64_t>(std::ceil(hi)) - 1;
  for (std::int64_t r = first; r <= last; ++r) {
    if (static_cast<double>(r) > lo && static_cast<double>(r) < hi && is_prime(r)) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace qfp
