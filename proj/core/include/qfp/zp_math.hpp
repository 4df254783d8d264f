#pragma once

#include <cstdint>
#include <vector>

#include "qfp/errors.hpp"

namespace qfp {

// Deterministic primality check (trial division); valid for n <= 2^31.
bool is_prime(std::int64_t n) noexcept;

// A certified prime modulus. Construction validates once; copies are free.
// The range cap 2^31 keeps every product of two reduced elements inside
// a signed 64-bit integer, so all arithmetic here is exact.
class Prime {
 public:
  explicit Prime(std::int64_t value);
  std::int64_t value() const noexcept { return value_; }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::int64_t value_;
};

// An element of Z_p, kept reduced to [0, p).
struct ZpElement {
  std::int64_t value;
  Prime modulus;
};

// Reduces an arbitrary (possibly negative) integer into Z_p.
ZpElement make_zp(std::int64_t raw, Prime p) noexcept;

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) noexcept;
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) noexcept;

// Multiplicative inverse mod p; a must be nonzero mod p.
std::int64_t mod_inverse(std::int64_t a, const Prime& p);
ZpElement mod_inverse(const ZpElement& a);

// Smallest generator of Z_p^*. The degenerate case p = 2 returns 1 (the
// group is trivial, every nonzero element has order 1).
ZpElement primitive_root(const Prime& p);

// Order of a in Z_p^* by exhaustive powering; a must be nonzero mod p.
std::int64_t multiplicative_order(std::int64_t a, const Prime& p);

// All primes r with lo < r < hi (both strict), ascending. Requires
// 0 < lo < hi. An empty result is valid.
std::vector<std::int64_t> primes_in_range(double lo, double hi);

}  // namespace qfp
