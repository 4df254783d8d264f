#include "qfp/dft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qfp {

namespace {

using cd = std::complex<double>;

void fft_pow2(std::vector<cd>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const cd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd u = a[i + k];
        const cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (cd& v : a) v /= static_cast<double>(n);
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::vector<cd> dft_naive(std::span<const cd> x) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(j * k % n) / static_cast<double>(n);
      acc += x[j] * cd(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Bluestein: jk = (j^2 + k^2 - (k-j)^2) / 2 turns the transform into a
// circular convolution of chirped sequences. Exponents use k^2 mod 2n to
// keep the trig arguments small.
std::vector<cd> dft_bluestein(std::span<const cd> x) {
  const std::size_t n = x.size();
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  std::vector<cd> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t sq = static_cast<std::uint64_t>(k) * k % two_n;
    const double ang = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
    chirp[k] = cd(std::cos(ang), std::sin(ang));
  }
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cd> a(m, cd(0.0, 0.0));
  std::vector<cd> b(m, cd(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = x[k] * chirp[k];
    b[k] = std::conj(chirp[k]);
    if (k > 0) b[m - k] = std::conj(chirp[k]);
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, true);
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = chirp[k] * a[k];
  return out;
}

}  // namespace

std::vector<cd> dft(std::span<const cd> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (n < 32) return dft_naive(x);
  if ((n & (n - 1)) == 0) {
    std::vector<cd> a(x.begin(), x.end());
    fft_pow2(a, false);
    return a;
  }
  return dft_bluestein(x);
}

std::vector<cd> dft(std::span<const double> x) {
  std::vector<cd> tmp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = cd(x[i], 0.0);
  return dft(std::span<const cd>(tmp));
}

}  // namespace qfp
