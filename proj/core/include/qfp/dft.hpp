#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qfp {

// Forward transform X[k] = sum_j x[j] exp(-2*pi*i*j*k/n), any length n.
// Powers of two go through radix-2 Cooley-Tukey; other lengths through a
// Bluestein chirp convolution, so prime n (the usual case here) still
// costs O(n log n).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> dft(std::span<const double> x);

}  // namespace qfp
