#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qfp/coeffgen.hpp"

namespace qfp {

// Worst-case normalized exponential sum of a coefficient set, with the
// maximizing x and (optionally) the whole per-x profile. x = 0 is
// excluded from the maximization: the sum is identically 1 there, which
// would make the quantity useless as an error bound.
struct ErrorProfile {
  double epsilon = 0.0;
  std::int64_t argmax_x = 0;
  std::vector<double> per_x;  // per_x[i] = value at x = i+1; empty unless requested
};

// (1/d^2) * (sum_i cos(2 pi k_i x / p))^2: the probability that the
// automaton wrongly accepts the word of length x (equals 1 when x = 0
// mod p). Requires x >= 0.
double acceptance_probability(const CoefficientSet& K, std::int64_t x);

// max over x in {1..p-1} of (1/d^2) |sum_j exp(2 pi i k_j x / p)|^2.
// Direct O(p d) evaluation by default; a dense transform path when
// d > log2 p. Ties break toward the smallest x.
ErrorProfile epsilon_of(const CoefficientSet& K, bool keep_profile = false);

// Number of quadruples (a, b, a', b') with a + b = a' + b' mod p,
// counting list positions (duplicates count separately). Computed as
// sum_n R_n^2 from one pass over ordered pairs. Requires |A| <= 2^16.
std::int64_t additive_energy(const CoefficientSet& A);
std::int64_t additive_energy(std::span<const std::int64_t> values, const Prime& p);

// For a proper GAP: R_n = 2^(#{i : gamma_i = 1}) over representable
// n = 2 t_0 + sum gamma_i t_i (gamma in {0,1,2}^m); unrepresentable n
// are absent (count 0). Requires m <= 16 and a proper GAP.
std::map<std::int64_t, std::int64_t> solution_count_profile(const ParamVector& params);

struct AdditiveStats {
  std::int64_t energy = 0;     // E(A,A) of the deduplicated set
  double fourier_bias = 0.0;   // max nontrivial normalized Fourier coefficient
  double density = 0.0;        // |A| / p
};

// Deduplicates A, then reports bias = max over xi != 0 of
// |(1/p) sum_a exp(-2 pi i xi a / p)|, the set density, and the set's
// additive energy.
AdditiveStats fourier_bias(const CoefficientSet& A);

// Checks ||A||_U^4 <= E(A,A)/p^3 - P(A)^4 <= ||A||_U^2 P(A) on the
// deduplicated set. A false return signals a broken invariant, not an
// input error. Requires |A| <= 2^12.
bool verify_bias_energy_bound(const CoefficientSet& A, double tol = 1e-12);

struct GapTheoremReport {
  double epsilon_exact = 0.0;
  double bound_sqrt_p_over_d = 0.0;
  bool holds = false;
};

// Exact epsilon of subset_sum_set(params) against sqrt(p / 2^m).
GapTheoremReport verify_gap_theorem(const ParamVector& params);

}  // namespace qfp
