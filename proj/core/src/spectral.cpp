#include "qfp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qfp/dft.hpp"

namespace qfp {

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

// |sum_j exp(2 pi i k_j x / p)|^2 for every x in [0, p), direct sums.
std::vector<double> sum_moduli_direct(std::span<const std::int64_t> coeffs, std::int64_t p) {
  std::vector<double> out(static_cast<std::size_t>(p));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  for (std::int64_t x = 0; x < p; ++x) {
    double re = 0.0, im = 0.0;
    for (std::int64_t k : coeffs) {
      const double ang = step * static_cast<double>(mod_mul(reduce(k, p), x, p));
      re += std::cos(ang);
      im += std::sin(ang);
    }
    out[static_cast<std::size_t>(x)] = re * re + im * im;
  }
  return out;
}

// Same quantity through a length-p transform of the residue histogram.
std::vector<double> sum_moduli_dense(std::span<const std::int64_t> coeffs, std::int64_t p) {
  std::vector<double> hist(static_cast<std::size_t>(p), 0.0);
  for (std::int64_t k : coeffs) hist[static_cast<std::size_t>(reduce(k, p))] += 1.0;
  const auto spectrum = dft(std::span<const double>(hist));
  std::vector<double> out(static_cast<std::size_t>(p));
  for (std::int64_t x = 0; x < p; ++x) {
    out[static_cast<std::size_t>(x)] = std::norm(spectrum[static_cast<std::size_t>(x)]);
  }
  return out;
}

std::vector<double> sum_moduli(std::span<const std::int64_t> coeffs, std::int64_t p) {
  const bool dense = static_cast<double>(coeffs.size()) > std::log2(static_cast<double>(p)) && p >= 64;
  return dense ? sum_moduli_dense(coeffs, p) : sum_moduli_direct(coeffs, p);
}

std::vector<std::int64_t> dedup(std::span<const std::int64_t> values, std::int64_t p) {
  std::vector<std::int64_t> set;
  set.reserve(values.size());
  for (std::int64_t v : values) set.push_back(reduce(v, p));
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

double acceptance_probability(const CoefficientSet& K, std::int64_t x) {
  if (x < 0) throw PreconditionError("acceptance_probability requires x >= 0");
  if (K.coeffs.empty()) throw PreconditionError("empty coefficient set");
  const std::int64_t p = K.p.value();
  const std::int64_t xr = reduce(x, p);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
  double sum = 0.0;
  for (std::int64_t k : K.coeffs) {
    sum += std::cos(step * static_cast<double>(mod_mul(reduce(k, p), xr, p)));
  }
  const double d = static_cast<double>(K.coeffs.size());
  return (sum / d) * (sum / d);
}

ErrorProfile epsilon_of(const CoefficientSet& K, bool keep_profile) {
  if (K.coeffs.empty()) throw PreconditionError("empty coefficient set");
  const std::int64_t p = K.p.value();
  const double d2 = static_cast<double>(K.coeffs.size()) * static_cast<double>(K.coeffs.size());

  const auto moduli = sum_moduli(K.coeffs, p);
  ErrorProfile out;
  out.argmax_x = 1;
  if (keep_profile) out.per_x.resize(static_cast<std::size_t>(p - 1));
  for (std::int64_t x = 1; x < p; ++x) {
    const double v = moduli[static_cast<std::size_t>(x)] / d2;
    if (keep_profile) out.per_x[static_cast<std::size_t>(x - 1)] = v;
    if (v > out.epsilon) {
      out.epsilon = v;
      out.argmax_x = x;
    }
  }
  return out;
}

std::int64_t additive_energy(std::span<const std::int64_t> values, const Prime& pr) {
  if (values.empty()) throw PreconditionError("empty set");
  if (values.size() > (std::size_t{1} << 16)) {
    throw PreconditionError("additive_energy requires |A| <= 2^16");
  }
  const std::int64_t p = pr.value();
  std::vector<std::int64_t> reduced;
  reduced.reserve(values.size());
  for (std::int64_t v : values) reduced.push_back(reduce(v, p));

  std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
  for (std::int64_t a : reduced) {
    for (std::int64_t b : reduced) {
      std::int64_t s = a + b;
      if (s >= p) s -= p;
      ++counts[static_cast<std::size_t>(s)];
    }
  }
  std::int64_t energy = 0;
  for (std::int64_t c : counts) energy += c * c;
  return energy;
}

std::int64_t additive_energy(const CoefficientSet& A) {
  return additive_energy(std::span<const std::int64_t>(A.coeffs), A.p);
}

std::map<std::int64_t, std::int64_t> solution_count_profile(const ParamVector& params) {
  const std::size_t m = params.rank();
  if (m > 16) throw PreconditionError("solution_count_profile requires m <= 16");
  if (!is_proper_gap(params)) {
    throw PreconditionError("solution_count_profile requires a proper GAP (counts are ambiguous otherwise)");
  }
  const std::int64_t p = params.p.value();
  std::vector<std::int64_t> gens(m);
  for (std::size_t i = 0; i < m; ++i) gens[i] = reduce(params.generators[i], p);
  const std::int64_t base = reduce(2 * reduce(params.offset, p), p);

  std::map<std::int64_t, std::int64_t> profile;
  std::int64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  std::vector<int> digits(m, 0);
  std::int64_t value = base;
  int ones = 0;
  profile[value] = 1;
  for (std::int64_t cnt = 1; cnt < total; ++cnt) {
    std::size_t i = 0;
    while (digits[i] == 2) {
      digits[i] = 0;
      value -= 2 * gens[i] % p;
      if (value < 0) value += p;
      ++i;
    }
    // digit moves 0->1 (gains a one) or 1->2 (loses a one)
    ones += digits[i] == 0 ? 1 : -1;
    ++digits[i];
    value += gens[i];
    if (value >= p) value -= p;
    profile[value] = std::int64_t{1} << ones;
  }
  return profile;
}

AdditiveStats fourier_bias(const CoefficientSet& A) {
  if (A.coeffs.empty()) throw PreconditionError("empty set");
  const std::int64_t p = A.p.value();
  const auto set = dedup(A.coeffs, p);

  AdditiveStats stats;
  stats.density = static_cast<double>(set.size()) / static_cast<double>(p);
  stats.energy = additive_energy(std::span<const std::int64_t>(set), A.p);

  // |1_A hat(xi)| = |sum_a e(-xi a / p)| / p; the modulus profile is the
  // same one epsilon_of uses (conjugation does not change it).
  const auto moduli = sum_moduli(set, p);
  double best = 0.0;
  for (std::int64_t xi = 1; xi < p; ++xi) {
    best = std::max(best, moduli[static_cast<std::size_t>(xi)]);
  }
  stats.fourier_bias = std::sqrt(best) / static_cast<double>(p);
  return stats;
}

bool verify_bias_energy_bound(const CoefficientSet& A, double tol) {
  const auto set = dedup(A.coeffs, A.p.value());
  if (set.size() > (std::size_t{1} << 12)) {
    throw PreconditionError("verify_bias_energy_bound requires |A| <= 2^12");
  }
  CoefficientSet dedup_set{A.p, set, A.method, std::nullopt, std::nullopt};
  const AdditiveStats stats = fourier_bias(dedup_set);
  const double p = static_cast<double>(A.p.value());
  const double u = stats.fourier_bias;
  const double dens = stats.density;
  const double mid = static_cast<double>(stats.energy) / (p * p * p) - dens * dens * dens * dens;
  const bool lower = u * u * u * u <= mid + tol;
  const bool upper = mid <= u * u * dens + tol;
  return lower && upper;
}

GapTheoremReport verify_gap_theorem(const ParamVector& params) {
  const std::size_t m = params.rank();
  double card = 1.0;
  for (std::size_t i = 0; i < m; ++i) card *= 3.0;
  if (card > static_cast<double>(params.p.value())) {
    throw PreconditionError("properness impossible: 3^m exceeds p");
  }
  if (!is_proper_gap(params)) {
    throw PreconditionError("not a proper GAP");
  }
  GapTheoremReport report;
  report.epsilon_exact = epsilon_of(subset_sum_set(params)).epsilon;
  report.bound_sqrt_p_over_d =
      std::sqrt(static_cast<double>(params.p.value()) / std::pow(2.0, static_cast<double>(m)));
  report.holds = report.epsilon_exact <= report.bound_sqrt_p_over_d + 1e-9;
  return report;
}

}  // namespace qfp
