#include "qfp/coeffgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qfp/rng.hpp"

namespace qfp {

const char* to_string(SetMethod m) {
  switch (m) {
    case SetMethod::cyclic: return "cyclic";
    case SetMethod::aikps: return "aikps";
    case SetMethod::gap_subset_sum: return "gap_subset_sum";
    case SetMethod::random: return "random";
    case SetMethod::optimized: return "optimized";
    case SetMethod::explicit_set: return "explicit";
  }
  return "explicit";
}

SetMethod set_method_from_string(std::string_view s) {
  if (s == "cyclic") return SetMethod::cyclic;
  if (s == "aikps") return SetMethod::aikps;
  if (s == "gap_subset_sum" || s == "gap") return SetMethod::gap_subset_sum;
  if (s == "random") return SetMethod::random;
  if (s == "optimized") return SetMethod::optimized;
  if (s == "explicit") return SetMethod::explicit_set;
  throw PreconditionError("unknown coefficient-set method: " + std::string(s));
}

CoefficientSet cyclic_set(const Prime& p, std::int64_t d) {
  const std::int64_t m = p.value();
  if (d < 1 || d > m - 1) {
    throw PreconditionError("cyclic_set requires 1 <= d <= p-1 (coefficients repeat beyond the cycle)");
  }
  const std::int64_t g = primitive_root(p).value;
  CoefficientSet out{p, {}, SetMethod::cyclic, std::nullopt, std::nullopt};
  out.coeffs.reserve(static_cast<std::size_t>(d));
  std::int64_t k = 1;
  for (std::int64_t i = 0; i < d; ++i) {
    k = k * g % m;
    out.coeffs.push_back(k);
  }
  return out;
}

AikpsWindow aikps_window(const Prime& p, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("aikps requires eps > 0");
  const double log_p = std::log2(static_cast<double>(p.value()));
  const double hi = std::pow(log_p, 1.0 + eps);
  if (!(hi > 2.0)) {
    throw PreconditionError("aikps window empty: (log p)^(1+eps) must exceed 2");
  }
  AikpsWindow w;
  w.hi = hi;
  w.lo = hi / 2.0;
  w.small_primes = primes_in_range(w.lo, w.hi);
  w.s_max = static_cast<std::int64_t>(std::floor(std::pow(log_p, 1.0 + 2.0 * eps)));
  return w;
}

CoefficientSet aikps_set(const Prime& p, double eps) {
  const AikpsWindow w = aikps_window(p, eps);
  if (w.small_primes.empty()) {
    throw PreconditionError("no primes in AIKPS window");
  }
  const std::int64_t m = p.value();
  CoefficientSet out{p, {}, SetMethod::aikps, std::nullopt, std::nullopt};
  out.coeffs.reserve(w.small_primes.size() * static_cast<std::size_t>(w.s_max));
  for (std::int64_t r : w.small_primes) {
    const std::int64_t inv_r = mod_inverse(r, p);
    for (std::int64_t s = 1; s <= w.s_max; ++s) {
      out.coeffs.push_back(s % m * inv_r % m);
    }
  }
  return out;
}

CoefficientSet subset_sum_set(const ParamVector& params) {
  const std::size_t m = params.rank();
  if (m < 1) throw PreconditionError("subset_sum_set requires at least one generator");
  if (m > 30) throw PreconditionError("subset_sum_set requires m <= 30");
  const std::int64_t mod = params.p.value();
  const std::size_t d = std::size_t{1} << m;

  CoefficientSet out{params.p, {}, SetMethod::gap_subset_sum, params, std::nullopt};
  out.coeffs.resize(d);
  out.coeffs[0] = ((params.offset % mod) + mod) % mod;
  // Doubling: sums for indices [0, 2^i) extend to [2^i, 2^(i+1)) by adding
  // generator i, so bit i of the index selects t_{i+1}.
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t t = ((params.generators[i] % mod) + mod) % mod;
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t j = 0; j < half; ++j) {
      out.coeffs[half + j] = (out.coeffs[j] + t) % mod;
    }
  }
  return out;
}

bool is_proper_gap(const ParamVector& params) {
  const std::size_t m = params.rank();
  if (m < 1) throw PreconditionError("is_proper_gap requires at least one generator");
  if (m > 18) throw PreconditionError("is_proper_gap requires m <= 18");
  const std::int64_t mod = params.p.value();

  // Pigeonhole: 3^m distinct values cannot fit in a smaller group.
  double card = 1.0;
  for (std::size_t i = 0; i < m; ++i) card *= 3.0;
  if (card > static_cast<double>(mod)) return false;

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(mod), 0);
  std::vector<std::int64_t> gens(m);
  for (std::size_t i = 0; i < m; ++i) gens[i] = ((params.generators[i] % mod) + mod) % mod;
  const std::int64_t base = (2 * (((params.offset % mod) + mod) % mod)) % mod;

  std::int64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;

  // Odometer over digits n_i in {0,1,2}, updating the sum incrementally.
  std::vector<int> digits(m, 0);
  std::int64_t value = base;
  seen[static_cast<std::size_t>(value)] = 1;
  for (std::int64_t cnt = 1; cnt < total; ++cnt) {
    std::size_t i = 0;
    while (digits[i] == 2) {
      digits[i] = 0;
      value -= 2 * gens[i] % mod;
      if (value < 0) value += mod;
      ++i;
    }
    ++digits[i];
    value += gens[i];
    if (value >= mod) value -= mod;
    std::uint8_t& cell = seen[static_cast<std::size_t>(value)];
    if (cell) return false;
    cell = 1;
  }
  return true;
}

namespace {

double pow3(std::size_t m) {
  double v = 1.0;
  for (std::size_t i = 0; i < m; ++i) v *= 3.0;
  return v;
}

}  // namespace

ParamVector find_gap_params(const Prime& p, std::size_t m, GapSearchStrategy strategy,
                            std::uint64_t seed, std::int64_t attempt_cap) {
  if (m < 1) throw PreconditionError("find_gap_params requires m >= 1");
  const std::int64_t mod = p.value();
  if (pow3(m) > static_cast<double>(mod)) {
    throw PreconditionError("properness impossible: 3^m exceeds p");
  }

  std::int64_t attempts = 0;
  auto try_candidate = [&](ParamVector cand) -> std::optional<ParamVector> {
    ++attempts;
    if (is_proper_gap(cand)) return cand;
    return std::nullopt;
  };

  if (strategy == GapSearchStrategy::sequential) {
    // Scaled geometric candidates t_i = scale * 3^(i-1), offset 0.
    for (std::int64_t scale = 1; scale < mod && attempts < attempt_cap; ++scale) {
      ParamVector cand{p, 0, {}};
      cand.generators.resize(m);
      std::int64_t power = 1;
      for (std::size_t i = 0; i < m; ++i) {
        cand.generators[i] = scale % mod * power % mod;
        power = power * 3 % mod;
      }
      if (auto hit = try_candidate(std::move(cand))) return *hit;
    }
    // Deterministic fallback scan (fixed seed, independent of the caller's).
    std::mt19937_64 rng(0xD1CEu);
    while (attempts < attempt_cap) {
      ParamVector cand{p, uniform_int(rng, 0, mod - 1), {}};
      cand.generators.resize(m);
      for (std::size_t i = 0; i < m; ++i) cand.generators[i] = uniform_int(rng, 1, mod - 1);
      if (auto hit = try_candidate(std::move(cand))) return *hit;
    }
  } else {
    std::mt19937_64 rng(seed);
    while (attempts < attempt_cap) {
      ParamVector cand{p, uniform_int(rng, 0, mod - 1), {}};
      cand.generators.resize(m);
      for (std::size_t i = 0; i < m; ++i) cand.generators[i] = uniform_int(rng, 1, mod - 1);
      if (auto hit = try_candidate(std::move(cand))) return *hit;
    }
  }
  throw SearchExhausted("search exhausted after " + std::to_string(attempts) + " GAP candidates");
}

CoefficientSet random_set(const Prime& p, std::int64_t d, std::uint64_t seed) {
  if (d < 1) throw PreconditionError("random_set requires d >= 1");
  std::mt19937_64 rng(seed);
  CoefficientSet out{p, {}, SetMethod::random, std::nullopt, std::nullopt};
  out.coeffs.reserve(static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < d; ++i) {
    out.coeffs.push_back(uniform_int(rng, 1, p.value() - 1));
  }
  return out;
}

}  // namespace qfp
