#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qfp/simulator.hpp"
#include "qfp/spectral.hpp"

namespace qfp {

// Discrete objective over integer coordinate vectors; lower is better.
using DiscreteObjective = std::function<double(std::span<const std::int64_t>)>;

struct SearchResult {
  std::vector<std::int64_t> best_point;
  double best_value = 0.0;
  std::vector<std::pair<std::int64_t, double>> trace;  // (iteration, value) at accepted steps
  std::int64_t evaluations = 0;
};

// Exact discrete line search per coordinate: every value in [0, domain)
// is scored, the argmin wins (ties toward the smallest value), and the
// sweep loop stops at the first sweep without change or at max_sweeps.
SearchResult coordinate_descent(std::vector<std::int64_t> init, const DiscreteObjective& f,
                                std::int64_t domain, int max_sweeps = 50);

// Exhaustive search over [0, domain)^dims. Throws PreconditionError with
// a size estimate when the space exceeds cap.
SearchResult brute_force(std::size_t dims, std::int64_t domain, const DiscreteObjective& f,
                         std::int64_t cap = 100'000'000);

// Coordinate descent on the leading coordinates, exhaustive enumeration
// of the trailing brute_suffix coordinates. brute_suffix = 0 reduces to
// plain coordinate_descent.
SearchResult hybrid_search(std::vector<std::int64_t> init, const DiscreteObjective& f,
                           std::int64_t domain, std::size_t brute_suffix, int max_sweeps = 50,
                           std::int64_t cap = 100'000'000);

// Best of `restarts` coordinate descents from seeded random initial
// points; deterministic for a fixed seed.
SearchResult best_of_restarts(std::size_t restarts, std::uint64_t seed, std::size_t dims,
                              std::int64_t domain, const DiscreteObjective& f, int max_sweeps = 50);

// epsilon_of as an objective value.
double objective_epsilon(const CoefficientSet& K);

// Separation objective around one member length:
//   max{ Prob(r) : r mod p != 0, 1 <= r <= window_max } - Prob(member_probe)
// Lower is better; maximizing the member/non-member gap. paper_sign flips
// the sign to the literal form Prob(member) - max{...} (which, minimized,
// drives the member probability down; kept available behind the flag).
struct SeparationSpec {
  Prime p;
  std::int64_t member_probe = 0;
  std::int64_t window_max = 0;
  std::optional<NoiseModel> noise;  // nullopt: exact noiseless probabilities
  bool paper_sign = false;
};

double objective_separation(const SeparationSpec& spec, const ParamVector& params);
double objective_separation(const SeparationSpec& spec, const CoefficientSet& K);

// Objective adapters over raw coordinate vectors.
// Point layout for shallow parameters: (t_0, t_1, .., t_m).
DiscreteObjective epsilon_objective_for_params(Prime p);
DiscreteObjective epsilon_objective_for_coeffs(Prime p);
DiscreteObjective separation_objective_for_params(SeparationSpec spec);
DiscreteObjective separation_objective_for_coeffs(SeparationSpec spec);

}  // namespace qfp
