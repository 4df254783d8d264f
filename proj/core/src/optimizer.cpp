#include "qfp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qfp/rng.hpp"

namespace qfp {

SearchResult coordinate_descent(std::vector<std::int64_t> init, const DiscreteObjective& f,
                                std::int64_t domain, int max_sweeps) {
  if (init.empty()) throw PreconditionError("coordinate_descent needs at least one coordinate");
  if (domain < 1) throw PreconditionError("empty coordinate domain");

  SearchResult res;
  res.best_point = std::move(init);
  res.best_value = f(res.best_point);
  res.evaluations = 1;
  std::int64_t iteration = 0;
  res.trace.emplace_back(iteration, res.best_value);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t coord = 0; coord < res.best_point.size(); ++coord) {
      const std::int64_t old_value = res.best_point[coord];
      std::int64_t arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::int64_t v = 0; v < domain; ++v) {
        res.best_point[coord] = v;
        const double fv = f(res.best_point);
        ++res.evaluations;
        if (fv < best) {  // strict: ties keep the smallest coordinate value
          best = fv;
          arg = v;
        }
      }
      res.best_point[coord] = arg;
      if (arg != old_value) {
        changed = true;
        res.best_value = best;
        res.trace.emplace_back(++iteration, best);
      } else {
        res.best_value = best;
      }
    }
    if (!changed) break;
  }
  return res;
}

SearchResult brute_force(std::size_t dims, std::int64_t domain, const DiscreteObjective& f,
                         std::int64_t cap) {
  if (dims == 0) throw PreconditionError("brute_force needs at least one coordinate");
  double size = 1.0;
  for (std::size_t i = 0; i < dims; ++i) size *= static_cast<double>(domain);
  if (size > static_cast<double>(cap)) {
    throw PreconditionError("search space too large: ~" + std::to_string(size) + " points > cap " +
                            std::to_string(cap));
  }

  SearchResult res;
  std::vector<std::int64_t> point(dims, 0);
  res.best_point = point;
  res.best_value = std::numeric_limits<double>::infinity();
  std::int64_t iteration = 0;
  while (true) {
    const double fv = f(point);
    ++res.evaluations;
    if (fv < res.best_value) {  // first minimum wins: lexicographically smallest
      res.best_value = fv;
      res.best_point = point;
      res.trace.emplace_back(iteration, fv);
    }
    ++iteration;
    std::size_t i = 0;
    while (i < dims && ++point[i] == domain) {
      point[i] = 0;
      ++i;
    }
    if (i == dims) break;
  }
  return res;
}

SearchResult hybrid_search(std::vector<std::int64_t> init, const DiscreteObjective& f,
                           std::int64_t domain, std::size_t brute_suffix, int max_sweeps,
                           std::int64_t cap) {
  if (brute_suffix > init.size()) {
    throw PreconditionError("brute-force suffix longer than the point");
  }
  if (brute_suffix == 0) return coordinate_descent(std::move(init), f, domain, max_sweeps);

  double suffix_size = 1.0;
  for (std::size_t i = 0; i < brute_suffix; ++i) suffix_size *= static_cast<double>(domain);
  if (suffix_size > static_cast<double>(cap)) {
    throw PreconditionError("search space too large: suffix ~" + std::to_string(suffix_size) +
                            " points > cap " + std::to_string(cap));
  }

  const std::size_t prefix = init.size() - brute_suffix;
  SearchResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> suffix(brute_suffix, 0);
  std::int64_t iteration = 0;
  while (true) {
    std::vector<std::int64_t> point = init;
    std::copy(suffix.begin(), suffix.end(), point.begin() + static_cast<std::ptrdiff_t>(prefix));

    SearchResult inner;
    if (prefix == 0) {
      inner.best_point = point;
      inner.best_value = f(point);
      inner.evaluations = 1;
    } else {
      // Descend only over the prefix coordinates, suffix pinned.
      auto pinned = [&](std::span<const std::int64_t> pfx) {
        std::vector<std::int64_t> full(pfx.begin(), pfx.end());
        full.insert(full.end(), suffix.begin(), suffix.end());
        return f(full);
      };
      std::vector<std::int64_t> pfx(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(prefix));
      inner = coordinate_descent(std::move(pfx), pinned, domain, max_sweeps);
      inner.best_point.insert(inner.best_point.end(), suffix.begin(), suffix.end());
    }
    best.evaluations += inner.evaluations;
    if (inner.best_value < best.best_value) {
      best.best_value = inner.best_value;
      best.best_point = inner.best_point;
      best.trace.emplace_back(iteration, inner.best_value);
    }
    ++iteration;
    std::size_t i = 0;
    while (i < brute_suffix && ++suffix[i] == domain) {
      suffix[i] = 0;
      ++i;
    }
    if (i == brute_suffix) break;
  }
  return best;
}

SearchResult best_of_restarts(std::size_t restarts, std::uint64_t seed, std::size_t dims,
                              std::int64_t domain, const DiscreteObjective& f, int max_sweeps) {
  if (restarts == 0) throw PreconditionError("best_of_restarts needs restarts >= 1");
  SearchResult best;
  best.best_value = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(split_seed(seed, r));
    std::vector<std::int64_t> init(dims);
    for (auto& v : init) v = uniform_int(rng, 0, domain - 1);
    SearchResult run = coordinate_descent(std::move(init), f, domain, max_sweeps);
    best.evaluations += run.evaluations;
    if (run.best_value < best.best_value) {
      best.best_value = run.best_value;
      best.best_point = run.best_point;
      best.trace.emplace_back(static_cast<std::int64_t>(r), run.best_value);
    }
  }
  return best;
}

double objective_epsilon(const CoefficientSet& K) { return epsilon_of(K).epsilon; }

namespace {

double separation_from_probs(const SeparationSpec& spec, const std::vector<double>& probs) {
  // probs[i] = acceptance at word length i+1, i+1 <= window_max
  const std::int64_t p = spec.p.value();
  double worst_nonmember = 0.0;
  for (std::int64_t r = 1; r <= spec.window_max; ++r) {
    if (r % p == 0) continue;
    worst_nonmember = std::max(worst_nonmember, probs[static_cast<std::size_t>(r - 1)]);
  }
  const double member = probs[static_cast<std::size_t>(spec.member_probe - 1)];
  const double value = worst_nonmember - member;
  return spec.paper_sign ? -value : value;
}

void check_spec(const SeparationSpec& spec) {
  if (spec.member_probe < 1 || spec.window_max < spec.member_probe) {
    throw PreconditionError("separation objective needs 1 <= member_probe <= window_max");
  }
}

}  // namespace

double objective_separation(const SeparationSpec& spec, const ParamVector& params) {
  check_spec(spec);
  std::vector<double> probs;
  if (spec.noise) {
    probs = noisy_accept_profile(params, spec.window_max, *spec.noise);
  } else {
    const CoefficientSet K = subset_sum_set(params);
    probs.reserve(static_cast<std::size_t>(spec.window_max));
    for (std::int64_t r = 1; r <= spec.window_max; ++r) {
      probs.push_back(acceptance_probability(K, r));
    }
  }
  return separation_from_probs(spec, probs);
}

double objective_separation(const SeparationSpec& spec, const CoefficientSet& K) {
  check_spec(spec);
  std::vector<double> probs;
  if (spec.noise) {
    probs = noisy_accept_profile(K, spec.window_max, *spec.noise);
  } else {
    probs.reserve(static_cast<std::size_t>(spec.window_max));
    for (std::int64_t r = 1; r <= spec.window_max; ++r) {
      probs.push_back(acceptance_probability(K, r));
    }
  }
  return separation_from_probs(spec, probs);
}

DiscreteObjective epsilon_objective_for_params(Prime p) {
  return [p](std::span<const std::int64_t> point) {
    ParamVector params{p, point[0], {point.begin() + 1, point.end()}};
    return objective_epsilon(subset_sum_set(params));
  };
}

DiscreteObjective epsilon_objective_for_coeffs(Prime p) {
  return [p](std::span<const std::int64_t> point) {
    CoefficientSet K{p, {point.begin(), point.end()}, SetMethod::optimized, std::nullopt,
                     std::nullopt};
    return objective_epsilon(K);
  };
}

DiscreteObjective separation_objective_for_params(SeparationSpec spec) {
  return [spec](std::span<const std::int64_t> point) {
    ParamVector params{spec.p, point[0], {point.begin() + 1, point.end()}};
    return objective_separation(spec, params);
  };
}

DiscreteObjective separation_objective_for_coeffs(SeparationSpec spec) {
  return [spec](std::span<const std::int64_t> point) {
    CoefficientSet K{spec.p, {point.begin(), point.end()}, SetMethod::optimized, std::nullopt,
                     std::nullopt};
    return objective_separation(spec, K);
  };
}

}  // namespace qfp
