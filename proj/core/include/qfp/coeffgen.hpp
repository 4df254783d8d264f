#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qfp/zp_math.hpp"

namespace qfp {

enum class SetMethod { cyclic, aikps, gap_subset_sum, random, optimized, explicit_set };

const char* to_string(SetMethod m);
SetMethod set_method_from_string(std::string_view s);

// The shallow parameters (t_0; t_1..t_m): an offset plus m generators,
// all reduced mod p. They induce the 2^m subset-sum coefficients.
struct ParamVector {
  Prime p;
  std::int64_t offset = 0;                  // t_0
  std::vector<std::int64_t> generators;     // t_1..t_m

  std::size_t rank() const { return generators.size(); }
};

// An ordered multiset of rotation multipliers k_1..k_d in Z_p. Duplicates
// are allowed; order matters because circuit subspaces index into it.
struct CoefficientSet {
  Prime p;
  std::vector<std::int64_t> coeffs;
  SetMethod method = SetMethod::explicit_set;
  std::optional<ParamVector> params;   // present for subset-sum provenance
  std::optional<bool> proper;          // recorded properness of the inducing GAP

  std::size_t size() const { return coeffs.size(); }
};

// k_i = g^i mod p for i = 1..d, with g the smallest primitive root.
// Requires 1 <= d <= p-1; beyond that the cycle would repeat.
CoefficientSet cyclic_set(const Prime& p, std::int64_t d);

// The AIKPS construction window. All logarithms are base 2.
//   R = primes strictly between (log p)^(1+eps)/2 and (log p)^(1+eps)
//   S = {1 .. floor((log p)^(1+2*eps))}
struct AikpsWindow {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::int64_t> small_primes;  // R, ascending
  std::int64_t s_max = 0;                  // |S|
};

AikpsWindow aikps_window(const Prime& p, double eps);

// All s * r^{-1} mod p for r in R, s in S, ordered by (r, s).
CoefficientSet aikps_set(const Prime& p, double eps);

// d = 2^m coefficients; index j (binary expansion j = sum b_i 2^(i-1))
// maps to t_0 + sum_{i : b_i = 1} t_i mod p. The index order is what the
// circuit builders align control-basis states with.
CoefficientSet subset_sum_set(const ParamVector& params);

// True iff the 3^m values 2*t_0 + sum n_i t_i (n_i in {0,1,2}) are
// pairwise distinct mod p. Requires m <= 18.
bool is_proper_gap(const ParamVector& params);

enum class GapSearchStrategy { sequential, random };

// Finds parameters passing is_proper_gap. Sequential tries scaled
// geometric candidates (t_i = scale * 3^(i-1)) and then a fixed-seed
// scan; random samples uniformly from the given seed. Throws
// PreconditionError when 3^m > p (pigeonhole) and SearchExhausted when
// the attempt cap runs out.
ParamVector find_gap_params(const Prime& p, std::size_t m, GapSearchStrategy strategy,
                            std::uint64_t seed = 0, std::int64_t attempt_cap = 1'000'000);

// d independent uniform draws from {1..p-1}, reproducible from the seed.
CoefficientSet random_set(const Prime& p, std::int64_t d, std::uint64_t seed);

}  // namespace qfp
