/*
  Copyright (c) 2026 the twistrank project

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef TWISTRANK_SEARCH_HPP
#define TWISTRANK_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twistrank/intset.hpp"
#include "twistrank/para.hpp"

namespace twistrank::para {

struct SearchLimits {
  // Partial objects retained per level (the ratio table is the memory
  // hot spot); results beyond max_results are dropped (0 = unlimited).
  size_t max_level_objects = 1'000'000;
  size_t max_results = 0;
};

// Exhaustive finder; ground truth at small scale. Output is canonical:
// c is the minimum element, generators > 1 ascending; ordered by
// (c, generators) lexicographically.
std::vector<Parallelepiped> brute_force_search(const FiniteIntegerSet& s,
                                               unsigned n,
                                               const SearchLimits& limits = {});

struct EstimatorConfig {
  double T = 0;          // 0 = max(2, universe / 10)
  size_t prime_cap = 48; // candidate primes examined per window
};

struct PrimePairChoice {
  uint64_t p = 0;
  uint64_t q = 0;
  double score = 0;
};

// The pair p < q of admissible primes in [a, b] maximizing the smoothed
// density of S_p intersect S_q; ties break lexicographically on (p, q).
// Primes in `exclude` (and those not exceeding max(exclude)) are skipped.
// Throws InvalidArgument when fewer than two admissible primes remain.
PrimePairChoice select_prime_pair(const FiniteIntegerSet& s, uint64_t a,
                                  uint64_t b, const EstimatorConfig& config,
                                  const std::vector<uint64_t>& exclude = {});

struct Window {
  uint64_t a = 0;
  uint64_t b = 0;
};

// The least prime strictly above max(sigma_max, 12 / density_estimate).
uint64_t window_lower_bound(double density_estimate, uint64_t sigma_max);

// a = window_lower_bound(...); b = least integer with
// prod_{a<=p<=b} (1 - 1/p) <= density_estimate / 4. Throws
// InvalidArgument for a non-positive density, or when b would exceed
// prime_cap (the window is unreachable at desk scale).
Window compute_window(double density_estimate, uint64_t sigma_max,
                      uint64_t prime_cap = 2'000'000);

enum class WindowPolicy {
  Rigorous,   // windows from compute_window at every level
  Heuristic,  // fixed user window, empirical density maximization
};

struct GuidedPolicy {
  WindowPolicy window_policy = WindowPolicy::Heuristic;
  uint64_t window_a = 2;
  uint64_t window_b = 97;
  uint64_t universe_floor = 1000;
  EstimatorConfig estimator;
  uint64_t prime_cap = 2'000'000;
};

struct LevelTrace {
  unsigned dimension = 0;  // dimension remaining when the pair was chosen
  uint64_t p = 0;
  uint64_t q = 0;
  double score = 0;
  uint64_t universe = 0;   // universe of the set the pair was chosen from
  size_t set_size = 0;
};

struct SearchTrace {
  std::vector<LevelTrace> levels;  // outermost first
  uint64_t base_c0 = 0;

  std::string to_text() const;
};

struct GuidedResult {
  bool found = false;
  Parallelepiped para{Rat(1), {Rat(1)}};  // meaningful iff found
  SearchTrace trace;
  std::string exhausted_reason;  // meaningful iff !found
  unsigned failed_dimension = 0;
};

// The inductive construction: pick a prime pair (p, q), recurse on
// S_p intersect S_q with sigma' = sigma + {p, q}, unwind with c' = p*c
// and generator q/p. Exhausted is a value, not an error.
GuidedResult guided_search(const FiniteIntegerSet& s, unsigned n,
                           std::vector<uint64_t> sigma,
                           const GuidedPolicy& policy);

}  // namespace twistrank::para

#endif
