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

#include "twistrank/search.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "twistrank/arith.hpp"
#include "twistrank/density.hpp"
#include "twistrank/errors.hpp"

namespace twistrank::para {

namespace {

// Partial object of the level-wise builder: base c (always an element of
// the set) and the generator multiset, kept sorted ascending.
struct PartialBox {
  uint64_t c = 0;
  std::vector<Rat> gens;
};

bool rat_vector_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

bool partial_less(const PartialBox& a, const PartialBox& b) {
  if (a.c != b.c) return a.c < b.c;
  return rat_vector_less(a.gens, b.gens);
}

std::string gens_key(const std::vector<Rat>& gens) {
  std::string key;
  for (const Rat& g : gens) {
    key += g.get_str();
    key += '|';
  }
  return key;
}

}  // namespace

std::vector<Parallelepiped> brute_force_search(const FiniteIntegerSet& s,
                                               unsigned n,
                                               const SearchLimits& limits) {
  if (n < 1) throw InvalidArgument("brute_force_search: n must be >= 1");

  const auto& elems = s.elements();

  // Level 1: pairs x < y with non-square ratio.
  std::vector<PartialBox> level;
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = i + 1; j < elems.size(); ++j) {
      Rat ratio(Int(static_cast<unsigned long>(elems[j])),
                Int(static_cast<unsigned long>(elems[i])));
      ratio.canonicalize();
      if (rat_is_square(ratio)) continue;
      level.push_back({elems[i], {std::move(ratio)}});
    }
  }
  std::sort(level.begin(), level.end(), partial_less);
  if (level.size() > limits.max_level_objects) {
    level.resize(limits.max_level_objects);
  }

  // Level k+1: pairs of level-k objects with identical generator
  // multisets whose bases are related by a (non-square) common ratio.
  // Requiring the new ratio to be >= the largest current generator
  // enumerates each box exactly once (split at its largest generator).
  for (unsigned depth = 1; depth < n; ++depth) {
    std::map<std::string, std::vector<const PartialBox*>> groups;
    for (const PartialBox& box : level) {
      groups[gens_key(box.gens)].push_back(&box);
    }
    std::vector<PartialBox> next;
    for (auto& [key, members] : groups) {
      (void)key;
      for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = i + 1; j < members.size(); ++j) {
          const PartialBox& lo = *members[i];
          const PartialBox& hi = *members[j];
          Rat ratio(Int(static_cast<unsigned long>(hi.c)),
                    Int(static_cast<unsigned long>(lo.c)));
          ratio.canonicalize();
          if (cmp(ratio, lo.gens.back()) < 0) continue;
          if (rat_is_square(ratio)) continue;
          PartialBox merged;
          merged.c = lo.c;
          merged.gens = lo.gens;
          merged.gens.push_back(std::move(ratio));
          next.push_back(std::move(merged));
        }
      }
    }
    std::sort(next.begin(), next.end(), partial_less);
    if (next.size() > limits.max_level_objects) {
      next.resize(limits.max_level_objects);
    }
    level = std::move(next);
  }

  std::vector<Parallelepiped> results;
  for (const PartialBox& box : level) {
    Parallelepiped p = Parallelepiped::make(
        Rat(Int(static_cast<unsigned long>(box.c))), box.gens);
    if (!is_strict(p)) continue;
    if (!verify_in_set(p, s)) continue;
    results.push_back(std::move(p));
    if (limits.max_results != 0 && results.size() == limits.max_results) {
      break;
    }
  }
  return results;
}

namespace {

double estimator_T(const EstimatorConfig& config, uint64_t universe) {
  if (config.T > 1) return config.T;
  return std::max(2.0, static_cast<double>(universe) / 10.0);
}

std::vector<uint64_t> admissible_primes(uint64_t a, uint64_t b,
                                        const std::vector<uint64_t>& exclude,
                                        size_t cap) {
  uint64_t threshold = 0;
  for (uint64_t p : exclude) threshold = std::max(threshold, p);
  std::vector<uint64_t> primes;
  for (uint64_t p : arith::primes_up_to(b)) {
    if (p < a || p <= threshold) continue;
    primes.push_back(p);
    if (primes.size() == cap) break;
  }
  return primes;
}

}  // namespace

PrimePairChoice select_prime_pair(const FiniteIntegerSet& s, uint64_t a,
                                  uint64_t b, const EstimatorConfig& config,
                                  const std::vector<uint64_t>& exclude) {
  if (a > b) throw InvalidArgument("select_prime_pair: a > b");
  const auto primes = admissible_primes(a, b, exclude, config.prime_cap);
  if (primes.size() < 2) {
    throw InvalidArgument(
        "select_prime_pair: window holds fewer than two admissible primes");
  }

  const double T = estimator_T(config, s.universe());

  std::vector<FiniteIntegerSet> divided;
  divided.reserve(primes.size());
  for (uint64_t p : primes) divided.push_back(density::divide_set(s, p));

  PrimePairChoice best;
  bool have = false;
  for (size_t i = 0; i < primes.size(); ++i) {
    for (size_t j = i + 1; j < primes.size(); ++j) {
      const FiniteIntegerSet inter =
          set_intersection(divided[i], divided[j]);
      double score = 0;
      if (inter.universe() >= 2 && !inter.empty()) {
        score = density::smoothed_density(inter, T).value;
      }
      if (!have || score > best.score) {
        best = {primes[i], primes[j], score};
        have = true;
      }
    }
  }
  return best;
}

uint64_t window_lower_bound(double density_estimate, uint64_t sigma_max) {
  if (!(density_estimate > 0)) {
    throw InvalidArgument("compute_window: density estimate must be positive");
  }
  const double threshold =
      std::max(static_cast<double>(sigma_max), 12.0 / density_estimate);
  // next_prime_above(floor(threshold)) exceeds floor(threshold), hence
  // the real threshold too.
  return arith::next_prime_above(static_cast<uint64_t>(threshold));
}

Window compute_window(double density_estimate, uint64_t sigma_max,
                      uint64_t prime_cap) {
  Window w;
  w.a = window_lower_bound(density_estimate, sigma_max);

  const double target = density_estimate / 4.0;
  double product = 1.0;
  for (uint64_t p : arith::primes_up_to(prime_cap)) {
    if (p < w.a) continue;
    product *= 1.0 - 1.0 / static_cast<double>(p);
    if (product <= target) {
      w.b = p;
      return w;
    }
  }
  throw InvalidArgument(
      "compute_window: Euler product does not reach the target below the "
      "prime cap");
}

std::string SearchTrace::to_text() const {
  std::ostringstream out;
  for (const LevelTrace& level : levels) {
    out << "level n=" << level.dimension << ": (p,q)=(" << level.p << ","
        << level.q << ") score=" << level.score
        << " universe=" << level.universe << " size=" << level.set_size
        << "\n";
  }
  out << "base c0=" << base_c0 << "\n";
  return out.str();
}

namespace {

struct GuidedFailure {
  std::string reason;
  unsigned dimension = 0;
};

// Recursive worker: fills pairs (outermost first) and the base element.
bool guided_recurse(const FiniteIntegerSet& s, unsigned n,
                    std::vector<uint64_t>& sigma, const GuidedPolicy& policy,
                    SearchTrace& trace, GuidedFailure& failure) {
  if (s.universe() < policy.universe_floor) {
    failure = {"universe underflow: bound " + std::to_string(s.universe()) +
                   " below floor " + std::to_string(policy.universe_floor),
               n};
    return false;
  }

  Window window{policy.window_a, policy.window_b};
  if (policy.window_policy == WindowPolicy::Rigorous) {
    const double T = estimator_T(policy.estimator, s.universe());
    double dhat = 0;
    if (!s.empty()) dhat = density::smoothed_density(s, T).value;
    if (!(dhat > 0)) {
      failure = {"density estimate vanished", n};
      return false;
    }
    uint64_t sigma_max = 0;
    for (uint64_t p : sigma) sigma_max = std::max(sigma_max, p);
    try {
      window = compute_window(dhat, sigma_max, policy.prime_cap);
    } catch (const InvalidArgument& e) {
      failure = {e.what(), n};
      return false;
    }
  }

  PrimePairChoice choice;
  try {
    choice = select_prime_pair(s, window.a, window.b, policy.estimator, sigma);
  } catch (const InvalidArgument& e) {
    failure = {e.what(), n};
    return false;
  }

  trace.levels.push_back(
      {n, choice.p, choice.q, choice.score, s.universe(), s.size()});

  const FiniteIntegerSet next = set_intersection(
      density::divide_set(s, choice.p), density::divide_set(s, choice.q));

  if (n == 1) {
    // Base case: smallest element of the deepest intersection.
    if (next.empty()) {
      failure = {"empty base intersection", n};
      return false;
    }
    trace.base_c0 = next.elements().front();
    sigma.push_back(choice.p);
    sigma.push_back(choice.q);
    return true;
  }

  sigma.push_back(choice.p);
  sigma.push_back(choice.q);
  return guided_recurse(next, n - 1, sigma, policy, trace, failure);
}

}  // namespace

GuidedResult guided_search(const FiniteIntegerSet& s, unsigned n,
                           std::vector<uint64_t> sigma,
                           const GuidedPolicy& policy) {
  if (n < 1) throw InvalidArgument("guided_search: n must be >= 1");

  GuidedResult result;
  GuidedFailure failure;
  if (!guided_recurse(s, n, sigma, policy, result.trace, failure)) {
    result.found = false;
    result.exhausted_reason = failure.reason;
    result.failed_dimension = failure.dimension;
    return result;
  }

  // Unwind: c = (prod of level p's) * c0; generator q_i/p_i, where the
  // deepest level contributes generator index 0.
  Rat c(Int(static_cast<unsigned long>(result.trace.base_c0)));
  std::vector<Rat> gens;
  for (auto it = result.trace.levels.rbegin();
       it != result.trace.levels.rend(); ++it) {
    Rat gen(Int(static_cast<unsigned long>(it->q)),
            Int(static_cast<unsigned long>(it->p)));
    gen.canonicalize();
    gens.push_back(std::move(gen));
    c *= Rat(Int(static_cast<unsigned long>(it->p)));
  }

  result.para = Parallelepiped::make(std::move(c), std::move(gens));
  result.found = true;

  // Soundness is asserted on every return.
  if (!is_strict(result.para) || !verify_in_set(result.para, s)) {
    throw Error("guided_search: internal soundness check failed");
  }
  return result;
}

}  // namespace twistrank::para
