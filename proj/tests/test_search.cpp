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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_util.hpp"
#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"
#include "twistrank/search.hpp"

using namespace twistrank;
using namespace twistrank::para;

namespace {

// Naive oracle for n = 2: scan ordered triples (e0, e1, e2) with
// e1 < e2, both above e0, and accept when e1*e2/e0 lands in the set and
// the generator classes are independent.
std::vector<Parallelepiped> naive_two_boxes(const FiniteIntegerSet& s) {
  std::vector<Parallelepiped> out;
  const auto& e = s.elements();
  for (size_t i = 0; i < e.size(); ++i) {
    for (size_t j = i + 1; j < e.size(); ++j) {
      for (size_t k = j + 1; k < e.size(); ++k) {
        const uint64_t prod = e[j] * e[k];
        if (prod % e[i] != 0) continue;
        const uint64_t top = prod / e[i];
        if (top <= e[k] || !s.contains(top)) continue;
        Rat g1(Int((unsigned long)e[j]), Int((unsigned long)e[i]));
        Rat g2(Int((unsigned long)e[k]), Int((unsigned long)e[i]));
        g1.canonicalize();
        g2.canonicalize();
        const auto box = Parallelepiped::make(
            Rat(Int((unsigned long)e[i])), {g1, g2});
        if (!is_strict(box)) continue;
        out.push_back(box);
      }
    }
  }
  return out;
}

std::string record_set(const std::vector<Parallelepiped>& boxes) {
  std::string all;
  for (const auto& b : boxes) {
    all += format_record(b);
    all += '\n';
  }
  return all;
}

}  // namespace

TEST_CASE("brute force examples") {
  const auto found2 = brute_force_search(FiniteIntegerSet::interval(1, 6), 2);
  REQUIRE(found2.size() == 2);
  CHECK(format_record(found2[0]) == "c=1; gens=2,3; elements=1,2,3,6");
  CHECK(format_record(found2[1]) == "c=2; gens=3/2,2; elements=2,3,4,6");

  CHECK(brute_force_search(FiniteIntegerSet({1, 2, 4}), 2).empty());
  CHECK(brute_force_search(FiniteIntegerSet({17}), 1).empty());
  CHECK_THROWS_AS(brute_force_search(FiniteIntegerSet({1, 2}), 0),
                  InvalidArgument);
}

TEST_CASE("brute force n=1 lists non-square ratios") {
  const auto found = brute_force_search(FiniteIntegerSet({1, 4, 6}), 1);
  // Pairs: (1,4) ratio 4 square, rejected; (1,6) and (4,6) survive.
  REQUIRE(found.size() == 2);
  CHECK(format_record(found[0]) == "c=1; gens=6; elements=1,6");
  CHECK(format_record(found[1]) == "c=4; gens=3/2; elements=4,6");
}

TEST_CASE("brute force equals the naive oracle at n=2") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    const FiniteIntegerSet s(testutil::random_subset(60, 1, 2, rng()), 60);
    auto fast = brute_force_search(s, 2);
    auto slow = naive_two_boxes(s);
    std::sort(slow.begin(), slow.end(),
              [](const Parallelepiped& a, const Parallelepiped& b) {
                if (a.c != b.c) return a.c < b.c;
                return a.generators < b.generators;
              });
    CHECK(record_set(fast) == record_set(slow));
  }
}

TEST_CASE("brute force results are sound") {
  std::mt19937_64 rng(67);
  const FiniteIntegerSet s(testutil::random_subset(150, 1, 2, rng()), 150);
  for (unsigned n : {1u, 2u, 3u}) {
    for (const auto& box : brute_force_search(s, n)) {
      CHECK(box.dimension() == n);
      CHECK(is_strict(box));
      CHECK(verify_in_set(box, s));
    }
  }
}

TEST_CASE("brute force respects max_results") {
  SearchLimits limits;
  limits.max_results = 1;
  const auto found =
      brute_force_search(FiniteIntegerSet::interval(1, 6), 2, limits);
  REQUIRE(found.size() == 1);
  CHECK(format_record(found[0]) == "c=1; gens=2,3; elements=1,2,3,6");
}

TEST_CASE("select_prime_pair maximizes intersection density") {
  std::vector<uint64_t> mult6;
  for (uint64_t k = 6; k <= 120; k += 6) mult6.push_back(k);
  const auto choice =
      select_prime_pair(FiniteIntegerSet(mult6, 120), 2, 5, {});
  CHECK(choice.p == 2);
  CHECK(choice.q == 3);
  CHECK(choice.score > 0);
}

TEST_CASE("select_prime_pair tie-breaks lexicographically on empty sets") {
  const auto choice =
      select_prime_pair(FiniteIntegerSet({}, 100), 2, 5, {});
  CHECK(choice.p == 2);
  CHECK(choice.q == 3);
  CHECK(choice.score == 0.0);
}

TEST_CASE("select_prime_pair scores full sets positively") {
  const auto s = FiniteIntegerSet::interval(1, 5000);
  const auto choice = select_prime_pair(s, 13, 60, {});
  CHECK(choice.p == 13);
  CHECK(choice.q == 17);
  CHECK(choice.score > 0);
}

TEST_CASE("select_prime_pair honours exclusions and narrow windows") {
  const auto s = FiniteIntegerSet::interval(1, 1000);
  const auto choice = select_prime_pair(s, 2, 10, {}, {2, 3});
  CHECK(choice.p == 5);
  CHECK(choice.q == 7);

  CHECK_THROWS_AS(select_prime_pair(s, 24, 28, {}), InvalidArgument);
  CHECK_THROWS_AS(select_prime_pair(s, 2, 10, {}, {2, 3, 5}),
                  InvalidArgument);
  CHECK_THROWS_AS(select_prime_pair(s, 10, 2, {}), InvalidArgument);
}

TEST_CASE("compute_window matches the exact accumulation") {
  const auto w = compute_window(1.0, 0);
  CHECK(w.a == 13);
  CHECK(w.b == 49223);

  // Exact-rational oracle for b.
  {
    Rat product(1);
    const Rat target(1, 4);
    uint64_t expected_b = 0;
    for (uint64_t p : arith::primes_up_to(60000)) {
      if (p < 13) continue;
      product *= Rat(Int((unsigned long)(p - 1)), Int((unsigned long)p));
      if (product <= target) {
        expected_b = p;
        break;
      }
    }
    CHECK(expected_b == w.b);
  }

  CHECK(window_lower_bound(0.5, 3) == 29);
  CHECK(window_lower_bound(1.0, 0) == 13);
  CHECK(window_lower_bound(1.0, 20) == 23);

  CHECK_THROWS_AS(compute_window(0.0, 0), InvalidArgument);
  CHECK_THROWS_AS(compute_window(-1.0, 0), InvalidArgument);
  // Desk-scale unreachable window: the Euler product stalls above the cap.
  CHECK_THROWS_AS(compute_window(0.5, 3), InvalidArgument);
}

TEST_CASE("guided search base case") {
  GuidedPolicy policy;
  policy.window_a = 2;
  policy.window_b = 5;
  const auto res =
      guided_search(FiniteIntegerSet::interval(1, 10000), 1, {}, policy);
  REQUIRE(res.found);
  CHECK(format_record(res.para) == "c=2; gens=3/2; elements=2,3");
  REQUIRE(res.trace.levels.size() == 1);
  CHECK(res.trace.levels[0].p == 2);
  CHECK(res.trace.levels[0].q == 3);
  CHECK(res.trace.base_c0 == 1);
}

TEST_CASE("guided search n=2 on a full interval") {
  GuidedPolicy policy;
  const auto s = FiniteIntegerSet::interval(1, 10000);
  const auto res = guided_search(s, 2, {}, policy);
  REQUIRE(res.found);
  CHECK(res.para.dimension() == 2);
  CHECK(is_strict(res.para));
  CHECK(verify_in_set(res.para, s));

  // Generators are q/p over four pairwise distinct primes.
  std::set<Int> primes;
  for (const auto& g : res.para.generators) {
    const Int num = g.get_num(), den = g.get_den();
    CHECK(arith::is_prime(num));
    CHECK(arith::is_prime(den));
    primes.insert(num);
    primes.insert(den);
  }
  CHECK(primes.size() == 4);
}

TEST_CASE("guided search respects the initial exclusion set") {
  GuidedPolicy policy;
  const auto s = FiniteIntegerSet::interval(1, 100000);
  const auto res = guided_search(s, 2, {2, 3}, policy);
  REQUIRE(res.found);
  for (const auto& g : res.para.generators) {
    CHECK(g.get_num() > 3);
    CHECK(g.get_den() > 3);
  }
}

TEST_CASE("rigorous policy succeeds when the density hypothesis is met") {
  // On a full interval the density approximant is ~1, the window
  // machinery yields (13, 49223), and the construction completes.
  para::GuidedPolicy rigorous;
  rigorous.window_policy = para::WindowPolicy::Rigorous;
  const auto s = FiniteIntegerSet::interval(1, 200000);

  const auto res1 = guided_search(s, 1, {}, rigorous);
  REQUIRE(res1.found);
  CHECK(format_record(res1.para) == "c=13; gens=17/13; elements=13,17");

  const auto res2 = guided_search(s, 2, {}, rigorous);
  REQUIRE(res2.found);
  CHECK(res2.para.dimension() == 2);
  CHECK(is_strict(res2.para));
  CHECK(verify_in_set(res2.para, s));
  // Second-level primes exceed the first level's.
  REQUIRE(res2.trace.levels.size() == 2);
  CHECK(res2.trace.levels[1].p > res2.trace.levels[0].q);
}

TEST_CASE("guided search exhaustion is a value") {
  GuidedPolicy rigorous;
  rigorous.window_policy = WindowPolicy::Rigorous;
  const auto res =
      guided_search(FiniteIntegerSet::interval(1, 100), 4, {}, rigorous);
  CHECK_FALSE(res.found);
  CHECK(res.failed_dimension == 4);
  CHECK(res.exhausted_reason.find("universe underflow") != std::string::npos);

  // Sparse set: the base intersection comes up empty.
  GuidedPolicy heuristic;
  heuristic.universe_floor = 1;
  heuristic.window_a = 2;
  heuristic.window_b = 5;
  const auto sparse =
      guided_search(FiniteIntegerSet({1, 7, 11, 13}, 5000), 1, {}, heuristic);
  CHECK_FALSE(sparse.found);
  CHECK(sparse.exhausted_reason.find("empty base intersection") !=
        std::string::npos);

  CHECK_THROWS_AS(guided_search(FiniteIntegerSet({1}), 0, {}, heuristic),
                  InvalidArgument);
}

TEST_CASE("guided search trace renders") {
  GuidedPolicy policy;
  const auto res =
      guided_search(FiniteIntegerSet::interval(1, 10000), 2, {}, policy);
  REQUIRE(res.found);
  const auto text = res.trace.to_text();
  CHECK(text.find("level n=2") != std::string::npos);
  CHECK(text.find("base c0=") != std::string::npos);
}
