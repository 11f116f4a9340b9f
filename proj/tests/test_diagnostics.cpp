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

#include <random>

#include "test_util.hpp"
#include "twistrank/diagnostics.hpp"
#include "twistrank/errors.hpp"

using namespace twistrank;
using namespace twistrank::para;

TEST_CASE("diagnostics on a full interval") {
  const auto s = FiniteIntegerSet::interval(1, 100000);
  const auto rep = indstep_diagnostics(s, 2, 10, 1000.0);

  CHECK(rep.primes == std::vector<uint64_t>{2, 3, 5, 7});

  // The provably unconditional rows hold...
  CHECK(rep.strict_rows_ok);
  CHECK(rep.union_below_2);
  CHECK(rep.int_bound_strict_holds);
  CHECK(rep.pairwise_holds);
  for (const auto& sample : rep.point_bound) {
    CHECK(sample.decomposition_holds);
    CHECK(sample.sieve_valid_holds);
  }
  // ...but the product-form sieve rows are genuinely violated on this
  // window (the stated bound fails for t large enough that the filtered
  // set's leading terms dominate).
  CHECK_FALSE(rep.product_form_ok);
  bool some_sieve_violation = false;
  for (const auto& sample : rep.point_bound) {
    if (!sample.sieve_holds) some_sieve_violation = true;
  }
  CHECK(some_sieve_violation);

  CHECK(rep.pairs.size() == 6);
  CHECK(rep.pair_threshold == doctest::Approx(1.0 / 72.0));

  const auto text = render_report(rep);
  CHECK(text.find("pair density table") != std::string::npos);
  CHECK(text.find("strict rows") != std::string::npos);
  CHECK(text.find("fails at finite scale") != std::string::npos);
}

TEST_CASE("diagnostics on the empty set holds trivially") {
  const auto rep =
      indstep_diagnostics(FiniteIntegerSet({}, 100), 2, 10, 100.0);
  CHECK(rep.dhat == 0.0);
  CHECK(rep.product_form_ok);
  CHECK(rep.strict_rows_ok);
  CHECK(rep.big_sum == 0.0);
  CHECK(rep.pair_sum == 0.0);
  CHECK_FALSE(rep.big_sum_meets_4);
}

TEST_CASE("strict rows hold for every input") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 8; ++trial) {
    const FiniteIntegerSet s(testutil::random_subset(20000, 2, 3, rng()),
                             20000);
    const auto rep = indstep_diagnostics(s, 2, 12, 500.0);
    CHECK(rep.strict_rows_ok);
  }
}

TEST_CASE("pair table flags densities above twice the threshold") {
  // Multiples of 6: dividing by 2 and 3 keeps plenty of mass, so the
  // (2,3) pair clears the flag threshold 2/((b-a)(1+b-a)) = 1/36.
  std::vector<uint64_t> mult6;
  for (uint64_t k = 6; k <= 60000; k += 6) mult6.push_back(k);
  const auto rep =
      indstep_diagnostics(FiniteIntegerSet(mult6, 60000), 2, 10, 1000.0);
  REQUIRE(rep.pairs.size() == 6);
  CHECK(rep.pairs[0].p == 2);
  CHECK(rep.pairs[0].q == 3);
  CHECK(rep.pairs[0].value >= 2.0 * rep.pair_threshold);
  CHECK(rep.pairs[0].above_threshold);
}

TEST_CASE("pair table leaves sparse pairs unflagged") {
  // Powers of 2: dividing by any odd prime kills the set entirely.
  const FiniteIntegerSet s({2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}, 1024);
  const auto rep = indstep_diagnostics(s, 3, 10, 100.0);
  for (const auto& pd : rep.pairs) {
    CHECK(pd.value == 0.0);
    CHECK_FALSE(pd.above_threshold);
  }
}

TEST_CASE("diagnostics input validation") {
  const auto s = FiniteIntegerSet::interval(1, 100);
  CHECK_THROWS_AS(indstep_diagnostics(s, 1, 10, 100.0), InvalidArgument);
  CHECK_THROWS_AS(indstep_diagnostics(s, 5, 4, 100.0), InvalidArgument);
  CHECK_THROWS_AS(indstep_diagnostics(s, 2, 10, 1.0), InvalidArgument);
}
