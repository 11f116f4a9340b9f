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

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"

using namespace twistrank;
using namespace twistrank::arith;

namespace {

Rat random_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 300) + 1;
  const long den = static_cast<long>(rng() % 300) + 1;
  Rat q(num, den);
  q.canonicalize();
  return rng() % 2 == 0 ? q : Rat(-q);
}

// Brute-force independence oracle: some nonempty subset multiplies to a
// trivial class.
bool brute_force_independent(const std::vector<SquareClass>& classes) {
  const size_t k = classes.size();
  for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
    SquareClass prod;
    for (size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) prod = class_product(prod, classes[i]);
    }
    if (prod.trivial()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factorize known values") {
  CHECK(factorize(Int(1)).factors.empty());

  const auto f12 = factorize(Int(12));
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == std::pair<Int, unsigned>(Int(2), 2u));
  CHECK(f12.factors[1] == std::pair<Int, unsigned>(Int(3), 1u));

  // 2^31 - 1: trial division by every prime <= 46341 confirms primality.
  {
    const Int m31(2147483647L);
    bool divisible = false;
    for (uint64_t p : primes_up_to(46341)) {
      if (mpz_divisible_ui_p(m31.get_mpz_t(), p) != 0) divisible = true;
    }
    REQUIRE_FALSE(divisible);
    const auto f = factorize(m31);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == m31);
    CHECK(f.factors[0].second == 1);
  }

  CHECK_THROWS_AS(factorize(Int(0)), InvalidArgument);
}

TEST_CASE("factorize reconstructs its input") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Int n(static_cast<unsigned long>(rng() % 1'000'000 + 1));
    CHECK(factorize(n).value() == n);
  }
}

TEST_CASE("factorize respects the budget") {
  // Semiprime with both factors above a tiny trial bound and no rho
  // rounds allowed.
  FactorBudget budget;
  budget.trial_bound = 10;
  budget.rho_rounds = 0;
  const Int hard = Int(1000003) * Int(1000033);
  CHECK_THROWS_AS(factorize(hard, budget), BudgetExceeded);
  // The default budget cracks it.
  CHECK(factorize(hard).factors.size() == 2);
}

TEST_CASE("square_class canonical examples") {
  const auto sq = square_class(rat_from_string("4/9"));
  CHECK(sq.sign == 1);
  CHECK(sq.odd_primes.empty());
  CHECK(sq.trivial());

  const auto twelve = square_class(Rat(12));
  CHECK(twelve.sign == 1);
  REQUIRE(twelve.odd_primes.size() == 1);
  CHECK(twelve.odd_primes[0] == 3);

  const auto mixed = square_class(rat_from_string("-50/27"));
  CHECK(mixed.sign == -1);
  REQUIRE(mixed.odd_primes.size() == 2);
  CHECK(mixed.odd_primes[0] == 2);
  CHECK(mixed.odd_primes[1] == 3);
  CHECK(mixed.kernel() == -6);

  CHECK_THROWS_AS(square_class(Rat(0)), InvalidArgument);
}

TEST_CASE("class_product is the group law") {
  const auto a = square_class(Rat(2));
  const auto b = square_class(Rat(3));
  CHECK(class_product(a, b) == square_class(Rat(6)));

  const auto ab = square_class(Rat(6));
  const auto bc = square_class(Rat(15));
  CHECK(class_product(ab, bc) == square_class(Rat(10)));

  const auto minus2 = square_class(Rat(-2));
  CHECK(class_product(minus2, minus2).trivial());
}

TEST_CASE("square_class is a homomorphism (random)") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Rat a = random_rational(rng);
    const Rat b = random_rational(rng);
    CHECK(square_class(a * b) ==
          class_product(square_class(a), square_class(b)));
    CHECK(square_class(a * a * b) == square_class(b));
  }
}

TEST_CASE("square_class round-trips its canonical representative") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto cls = square_class(random_rational(rng));
    CHECK(square_class(Rat(cls.kernel())) == cls);
  }
}

TEST_CASE("f2_independent examples") {
  const auto indep = f2_independent(
      {square_class(Rat(2)), square_class(Rat(3)), square_class(Rat(5))});
  CHECK(indep.independent);
  CHECK(indep.witness.empty());

  const auto dep = f2_independent(
      {square_class(Rat(2)), square_class(Rat(3)), square_class(Rat(6))});
  REQUIRE_FALSE(dep.independent);
  CHECK(dep.witness == std::vector<size_t>{0, 1, 2});

  const auto zero = f2_independent({square_class(Rat(4))});
  REQUIRE_FALSE(zero.independent);
  CHECK(zero.witness == std::vector<size_t>{0});
}

TEST_CASE("f2_independent agrees with subset enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t k = 1 + rng() % 12;
    std::vector<SquareClass> classes;
    for (size_t i = 0; i < k; ++i) {
      classes.push_back(square_class(random_rational(rng)));
    }
    const auto result = f2_independent(classes);
    CHECK(result.independent == brute_force_independent(classes));
    if (!result.independent) {
      REQUIRE_FALSE(result.witness.empty());
      SquareClass prod;
      for (size_t i : result.witness) prod = class_product(prod, classes[i]);
      CHECK(prod.trivial());
    }
  }
}

TEST_CASE("ClassMatrix rank bounds") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t k = 1 + rng() % 10;
    std::vector<SquareClass> classes;
    for (size_t i = 0; i < k; ++i) {
      classes.push_back(square_class(random_rational(rng)));
    }
    const auto m = ClassMatrix::build(classes);
    CHECK(m.rank() <= std::min(m.rows(), m.columns()));
    CHECK((m.rank() == m.rows()) == f2_independent(classes).independent);
  }
}

TEST_CASE("primorial_range") {
  CHECK(primorial_range(2, 10) == 210);
  CHECK(primorial_range(4, 4) == 1);
  CHECK(primorial_range(3, 13) == 15015);
  CHECK(primorial_range(-5, 1) == 1);
  CHECK_THROWS_AS(primorial_range(5, 4), InvalidArgument);
}

TEST_CASE("primorial divisibility in nested ranges") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int64_t a = 2 + static_cast<int64_t>(rng() % 50);
    const int64_t b = a + static_cast<int64_t>(rng() % 50);
    const int64_t a2 = a - static_cast<int64_t>(rng() % 3);
    const int64_t b2 = b + static_cast<int64_t>(rng() % 10);
    const Int inner = primorial_range(a, b);
    const Int outer = primorial_range(a2, b2);
    CHECK(mpz_divisible_p(outer.get_mpz_t(), inner.get_mpz_t()) != 0);
  }
}

TEST_CASE("prime helpers") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(19)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(561)));  // Carmichael
  CHECK(next_prime_above(12) == 13);
  CHECK(next_prime_above(13) == 17);
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(10) == std::vector<uint64_t>{2, 3, 5, 7});
}
