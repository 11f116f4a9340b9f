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

#ifndef TWISTRANK_ARITH_HPP
#define TWISTRANK_ARITH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twistrank/rat.hpp"

namespace twistrank::arith {

// Effort limits for factorize(). Trial division first, then a
// deterministic Brent-rho stage; exceeding both raises BudgetExceeded.
struct FactorBudget {
  uint64_t trial_bound = 1'000'000;
  unsigned rho_rounds = 64;
  uint64_t rho_iterations = 500'000;
};

struct Factorization {
  // Primes strictly increasing, exponents >= 1. Empty list represents 1.
  std::vector<std::pair<Int, unsigned>> factors;

  Int value() const;
  bool squarefree() const;
};

// Deterministic Miller-Rabin over a fixed base set; exact for n < 3.3e24,
// a strong pseudoprime test beyond that (far past factorize's budget).
bool is_prime(const Int& n);

// n >= 1. Deterministic for a fixed budget.
Factorization factorize(const Int& n, const FactorBudget& budget = {});

// An element of Q* / (Q*)^2: sign and squarefree kernel.
struct SquareClass {
  int sign = 1;                  // +1 or -1
  std::vector<Int> odd_primes;   // strictly increasing primes of odd exponent

  bool trivial() const { return sign == 1 && odd_primes.empty(); }
  // Canonical representative sign * prod(odd_primes).
  Int kernel() const;

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

// Class of a nonzero rational; numerator and denominator contribute
// symmetrically (only exponent parity matters).
SquareClass square_class(const Rat& q, const FactorBudget& budget = {});

// Group law of Q*/(Q*)^2: signs multiply, prime sets take the
// symmetric difference.
SquareClass class_product(const SquareClass& u, const SquareClass& v);

// Rows of square classes over the F2 basis {sign} + {occurring primes}.
class ClassMatrix {
 public:
  static ClassMatrix build(const std::vector<SquareClass>& classes);

  size_t rows() const { return rows_; }
  size_t columns() const { return columns_; }
  size_t rank() const;

  // Indices (ascending, 0-based) of the first row subset, in elimination
  // order, whose class product is trivial. Empty optional when the rows
  // are independent.
  std::optional<std::vector<size_t>> first_dependency() const;

 private:
  size_t rows_ = 0;
  size_t columns_ = 0;
  std::vector<std::vector<uint64_t>> bits_;  // row-major, packed
};

struct IndependenceResult {
  bool independent = true;
  std::vector<size_t> witness;  // nonempty iff dependent; product is trivial
};

IndependenceResult f2_independent(const std::vector<SquareClass>& classes);

// Primes p <= n, ascending.
std::vector<uint64_t> primes_up_to(uint64_t n);

// Smallest prime strictly greater than x.
uint64_t next_prime_above(uint64_t x);

// Product of primes p with a <= p <= b; 1 when the range holds no prime.
// Throws InvalidArgument when a > b.
Int primorial_range(int64_t a, int64_t b);

}  // namespace twistrank::arith

#endif
