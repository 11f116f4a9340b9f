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

#include "twistrank/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "twistrank/errors.hpp"

namespace twistrank::arith {

namespace {

// Bases covering deterministic Miller-Rabin for n < 3.3e24.
constexpr uint64_t kMillerRabinBases[] = {2,  3,  5,  7,  11, 13,
                                          17, 19, 23, 29, 31, 37};

bool miller_rabin_round(const Int& n, const Int& n_minus_1, const Int& d,
                        unsigned s, uint64_t base) {
  Int a(base);
  a %= n;
  if (a == 0) return true;
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

// One Brent-rho round with polynomial x^2 + c; returns a nontrivial factor
// or nullopt if the iteration budget runs out. Fully deterministic.
std::optional<Int> brent_rho_round(const Int& n, unsigned long c,
                                   uint64_t max_iterations) {
  Int x(2), y(2), d(1);
  Int saved_y;
  uint64_t power = 1, lam = 0;
  const uint64_t batch = 128;
  Int q(1);
  uint64_t iterations = 0;
  auto step = [&](Int& v) { v = (v * v + c) % n; };

  step(y);
  while (iterations < max_iterations) {
    if (lam == power) {
      x = y;
      power *= 2;
      lam = 0;
    }
    saved_y = y;
    uint64_t done = 0;
    while (done < batch && lam < power && iterations < max_iterations) {
      step(y);
      ++lam;
      ++done;
      ++iterations;
      Int diff = x - y;
      if (sgn(diff) < 0) diff = -diff;
      if (diff == 0) return std::nullopt;  // cycle collapsed, retry with new c
      q = (q * diff) % n;
    }
    mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    if (d == n) {
      // Overshot: replay the batch one step at a time.
      y = saved_y;
      while (true) {
        step(y);
        Int diff = x - y;
        if (sgn(diff) < 0) diff = -diff;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        if (d > 1) break;
      }
      if (d == n) return std::nullopt;
      return d;
    }
    if (d > 1) return d;
  }
  return std::nullopt;
}

void factor_into(const Int& n, const FactorBudget& budget,
                 std::map<Int, unsigned>& out);

void split_composite(const Int& n, const FactorBudget& budget,
                     std::map<Int, unsigned>& out) {
  for (unsigned round = 0; round < budget.rho_rounds; ++round) {
    auto d = brent_rho_round(n, round + 1, budget.rho_iterations);
    if (d) {
      factor_into(*d, budget, out);
      factor_into(n / *d, budget, out);
      return;
    }
  }
  throw BudgetExceeded("factorize: cofactor " + n.get_str() +
                       " resisted the configured methods");
}

void factor_into(const Int& n, const FactorBudget& budget,
                 std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  split_composite(n, budget, out);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  Int n_minus_1 = n - 1;
  Int d = n_minus_1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (uint64_t base : kMillerRabinBases) {
    if (n == base) return true;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

Int Factorization::value() const {
  Int v(1);
  for (const auto& [p, e] : factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const auto& f) { return f.second == 1; });
}

Factorization factorize(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw InvalidArgument("factorize: n must be >= 1");
  Factorization result;
  if (n == 1) return result;

  std::map<Int, unsigned> found;
  Int rest = n;

  unsigned long two = mpz_scan1(rest.get_mpz_t(), 0);
  if (two > 0) {
    found[Int(2)] = static_cast<unsigned>(two);
    mpz_tdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), two);
  }
  for (uint64_t p = 3; p * p <= rest && p <= budget.trial_bound; p += 2) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      found[Int(p)] = e;
    }
  }
  if (rest > 1) factor_into(rest, budget, found);

  result.factors.assign(found.begin(), found.end());
  return result;
}

Int SquareClass::kernel() const {
  Int k(sign);
  for (const Int& p : odd_primes) k *= p;
  return k;
}

SquareClass square_class(const Rat& q, const FactorBudget& budget) {
  if (sgn(q) == 0) throw InvalidArgument("square_class: q must be nonzero");
  SquareClass cls;
  cls.sign = sgn(q) > 0 ? 1 : -1;

  Int num = abs(q.get_num());
  Int den = q.get_den();

  // Parity of the combined exponents; numerator and denominator are
  // symmetric modulo squares.
  std::map<Int, unsigned> parity;
  for (const Int& part : {num, den}) {
    Factorization f = factorize(part, budget);
    for (const auto& [p, e] : f.factors) parity[p] += e;
  }
  for (const auto& [p, e] : parity) {
    if (e % 2 == 1) cls.odd_primes.push_back(p);
  }
  return cls;
}

SquareClass class_product(const SquareClass& u, const SquareClass& v) {
  SquareClass out;
  out.sign = u.sign * v.sign;
  std::set_symmetric_difference(u.odd_primes.begin(), u.odd_primes.end(),
                                v.odd_primes.begin(), v.odd_primes.end(),
                                std::back_inserter(out.odd_primes));
  return out;
}

ClassMatrix ClassMatrix::build(const std::vector<SquareClass>& classes) {
  ClassMatrix m;
  m.rows_ = classes.size();

  std::vector<Int> primes;
  for (const auto& c : classes) {
    primes.insert(primes.end(), c.odd_primes.begin(), c.odd_primes.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  // Column 0 is the sign, columns 1.. are the occurring primes.
  m.columns_ = primes.size() + 1;
  const size_t words = (m.columns_ + 63) / 64;
  m.bits_.assign(m.rows_, std::vector<uint64_t>(words, 0));

  for (size_t r = 0; r < classes.size(); ++r) {
    if (classes[r].sign < 0) m.bits_[r][0] |= 1;
    for (const Int& p : classes[r].odd_primes) {
      const size_t idx =
          1 + static_cast<size_t>(
                  std::lower_bound(primes.begin(), primes.end(), p) -
                  primes.begin());
      m.bits_[r][idx / 64] |= uint64_t(1) << (idx % 64);
    }
  }
  return m;
}

namespace {

bool row_is_zero(const std::vector<uint64_t>& row) {
  return std::all_of(row.begin(), row.end(), [](uint64_t w) { return w == 0; });
}

int lowest_set_column(const std::vector<uint64_t>& row) {
  for (size_t w = 0; w < row.size(); ++w) {
    if (row[w] != 0) {
      return static_cast<int>(w * 64 + __builtin_ctzll(row[w]));
    }
  }
  return -1;
}

void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

size_t ClassMatrix::rank() const {
  std::vector<std::vector<uint64_t>> work = bits_;
  std::vector<int> pivot_of_row(rows_, -1);
  size_t rank = 0;
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t pr = 0; pr < r; ++pr) {
      if (pivot_of_row[pr] < 0) continue;
      const size_t col = static_cast<size_t>(pivot_of_row[pr]);
      if (work[r][col / 64] >> (col % 64) & 1) xor_into(work[r], work[pr]);
    }
    const int pivot = lowest_set_column(work[r]);
    pivot_of_row[r] = pivot;
    if (pivot >= 0) ++rank;
  }
  return rank;
}

std::optional<std::vector<size_t>> ClassMatrix::first_dependency() const {
  std::vector<std::vector<uint64_t>> work = bits_;
  std::vector<int> pivot_of_row(rows_, -1);
  // combo[r] tracks which original rows sum to work[r].
  const size_t combo_words = (rows_ + 63) / 64;
  std::vector<std::vector<uint64_t>> combo(
      rows_, std::vector<uint64_t>(combo_words, 0));

  for (size_t r = 0; r < rows_; ++r) {
    combo[r][r / 64] |= uint64_t(1) << (r % 64);
    for (size_t pr = 0; pr < r; ++pr) {
      if (pivot_of_row[pr] < 0) continue;
      const size_t col = static_cast<size_t>(pivot_of_row[pr]);
      if (work[r][col / 64] >> (col % 64) & 1) {
        xor_into(work[r], work[pr]);
        xor_into(combo[r], combo[pr]);
      }
    }
    if (row_is_zero(work[r])) {
      std::vector<size_t> witness;
      for (size_t i = 0; i <= r; ++i) {
        if (combo[r][i / 64] >> (i % 64) & 1) witness.push_back(i);
      }
      return witness;
    }
    pivot_of_row[r] = lowest_set_column(work[r]);
  }
  return std::nullopt;
}

IndependenceResult f2_independent(const std::vector<SquareClass>& classes) {
  IndependenceResult res;
  auto dep = ClassMatrix::build(classes).first_dependency();
  if (dep) {
    res.independent = false;
    res.witness = std::move(*dep);
  }
  return res;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
  std::vector<uint64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (uint64_t k = p * p; k <= n; k += p) composite[k] = true;
  }
  return primes;
}

uint64_t next_prime_above(uint64_t x) {
  Int candidate(static_cast<unsigned long>(x));
  ++candidate;
  while (!is_prime(candidate)) ++candidate;
  return candidate.get_ui();
}

Int primorial_range(int64_t a, int64_t b) {
  if (a > b) throw InvalidArgument("primorial_range: a > b");
  Int product(1);
  if (b < 2) return product;
  const uint64_t lo = a < 2 ? 2 : static_cast<uint64_t>(a);
  for (uint64_t p : primes_up_to(static_cast<uint64_t>(b))) {
    if (p >= lo) product *= Int(static_cast<unsigned long>(p));
  }
  return product;
}

}  // namespace twistrank::arith
