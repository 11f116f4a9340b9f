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

#include "twistrank/density.hpp"

#include <algorithm>
#include <cmath>

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"

namespace twistrank::density {

namespace {

// Neumaier-compensated accumulator; deterministic for a fixed visit order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

void require_positive_t(double t) {
  if (!(t > 0)) throw InvalidArgument("t must be positive");
}

}  // namespace

bool leq_with_tolerance(double lhs, double rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return lhs <= rhs + kEpsilon * scale;
}

double f_value(const FiniteIntegerSet& s, double t) {
  require_positive_t(t);
  CompensatedSum sum;
  for (uint64_t n : s.elements()) {
    sum.add(std::exp(-static_cast<double>(n) * t));
  }
  return sum.value();
}

double upper_bound_check(double t) {
  require_positive_t(t);
  return 2.0 * std::max(1.0 / t, 1.0);
}

DensityReport smoothed_density(const FiniteIntegerSet& s, double T) {
  if (!(T > 1)) throw InvalidArgument("T must be > 1");
  const double log_T = std::log(T);

  // Term-wise exact integral: integral over [1/T,1] of e^{-nt} dt
  // equals (e^{-n/T} - e^{-n}) / n.
  CompensatedSum sum;
  for (uint64_t n : s.elements()) {
    const double nd = static_cast<double>(n);
    sum.add((std::exp(-nd / T) - std::exp(-nd)) / nd);
  }

  // Tail bound for the elements the universe truncation hides: even if
  // every integer n > N were in S,
  //   sum_{n>N} (e^{-n/T} - e^{-n})/n  <=  (1/(N+1)) sum_{n>N} e^{-n/T}
  //                                     =  e^{-(N+1)/T} / ((N+1)(1 - e^{-1/T})).
  const double N1 = static_cast<double>(s.universe()) + 1.0;
  const double tail =
      std::exp(-N1 / T) / (N1 * (1.0 - std::exp(-1.0 / T)));

  DensityReport report;
  report.T = T;
  report.value = sum.value() / log_T;
  report.truncation_error_bound = tail / log_T;
  return report;
}

double lower_density_estimate(const FiniteIntegerSet& s, uint64_t n0) {
  if (n0 == 0 || n0 > s.universe()) {
    throw InvalidArgument("lower_density_estimate: need 1 <= n0 <= N");
  }
  if (s.empty()) return 0.0;

  // The ratio |S cap [1,n]|/n only attains new minima immediately before
  // an element enters (count constant, n growing), so it suffices to
  // probe n0 itself, each element's predecessor, and N.
  double best = static_cast<double>(s.count_up_to(n0)) /
                static_cast<double>(n0);
  auto probe = [&](uint64_t n) {
    if (n < n0 || n > s.universe()) return;
    const double r =
        static_cast<double>(s.count_up_to(n)) / static_cast<double>(n);
    best = std::min(best, r);
  };
  for (uint64_t e : s.elements()) probe(e - 1);
  probe(s.universe());
  return best;
}

FiniteIntegerSet coprime_filter(const FiniteIntegerSet& s, const Int& m) {
  if (m < 1) throw InvalidArgument("coprime_filter: m must be >= 1");
  std::vector<uint64_t> out;
  Int g;
  for (uint64_t n : s.elements()) {
    if (mpz_gcd_ui(g.get_mpz_t(), m.get_mpz_t(), n) == 1) out.push_back(n);
  }
  return FiniteIntegerSet(std::move(out), s.universe());
}

FiniteIntegerSet divide_set(const FiniteIntegerSet& s, uint64_t m) {
  if (m == 0) throw InvalidArgument("divide_set: m must be >= 1");
  std::vector<uint64_t> out;
  for (uint64_t n : s.elements()) {
    if (n % m == 0) out.push_back(n / m);
  }
  return FiniteIntegerSet(std::move(out), s.universe() / m);
}

SieveBoundResult sieve_bound_check(const FiniteIntegerSet& s, int64_t a,
                                   int64_t b, double t) {
  if (!(b >= a && a > 1)) {
    throw InvalidArgument("sieve_bound_check: need b >= a > 1");
  }
  require_positive_t(t);

  SieveBoundResult res;
  res.lhs = f_value(coprime_filter(s, arith::primorial_range(a, b)), t);

  double product = 1.0;
  for (uint64_t p : arith::primes_up_to(static_cast<uint64_t>(b))) {
    if (p >= static_cast<uint64_t>(a)) {
      product *= 1.0 - 1.0 / static_cast<double>(p);
    }
  }
  res.rhs = product / t;
  res.holds = leq_with_tolerance(res.lhs, res.rhs);
  return res;
}

BonferroniResult bonferroni_check(const std::vector<FiniteIntegerSet>& sets,
                                  double t) {
  require_positive_t(t);
  if (sets.empty()) {
    throw InvalidArgument("bonferroni_check: need at least one set");
  }

  BonferroniResult res;
  FiniteIntegerSet all;
  {
    CompensatedSum sum;
    for (const auto& s : sets) {
      sum.add(f_value(s, t));
      all = set_union(all, s);
    }
    res.sum_f = sum.value();
  }
  res.union_f = f_value(all, t);
  {
    CompensatedSum pairwise;
    for (size_t i = 0; i < sets.size(); ++i) {
      for (size_t j = i + 1; j < sets.size(); ++j) {
        pairwise.add(f_value(set_intersection(sets[i], sets[j]), t));
      }
    }
    res.pairwise_f = pairwise.value();
  }
  res.upper_holds = leq_with_tolerance(res.union_f, res.sum_f);
  res.lower_holds = leq_with_tolerance(res.sum_f - res.pairwise_f, res.union_f);
  return res;
}

}  // namespace twistrank::density
