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

#ifndef TWISTRANK_DENSITY_HPP
#define TWISTRANK_DENSITY_HPP

#include <cstdint>
#include <vector>

#include "twistrank/intset.hpp"
#include "twistrank/rat.hpp"

namespace twistrank::density {

// Absolute tolerance (after magnitude normalization) for all inequality
// checks in this module. The checked inequalities hold exactly in exact
// arithmetic; the epsilon only absorbs floating-point roundoff.
inline constexpr double kEpsilon = 1e-9;

// lhs <= rhs up to kEpsilon * max(1, |lhs|, |rhs|).
bool leq_with_tolerance(double lhs, double rhs);

// f_S(t) = sum over n in S of exp(-n t). Terms are summed in ascending-n
// order with Neumaier compensation. Throws InvalidArgument for t <= 0.
double f_value(const FiniteIntegerSet& s, double t);

// 2 * max(1/t, 1); dominates f_S(t) for every S.
double upper_bound_check(double t);

struct DensityReport {
  double T = 0;
  double value = 0;
  double truncation_error_bound = 0;
};

// Finite-T approximant of the smoothed density: the exact closed form of
// (1/log T) * integral over [1/T, 1] of f_S(t) dt, plus a bound on the
// mass the universe truncation could hide. Throws InvalidArgument for
// T <= 1.
DensityReport smoothed_density(const FiniteIntegerSet& s, double T);

// min over n in [n0, N] of |S intersect [1,n]| / n: the honest
// finite-scale proxy for the lower density. Throws InvalidArgument when
// n0 == 0 or n0 > N.
double lower_density_estimate(const FiniteIntegerSet& s, uint64_t n0);

// S intersect R(m), the elements coprime to m. Universe preserved.
FiniteIntegerSet coprime_filter(const FiniteIntegerSet& s, const Int& m);

// S_m = { n : m*n in S }, universe floor(N/m).
FiniteIntegerSet divide_set(const FiniteIntegerSet& s, uint64_t m);

struct SieveBoundResult {
  double lhs = 0;  // f of the coprime-filtered set at t
  double rhs = 0;  // (1/t) * prod over primes in [a,b] of (1 - 1/p)
  bool holds = false;
};

// Requires b >= a > 1 and t > 0.
SieveBoundResult sieve_bound_check(const FiniteIntegerSet& s, int64_t a,
                                   int64_t b, double t);

struct BonferroniResult {
  double union_f = 0;
  double sum_f = 0;
  double pairwise_f = 0;  // sum over i<j of f of pairwise intersections
  bool upper_holds = false;  // f_union <= sum_f
  bool lower_holds = false;  // sum_f - pairwise_f <= f_union
};

BonferroniResult bonferroni_check(const std::vector<FiniteIntegerSet>& sets,
                                  double t);

}  // namespace twistrank::density

#endif
