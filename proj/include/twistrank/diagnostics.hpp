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

#ifndef TWISTRANK_DIAGNOSTICS_HPP
#define TWISTRANK_DIAGNOSTICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "twistrank/intset.hpp"

namespace twistrank::para {

// Finite-scale evaluation of the inequality chain behind the
// prime-pair induction step, over the prime window [a, b].
//
// Two classes of rows are tracked separately. The strict rows
// (set decomposition, the geometric sieve bound phi(P)/(1-e^{-Pt}),
// the integrated decomposition, the union bound, and the
// pairwise-intersection bound) hold for every set up to floating-point
// tolerance. The product-form rows substitute the bound
// (1/t) prod (1 - 1/p), which genuinely fails at finite scale for many
// windows and t (the coprime set {1} already beats it at t = 1 whenever
// the Euler product is below 1/e); their status is reported, and
// `product_form_ok` records it. The density-threshold rows (>= Dhat/2,
// >= 4) depend on the window hypotheses and are reported, not asserted.
struct PointBoundSample {
  double t = 0;
  double lhs = 0;          // sum over p of f_{S_p}(p t)
  double decomposed = 0;   // f_S(t) - f of the coprime-filtered set
  double rhs = 0;          // f_S(t) - (1/t) prod (1 - 1/p)
  double sieve_lhs = 0;    // f of the coprime-filtered set
  double sieve_rhs = 0;    // (1/t) prod (1 - 1/p)
  double sieve_valid_rhs = 0;  // phi(P) / (1 - e^{-Pt})
  bool decomposition_holds = false;  // f_S <= f_filtered + sum
  bool sieve_holds = false;          // sieve_lhs <= sieve_rhs (product form)
  bool sieve_valid_holds = false;    // sieve_lhs <= sieve_valid_rhs
  bool combined_holds = false;       // lhs >= rhs (product form)
};

struct PairDensity {
  uint64_t p = 0;
  uint64_t q = 0;
  double value = 0;          // smoothed density approximant for S_p cap S_q
  bool above_threshold = false;  // value >= 2 / ((b-a)(1+b-a))
};

struct IndstepReport {
  int64_t a = 0;
  int64_t b = 0;
  double T = 0;
  std::vector<uint64_t> primes;
  double dhat = 0;          // smoothed density approximant of S
  double euler_product = 0; // prod over the window of (1 - 1/p)

  std::vector<PointBoundSample> point_bound;

  // Integrated point bound.
  double int_lhs = 0;            // (1/log T) int of sum f_{S_p}(pt)
  double int_rhs_unconditional = 0;  // dhat - euler_product (product form)
  double filtered_integral = 0;  // Dhat of the coprime-filtered set
  bool int_bound_holds = false;      // int_lhs >= int_rhs_unconditional
  bool int_bound_strict_holds = false;  // int_lhs >= dhat - filtered_integral
  bool int_meets_half = false;       // int_lhs >= dhat / 2 (conditional)
  bool int_meets_third = false;      // int_lhs >= dhat / 3 (conditional)

  // Unscaled prime sum.
  double big_sum = 0;            // sum over p of Dhat(S_p)
  double weighted_sum = 0;       // sum over p of (a/p) Dhat(S_p)
  bool big_sum_meets_4 = false;  // conditional
  bool weighted_meets_a_dhat_third = false;  // conditional

  // Union and pairwise intersections.
  double union_integral = 0;     // Dhat(S'), S' the union of the S_p
  bool union_below_2 = false;    // unconditional
  double pair_sum = 0;           // sum over p<q of Dhat(S_p cap S_q)
  bool pairwise_holds = false;   // pair_sum >= big_sum - union_integral
  double pair_threshold = 0;     // 1 / ((b-a)(1+b-a))
  std::vector<PairDensity> pairs;

  bool window_hypothesis_product = false;  // euler_product <= dhat/4
  // All rows the source analysis labels unconditional, including the
  // product-form sieve substitutions (known to fail at finite scale).
  bool product_form_ok = false;
  // The provably unconditional subset; holds for every input.
  bool strict_rows_ok = false;
};

// Requires b >= a > 1 and T > 1.
IndstepReport indstep_diagnostics(const FiniteIntegerSet& s, int64_t a,
                                  int64_t b, double T);

std::string render_report(const IndstepReport& report);

}  // namespace twistrank::para

#endif
