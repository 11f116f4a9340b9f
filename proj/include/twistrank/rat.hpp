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

#ifndef TWISTRANK_RAT_HPP
#define TWISTRANK_RAT_HPP

#include <gmpxx.h>

#include <string>

namespace twistrank {

// Exact arithmetic is GMP throughout; these aliases keep signatures short.
using Int = mpz_class;
using Rat = mpq_class;

// Parses "num" or "num/den" in base 10. Throws ParseError on anything
// else (including a zero denominator). The result is canonicalized.
Rat rat_from_string(const std::string& text);

Int int_from_string(const std::string& text);

// Canonical text form: "num" when the denominator is 1, else "num/den".
std::string rat_to_string(const Rat& q);

bool is_perfect_square(const Int& n);

// True iff q is the square of a rational (in particular q > 0, or q == 0).
bool rat_is_square(const Rat& q);

// Exact square root of a perfect square; throws InvalidArgument otherwise.
Int exact_sqrt(const Int& n);

}  // namespace twistrank

#endif
