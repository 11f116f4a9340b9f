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

#ifndef TWISTRANK_PARA_HPP
#define TWISTRANK_PARA_HPP

#include <string>
#include <vector>

#include "twistrank/intset.hpp"
#include "twistrank/rat.hpp"

namespace twistrank::para {

// The multiplicative box { c * prod_{i in I} a_i : I subset of {1..n} }.
// Base and generators are positive rationals; n >= 1.
struct Parallelepiped {
  Rat c;
  std::vector<Rat> generators;

  static Parallelepiped make(Rat c, std::vector<Rat> generators);

  unsigned dimension() const {
    return static_cast<unsigned>(generators.size());
  }

  friend bool operator==(const Parallelepiped&,
                         const Parallelepiped&) = default;
};

// All 2^n subset products, indexed by bitmask (bit i selects generator i).
std::vector<Rat> enumerate_elements(const Parallelepiped& p);

// True iff the generators' square classes are F2-independent (so the box
// carries 2^n distinct square classes).
bool is_strict(const Parallelepiped& p);

// True iff every element is a positive integer belonging to s.
bool verify_in_set(const Parallelepiped& p, const FiniteIntegerSet& s);

// One-line record: "c=<rational>; gens=<r1,r2>; elements=<e1,...>".
std::string format_record(const Parallelepiped& p);

}  // namespace twistrank::para

#endif
