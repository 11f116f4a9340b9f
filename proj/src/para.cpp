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

#include "twistrank/para.hpp"

#include <sstream>

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"

namespace twistrank::para {

Parallelepiped Parallelepiped::make(Rat c, std::vector<Rat> generators) {
  if (generators.empty()) {
    throw InvalidArgument("Parallelepiped: need at least one generator");
  }
  if (sgn(c) <= 0) {
    throw InvalidArgument("Parallelepiped: c must be positive");
  }
  for (const Rat& g : generators) {
    if (sgn(g) <= 0) {
      throw InvalidArgument("Parallelepiped: generators must be positive");
    }
  }
  return Parallelepiped{std::move(c), std::move(generators)};
}

std::vector<Rat> enumerate_elements(const Parallelepiped& p) {
  const size_t n = p.generators.size();
  std::vector<Rat> elements;
  elements.reserve(size_t(1) << n);
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    Rat value = p.c;
    for (size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) value *= p.generators[i];
    }
    elements.push_back(std::move(value));
  }
  return elements;
}

bool is_strict(const Parallelepiped& p) {
  std::vector<arith::SquareClass> classes;
  classes.reserve(p.generators.size());
  for (const Rat& g : p.generators) classes.push_back(arith::square_class(g));
  return arith::f2_independent(classes).independent;
}

bool verify_in_set(const Parallelepiped& p, const FiniteIntegerSet& s) {
  for (const Rat& value : enumerate_elements(p)) {
    if (value.get_den() != 1) return false;
    const Int& num = value.get_num();
    if (sgn(num) <= 0 || !num.fits_ulong_p()) return false;
    if (!s.contains(num.get_ui())) return false;
  }
  return true;
}

std::string format_record(const Parallelepiped& p) {
  std::ostringstream out;
  out << "c=" << rat_to_string(p.c) << "; gens=";
  for (size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out << ",";
    out << rat_to_string(p.generators[i]);
  }
  out << "; elements=";
  const auto elements = enumerate_elements(p);
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i) out << ",";
    out << rat_to_string(elements[i]);
  }
  return out.str();
}

}  // namespace twistrank::para
