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

#include "twistrank/rat.hpp"

#include <cctype>

#include "twistrank/errors.hpp"

namespace twistrank {

namespace {

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Int int_from_string(const std::string& text) {
  if (!looks_like_integer(text)) {
    throw ParseError("not an integer: '" + text + "'");
  }
  Int n;
  if (mpz_set_str(n.get_mpz_t(), text.c_str(), 10) != 0) {
    throw ParseError("not an integer: '" + text + "'");
  }
  return n;
}

Rat rat_from_string(const std::string& text) {
  const size_t slash = text.find('/');
  Int num, den;
  if (slash == std::string::npos) {
    num = int_from_string(text);
    den = 1;
  } else {
    num = int_from_string(text.substr(0, slash));
    den = int_from_string(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

bool is_perfect_square(const Int& n) {
  if (sgn(n) < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool rat_is_square(const Rat& q) {
  if (sgn(q) < 0) return false;
  return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

Int exact_sqrt(const Int& n) {
  if (!is_perfect_square(n)) {
    throw InvalidArgument("exact_sqrt: not a perfect square");
  }
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace twistrank
