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

#ifndef TWISTRANK_ERRORS_HPP
#define TWISTRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twistrank {

// Error taxonomy shared across the library. The C API maps these onto
// tr_status codes; C++ callers catch the types they care about.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A pre-condition on an argument was violated (non-positive t, invalid
// range, window too narrow, ...). The message names the parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Factorization gave up: a cofactor resisted trial division and the
// bounded rho stage.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotSquarefree : public Error {
 public:
  using Error::Error;
};

class PointNotOnCurve : public Error {
 public:
  using Error::Error;
};

// Certificate assembly found a parallelepiped element without a stored
// witness point.
class MissingWitness : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace twistrank

#endif
