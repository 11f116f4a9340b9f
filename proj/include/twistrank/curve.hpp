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

#ifndef TWISTRANK_CURVE_HPP
#define TWISTRANK_CURVE_HPP

#include <cstdint>
#include <string>

#include "twistrank/rat.hpp"

namespace twistrank::curve {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over Q. Use checked() to reject singular models.
struct WeierstrassCurve {
  Rat a1, a2, a3, a4, a6;

  static WeierstrassCurve checked(Rat a1, Rat a2, Rat a3, Rat a4, Rat a6);

  friend bool operator==(const WeierstrassCurve&,
                         const WeierstrassCurve&) = default;
};

// Standard discriminant of the long model; zero means singular.
Rat discriminant(const WeierstrassCurve& curve);

// y^2 = x^3 + A x + B.
struct ShortForm {
  Rat A, B;
  friend bool operator==(const ShortForm&, const ShortForm&) = default;
};

WeierstrassCurve as_long(const ShortForm& sf);

struct CurvePoint {
  bool infinity = true;
  Rat x, y;

  static CurvePoint at_infinity() { return CurvePoint{}; }
  static CurvePoint affine(Rat x, Rat y) {
    return CurvePoint{false, std::move(x), std::move(y)};
  }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

bool on_curve(const WeierstrassCurve& curve, const CurvePoint& p);
bool on_curve(const ShortForm& sf, const CurvePoint& p);

// Affine substitution (x, y) -> (sx*x + tx, sy*y + yx*x + ty) between two
// Weierstrass models, with its inverse derived from the same data.
struct CurveMap {
  Rat sx, tx, sy, yx, ty;

  static CurveMap identity();
  CurvePoint apply(const CurvePoint& p) const;
  CurvePoint unapply(const CurvePoint& p) const;
};

struct ShortModel {
  ShortForm form;
  CurveMap map;  // sends points of the long model to points of `form`
};

// Completion of square and cube, then the integral scaling
// (x, y) -> (u^2 x, u^3 y) with the least u in N making A and B integers.
// An already-short integral model returns the identity map.
ShortModel to_short_form(const WeierstrassCurve& curve);

// Group law in exact rational arithmetic. add() and scalar_mul() throw
// PointNotOnCurve when a point does not satisfy the curve equation.
CurvePoint negate(const WeierstrassCurve& curve, const CurvePoint& p);
CurvePoint add(const WeierstrassCurve& curve, const CurvePoint& p,
               const CurvePoint& q);
CurvePoint scalar_mul(const WeierstrassCurve& curve, long k,
                      const CurvePoint& p);

// Twist of y^2 = x^3 + Ax + B by squarefree d: y^2 = x^3 + A d^2 x + B d^3.
// Throws NotSquarefree when d has a square factor, InvalidArgument for 0.
ShortForm quadratic_twist(const ShortForm& sf, const Int& d);

// True iff k*P != O for all 1 <= k <= 12; rational torsion has order at
// most 12, so true means infinite order.
bool is_nontorsion(const WeierstrassCurve& curve, const CurvePoint& p);

// Default base model: the standard minimal curve of conductor 19
// (y^2 + y = x^3 + x^2 - 9x - 15). Treated as input data.
WeierstrassCurve conductor19_model();

}  // namespace twistrank::curve

#endif
