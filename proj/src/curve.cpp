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

#include "twistrank/curve.hpp"

#include <algorithm>
#include <vector>

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"

namespace twistrank::curve {

namespace {

struct BInvariants {
  Rat b2, b4, b6, b8;
};

BInvariants b_invariants(const WeierstrassCurve& c) {
  BInvariants b;
  b.b2 = c.a1 * c.a1 + 4 * c.a2;
  b.b4 = 2 * c.a4 + c.a1 * c.a3;
  b.b6 = c.a3 * c.a3 + 4 * c.a6;
  b.b8 = c.a1 * c.a1 * c.a6 + 4 * c.a2 * c.a6 - c.a1 * c.a3 * c.a4 +
         c.a2 * c.a3 * c.a3 - c.a4 * c.a4;
  return b;
}

void require_on_curve(const WeierstrassCurve& c, const CurvePoint& p,
                      const char* who) {
  if (!on_curve(c, p)) {
    throw PointNotOnCurve(std::string(who) + ": point not on curve");
  }
}

}  // namespace

Rat discriminant(const WeierstrassCurve& c) {
  const auto b = b_invariants(c);
  return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 +
         9 * b.b2 * b.b4 * b.b6;
}

WeierstrassCurve WeierstrassCurve::checked(Rat a1, Rat a2, Rat a3, Rat a4,
                                           Rat a6) {
  WeierstrassCurve c{std::move(a1), std::move(a2), std::move(a3),
                     std::move(a4), std::move(a6)};
  if (sgn(discriminant(c)) == 0) {
    throw InvalidArgument("WeierstrassCurve: model is singular");
  }
  return c;
}

WeierstrassCurve as_long(const ShortForm& sf) {
  return WeierstrassCurve{Rat(0), Rat(0), Rat(0), sf.A, sf.B};
}

bool on_curve(const WeierstrassCurve& c, const CurvePoint& p) {
  if (p.infinity) return true;
  const Rat lhs = p.y * p.y + c.a1 * p.x * p.y + c.a3 * p.y;
  const Rat rhs = p.x * p.x * p.x + c.a2 * p.x * p.x + c.a4 * p.x + c.a6;
  return lhs == rhs;
}

bool on_curve(const ShortForm& sf, const CurvePoint& p) {
  return on_curve(as_long(sf), p);
}

CurveMap CurveMap::identity() {
  return CurveMap{Rat(1), Rat(0), Rat(1), Rat(0), Rat(0)};
}

CurvePoint CurveMap::apply(const CurvePoint& p) const {
  if (p.infinity) return p;
  return CurvePoint::affine(sx * p.x + tx, sy * p.y + yx * p.x + ty);
}

CurvePoint CurveMap::unapply(const CurvePoint& p) const {
  if (p.infinity) return p;
  const Rat x = (p.x - tx) / sx;
  const Rat y = (p.y - yx * x - ty) / sy;
  return CurvePoint::affine(x, y);
}

ShortModel to_short_form(const WeierstrassCurve& c) {
  const auto b = b_invariants(c);

  // eta = y + (a1 x + a3)/2, xi = x + b2/12 turn the long model into
  // eta^2 = xi^3 + A xi + B.
  const Rat A = (24 * b.b4 - b.b2 * b.b2) / 48;
  const Rat B =
      (b.b2 * b.b2 * b.b2 - 36 * b.b2 * b.b4 + 216 * b.b6) / 864;

  // Least u in N with u^4 A and u^6 B integral; u^2 | den(A) den(B)
  // forces u | den(A) den(B), so search divisors of that product.
  Int u(1);
  {
    const Int target = A.get_den() * B.get_den();
    if (target > 1) {
      Int best(0);
      const auto fac = arith::factorize(target);
      // Enumerate candidate u as products of prime powers dividing target.
      std::vector<Int> candidates{Int(1)};
      for (const auto& [p, e] : fac.factors) {
        const size_t count = candidates.size();
        Int pe(1);
        for (unsigned i = 1; i <= e; ++i) {
          pe *= p;
          for (size_t k = 0; k < count; ++k) {
            candidates.push_back(candidates[k] * pe);
          }
        }
      }
      std::sort(candidates.begin(), candidates.end());
      for (const Int& cand : candidates) {
        Int u4, u6;
        mpz_pow_ui(u4.get_mpz_t(), cand.get_mpz_t(), 4);
        mpz_pow_ui(u6.get_mpz_t(), cand.get_mpz_t(), 6);
        const Rat a_scaled = A * Rat(u4);
        const Rat b_scaled = B * Rat(u6);
        if (a_scaled.get_den() == 1 && b_scaled.get_den() == 1) {
          best = cand;
          break;
        }
      }
      u = best != 0 ? best : target;
    }
  }

  const Rat u2(u * u);
  const Rat u3(u * u * u);

  ShortModel model;
  model.form.A = A * u2 * u2;
  model.form.B = B * u2 * u2 * u2;
  model.form.A.canonicalize();
  model.form.B.canonicalize();

  // Composite map: (x, y) -> (u^2 (x + b2/12), u^3 (y + (a1 x + a3)/2)).
  model.map.sx = u2;
  model.map.tx = u2 * b.b2 / 12;
  model.map.sy = u3;
  model.map.yx = u3 * c.a1 / 2;
  model.map.ty = u3 * c.a3 / 2;
  return model;
}

CurvePoint negate(const WeierstrassCurve& c, const CurvePoint& p) {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y - c.a1 * p.x - c.a3);
}

CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p,
               const CurvePoint& q) {
  require_on_curve(c, p, "add");
  require_on_curve(c, q, "add");
  if (p.infinity) return q;
  if (q.infinity) return p;

  // P + Q = O exactly when Q is the negation of P.
  if (p.x == q.x && q.y == -p.y - c.a1 * p.x - c.a3) {
    return CurvePoint::at_infinity();
  }

  Rat lambda, nu;
  if (p.x != q.x) {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  } else {
    const Rat denom = 2 * p.y + c.a1 * p.x + c.a3;
    lambda = (3 * p.x * p.x + 2 * c.a2 * p.x + c.a4 - c.a1 * p.y) / denom;
    nu = (-p.x * p.x * p.x + c.a4 * p.x + 2 * c.a6 - c.a3 * p.y) / denom;
  }

  const Rat x3 = lambda * lambda + c.a1 * lambda - c.a2 - p.x - q.x;
  const Rat y3 = -(lambda + c.a1) * x3 - nu - c.a3;
  return CurvePoint::affine(x3, y3);
}

CurvePoint scalar_mul(const WeierstrassCurve& c, long k, const CurvePoint& p) {
  require_on_curve(c, p, "scalar_mul");
  CurvePoint base = p;
  if (k < 0) {
    base = negate(c, base);
    k = -k;
  }
  CurvePoint acc = CurvePoint::at_infinity();
  while (k > 0) {
    if (k & 1) acc = add(c, acc, base);
    k >>= 1;
    if (k > 0) base = add(c, base, base);
  }
  return acc;
}

ShortForm quadratic_twist(const ShortForm& sf, const Int& d) {
  if (d == 0) throw InvalidArgument("quadratic_twist: d must be nonzero");
  if (!arith::factorize(abs(d)).squarefree()) {
    throw NotSquarefree("quadratic_twist: d = " + d.get_str() +
                        " has a square factor");
  }
  const Rat d2(d * d);
  const Rat d3(d * d * d);
  ShortForm out{sf.A * d2, sf.B * d3};
  out.A.canonicalize();
  out.B.canonicalize();
  return out;
}

bool is_nontorsion(const WeierstrassCurve& c, const CurvePoint& p) {
  require_on_curve(c, p, "is_nontorsion");
  if (p.infinity) return false;
  CurvePoint acc = p;
  for (int k = 2; k <= 12; ++k) {
    acc = add(c, acc, p);
    if (acc.infinity) return false;
  }
  return true;
}

WeierstrassCurve conductor19_model() {
  return WeierstrassCurve::checked(Rat(0), Rat(1), Rat(1), Rat(-9), Rat(-15));
}

}  // namespace twistrank::curve
