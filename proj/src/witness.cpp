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

#include "twistrank/witness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"
#include "twistrank/intset.hpp"

namespace twistrank::curve {

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace

namespace {

struct SearchHit {
  uint64_t height;  // max(|m|, e^3)
  uint64_t e;
  int64_t m;
  CurvePoint point;
};

// Enumeration order: ascending height max(|m|, e^3), then e, then m.
// A larger bound only appends candidates, so results are monotone in the
// bound.
bool hit_order(const SearchHit& a, const SearchHit& b) {
  if (a.height != b.height) return a.height < b.height;
  if (a.e != b.e) return a.e < b.e;
  return a.m < b.m;
}

}  // namespace

WitnessStatus search_witness(const ShortForm& sf, uint64_t bound) {
  if (bound < 1) throw InvalidArgument("search_witness: bound must be >= 1");
  const WeierstrassCurve longform = as_long(sf);
  const bool integral = sf.A.get_den() == 1 && sf.B.get_den() == 1;

  // Collect every x = m/e^2 in the height rectangle whose cubic value is
  // a rational square; the scan order is free because hits are re-sorted
  // by enumeration order below.
  std::vector<SearchHit> hits;
  Int value, m3;
  for (uint64_t e = 1; e * e * e <= bound; ++e) {
    const uint64_t e3 = e * e * e;
    const Int e2_int(static_cast<unsigned long>(e * e));
    // Per-e constants: A*e^4 and B*e^6.
    Int ae4, be6;
    if (integral) {
      Int e4_int = e2_int * e2_int;
      ae4 = sf.A.get_num() * e4_int;
      be6 = sf.B.get_num() * e4_int * e2_int;
    }
    for (int64_t m = -static_cast<int64_t>(bound);
         m <= static_cast<int64_t>(bound); ++m) {
      const uint64_t am =
          m < 0 ? static_cast<uint64_t>(-m) : static_cast<uint64_t>(m);
      if (gcd_u64(am, e) != 1) continue;
      const uint64_t height = std::max(am, e3);

      if (integral) {
        // y^2 = (m^3 + A m e^4 + B e^6) / e^6 and e^6 is a square, so the
        // numerator alone decides squareness.
        m3 = Int(m);
        m3 = m3 * m3 * m3;
        value = m3 + ae4 * m + be6;
        if (sgn(value) < 0 ||
            mpz_perfect_square_p(value.get_mpz_t()) == 0) {
          continue;
        }
        Int ynum = exact_sqrt(value);
        Int yden = e2_int * Int(static_cast<unsigned long>(e));
        Rat y(ynum, yden);
        y.canonicalize();
        Rat x(Int(m), e2_int);
        x.canonicalize();
        hits.push_back({height, e, m, CurvePoint::affine(x, y)});
      } else {
        Rat x(Int(m), e2_int);
        x.canonicalize();
        const Rat rhs = x * x * x + sf.A * x + sf.B;
        if (sgn(rhs) < 0 || !rat_is_square(rhs)) continue;
        Rat y(exact_sqrt(rhs.get_num()), exact_sqrt(rhs.get_den()));
        y.canonicalize();
        hits.push_back({height, e, m, CurvePoint::affine(x, y)});
      }
    }
  }

  std::sort(hits.begin(), hits.end(), hit_order);
  for (const SearchHit& hit : hits) {
    if (is_nontorsion(longform, hit.point)) {
      WitnessStatus st;
      st.kind = WitnessKind::Witnessed;
      st.point = hit.point;
      st.search_bound = bound;
      return st;
    }
  }
  WitnessStatus st;
  st.kind = WitnessKind::NoneFound;
  st.search_bound = bound;
  return st;
}

namespace {

std::string strip(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> fields;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) fields.push_back(tok);
  return fields;
}

}  // namespace

RankTable RankTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rank table '" + path + "'");
  RankTable table;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    const auto fields = split_fields(s);
    const std::string where = path + ":" + std::to_string(lineno);
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(where + ": expected 'd x y' or 'd ?'");
    }
    RankTableEntry entry;
    try {
      size_t pos = 0;
      entry.d = std::stoull(fields[0], &pos);
      if (pos != fields[0].size() || entry.d == 0) {
        throw std::invalid_argument(fields[0]);
      }
    } catch (const std::exception&) {
      throw ParseError(where + ": bad twist parameter '" + fields[0] + "'");
    }
    if (fields.size() == 3) {
      entry.has_point = true;
      entry.x = rat_from_string(fields[1]);
      entry.y = rat_from_string(fields[2]);
    } else if (fields[1] == "?") {
      entry.has_point = false;
    } else {
      throw ParseError(where + ": expected '?' in the point column");
    }
    table.put(std::move(entry));
  }
  return table;
}

void RankTable::save(const std::string& path,
                     const std::string& config_comment) const {
  std::ostringstream out;
  if (!config_comment.empty()) out << "# config: " << config_comment << "\n";
  out << "# d\tx\ty (witness on the twist by squarefree d; '?' = advisory)\n";
  for (const auto& [d, entry] : entries_) {
    if (entry.has_point) {
      out << d << "\t" << rat_to_string(entry.x) << "\t"
          << rat_to_string(entry.y) << "\n";
    } else {
      out << d << "\t?\n";
    }
  }
  write_file_atomic(path, out.str());
}

void RankTable::put(RankTableEntry entry) {
  entries_[entry.d] = std::move(entry);
}

const RankTableEntry* RankTable::find(uint64_t d) const {
  auto it = entries_.find(d);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<WitnessStatus> WitnessCache::get(uint64_t kernel) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = map_.find(kernel);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void WitnessCache::put(uint64_t kernel, WitnessStatus status) {
  std::lock_guard<std::mutex> lock(mutex_);
  map_[kernel] = std::move(status);
}

SquarePartition split_square_part(uint64_t n) {
  if (n == 0) throw InvalidArgument("split_square_part: n must be >= 1");
  const auto fac = arith::factorize(Int(static_cast<unsigned long>(n)));
  SquarePartition parts;
  Int kernel(1), root(1);
  for (const auto& [p, e] : fac.factors) {
    if (e % 2 == 1) kernel *= p;
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
  }
  parts.kernel = kernel.get_ui();
  parts.root = root.get_ui();
  return parts;
}

std::optional<int> twist_root_number(const Int& d, const Int& conductor,
                                     int base_root_number) {
  Int g;
  mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), Int(2 * conductor).get_mpz_t());
  if (g != 1) return std::nullopt;

  // chi_d(-N) for the quadratic character attached to Q(sqrt(d)); the
  // character is the Kronecker symbol of the fundamental discriminant.
  Int fundamental = d;
  Int rem;
  mpz_mod_ui(rem.get_mpz_t(), d.get_mpz_t(), 4);
  if (rem != 1) fundamental = 4 * d;
  const Int arg = -conductor;
  const int chi = mpz_kronecker(fundamental.get_mpz_t(), arg.get_mpz_t());
  return base_root_number * chi;
}

WitnessStatus positive_rank_oracle(const WeierstrassCurve& base, uint64_t d,
                                   const OracleConfig& config,
                                   WitnessCache* cache) {
  if (d < 1) throw InvalidArgument("positive_rank_oracle: d must be >= 1");
  const auto parts = split_square_part(d);
  const ShortModel model = to_short_form(base);

  auto transfer_to_d = [&](WitnessStatus st) {
    if (st.has_point() && parts.root != 1 && !st.point.infinity) {
      const Rat m2(Int(static_cast<unsigned long>(parts.root * parts.root)));
      const Rat m3 = m2 * Rat(Int(static_cast<unsigned long>(parts.root)));
      st.point = CurvePoint::affine(m2 * st.point.x, m3 * st.point.y);
    }
    return st;
  };

  auto resolve_kernel = [&]() -> WitnessStatus {
    const ShortForm twisted =
        quadratic_twist(model.form, Int(static_cast<unsigned long>(parts.kernel)));

    // Imported table first; entries without points never certify and
    // downgrade to advisory.
    if (config.table != nullptr) {
      if (const RankTableEntry* entry = config.table->find(parts.kernel)) {
        if (entry->has_point) {
          CurvePoint p = CurvePoint::affine(entry->x, entry->y);
          const WeierstrassCurve twisted_long = as_long(twisted);
          if (!on_curve(twisted_long, p) || !is_nontorsion(twisted_long, p)) {
            throw PointNotOnCurve(
                "rank table: entry for d = " + std::to_string(parts.kernel) +
                " is not a non-torsion point on the twist");
          }
          WitnessStatus st;
          st.kind = WitnessKind::Imported;
          st.point = p;
          st.source = "table";
          return st;
        }
        WitnessStatus st;
        st.kind = WitnessKind::ParityOdd;
        st.source = "table-advisory";
        return st;
      }
    }

    if (cache != nullptr) {
      if (auto cached = cache->get(parts.kernel)) return *cached;
    }

    WitnessStatus st;
    if (config.search_bound > 0) {
      st = search_witness(twisted, config.search_bound);
    } else {
      st.kind = WitnessKind::NoneFound;
      st.search_bound = 0;
    }
    if (st.kind == WitnessKind::NoneFound && config.parity_filter) {
      const auto w =
          twist_root_number(Int(static_cast<unsigned long>(parts.kernel)),
                            config.parity_conductor, config.base_root_number);
      if (w && *w == -1) st.kind = WitnessKind::ParityOdd;
    }
    if (cache != nullptr) cache->put(parts.kernel, st);
    return st;
  };

  return transfer_to_d(resolve_kernel());
}

}  // namespace twistrank::curve
