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

#ifndef TWISTRANK_WITNESS_HPP
#define TWISTRANK_WITNESS_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "twistrank/curve.hpp"

namespace twistrank::curve {

enum class WitnessKind {
  Witnessed,  // non-torsion point found by search
  NoneFound,  // search exhausted without a usable point
  Imported,   // point taken from an ingested table, re-verified
  ParityOdd,  // advisory only: root-number heuristic says odd rank
};

struct WitnessStatus {
  WitnessKind kind = WitnessKind::NoneFound;
  CurvePoint point;  // meaningful for Witnessed / Imported
  uint64_t search_bound = 0;
  std::string source;  // tag for Imported

  bool has_point() const {
    return kind == WitnessKind::Witnessed || kind == WitnessKind::Imported;
  }
};

// Naive-height enumeration of x = m / e^2 with max(|m|, e^3) <= bound,
// gcd(m, e) = 1, ordered by that height (then by e, then m). The order is
// a prefix of the order for any larger bound. Returns the first
// non-torsion point, else NoneFound carrying the bound.
WitnessStatus search_witness(const ShortForm& sf, uint64_t bound);

// Ingested twist rank table: one record per line,
//   d <tab> x <tab> y   (witness point on the twist by squarefree d)
//   d <tab> ?           (advisory only)
// with '#' comments.
struct RankTableEntry {
  uint64_t d = 0;
  bool has_point = false;
  Rat x, y;
};

class RankTable {
 public:
  static RankTable load(const std::string& path);
  void save(const std::string& path,
            const std::string& config_comment = "") const;

  void put(RankTableEntry entry);
  const RankTableEntry* find(uint64_t d) const;
  const std::map<uint64_t, RankTableEntry>& entries() const {
    return entries_;
  }

 private:
  std::map<uint64_t, RankTableEntry> entries_;
};

struct OracleConfig {
  uint64_t search_bound = 100'000;  // 0 = table/cache only, no naive search
  const RankTable* table = nullptr;
  // Root-number pre-filter. Advisory only; never enters certificates.
  bool parity_filter = false;
  Int parity_conductor = 19;
  int base_root_number = 1;
};

// Shared witness cache keyed by squarefree twist parameter. Insertions
// are last-write-wins; entries are deterministic so racing writers agree.
class WitnessCache {
 public:
  std::optional<WitnessStatus> get(uint64_t kernel) const;
  void put(uint64_t kernel, WitnessStatus status);

 private:
  mutable std::mutex mutex_;
  std::unordered_map<uint64_t, WitnessStatus> map_;
};

// Conjectural root number of the twist by squarefree d, via the Kronecker
// symbol, for d coprime to 2 * conductor: -1 predicts odd rank. Returns
// nullopt when the formula does not apply (gcd(d, 2N) > 1).
std::optional<int> twist_root_number(const Int& d, const Int& conductor,
                                     int base_root_number);

// Rank-positivity evidence for the twist by d of `base`, d >= 1.
// Reduces d to its squarefree kernel, then consults the imported table,
// the cache, and finally search_witness on the twist by the kernel.
// Witnessed/Imported points are returned on the twist by d itself via
// (x, y) -> (m^2 x, m^3 y) where d = kernel * m^2.
WitnessStatus positive_rank_oracle(const WeierstrassCurve& base, uint64_t d,
                                   const OracleConfig& config,
                                   WitnessCache* cache = nullptr);

// Squarefree kernel k and square part m of n = k * m^2, n >= 1.
struct SquarePartition {
  uint64_t kernel = 1;
  uint64_t root = 1;
};
SquarePartition split_square_part(uint64_t n);

}  // namespace twistrank::curve

#endif
