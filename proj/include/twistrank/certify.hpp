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

#ifndef TWISTRANK_CERTIFY_HPP
#define TWISTRANK_CERTIFY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twistrank/curve.hpp"
#include "twistrank/intset.hpp"
#include "twistrank/para.hpp"
#include "twistrank/witness.hpp"

namespace twistrank::certify {

inline constexpr const char* kCertificateSchema = "twistrank.certificate/1";

// The positive-rank twist set of a base curve up to N, with the evidence
// that put each parameter there. `kernels` maps squarefree d to its
// status; `derived` extends to every d <= N whose kernel carries a point.
struct AnnotatedTwistSet {
  curve::WeierstrassCurve base;
  uint64_t bound = 0;
  std::map<uint64_t, curve::WitnessStatus> kernels;
  FiniteIntegerSet derived;
  double witnessed_density = 0;
};

using ProgressSink =
    std::function<void(uint64_t d, const curve::WitnessStatus&)>;

// Runs the rank oracle over every squarefree d <= N (fanning out over
// `threads`), then extends by square multiples. Deterministic for a fixed
// config regardless of thread count.
AnnotatedTwistSet compute_twist_set(const curve::WeierstrassCurve& base,
                                    uint64_t bound,
                                    const curve::OracleConfig& config,
                                    unsigned threads = 1,
                                    const ProgressSink& progress = nullptr);

// Rebuilds the derived set and density from `kernels`; validates that
// stored points verify on their twists.
void refresh_derived(AnnotatedTwistSet& tw);

struct CertificateEntry {
  uint64_t mask = 0;  // bit i selects generator i
  Int d;              // c * prod of selected generators, a positive integer
  curve::CurvePoint witness;  // on the twist by the squarefree kernel of d
};

struct Certificate {
  std::string schema = kCertificateSchema;
  curve::WeierstrassCurve base;
  Int c;
  std::vector<Rat> generators;
  std::vector<CertificateEntry> entries;  // ascending mask, 2^n of them
  std::string metadata_json = "{}";       // config, bounds, tool version
};

// Assembles a certificate by pulling each element's witness from the
// twist set. Requires is_strict(p) and verify_in_set(p, tw.derived);
// throws MissingWitness when an element's kernel has no stored point.
Certificate build_certificate(const AnnotatedTwistSet& tw,
                              const para::Parallelepiped& p,
                              const std::string& metadata_json = "{}");

struct VerifyResult {
  bool valid = true;
  std::vector<std::string> violations;
};

// Full independent recheck in exact arithmetic: schema, nonsingular base,
// entry masks and products, F2-independence of the generators, coset
// structure of the square classes, and each witness (on its twist,
// non-torsion). Never throws; Invalid is a value.
VerifyResult verify_certificate(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

Certificate load_certificate(const std::string& path);
void save_certificate(const Certificate& cert, const std::string& path);

}  // namespace twistrank::certify

#endif
