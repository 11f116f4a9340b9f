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

#include "twistrank/certify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "twistrank/arith.hpp"
#include "twistrank/errors.hpp"

namespace twistrank::certify {

using nlohmann::json;

namespace {

bool is_squarefree_u64(uint64_t n) {
  return curve::split_square_part(n).kernel == n;
}

}  // namespace

void refresh_derived(AnnotatedTwistSet& tw) {
  const curve::ShortModel model = curve::to_short_form(tw.base);
  for (const auto& [kernel, status] : tw.kernels) {
    if (!status.has_point()) continue;
    const curve::ShortForm twisted = curve::quadratic_twist(
        model.form, Int(static_cast<unsigned long>(kernel)));
    const curve::WeierstrassCurve twisted_long = curve::as_long(twisted);
    if (!curve::on_curve(twisted_long, status.point) ||
        !curve::is_nontorsion(twisted_long, status.point)) {
      throw PointNotOnCurve(
          "twist set: stored witness for kernel " + std::to_string(kernel) +
          " does not verify");
    }
  }
  std::vector<uint64_t> members;
  for (uint64_t d = 1; d <= tw.bound; ++d) {
    const auto it = tw.kernels.find(curve::split_square_part(d).kernel);
    if (it != tw.kernels.end() && it->second.has_point()) {
      members.push_back(d);
    }
  }
  tw.derived = FiniteIntegerSet(std::move(members), tw.bound);
  tw.witnessed_density =
      static_cast<double>(tw.derived.size()) / static_cast<double>(tw.bound);
}

AnnotatedTwistSet compute_twist_set(const curve::WeierstrassCurve& base,
                                    uint64_t bound,
                                    const curve::OracleConfig& config,
                                    unsigned threads,
                                    const ProgressSink& progress) {
  if (bound < 1) throw InvalidArgument("compute_twist_set: bound must be >= 1");
  AnnotatedTwistSet tw;
  tw.base = base;
  tw.bound = bound;

  std::vector<uint64_t> squarefree;
  for (uint64_t d = 1; d <= bound; ++d) {
    if (is_squarefree_u64(d)) squarefree.push_back(d);
  }

  curve::WitnessCache cache;
  std::mutex collect_mutex;
  std::atomic<size_t> next_index{0};
  const unsigned worker_count = std::max(1u, threads);

  auto worker = [&]() {
    while (true) {
      const size_t i = next_index.fetch_add(1);
      if (i >= squarefree.size()) break;
      const uint64_t d = squarefree[i];
      curve::WitnessStatus status =
          curve::positive_rank_oracle(base, d, config, &cache);
      std::lock_guard<std::mutex> lock(collect_mutex);
      tw.kernels[d] = status;
      if (progress) progress(d, status);
    }
  };

  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  refresh_derived(tw);
  return tw;
}

Certificate build_certificate(const AnnotatedTwistSet& tw,
                              const para::Parallelepiped& p,
                              const std::string& metadata_json) {
  if (!para::is_strict(p)) {
    throw InvalidArgument("build_certificate: parallelepiped is not strict");
  }

  Certificate cert;
  cert.base = tw.base;
  cert.generators = p.generators;
  cert.metadata_json = metadata_json;

  const auto elements = para::enumerate_elements(p);
  cert.c = elements[0].get_num();

  // Element-wise checks subsume verify_in_set(p, tw.derived): the
  // derived set is exactly the d <= N whose kernel carries a point.
  for (size_t mask = 0; mask < elements.size(); ++mask) {
    const Rat& value = elements[mask];
    if (value.get_den() != 1 || sgn(value) <= 0 ||
        !value.get_num().fits_ulong_p() ||
        value.get_num().get_ui() > tw.bound) {
      throw InvalidArgument("build_certificate: element " +
                            rat_to_string(value) +
                            " is not a positive integer within the bound");
    }
    const Int d = value.get_num();
    const uint64_t kernel = curve::split_square_part(d.get_ui()).kernel;
    const auto it = tw.kernels.find(kernel);
    if (it == tw.kernels.end() || !it->second.has_point()) {
      throw MissingWitness("build_certificate: element " + d.get_str() +
                           " (kernel " + std::to_string(kernel) +
                           ") has no stored witness point");
    }
    CertificateEntry entry;
    entry.mask = static_cast<uint64_t>(mask);
    entry.d = d;
    entry.witness = it->second.point;
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

namespace {

void verify_certificate_impl(const Certificate& cert, VerifyResult& result);

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
  VerifyResult result;
  try {
    verify_certificate_impl(cert, result);
  } catch (const std::exception& e) {
    result.valid = false;
    result.violations.push_back(std::string("verification error: ") +
                                e.what());
  }
  return result;
}

namespace {

void verify_certificate_impl(const Certificate& cert, VerifyResult& result) {
  auto fail = [&result](const std::string& what) {
    result.valid = false;
    result.violations.push_back(what);
  };

  if (cert.schema != kCertificateSchema) {
    fail("unsupported schema '" + cert.schema + "'");
    return;
  }

  // Base curve must be a nonsingular model before any point checks.
  if (sgn(curve::discriminant(cert.base)) == 0) {
    fail("base curve is singular");
    return;
  }

  const size_t n = cert.generators.size();
  if (n == 0 || n >= 63) {
    fail("generator count out of range");
    return;
  }
  const size_t expected_entries = size_t(1) << n;
  if (cert.entries.size() != expected_entries) {
    fail("expected " + std::to_string(expected_entries) + " entries, found " +
         std::to_string(cert.entries.size()));
    return;
  }
  if (sgn(cert.c) <= 0) fail("c must be positive");
  for (size_t i = 0; i < n; ++i) {
    if (sgn(cert.generators[i]) <= 0) {
      fail("generator " + std::to_string(i) + " must be positive");
    }
  }
  if (!result.valid) return;

  // (i) masks are 0..2^n-1 in order and each d equals c * prod of the
  // selected generators, as a positive integer.
  for (size_t mask = 0; mask < expected_entries; ++mask) {
    const CertificateEntry& entry = cert.entries[mask];
    if (entry.mask != mask) {
      fail("entry " + std::to_string(mask) + ": mask mismatch");
      continue;
    }
    Rat product(cert.c);
    for (size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) product *= cert.generators[i];
    }
    if (product.get_den() != 1 || sgn(product) <= 0) {
      fail("entry " + std::to_string(mask) +
           ": subset product is not a positive integer");
      continue;
    }
    if (product.get_num() != entry.d) {
      fail("entry " + std::to_string(mask) +
           ": d does not match the subset product");
    }
  }

  // (ii) generator classes independent: dimension is exactly n.
  std::vector<arith::SquareClass> gen_classes;
  for (const Rat& g : cert.generators) {
    gen_classes.push_back(arith::square_class(g));
  }
  if (!arith::f2_independent(gen_classes).independent) {
    fail("dependent generators: square classes do not span dimension n");
  }

  // (v) the entries' square classes sweep the coset class(c) * V exactly.
  {
    const arith::SquareClass c_class = arith::square_class(Rat(cert.c));
    std::vector<arith::SquareClass> seen;
    for (size_t mask = 0; mask < cert.entries.size(); ++mask) {
      arith::SquareClass expected = c_class;
      for (size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) {
          expected = arith::class_product(expected, gen_classes[i]);
        }
      }
      if (sgn(cert.entries[mask].d) > 0) {
        const arith::SquareClass actual =
            arith::square_class(Rat(cert.entries[mask].d));
        if (!(actual == expected)) {
          fail("entry " + std::to_string(mask) +
               ": square class departs from the coset");
        }
        seen.push_back(actual);
      }
    }
    std::sort(seen.begin(), seen.end(),
              [](const arith::SquareClass& a, const arith::SquareClass& b) {
                if (a.sign != b.sign) return a.sign < b.sign;
                return a.odd_primes < b.odd_primes;
              });
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      fail("entries do not realize 2^n distinct square classes");
    }
  }

  // (iii) + (iv) every witness sits on the twist by the squarefree kernel
  // of its d and has infinite order.
  const curve::ShortModel model = curve::to_short_form(cert.base);
  for (const CertificateEntry& entry : cert.entries) {
    if (sgn(entry.d) <= 0 || !entry.d.fits_ulong_p()) {
      fail("entry " + std::to_string(entry.mask) +
           ": twist parameter out of range");
      continue;
    }
    const uint64_t kernel =
        curve::split_square_part(entry.d.get_ui()).kernel;
    const curve::ShortForm twisted = curve::quadratic_twist(
        model.form, Int(static_cast<unsigned long>(kernel)));
    const curve::WeierstrassCurve twisted_long = curve::as_long(twisted);
    if (entry.witness.infinity || !curve::on_curve(twisted_long, entry.witness)) {
      fail("entry " + std::to_string(entry.mask) +
           ": witness is not on the twist by " + std::to_string(kernel));
      continue;
    }
    if (!curve::is_nontorsion(twisted_long, entry.witness)) {
      fail("entry " + std::to_string(entry.mask) + ": witness is torsion");
    }
  }

}

}  // namespace

namespace {

std::string rat_field(const json& j, const char* what) {
  if (!j.is_string()) {
    throw ParseError(std::string("certificate: ") + what +
                     " must be a rational string");
  }
  return j.get<std::string>();
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["schema"] = cert.schema;
  j["base_curve"] = {{"a1", rat_to_string(cert.base.a1)},
                     {"a2", rat_to_string(cert.base.a2)},
                     {"a3", rat_to_string(cert.base.a3)},
                     {"a4", rat_to_string(cert.base.a4)},
                     {"a6", rat_to_string(cert.base.a6)}};
  j["c"] = cert.c.get_str();
  json gens = json::array();
  for (const Rat& g : cert.generators) gens.push_back(rat_to_string(g));
  j["generators"] = gens;
  json entries = json::object();
  for (const CertificateEntry& e : cert.entries) {
    entries[std::to_string(e.mask)] = {
        {"d", e.d.get_str()},
        {"witness",
         {{"x", rat_to_string(e.witness.x)},
          {"y", rat_to_string(e.witness.y)}}}};
  }
  j["entries"] = entries;
  try {
    j["metadata"] = json::parse(cert.metadata_json);
  } catch (const json::exception&) {
    j["metadata"] = json::object();
  }
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: invalid JSON: ") + e.what());
  }
  try {
    Certificate cert;
    cert.schema = j.at("schema").get<std::string>();
    if (cert.schema != kCertificateSchema) {
      throw ParseError("certificate: unsupported schema '" + cert.schema +
                       "'");
    }
    const json& bc = j.at("base_curve");
    cert.base.a1 = rat_from_string(rat_field(bc.at("a1"), "a1"));
    cert.base.a2 = rat_from_string(rat_field(bc.at("a2"), "a2"));
    cert.base.a3 = rat_from_string(rat_field(bc.at("a3"), "a3"));
    cert.base.a4 = rat_from_string(rat_field(bc.at("a4"), "a4"));
    cert.base.a6 = rat_from_string(rat_field(bc.at("a6"), "a6"));
    cert.c = int_from_string(rat_field(j.at("c"), "c"));
    for (const json& g : j.at("generators")) {
      cert.generators.push_back(rat_from_string(rat_field(g, "generator")));
    }
    const json& entries = j.at("entries");
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      CertificateEntry entry;
      try {
        entry.mask = std::stoull(it.key());
      } catch (const std::exception&) {
        throw ParseError("certificate: bad entry mask '" + it.key() + "'");
      }
      entry.d = int_from_string(rat_field(it.value().at("d"), "d"));
      const json& w = it.value().at("witness");
      entry.witness = curve::CurvePoint::affine(
          rat_from_string(rat_field(w.at("x"), "witness x")),
          rat_from_string(rat_field(w.at("y"), "witness y")));
      cert.entries.push_back(std::move(entry));
    }
    std::sort(cert.entries.begin(), cert.entries.end(),
              [](const CertificateEntry& a, const CertificateEntry& b) {
                return a.mask < b.mask;
              });
    cert.metadata_json =
        j.contains("metadata") ? j.at("metadata").dump() : "{}";
    return cert;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: missing or bad field: ") +
                     e.what());
  }
}

Certificate load_certificate(const std::string& path) {
  return certificate_from_json(read_file(path));
}

void save_certificate(const Certificate& cert, const std::string& path) {
  write_file_atomic(path, certificate_to_json(cert));
}

}  // namespace twistrank::certify
