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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "test_util.hpp"
#include "twistrank/certify.hpp"
#include "twistrank/errors.hpp"
#include "twistrank/search.hpp"

using namespace twistrank;
using namespace twistrank::certify;

namespace {

// Synthetic fixture: y^2 = x(x-18)(x-20), whose twists by the kernels of
// the canonical n=3 box all carry genuine non-torsion points.
curve::WeierstrassCurve synthetic_base() {
  return curve::WeierstrassCurve::checked(Rat(0), Rat(-38), Rat(0), Rat(360),
                                          Rat(0));
}

AnnotatedTwistSet synthetic_twist_set(const curve::RankTable& table,
                                      uint64_t bound) {
  curve::OracleConfig config;
  config.search_bound = 0;
  config.table = &table;
  return compute_twist_set(synthetic_base(), bound, config, 2);
}

}  // namespace

TEST_CASE("compute_twist_set at N=1") {
  // Base with a small witness: the derived set is {1}.
  const auto base = curve::as_long(curve::ShortForm{Rat(0), Rat(-2)});
  curve::OracleConfig config;
  config.search_bound = 10;
  const auto tw = compute_twist_set(base, 1, config);
  CHECK(tw.derived.elements() == std::vector<uint64_t>{1});
  CHECK(tw.witnessed_density == 1.0);

  // Rank-0 base finds nothing at height 1.
  curve::OracleConfig tiny;
  tiny.search_bound = 1;
  const auto none = compute_twist_set(curve::conductor19_model(), 1, tiny);
  CHECK(none.derived.empty());
}

TEST_CASE("derived set is closed under square multiples") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 1000);
  CHECK(tw.derived.contains(110));
  CHECK(tw.derived.contains(440));   // 110 * 4
  CHECK(tw.derived.contains(990));   // 110 * 9
  CHECK_FALSE(tw.derived.contains(220));
  for (uint64_t d : tw.derived.elements()) {
    const auto kernel = curve::split_square_part(d).kernel;
    CHECK(tw.kernels.at(kernel).has_point());
  }
}

TEST_CASE("twist sets are identical across thread counts") {
  const auto base = curve::as_long(curve::ShortForm{Rat(0), Rat(-2)});
  curve::OracleConfig config;
  config.search_bound = 60;
  const auto solo = compute_twist_set(base, 60, config, 1);
  const auto pooled = compute_twist_set(base, 60, config, 4);
  CHECK(solo.derived.elements() == pooled.derived.elements());
  REQUIRE(solo.kernels.size() == pooled.kernels.size());
  for (const auto& [kernel, status] : solo.kernels) {
    const auto& other = pooled.kernels.at(kernel);
    CHECK(status.kind == other.kind);
    CHECK(status.point == other.point);
  }
}

TEST_CASE("build and verify a synthetic n=3 certificate") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 273);

  para::GuidedPolicy policy;
  policy.universe_floor = 10;
  const auto search =
      para::guided_search(FiniteIntegerSet::interval(1, 10000), 3, {}, policy);
  REQUIRE(search.found);
  CHECK(para::format_record(search.para) ==
        "c=110; gens=13/11,7/5,3/2; elements=110,130,154,182,165,195,231,273");

  const auto cert = build_certificate(tw, search.para, "{\"run\":\"test\"}");
  CHECK(cert.entries.size() == 8);
  CHECK(cert.c == 110);

  const auto result = verify_certificate(cert);
  CHECK(result.valid);
  CHECK(result.violations.empty());

  // Round-trip through JSON is exact.
  const std::string dir = testutil::scratch_dir();
  save_certificate(cert, dir + "/cert.json");
  const auto loaded = load_certificate(dir + "/cert.json");
  CHECK(certificate_to_json(loaded) == certificate_to_json(cert));
  CHECK(verify_certificate(loaded).valid);
}

TEST_CASE("build_certificate validates its inputs") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 273);

  // Not strict: generator 4 is a square.
  const auto square_box = para::Parallelepiped::make(Rat(110), {Rat(4)});
  CHECK_THROWS_AS(build_certificate(tw, square_box), InvalidArgument);

  // Unwitnessed kernels.
  const auto outside =
      para::Parallelepiped::make(Rat(7), {rat_from_string("13/7")});
  CHECK_THROWS_AS(build_certificate(tw, outside), MissingWitness);

  // Element beyond the twist-set bound (base element witnessed, the
  // other lands above N).
  const auto beyond =
      para::Parallelepiped::make(Rat(110), {rat_from_string("30/11")});
  CHECK_THROWS_AS(build_certificate(tw, beyond), InvalidArgument);

  // Non-integral element.
  const auto fractional =
      para::Parallelepiped::make(rat_from_string("1/2"), {Rat(6)});
  CHECK_THROWS_AS(build_certificate(tw, fractional), InvalidArgument);
}

TEST_CASE("advisory-only status never certifies") {
  // Table: genuine witness for kernel 110, advisory '?' for kernel 130.
  const auto full =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const std::string dir = testutil::scratch_dir();
  {
    std::ofstream out(dir + "/t.tsv");
    const auto* entry = full.find(110);
    REQUIRE(entry != nullptr);
    out << "110\t" << rat_to_string(entry->x) << "\t"
        << rat_to_string(entry->y) << "\n";
    out << "130\t?\n";
  }
  const auto table = curve::RankTable::load(dir + "/t.tsv");
  const auto tw = synthetic_twist_set(table, 273);

  CHECK(tw.derived.contains(110));
  CHECK_FALSE(tw.derived.contains(130));
  CHECK(tw.kernels.at(130).kind == curve::WitnessKind::ParityOdd);

  // A box through the advisory-only element has no certifiable witness.
  const auto box =
      para::Parallelepiped::make(Rat(110), {rat_from_string("13/11")});
  CHECK_THROWS_AS(build_certificate(tw, box), MissingWitness);
}

TEST_CASE("missing witness names the offending element") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 273);
  const auto box =
      para::Parallelepiped::make(Rat(7), {rat_from_string("13/7")});
  try {
    build_certificate(tw, box);
    FAIL("expected MissingWitness");
  } catch (const MissingWitness& e) {
    CHECK(std::string(e.what()).find("element 7") != std::string::npos);
  }
}

TEST_CASE("verifier rejects tampered certificates") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 273);
  para::GuidedPolicy policy;
  policy.universe_floor = 10;
  const auto search =
      para::guided_search(FiniteIntegerSet::interval(1, 10000), 3, {}, policy);
  REQUIRE(search.found);
  const auto good = build_certificate(tw, search.para);
  REQUIRE(verify_certificate(good).valid);

  {
    auto bad = good;
    bad.entries[3].witness.y += 1;
    const auto r = verify_certificate(bad);
    REQUIRE_FALSE(r.valid);
    CHECK(r.violations[0].find("not on the twist") != std::string::npos);
  }
  {
    auto bad = good;
    bad.generators[1] = bad.generators[1] * bad.generators[1];
    const auto r = verify_certificate(bad);
    REQUIRE_FALSE(r.valid);
    bool dependent = false;
    for (const auto& v : r.violations) {
      if (v.find("dependent generators") != std::string::npos) {
        dependent = true;
      }
    }
    CHECK(dependent);
  }
  {
    auto bad = good;
    bad.c += 1;
    CHECK_FALSE(verify_certificate(bad).valid);
  }
  {
    auto bad = good;
    bad.entries[5].d += 1;
    CHECK_FALSE(verify_certificate(bad).valid);
  }
  {
    auto bad = good;
    bad.entries[0].mask = 1;  // duplicate mask
    CHECK_FALSE(verify_certificate(bad).valid);
  }
  {
    auto bad = good;
    bad.schema = "twistrank.certificate/999";
    CHECK_FALSE(verify_certificate(bad).valid);
  }
  {
    auto bad = good;
    bad.base.a6 += 1;
    CHECK_FALSE(verify_certificate(bad).valid);
  }
  {
    // Torsion witness on the right twist: (5280, 0) is 2-torsion on the
    // twist by 110.
    auto bad = good;
    bad.entries[0].witness = curve::CurvePoint::affine(Rat(5280), Rat(0));
    const auto r = verify_certificate(bad);
    REQUIRE_FALSE(r.valid);
    bool torsion = false;
    for (const auto& v : r.violations) {
      if (v.find("torsion") != std::string::npos) torsion = true;
    }
    CHECK(torsion);
  }
}

TEST_CASE("certificate parsing rejects malformed input") {
  CHECK_THROWS_AS(certificate_from_json("not json"), ParseError);
  CHECK_THROWS_AS(certificate_from_json("{}"), ParseError);
  CHECK_THROWS_AS(
      certificate_from_json(R"({"schema":"something-else/1"})"), ParseError);
}

TEST_CASE("twist set save emits set file and witness store") {
  const auto table =
      curve::RankTable::load(testutil::fixture("synthetic_rank_table.tsv"));
  const auto tw = synthetic_twist_set(table, 300);
  const std::string dir = testutil::scratch_dir();

  // Mirror of the C API's save: exercised there; here check derived save.
  tw.derived.save(dir + "/set.txt", "{}");
  const auto loaded = FiniteIntegerSet::load(dir + "/set.txt");
  CHECK(loaded.elements() == tw.derived.elements());
  CHECK(loaded.universe() == tw.derived.universe());
}
