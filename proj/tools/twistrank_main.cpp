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

// Command-line front door. Talks to the twistrank shared library through
// its C API only.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistrank.h"

namespace {

using nlohmann::json;

struct Options {
  std::string curve = "conductor19";
  uint64_t bound = 20000;
  uint64_t search_bound = 100000;
  std::string table;
  bool parity = false;
  std::string conductor = "19";
  unsigned threads = 1;
  uint64_t seed = 0;

  std::vector<std::string> sets;
  std::vector<double> t_values;
  double T = 0;
  uint64_t n0 = 0;
  int64_t window_low = 0;
  int64_t window_high = 0;

  unsigned dimension = 2;
  bool brute = false;
  std::string policy = "heuristic";
  uint64_t window_a = 2;
  uint64_t window_b = 97;
  uint64_t floor = 1000;
  size_t max_results = 10;

  std::string search_set;
  std::string out;
  std::string out_set = "twists.set";
  std::string out_witness = "witnesses.tsv";
  std::string cert_path;
  double diag_T = 1000.0;
};

[[noreturn]] void die(tr_status status, const std::string& what) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what.c_str(),
               tr_last_error_message(), tr_status_name(status));
  std::exit(2);
}

void check(tr_status status, const std::string& what) {
  if (status != TR_OK) die(status, what);
}

struct CurveHandle {
  tr_curve* ptr = nullptr;
  ~CurveHandle() { tr_curve_free(ptr); }
};

struct SetHandle {
  tr_intset* ptr = nullptr;
  ~SetHandle() { tr_intset_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { tr_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? "" : ptr; }
};

void make_curve(const Options& opt, CurveHandle& handle) {
  if (opt.curve == "conductor19") {
    check(tr_curve_default(&handle.ptr), "curve");
    return;
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char c : opt.curve) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) {
    std::fprintf(stderr,
                 "error: --curve wants 'conductor19' or 'a1,a2,a3,a4,a6'\n");
    std::exit(2);
  }
  check(tr_curve_create(parts[0].c_str(), parts[1].c_str(), parts[2].c_str(),
                        parts[3].c_str(), parts[4].c_str(), &handle.ptr),
        "curve");
}

json config_json(const Options& opt, const std::string& subcommand) {
  json j;
  j["tool"] = tr_version();
  j["subcommand"] = subcommand;
  j["curve"] = opt.curve;
  j["N"] = opt.bound;
  j["search_bound"] = opt.search_bound;
  j["table"] = opt.table;
  j["parity_filter"] = opt.parity;
  j["window_policy"] = opt.policy;
  j["window"] = {opt.window_a, opt.window_b};
  j["universe_floor"] = opt.floor;
  j["n"] = opt.dimension;
  j["threads"] = opt.threads;
  j["seed"] = opt.seed;
  return j;
}

struct PartialSink {
  FILE* file = nullptr;
};

void progress_writer(uint64_t d, int has_point, const char* x, const char* y,
                     void* user) {
  auto* sink = static_cast<PartialSink*>(user);
  if (sink->file == nullptr) return;
  if (has_point != 0) {
    std::fprintf(sink->file, "%llu\t%s\t%s\n",
                 static_cast<unsigned long long>(d), x, y);
  }
  std::fflush(sink->file);
}

int run_sieve(const Options& opt) {
  CurveHandle curve;
  make_curve(opt, curve);

  // Witnesses stream into a .partial file so an interrupted run keeps
  // what it paid for; the finished stores are written atomically.
  PartialSink sink;
  const std::string partial = opt.out_witness + ".partial";
  sink.file = std::fopen(partial.c_str(), "w");

  tr_twistset* tw = nullptr;
  const tr_status status = tr_compute_twist_set(
      curve.ptr, opt.bound, opt.search_bound,
      opt.table.empty() ? nullptr : opt.table.c_str(), opt.parity ? 1 : 0,
      opt.conductor.c_str(), 1, opt.threads, progress_writer, &sink, &tw);
  if (sink.file != nullptr) std::fclose(sink.file);
  check(status, "sieve");

  const std::string config = config_json(opt, "sieve").dump();
  check(tr_twistset_save(tw, opt.out_set.c_str(), opt.out_witness.c_str(),
                         config.c_str()),
        "write outputs");
  std::remove(partial.c_str());

  double density = 0;
  tr_twistset_density(tw, &density);
  tr_intset* derived = nullptr;
  check(tr_twistset_derived(tw, &derived), "derived set");
  uint64_t size = 0;
  tr_intset_size(derived, &size);
  std::printf("witnessed %llu of %llu twist parameters (density %.4f)\n",
              static_cast<unsigned long long>(size),
              static_cast<unsigned long long>(opt.bound), density);
  std::printf("set file: %s\nwitness store: %s\n", opt.out_set.c_str(),
              opt.out_witness.c_str());
  tr_intset_free(derived);
  tr_twistset_free(tw);
  return 0;
}

int run_density(const Options& opt) {
  if (opt.sets.empty()) {
    std::fprintf(stderr, "error: density needs at least one --set\n");
    return 2;
  }
  std::vector<SetHandle> sets(opt.sets.size());
  for (size_t i = 0; i < opt.sets.size(); ++i) {
    check(tr_intset_load(opt.sets[i].c_str(), &sets[i].ptr), opt.sets[i]);
  }
  const tr_intset* first = sets[0].ptr;

  uint64_t size = 0, universe = 0;
  tr_intset_size(first, &size);
  tr_intset_universe(first, &universe);
  std::printf("set: %llu elements, universe %llu\n",
              static_cast<unsigned long long>(size),
              static_cast<unsigned long long>(universe));

  for (double t : opt.t_values) {
    double f = 0, bound = 0;
    check(tr_f_value(first, t, &f), "f value");
    check(tr_f_upper_bound(t, &bound), "upper bound");
    std::printf("f(t=%g) = %.7f  (upper bound %.7f, %s)\n", t, f, bound,
                f <= bound ? "ok" : "VIOLATED");
  }

  const double T = opt.T > 1 ? opt.T : 100000.0;
  double value = 0, trunc = 0;
  check(tr_smoothed_density(first, T, &value, &trunc), "smoothed density");
  std::printf("smoothed density at T=%g: %.7f (truncation <= %.3e)\n", T,
              value, trunc);

  const uint64_t n0 = opt.n0 > 0 ? opt.n0 : (universe + 9) / 10;
  double lower = 0;
  check(tr_lower_density_estimate(first, n0, &lower), "lower density");
  std::printf("lower density estimate (n0=%llu) = %.7f\n",
              static_cast<unsigned long long>(n0), lower);

  if (opt.window_low > 1 && opt.window_high >= opt.window_low) {
    const double t = opt.t_values.empty() ? 0.01 : opt.t_values[0];
    double lhs = 0, rhs = 0;
    int holds = 0;
    check(tr_sieve_bound_check(first, opt.window_low, opt.window_high, t,
                               &lhs, &rhs, &holds),
          "sieve bound");
    std::printf("sieve bound [%lld,%lld] at t=%g: lhs=%.7f rhs=%.7f %s\n",
                static_cast<long long>(opt.window_low),
                static_cast<long long>(opt.window_high), t, lhs, rhs,
                holds ? "holds" : "VIOLATED");
  }

  if (sets.size() >= 2) {
    std::vector<const tr_intset*> family;
    for (const auto& s : sets) family.push_back(s.ptr);
    const double t = opt.t_values.empty() ? 0.01 : opt.t_values[0];
    double union_f = 0, sum_f = 0, pair_f = 0;
    int upper = 0, lower_holds = 0;
    check(tr_bonferroni_check(family.data(), family.size(), t, &union_f,
                              &sum_f, &pair_f, &upper, &lower_holds),
          "bonferroni");
    std::printf(
        "bonferroni at t=%g over %zu sets: union=%.7f sum=%.7f pairwise=%.7f "
        "upper %s, lower %s\n",
        t, family.size(), union_f, sum_f, pair_f,
        upper ? "holds" : "VIOLATED", lower_holds ? "holds" : "VIOLATED");
  }
  return 0;
}

int emit_find_output(const Options& opt, const std::string& records,
                     const std::string& trace) {
  std::fputs(records.c_str(), stdout);
  if (!opt.out.empty()) {
    std::string content = "# config: " + config_json(opt, "find").dump() + "\n";
    content += records;
    if (!trace.empty()) {
      content += "# trace:\n";
      std::string prefixed;
      size_t pos = 0;
      while (pos < trace.size()) {
        size_t next = trace.find('\n', pos);
        if (next == std::string::npos) next = trace.size();
        prefixed += "# " + trace.substr(pos, next - pos) + "\n";
        pos = next + 1;
      }
      content += prefixed;
    }
    FILE* f = std::fopen((opt.out + ".tmp").c_str(), "w");
    if (f == nullptr) {
      std::fprintf(stderr, "error: cannot write %s\n", opt.out.c_str());
      return 2;
    }
    std::fputs(content.c_str(), f);
    std::fclose(f);
    std::rename((opt.out + ".tmp").c_str(), opt.out.c_str());
  }
  return 0;
}

int run_find(const Options& opt) {
  if (opt.sets.empty()) {
    std::fprintf(stderr, "error: find needs --set\n");
    return 2;
  }
  SetHandle set;
  check(tr_intset_load(opt.sets[0].c_str(), &set.ptr), opt.sets[0]);

  if (opt.brute) {
    tr_paralist* list = nullptr;
    check(tr_find_brute(set.ptr, opt.dimension, 0, opt.max_results, &list),
          "brute search");
    size_t count = 0;
    tr_paralist_count(list, &count);
    std::string records;
    for (size_t i = 0; i < count; ++i) {
      tr_para* para = nullptr;
      check(tr_paralist_get(list, i, &para), "result");
      OwnedString text;
      tr_para_format(para, &text.ptr);
      records += text.str() + "\n";
      tr_para_free(para);
    }
    tr_paralist_free(list);
    const int rc = emit_find_output(opt, records, "");
    if (rc != 0) return rc;
    if (count == 0) {
      std::printf("no strict %u-parallelepiped found\n", opt.dimension);
      return 1;
    }
    return 0;
  }

  int found = 0;
  tr_para* para = nullptr;
  OwnedString report;
  check(tr_find_guided(set.ptr, opt.dimension, opt.policy.c_str(),
                       opt.window_a, opt.window_b, opt.floor, nullptr, 0,
                       &found, &para, &report.ptr),
        "guided search");
  std::string records;
  if (found != 0) {
    OwnedString text;
    tr_para_format(para, &text.ptr);
    records = text.str() + "\n";
    tr_para_free(para);
  }
  const int rc = emit_find_output(opt, records, report.str());
  if (rc != 0) return rc;
  if (found == 0) {
    std::printf("exhausted: %s", report.str().c_str());
    return 1;
  }
  return 0;
}

int run_certify(const Options& opt) {
  CurveHandle curve;
  make_curve(opt, curve);

  tr_twistset* tw = nullptr;
  check(tr_compute_twist_set(curve.ptr, opt.bound, opt.search_bound,
                             opt.table.empty() ? nullptr : opt.table.c_str(),
                             opt.parity ? 1 : 0, opt.conductor.c_str(), 1,
                             opt.threads, nullptr, nullptr, &tw),
        "sieve");
  std::unique_ptr<tr_twistset, decltype(&tr_twistset_free)> tw_guard(
      tw, tr_twistset_free);

  SetHandle search_set;
  if (!opt.search_set.empty()) {
    check(tr_intset_load(opt.search_set.c_str(), &search_set.ptr),
          opt.search_set);
  } else {
    check(tr_twistset_derived(tw, &search_set.ptr), "derived set");
  }

  tr_para* para = nullptr;
  if (opt.brute) {
    tr_paralist* list = nullptr;
    check(tr_find_brute(search_set.ptr, opt.dimension, 0, 1, &list),
          "brute search");
    size_t count = 0;
    tr_paralist_count(list, &count);
    if (count == 0) {
      std::printf("no strict %u-parallelepiped in the witnessed set\n",
                  opt.dimension);
      tr_paralist_free(list);
      return 1;
    }
    check(tr_paralist_get(list, 0, &para), "result");
    tr_paralist_free(list);
  } else {
    int found = 0;
    OwnedString report;
    check(tr_find_guided(search_set.ptr, opt.dimension, opt.policy.c_str(),
                         opt.window_a, opt.window_b, opt.floor, nullptr, 0,
                         &found, &para, &report.ptr),
          "guided search");
    if (found == 0) {
      std::printf("exhausted: %s", report.str().c_str());
      return 1;
    }
  }

  OwnedString record;
  tr_para_format(para, &record.ptr);

  tr_cert* cert = nullptr;
  const std::string metadata = config_json(opt, "certify").dump();
  check(tr_build_certificate(tw, para, metadata.c_str(), &cert), "build");
  tr_para_free(para);

  int valid = 0;
  OwnedString violations;
  check(tr_cert_verify(cert, &valid, &violations.ptr), "verify");

  const std::string out = opt.out.empty() ? "certificate.json" : opt.out;
  check(tr_cert_save(cert, out.c_str()), "save");
  tr_cert_free(cert);

  std::printf("%s\n", record.str().c_str());
  std::printf("certificate: %s\n", out.c_str());
  if (valid == 0) {
    std::printf("Invalid:\n%s", violations.str().c_str());
    return 1;
  }
  std::printf("Valid\n");
  return 0;
}

int run_verify(const Options& opt) {
  tr_cert* cert = nullptr;
  const tr_status status = tr_cert_load(opt.cert_path.c_str(), &cert);
  if (status != TR_OK) {
    std::printf("Invalid:\n  %s\n", tr_last_error_message());
    return 1;
  }
  int valid = 0;
  OwnedString violations;
  check(tr_cert_verify(cert, &valid, &violations.ptr), "verify");
  tr_cert_free(cert);
  if (valid == 0) {
    std::printf("Invalid:\n%s", violations.str().c_str());
    return 1;
  }
  std::printf("Valid\n");
  return 0;
}

int run_diagnose(const Options& opt) {
  if (opt.sets.empty()) {
    std::fprintf(stderr, "error: diagnose needs --set\n");
    return 2;
  }
  SetHandle set;
  check(tr_intset_load(opt.sets[0].c_str(), &set.ptr), opt.sets[0]);
  int product_ok = 0, strict_ok = 0;
  OwnedString report;
  check(tr_diagnose(set.ptr, opt.window_low, opt.window_high, opt.diag_T,
                    &product_ok, &strict_ok, &report.ptr),
        "diagnose");
  std::fputs(report.str().c_str(), stdout);
  if (!opt.out.empty()) {
    FILE* f = std::fopen((opt.out + ".tmp").c_str(), "w");
    if (f != nullptr) {
      std::fprintf(f, "# config: %s\n%s",
                   config_json(opt, "diagnose").dump().c_str(),
                   report.str().c_str());
      std::fclose(f);
      std::rename((opt.out + ".tmp").c_str(), opt.out.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "positive-rank quadratic twist sets, multiplicative parallelepipeds, "
      "and machine-checkable certificates"};
  app.require_subcommand(1);
  Options opt;

  auto add_common_opts = [&](CLI::App* cmd) {
    cmd->add_option("--threads", opt.threads, "worker threads");
    cmd->add_option("--seed", opt.seed, "seed recorded in output metadata");
  };
  auto add_curve_opts = [&](CLI::App* cmd) {
    cmd->add_option("--curve", opt.curve,
                    "'conductor19' or 'a1,a2,a3,a4,a6' (rationals)");
    cmd->add_option("--N", opt.bound, "twist parameter bound");
    cmd->add_option("--bound", opt.search_bound,
                    "naive witness search height (0 = table only)");
    cmd->add_option("--table", opt.table, "imported rank table file");
    cmd->add_flag("--parity", opt.parity,
                  "annotate unfound twists with the root-number heuristic");
    cmd->add_option("--conductor", opt.conductor,
                    "conductor used by the parity heuristic");
  };
  auto add_find_opts = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.dimension, "parallelepiped dimension");
    cmd->add_flag("--brute", opt.brute, "exhaustive finder");
    cmd->add_option("--policy", opt.policy, "'heuristic' or 'rigorous'");
    cmd->add_option("--window-a", opt.window_a, "heuristic window start");
    cmd->add_option("--window-b", opt.window_b, "heuristic window end");
    cmd->add_option("--floor", opt.floor, "universe floor for recursion");
    cmd->add_option("--max-results", opt.max_results,
                    "cap on brute-force results");
  };

  CLI::App* sieve = app.add_subcommand(
      "sieve", "compute the witnessed twist set of a curve");
  add_common_opts(sieve);
  add_curve_opts(sieve);
  sieve->add_option("--out-set", opt.out_set, "output set file");
  sieve->add_option("--out-witness", opt.out_witness, "output witness store");

  CLI::App* density = app.add_subcommand(
      "density", "density functionals and inequality checks for set files");
  add_common_opts(density);
  density->add_option("--set", opt.sets, "set file (repeatable)")->required();
  density->add_option("--t", opt.t_values, "evaluation points for f");
  density->add_option("--T", opt.T, "smoothing parameter");
  density->add_option("--n0", opt.n0, "lower-density window start");
  density->add_option("--a", opt.window_low, "sieve-check window start");
  density->add_option("--b", opt.window_high, "sieve-check window end");

  CLI::App* find = app.add_subcommand(
      "find", "search a set file for strict parallelepipeds");
  add_common_opts(find);
  find->add_option("--set", opt.sets, "set file")->required();
  add_find_opts(find);
  find->add_option("--out", opt.out, "record/trace output file");

  CLI::App* certify = app.add_subcommand(
      "certify", "sieve, search, and emit a verified certificate");
  add_common_opts(certify);
  add_curve_opts(certify);
  add_find_opts(certify);
  certify->add_option("--search-set", opt.search_set,
                      "search this set file instead of the witnessed set");
  certify->add_option("--out", opt.out, "certificate path");

  CLI::App* verify =
      app.add_subcommand("verify", "verify a certificate file");
  verify->add_option("cert", opt.cert_path, "certificate file")->required();

  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "evaluate the induction-step inequality chain");
  add_common_opts(diagnose);
  diagnose->add_option("--set", opt.sets, "set file")->required();
  diagnose->add_option("--a", opt.window_low, "prime window start")
      ->required();
  diagnose->add_option("--b", opt.window_high, "prime window end")
      ->required();
  diagnose->add_option("--T", opt.diag_T, "smoothing parameter");
  diagnose->add_option("--out", opt.out, "report output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sieve->parsed()) return run_sieve(opt);
  if (density->parsed()) return run_density(opt);
  if (find->parsed()) return run_find(opt);
  if (certify->parsed()) return run_certify(opt);
  if (verify->parsed()) return run_verify(opt);
  if (diagnose->parsed()) return run_diagnose(opt);
  return 2;
}
