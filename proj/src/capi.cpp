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

#include "twistrank.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "twistrank/arith.hpp"
#include "twistrank/certify.hpp"
#include "twistrank/curve.hpp"
#include "twistrank/density.hpp"
#include "twistrank/diagnostics.hpp"
#include "twistrank/errors.hpp"
#include "twistrank/intset.hpp"
#include "twistrank/version.hpp"
#include "twistrank/search.hpp"
#include "twistrank/witness.hpp"

using namespace twistrank;

struct tr_intset {
  FiniteIntegerSet set;
};
struct tr_curve {
  curve::WeierstrassCurve model;
};
struct tr_twistset {
  certify::AnnotatedTwistSet tw;
  curve::RankTable table;  // keeps an imported table alive for the run
};
struct tr_para {
  para::Parallelepiped box{Rat(1), {Rat(2)}};
};
struct tr_paralist {
  std::vector<para::Parallelepiped> boxes;
};
struct tr_cert {
  certify::Certificate cert;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tr_status fail(tr_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs the body, translating the library's exceptions into codes.
template <typename Fn>
tr_status guarded(Fn&& fn) {
  try {
    fn();
    return TR_OK;
  } catch (const InvalidArgument& e) {
    return fail(TR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const BudgetExceeded& e) {
    return fail(TR_ERR_BUDGET_EXCEEDED, e.what());
  } catch (const NotSquarefree& e) {
    return fail(TR_ERR_NOT_SQUAREFREE, e.what());
  } catch (const PointNotOnCurve& e) {
    return fail(TR_ERR_POINT_NOT_ON_CURVE, e.what());
  } catch (const MissingWitness& e) {
    return fail(TR_ERR_MISSING_WITNESS, e.what());
  } catch (const ParseError& e) {
    return fail(TR_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(TR_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(TR_ERR_INTERNAL, e.what());
  }
}

tr_status require(bool ok, const char* what) {
  return ok ? TR_OK : fail(TR_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* tr_version(void) { return kToolVersion; }

const char* tr_status_name(tr_status status) {
  switch (status) {
    case TR_OK: return "ok";
    case TR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TR_ERR_BUDGET_EXCEEDED: return "factorization budget exceeded";
    case TR_ERR_NOT_SQUAREFREE: return "not squarefree";
    case TR_ERR_POINT_NOT_ON_CURVE: return "point not on curve";
    case TR_ERR_MISSING_WITNESS: return "missing witness";
    case TR_ERR_PARSE: return "parse error";
    case TR_ERR_IO: return "i/o error";
    case TR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tr_last_error_message(void) { return g_last_error.c_str(); }

void tr_string_free(char* s) { std::free(s); }

/* ---- finite integer sets ---------------------------------------- */

tr_status tr_intset_from_array(const uint64_t* elements, size_t count,
                               uint64_t universe, tr_intset** out) {
  if (tr_status s = require(out && (elements || count == 0), "null argument"))
    return s;
  return guarded([&] {
    std::vector<uint64_t> elems(elements, elements + count);
    *out = new tr_intset{FiniteIntegerSet(std::move(elems), universe)};
  });
}

tr_status tr_intset_interval(uint64_t lo, uint64_t hi, tr_intset** out) {
  if (tr_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    *out = new tr_intset{FiniteIntegerSet::interval(lo, hi)};
  });
}

tr_status tr_intset_load(const char* path, tr_intset** out) {
  if (tr_status s = require(out && path, "null argument")) return s;
  return guarded([&] { *out = new tr_intset{FiniteIntegerSet::load(path)}; });
}

tr_status tr_intset_save(const tr_intset* set, const char* path,
                         const char* config_json) {
  if (tr_status s = require(set && path, "null argument")) return s;
  return guarded([&] {
    set->set.save(path, config_json ? config_json : "");
  });
}

tr_status tr_intset_size(const tr_intset* set, uint64_t* out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  *out = set->set.size();
  return TR_OK;
}

tr_status tr_intset_universe(const tr_intset* set, uint64_t* out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  *out = set->set.universe();
  return TR_OK;
}

tr_status tr_intset_contains(const tr_intset* set, uint64_t n, int* out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  *out = set->set.contains(n) ? 1 : 0;
  return TR_OK;
}

tr_status tr_intset_coprime_filter(const tr_intset* set,
                                   const char* m_decimal, tr_intset** out) {
  if (tr_status s = require(set && m_decimal && out, "null argument"))
    return s;
  return guarded([&] {
    *out = new tr_intset{
        density::coprime_filter(set->set, int_from_string(m_decimal))};
  });
}

tr_status tr_intset_divide(const tr_intset* set, uint64_t m, tr_intset** out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  return guarded([&] {
    *out = new tr_intset{density::divide_set(set->set, m)};
  });
}

tr_status tr_intset_intersect(const tr_intset* a, const tr_intset* b,
                              tr_intset** out) {
  if (tr_status s = require(a && b && out, "null argument")) return s;
  return guarded([&] {
    *out = new tr_intset{set_intersection(a->set, b->set)};
  });
}

tr_status tr_intset_union(const tr_intset* a, const tr_intset* b,
                          tr_intset** out) {
  if (tr_status s = require(a && b && out, "null argument")) return s;
  return guarded([&] { *out = new tr_intset{set_union(a->set, b->set)}; });
}

void tr_intset_free(tr_intset* set) { delete set; }

/* ---- density functionals ----------------------------------------- */

tr_status tr_f_value(const tr_intset* set, double t, double* out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  return guarded([&] { *out = density::f_value(set->set, t); });
}

tr_status tr_f_upper_bound(double t, double* out) {
  if (tr_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = density::upper_bound_check(t); });
}

tr_status tr_smoothed_density(const tr_intset* set, double T, double* value,
                              double* truncation_error_bound) {
  if (tr_status s = require(set && value, "null argument")) return s;
  return guarded([&] {
    const auto report = density::smoothed_density(set->set, T);
    *value = report.value;
    if (truncation_error_bound != nullptr) {
      *truncation_error_bound = report.truncation_error_bound;
    }
  });
}

tr_status tr_lower_density_estimate(const tr_intset* set, uint64_t n0,
                                    double* out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  return guarded([&] {
    *out = density::lower_density_estimate(set->set, n0);
  });
}

tr_status tr_sieve_bound_check(const tr_intset* set, int64_t a, int64_t b,
                               double t, double* lhs, double* rhs,
                               int* holds) {
  if (tr_status s = require(set && lhs && rhs && holds, "null argument"))
    return s;
  return guarded([&] {
    const auto res = density::sieve_bound_check(set->set, a, b, t);
    *lhs = res.lhs;
    *rhs = res.rhs;
    *holds = res.holds ? 1 : 0;
  });
}

tr_status tr_bonferroni_check(const tr_intset* const* sets, size_t count,
                              double t, double* union_f, double* sum_f,
                              double* pairwise_f, int* upper_holds,
                              int* lower_holds) {
  if (tr_status s = require(sets && union_f && sum_f && pairwise_f &&
                                upper_holds && lower_holds,
                            "null argument"))
    return s;
  return guarded([&] {
    std::vector<FiniteIntegerSet> native;
    native.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (sets[i] == nullptr) throw InvalidArgument("null set in family");
      native.push_back(sets[i]->set);
    }
    const auto res = density::bonferroni_check(native, t);
    *union_f = res.union_f;
    *sum_f = res.sum_f;
    *pairwise_f = res.pairwise_f;
    *upper_holds = res.upper_holds ? 1 : 0;
    *lower_holds = res.lower_holds ? 1 : 0;
  });
}

/* ---- curves and twist witnesses ----------------------------------- */

tr_status tr_curve_create(const char* a1, const char* a2, const char* a3,
                          const char* a4, const char* a6, tr_curve** out) {
  if (tr_status s = require(a1 && a2 && a3 && a4 && a6 && out,
                            "null argument"))
    return s;
  return guarded([&] {
    *out = new tr_curve{curve::WeierstrassCurve::checked(
        rat_from_string(a1), rat_from_string(a2), rat_from_string(a3),
        rat_from_string(a4), rat_from_string(a6))};
  });
}

tr_status tr_curve_default(tr_curve** out) {
  if (tr_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new tr_curve{curve::conductor19_model()}; });
}

tr_status tr_curve_discriminant(const tr_curve* c, char** out) {
  if (tr_status s = require(c && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(rat_to_string(curve::discriminant(c->model)));
  });
}

void tr_curve_free(tr_curve* c) { delete c; }

tr_status tr_twist_search_witness(const tr_curve* base, const char* d,
                                  uint64_t bound, int* found, char** x,
                                  char** y) {
  if (tr_status s = require(base && d && found && x && y, "null argument"))
    return s;
  return guarded([&] {
    const auto model = curve::to_short_form(base->model);
    const auto twisted =
        curve::quadratic_twist(model.form, int_from_string(d));
    const auto status = curve::search_witness(twisted, bound);
    if (status.kind == curve::WitnessKind::Witnessed) {
      *found = 1;
      *x = dup_string(rat_to_string(status.point.x));
      *y = dup_string(rat_to_string(status.point.y));
    } else {
      *found = 0;
      *x = nullptr;
      *y = nullptr;
    }
  });
}

tr_status tr_compute_twist_set(const tr_curve* base, uint64_t bound,
                               uint64_t search_bound, const char* table_path,
                               int parity_filter,
                               const char* parity_conductor,
                               int base_root_number, unsigned threads,
                               tr_progress_fn progress, void* progress_user,
                               tr_twistset** out) {
  if (tr_status s = require(base && out, "null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<tr_twistset>();
    if (table_path != nullptr && table_path[0] != '\0') {
      handle->table = curve::RankTable::load(table_path);
    }
    curve::OracleConfig config;
    config.search_bound = search_bound;
    if (table_path != nullptr && table_path[0] != '\0') {
      config.table = &handle->table;
    }
    config.parity_filter = parity_filter != 0;
    if (parity_conductor != nullptr) {
      config.parity_conductor = int_from_string(parity_conductor);
    }
    config.base_root_number = base_root_number;

    certify::ProgressSink sink;
    if (progress != nullptr) {
      sink = [progress, progress_user](uint64_t d,
                                       const curve::WitnessStatus& st) {
        if (st.has_point()) {
          const std::string x = rat_to_string(st.point.x);
          const std::string y = rat_to_string(st.point.y);
          progress(d, 1, x.c_str(), y.c_str(), progress_user);
        } else {
          progress(d, 0, nullptr, nullptr, progress_user);
        }
      };
    }
    handle->tw =
        certify::compute_twist_set(base->model, bound, config, threads, sink);
    *out = handle.release();
  });
}

tr_status tr_twistset_derived(const tr_twistset* tw, tr_intset** out) {
  if (tr_status s = require(tw && out, "null argument")) return s;
  return guarded([&] { *out = new tr_intset{tw->tw.derived}; });
}

tr_status tr_twistset_density(const tr_twistset* tw, double* out) {
  if (tr_status s = require(tw && out, "null argument")) return s;
  *out = tw->tw.witnessed_density;
  return TR_OK;
}

tr_status tr_twistset_save(const tr_twistset* tw, const char* set_path,
                           const char* witness_path,
                           const char* config_json) {
  if (tr_status s = require(tw && set_path && witness_path, "null argument"))
    return s;
  return guarded([&] {
    const std::string config = config_json ? config_json : "";
    tw->tw.derived.save(set_path, config);
    curve::RankTable store;
    for (const auto& [kernel, status] : tw->tw.kernels) {
      curve::RankTableEntry entry;
      entry.d = kernel;
      if (status.has_point()) {
        entry.has_point = true;
        entry.x = status.point.x;
        entry.y = status.point.y;
      } else if (status.kind == curve::WitnessKind::ParityOdd) {
        entry.has_point = false;
      } else {
        continue;  // NoneFound rows carry no information worth exporting
      }
      store.put(std::move(entry));
    }
    store.save(witness_path, config);
  });
}

void tr_twistset_free(tr_twistset* tw) { delete tw; }

/* ---- parallelepiped search ---------------------------------------- */

tr_status tr_find_brute(const tr_intset* set, unsigned n,
                        size_t max_level_objects, size_t max_results,
                        tr_paralist** out) {
  if (tr_status s = require(set && out, "null argument")) return s;
  return guarded([&] {
    para::SearchLimits limits;
    if (max_level_objects != 0) limits.max_level_objects = max_level_objects;
    limits.max_results = max_results;
    *out = new tr_paralist{para::brute_force_search(set->set, n, limits)};
  });
}

tr_status tr_paralist_count(const tr_paralist* list, size_t* out) {
  if (tr_status s = require(list && out, "null argument")) return s;
  *out = list->boxes.size();
  return TR_OK;
}

tr_status tr_paralist_get(const tr_paralist* list, size_t index,
                          tr_para** out) {
  if (tr_status s = require(list && out, "null argument")) return s;
  if (index >= list->boxes.size()) {
    return fail(TR_ERR_INVALID_ARGUMENT, "paralist index out of range");
  }
  return guarded([&] { *out = new tr_para{list->boxes[index]}; });
}

void tr_paralist_free(tr_paralist* list) { delete list; }

tr_status tr_find_guided(const tr_intset* set, unsigned n,
                         const char* policy, uint64_t window_a,
                         uint64_t window_b, uint64_t universe_floor,
                         const uint64_t* sigma, size_t sigma_count,
                         int* found, tr_para** out, char** report) {
  if (tr_status s = require(set && policy && found && out && report,
                            "null argument"))
    return s;
  return guarded([&] {
    para::GuidedPolicy guided;
    const std::string policy_name = policy;
    if (policy_name == "rigorous") {
      guided.window_policy = para::WindowPolicy::Rigorous;
    } else if (policy_name == "heuristic") {
      guided.window_policy = para::WindowPolicy::Heuristic;
    } else {
      throw InvalidArgument("policy must be 'rigorous' or 'heuristic'");
    }
    guided.window_a = window_a;
    guided.window_b = window_b;
    guided.universe_floor = universe_floor;
    std::vector<uint64_t> exclusions;
    if (sigma != nullptr) {
      exclusions.assign(sigma, sigma + sigma_count);
    }
    const auto result =
        para::guided_search(set->set, n, std::move(exclusions), guided);
    std::string text = result.trace.to_text();
    if (result.found) {
      *found = 1;
      *out = new tr_para{result.para};
    } else {
      *found = 0;
      *out = nullptr;
      text += "exhausted at dimension " +
              std::to_string(result.failed_dimension) + ": " +
              result.exhausted_reason + "\n";
    }
    *report = dup_string(text);
  });
}

tr_status tr_para_dimension(const tr_para* para, unsigned* out) {
  if (tr_status s = require(para && out, "null argument")) return s;
  *out = para->box.dimension();
  return TR_OK;
}

tr_status tr_para_format(const tr_para* para, char** out) {
  if (tr_status s = require(para && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(para::format_record(para->box)); });
}

void tr_para_free(tr_para* para) { delete para; }

/* ---- certificates -------------------------------------------------- */

tr_status tr_build_certificate(const tr_twistset* tw, const tr_para* para,
                               const char* metadata_json, tr_cert** out) {
  if (tr_status s = require(tw && para && out, "null argument")) return s;
  return guarded([&] {
    *out = new tr_cert{certify::build_certificate(
        tw->tw, para->box, metadata_json ? metadata_json : "{}")};
  });
}

tr_status tr_cert_load(const char* path, tr_cert** out) {
  if (tr_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    *out = new tr_cert{certify::load_certificate(path)};
  });
}

tr_status tr_cert_save(const tr_cert* cert, const char* path) {
  if (tr_status s = require(cert && path, "null argument")) return s;
  return guarded([&] { certify::save_certificate(cert->cert, path); });
}

tr_status tr_cert_verify(const tr_cert* cert, int* valid, char** violations) {
  if (tr_status s = require(cert && valid && violations, "null argument"))
    return s;
  return guarded([&] {
    const auto result = certify::verify_certificate(cert->cert);
    *valid = result.valid ? 1 : 0;
    std::string joined;
    for (const auto& v : result.violations) {
      joined += v;
      joined += '\n';
    }
    *violations = dup_string(joined);
  });
}

void tr_cert_free(tr_cert* cert) { delete cert; }

/* ---- proof-inequality diagnostics ---------------------------------- */

tr_status tr_diagnose(const tr_intset* set, int64_t a, int64_t b, double T,
                      int* product_form_ok, int* strict_rows_ok,
                      char** report) {
  if (tr_status s = require(set && product_form_ok && strict_rows_ok && report,
                            "null argument"))
    return s;
  return guarded([&] {
    const auto rep = para::indstep_diagnostics(set->set, a, b, T);
    *product_form_ok = rep.product_form_ok ? 1 : 0;
    *strict_rows_ok = rep.strict_rows_ok ? 1 : 0;
    *report = dup_string(para::render_report(rep));
  });
}

}  // extern "C"
