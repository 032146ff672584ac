/*
   Copyright 2026 The fuzzyprok Authors

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

#include "fuzzyprok/fuzzyprok.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "fuzzyprok/errors.hpp"
#include "fuzzyprok/extension.hpp"
#include "fuzzyprok/measure.hpp"
#include "fuzzyprok/prokhorov.hpp"
#include "fuzzyprok/serialization.hpp"
#include "fuzzyprok/space.hpp"

using namespace fuzzyprok;

struct fp_space {
  SpacePtr space;
};

struct fp_measure {
  Measure measure;
};

namespace {

thread_local std::string last_error;

struct NullArgument {
  const char* name;
};

template <class T>
const T& deref(const T* p, const char* name) {
  if (!p) throw NullArgument{name};
  return *p;
}

template <class T>
void check_out(T* p, const char* name) {
  if (!p) throw NullArgument{name};
}

fp_status fail(fp_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
fp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FP_OK;
  } catch (const NullArgument& e) {
    return fail(FP_ERR_NULL_ARGUMENT,
                std::string("argument '") + e.name + "' must not be NULL");
  } catch (const DomainError& e) {
    return fail(FP_ERR_DOMAIN, e.what());
  } catch (const IndexError& e) {
    return fail(FP_ERR_INDEX, e.what());
  } catch (const SchemaError& e) {
    return fail(FP_ERR_SCHEMA, e.what());
  } catch (const LimitError& e) {
    return fail(FP_ERR_LIMIT, e.what());
  } catch (const SpaceMismatchError& e) {
    return fail(FP_ERR_SPACE_MISMATCH, e.what());
  } catch (const ValidationError& e) {
    return fail(FP_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FP_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void maybe_emit(char** out, const std::string& s) {
  if (out) *out = duplicate(s);
}

PointSet point_set(const size_t* a, size_t len) {
  if (len > 0 && !a) throw NullArgument{"a"};
  return PointSet(a, a + len);
}

std::vector<double> grid_or(const double* grid, size_t n,
                            std::vector<double> fallback) {
  if (!grid) return fallback;
  return std::vector<double>(grid, grid + n);
}

Method to_method(fp_method m) {
  switch (m) {
    case FP_METHOD_FLOW: return Method::Flow;
    case FP_METHOD_BRUTE: return Method::Brute;
  }
  throw DomainError("unknown method " + std::to_string(static_cast<int>(m)));
}

fp_space* wrap(FuzzySpace space) {
  return new fp_space{std::make_shared<const FuzzySpace>(std::move(space))};
}

}  // namespace

extern "C" {

const char* fp_last_error(void) { return last_error.c_str(); }

const char* fp_status_name(fp_status status) {
  switch (status) {
    case FP_OK: return "ok";
    case FP_ERR_NULL_ARGUMENT: return "null argument";
    case FP_ERR_DOMAIN: return "domain error";
    case FP_ERR_INDEX: return "index error";
    case FP_ERR_SCHEMA: return "schema error";
    case FP_ERR_LIMIT: return "limit exceeded";
    case FP_ERR_SPACE_MISMATCH: return "space mismatch";
    case FP_ERR_VALIDATION: return "validation failure";
    case FP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void fp_string_free(char* s) { std::free(s); }

fp_status fp_luk(double a, double b, double* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = luk(a, b);
  });
}

fp_status fp_space_parse(const char* json, fp_space** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = wrap(parse_space(&deref(json, "json")));
  });
}

fp_status fp_space_standard(const char* const* labels, size_t n,
                            const double* dist_row_major, fp_space** out) {
  return guarded([&] {
    check_out(out, "out");
    deref(labels, "labels");
    deref(dist_row_major, "dist_row_major");
    std::vector<std::string> names;
    Matrix dist(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
      names.emplace_back(&deref(labels[i], "labels[i]"));
      for (size_t j = 0; j < n; ++j) dist[i][j] = dist_row_major[i * n + j];
    }
    *out = wrap(FuzzySpace::standard(std::move(names), std::move(dist)));
  });
}

void fp_space_free(fp_space* space) { delete space; }

size_t fp_space_size(const fp_space* space) {
  return space ? space->space->size() : 0;
}

const char* fp_space_label(const fp_space* space, size_t i) {
  if (!space || i >= space->space->size()) return nullptr;
  return space->space->labels()[i].c_str();
}

fp_status fp_space_write(const fp_space* space, char** json_out) {
  return guarded([&] {
    check_out(json_out, "json_out");
    *json_out = duplicate(write_space(*deref(space, "space").space));
  });
}

fp_status fp_space_t_grid(const fp_space* space, const double** grid_out,
                          size_t* n_out) {
  return guarded([&] {
    check_out(grid_out, "grid_out");
    check_out(n_out, "n_out");
    const auto* table =
        std::get_if<TableGenerator>(&deref(space, "space").space->generator());
    *grid_out = table ? table->t_grid.data() : nullptr;
    *n_out = table ? table->t_grid.size() : 0;
  });
}

fp_status fp_membership(const fp_space* space, size_t i, size_t j, double t,
                        double* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = deref(space, "space").space->membership(i, j, TimeScale(t));
  });
}

fp_status fp_in_ball(const fp_space* space, size_t center, size_t y, double r,
                     double t, int* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = in_ball(*deref(space, "space").space, center, y, Radius(r),
                   TimeScale(t))
               ? 1
               : 0;
  });
}

fp_status fp_neighborhood(const fp_space* space, const size_t* a, size_t a_len,
                          double r, double t, size_t* out, size_t* out_len) {
  return guarded([&] {
    check_out(out_len, "out_len");
    PointSet result = neighborhood(*deref(space, "space").space,
                                   point_set(a, a_len), Radius(r),
                                   TimeScale(t));
    if (!result.empty()) check_out(out, "out");
    size_t k = 0;
    for (PointIndex p : result) out[k++] = p;
    *out_len = k;
  });
}

fp_status fp_validate(const fp_space* space, const double* t_samples,
                      size_t n_samples, size_t* violations,
                      char** report_json) {
  return guarded([&] {
    check_out(violations, "violations");
    deref(t_samples, "t_samples");
    if (n_samples == 0) throw DomainError("validate: need at least one t sample");
    const FuzzySpace& s = *deref(space, "space").space;
    ValidationReport report = validate_axioms(
        s, std::span<const double>(t_samples, n_samples));
    *violations = report.total;
    maybe_emit(report_json, write_validation_report(report, s));
  });
}

fp_status fp_check_nonexpanding(const fp_space* source, const fp_space* target,
                                const size_t* f, size_t f_len,
                                const double* t_samples, size_t n_samples,
                                int* nonexpanding, size_t witness[2],
                                double* witness_t) {
  return guarded([&] {
    check_out(nonexpanding, "nonexpanding");
    if (f_len > 0) deref(f, "f");
    if (n_samples > 0) deref(t_samples, "t_samples");
    NonexpansionCheck check = check_nonexpanding(
        *deref(source, "source").space, *deref(target, "target").space,
        PointMap(f, f + f_len), std::span<const double>(t_samples, n_samples));
    *nonexpanding = check.nonexpanding ? 1 : 0;
    if (check.witness) {
      if (witness) {
        witness[0] = check.witness->x;
        witness[1] = check.witness->y;
      }
      if (witness_t) *witness_t = check.witness->t;
    }
  });
}

fp_status fp_measure_parse(const fp_space* space, const char* json,
                           fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = new fp_measure{
        parse_measure(&deref(json, "json"), deref(space, "space").space)};
  });
}

fp_status fp_measure_create(const fp_space* space, const size_t* points,
                            const double* weights, size_t n,
                            fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    if (n > 0) {
      deref(points, "points");
      deref(weights, "weights");
    }
    std::vector<std::pair<PointIndex, double>> w;
    for (size_t k = 0; k < n; ++k) w.emplace_back(points[k], weights[k]);
    *out = new fp_measure{
        Measure::from_weights(deref(space, "space").space, w)};
  });
}

fp_status fp_measure_dirac(const fp_space* space, size_t x, fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = new fp_measure{dirac(deref(space, "space").space, x)};
  });
}

void fp_measure_free(fp_measure* mu) { delete mu; }

size_t fp_measure_support_size(const fp_measure* mu) {
  return mu ? mu->measure.atoms().size() : 0;
}

fp_status fp_measure_weight(const fp_measure* mu, size_t i, double* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = deref(mu, "mu").measure.weight(i);
  });
}

fp_status fp_mass(const fp_measure* mu, const size_t* a, size_t a_len,
                  double* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = mass(deref(mu, "mu").measure, point_set(a, a_len));
  });
}

fp_status fp_pushforward(const size_t* f, size_t f_len, const fp_space* target,
                         const fp_measure* mu, fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    if (f_len > 0) deref(f, "f");
    *out = new fp_measure{pushforward(PointMap(f, f + f_len),
                                      deref(target, "target").space,
                                      deref(mu, "mu").measure)};
  });
}

fp_status fp_total_variation(const fp_measure* mu, const fp_measure* nu,
                             double* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = total_variation(deref(mu, "mu").measure, deref(nu, "nu").measure);
  });
}

fp_status fp_sample_empirical(const fp_measure* mu, size_t n, uint64_t seed,
                              fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    *out = new fp_measure{sample_empirical(deref(mu, "mu").measure, n, seed)};
  });
}

fp_status fp_flatten(const double* alphas, const fp_measure* const* components,
                     size_t n, fp_measure** out) {
  return guarded([&] {
    check_out(out, "out");
    deref(alphas, "alphas");
    deref(components, "components");
    std::vector<MetaMeasure::Component> comps;
    for (size_t k = 0; k < n; ++k)
      comps.push_back({alphas[k], deref(components[k], "components[k]").measure});
    *out = new fp_measure{flatten(MetaMeasure(std::move(comps)))};
  });
}

fp_status fp_prokhorov(const fp_measure* mu, const fp_measure* nu, double t,
                       fp_method method, size_t brute_cap, fp_result* out,
                       char** json_out) {
  return guarded([&] {
    check_out(out, "out");
    BruteOptions options;
    if (brute_cap > 0) options.support_cap = brute_cap;
    const Measure& m = deref(mu, "mu").measure;
    ProkhorovResult r = prokhorov(m, deref(nu, "nu").measure, TimeScale(t),
                                  to_method(method), options);
    *out = fp_result{r.value, r.r_star,
                     r.method == Method::Brute ? FP_METHOD_BRUTE
                                               : FP_METHOD_FLOW};
    maybe_emit(json_out, write_result(r, *m.space()));
  });
}

fp_status fp_feasible(const fp_measure* mu, const fp_measure* nu, double r,
                      double t, int* out) {
  return guarded([&] {
    check_out(out, "out");
    *out = feasible(deref(mu, "mu").measure, deref(nu, "nu").measure,
                    Radius(r), TimeScale(t))
               ? 1
               : 0;
  });
}

fp_status fp_curve(const fp_measure* mu, const fp_measure* nu, double t_min,
                   double t_max, size_t steps, fp_method method, double* t_out,
                   double* value_out, char** csv_out) {
  return guarded([&] {
    MetricCurve curve =
        prokhorov_curve(deref(mu, "mu").measure, deref(nu, "nu").measure,
                        t_min, t_max, steps, to_method(method));
    for (size_t k = 0; k < curve.size(); ++k) {
      if (t_out) t_out[k] = curve[k].t;
      if (value_out) value_out[k] = curve[k].value;
    }
    maybe_emit(csv_out, write_curve_csv(curve));
  });
}

fp_status fp_convergence(const fp_measure* mu, const size_t* schedule,
                         size_t n_schedule, double t, uint64_t seed,
                         fp_convergence_row* rows_out, char** csv_out) {
  return guarded([&] {
    if (n_schedule > 0) deref(schedule, "schedule");
    std::vector<std::size_t> sched(schedule, schedule + n_schedule);
    auto rows = convergence_experiment(deref(mu, "mu").measure, sched,
                                       TimeScale(t), seed);
    if (rows_out)
      for (size_t k = 0; k < rows.size(); ++k)
        rows_out[k] = fp_convergence_row{rows[k].n, rows[k].gap,
                                         rows[k].total_variation,
                                         rows[k].within_tv ? 1 : 0};
    maybe_emit(csv_out, write_convergence_csv(rows));
  });
}

fp_status fp_psi_probe(const fp_space* space, size_t trials, uint64_t seed,
                       double t, fp_psi_summary* out, char** table_out) {
  return guarded([&] {
    PsiProbeReport report = psi_nonexpansion_probe(
        deref(space, "space").space, trials, seed, TimeScale(t));
    if (out)
      *out = fp_psi_summary{report.trials.size(), report.violations,
                            report.max_excess};
    maybe_emit(table_out, write_psi_report(report));
  });
}

fp_status fp_parse_t_grid(const char* spec, double** grid_out, size_t* n_out) {
  return guarded([&] {
    check_out(grid_out, "grid_out");
    check_out(n_out, "n_out");
    std::vector<double> grid = parse_t_grid(&deref(spec, "spec"));
    double* buf = static_cast<double*>(std::malloc(grid.size() * sizeof(double)));
    if (!buf) throw std::bad_alloc();
    std::copy(grid.begin(), grid.end(), buf);
    *grid_out = buf;
    *n_out = grid.size();
  });
}

void fp_grid_free(double* grid) { std::free(grid); }

fp_status fp_extend(const fp_space* subspace, const char* ambient_json,
                    const double* t_grid, size_t n_grid, fp_space** out) {
  return guarded([&] {
    check_out(out, "out");
    const SpacePtr& y = deref(subspace, "subspace").space;
    AmbientSpec spec = parse_ambient(&deref(ambient_json, "ambient_json"), y);
    EmbeddingPlan plan = plan_embedding(spec.labels, y, spec.strategy);
    *out = wrap(
        extend_metric(plan, grid_or(t_grid, n_grid, default_extension_grid())));
  });
}

fp_status fp_adjoin_terminal(const fp_space* space, const double* t_grid,
                             size_t n_grid, const char* label,
                             fp_space** out) {
  return guarded([&] {
    check_out(out, "out");
    const FuzzySpace& s = *deref(space, "space").space;
    std::vector<double> fallback = default_extension_grid();
    if (const auto* table = std::get_if<TableGenerator>(&s.generator()))
      fallback = table->t_grid;
    *out = wrap(adjoin_terminal(s, grid_or(t_grid, n_grid, fallback),
                                label ? std::string(label) : "⊥"));
  });
}

}  // extern "C"
