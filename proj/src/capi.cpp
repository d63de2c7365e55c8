/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "symplab/symplab.h"

#include <memory>
#include <string>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"
#include "symplab/orbits.hpp"
#include "symplab/runner.hpp"
#include "symplab/scenario.hpp"

struct symplab_manifold {
  symplab::Manifold m;
};

struct symplab_hamiltonian {
  symplab::PathPtr path;
};

struct symplab_spectrum {
  symplab::SpectrumTable table;
  std::string csv;
};

struct symplab_scenario {
  symplab::Scenario sc;
};

namespace {

thread_local std::string g_last_error;

symplab_status map_code(symplab::ErrorCode c) {
  using symplab::ErrorCode;
  switch (c) {
    case ErrorCode::NonConvergence:
    case ErrorCode::NonExactField: return SYMPLAB_NONCONVERGENCE;
    case ErrorCode::NotNormalized: return SYMPLAB_NOT_NORMALIZED;
    case ErrorCode::DegenerateIdentity: return SYMPLAB_DEGENERATE;
    case ErrorCode::SphereDomain:
    case ErrorCode::UnsupportedWindow:
    case ErrorCode::OpenManifold: return SYMPLAB_DOMAIN_ERROR;
    case ErrorCode::Parse:
    case ErrorCode::Bind:
    case ErrorCode::Periodicity:
    case ErrorCode::Config:
    case ErrorCode::Io: return SYMPLAB_CONFIG_ERROR;
    case ErrorCode::ShiftNotConstant:
    case ErrorCode::BasepointDependent:
    case ErrorCode::EndpointMismatch:
    case ErrorCode::NotALoop: return SYMPLAB_VERIFICATION_FAILED;
    default: return SYMPLAB_INVALID_ARGUMENT;
  }
}

template <class F>
symplab_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const symplab::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SYMPLAB_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return SYMPLAB_INTERNAL_ERROR;
  }
}

symplab_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return SYMPLAB_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* symplab_version(void) { return "0.1.0"; }

const char* symplab_last_error(void) { return g_last_error.c_str(); }

const char* symplab_status_string(symplab_status status) {
  switch (status) {
    case SYMPLAB_OK: return "ok";
    case SYMPLAB_VERIFICATION_FAILED: return "verification failed";
    case SYMPLAB_CONFIG_ERROR: return "configuration error";
    case SYMPLAB_NONCONVERGENCE: return "numerical non-convergence";
    case SYMPLAB_INVALID_ARGUMENT: return "invalid argument";
    case SYMPLAB_DOMAIN_ERROR: return "domain error";
    case SYMPLAB_NOT_NORMALIZED: return "not normalized";
    case SYMPLAB_DEGENERATE: return "degenerate identity";
    case SYMPLAB_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

symplab_status symplab_manifold_create(symplab_manifold_kind kind, symplab_manifold** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    symplab::Manifold m;
    switch (kind) {
      case SYMPLAB_PLANE: m = symplab::Manifold::plane(); break;
      case SYMPLAB_TORUS: m = symplab::Manifold::torus(); break;
      case SYMPLAB_SPHERE: m = symplab::Manifold::sphere(); break;
      default: symplab::fail(symplab::ErrorCode::InvalidArgument, "unknown manifold kind");
    }
    *out = new symplab_manifold{m};
    return SYMPLAB_OK;
  });
}

void symplab_manifold_destroy(symplab_manifold* m) { delete m; }

symplab_status symplab_manifold_total_area(const symplab_manifold* m, double* out) {
  if (!m || !out) return null_argument("manifold/out");
  *out = m->m.total_area();
  return SYMPLAB_OK;
}

symplab_status symplab_manifold_gamma_generator(const symplab_manifold* m, double* out) {
  if (!m || !out) return null_argument("manifold/out");
  *out = m->m.gamma_omega_generator();
  return SYMPLAB_OK;
}

symplab_status symplab_chart_wrap(const symplab_manifold* m, double q1, double q2, double* out_q1,
                                  double* out_q2) {
  if (!m || !out_q1 || !out_q2) return null_argument("manifold/out");
  return guarded([&] {
    const symplab::Point p = symplab::chart_wrap(m->m, q1, q2);
    *out_q1 = p.q1;
    *out_q2 = p.q2;
    return SYMPLAB_OK;
  });
}

symplab_status symplab_hamiltonian_parse(const symplab_manifold* m, const char* expr, double step,
                                         symplab_hamiltonian** out) {
  if (!m || !expr || !out) return null_argument("manifold/expr/out");
  return guarded([&] {
    symplab::FlowOptions fo;
    if (step > 0.0) fo.step = step;
    auto p = std::const_pointer_cast<symplab::HamPath>(symplab::parse_path(expr, m->m, fo));
    p->set_tag(symplab::certify_normalization(*p));
    *out = new symplab_hamiltonian{p};
    return SYMPLAB_OK;
  });
}

void symplab_hamiltonian_destroy(symplab_hamiltonian* h) { delete h; }

symplab_status symplab_hamiltonian_eval(const symplab_hamiltonian* h, double q1, double q2, double t, double* out) {
  if (!h || !out) return null_argument("hamiltonian/out");
  return guarded([&] {
    *out = h->path->value({q1, q2}, t);
    return SYMPLAB_OK;
  });
}

symplab_status symplab_hamiltonian_vector_field(const symplab_hamiltonian* h, double q1, double q2, double t,
                                                double* out_x1, double* out_x2) {
  if (!h || !out_x1 || !out_x2) return null_argument("hamiltonian/out");
  return guarded([&] {
    const symplab::Vec2 x = h->path->vector_field({q1, q2}, t);
    *out_x1 = x.a;
    *out_x2 = x.b;
    return SYMPLAB_OK;
  });
}

symplab_status symplab_hamiltonian_flow(const symplab_hamiltonian* h, double q1, double q2, double t0, double t1,
                                        double* out_q1, double* out_q2) {
  if (!h || !out_q1 || !out_q2) return null_argument("hamiltonian/out");
  return guarded([&] {
    const symplab::FlowResult r = h->path->flow({q1, q2}, t0, t1, false);
    *out_q1 = r.p.q1;
    *out_q2 = r.p.q2;
    return SYMPLAB_OK;
  });
}

symplab_status symplab_hamiltonian_normalization(const symplab_hamiltonian* h, symplab_normalization* out) {
  if (!h || !out) return null_argument("hamiltonian/out");
  switch (h->path->tag()) {
    case symplab::NormalizationTag::MeanZero: *out = SYMPLAB_MEAN_ZERO; break;
    case symplab::NormalizationTag::CompactSupport: *out = SYMPLAB_COMPACT_SUPPORT; break;
    default: *out = SYMPLAB_UNCHECKED; break;
  }
  return SYMPLAB_OK;
}

symplab_status symplab_spectrum_compute(const symplab_hamiltonian* h, int seeds, symplab_spectrum** out) {
  if (!h || !out) return null_argument("hamiltonian/out");
  return guarded([&] {
    symplab::SpectrumOptions o;
    if (seeds > 0) o.search.seeds = seeds;
    auto s = std::make_unique<symplab_spectrum>();
    s->table = symplab::spectrum(*h->path, o);
    s->csv = symplab::spectrum_csv(s->table);
    *out = s.release();
    return SYMPLAB_OK;
  });
}

void symplab_spectrum_destroy(symplab_spectrum* s) { delete s; }

size_t symplab_spectrum_size(const symplab_spectrum* s) { return s ? s->table.entries.size() : 0; }

symplab_status symplab_spectrum_entry(const symplab_spectrum* s, size_t index, const char** id, double* q1,
                                      double* q2, double* base_action, double* coset_generator) {
  if (!s) return null_argument("spectrum");
  if (index >= s->table.entries.size()) {
    g_last_error = "spectrum index out of range";
    return SYMPLAB_INVALID_ARGUMENT;
  }
  const auto& e = s->table.entries[index];
  if (id) *id = e.id.c_str();
  if (q1) *q1 = e.p.q1;
  if (q2) *q2 = e.p.q2;
  if (base_action) *base_action = e.base_action;
  if (coset_generator) *coset_generator = e.generator;
  return SYMPLAB_OK;
}

const char* symplab_spectrum_csv(const symplab_spectrum* s) { return s ? s->csv.c_str() : ""; }

void symplab_run_options_init(symplab_run_options* opts) {
  if (!opts) return;
  opts->out_dir = nullptr;
  opts->has_seed = 0;
  opts->seed = 0;
  opts->has_step = 0;
  opts->step = 0.0;
  opts->jobs = 1;
}

symplab_status symplab_scenario_load(const char* path, symplab_scenario** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] {
    *out = new symplab_scenario{symplab::load_scenario(path)};
    return SYMPLAB_OK;
  });
}

symplab_status symplab_scenario_parse(const char* text, symplab_scenario** out) {
  if (!text || !out) return null_argument("text/out");
  return guarded([&] {
    *out = new symplab_scenario{symplab::parse_scenario(text)};
    return SYMPLAB_OK;
  });
}

void symplab_scenario_destroy(symplab_scenario* sc) { delete sc; }

size_t symplab_scenario_task_count(const symplab_scenario* sc) { return sc ? sc->sc.tasks().size() : 0; }

symplab_status symplab_scenario_run(const symplab_scenario* sc, const symplab_run_options* opts,
                                    symplab_summary_fn on_summary, void* user) {
  if (!sc) return null_argument("scenario");
  return guarded([&] {
    symplab::RunOptions ro;
    if (opts) {
      if (opts->out_dir) ro.out_dir = opts->out_dir;
      if (opts->has_seed) ro.seed = opts->seed;
      if (opts->has_step) ro.step = opts->step;
      ro.jobs = opts->jobs < 1 ? 1 : opts->jobs;
    }
    std::function<void(const std::string&)> cb;
    if (on_summary) cb = [&](const std::string& line) { on_summary(line.c_str(), user); };
    const symplab::RunResult r = symplab::run_scenario(sc->sc, ro, cb);
    std::string failures;
    for (const auto& t : r.tasks)
      if (t.status != symplab::TaskStatus::Pass) failures += (failures.empty() ? "" : "; ") + t.summary;
    g_last_error = failures;
    return static_cast<symplab_status>(r.exit_code);
  });
}

}  // extern "C"
