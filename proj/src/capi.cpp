// Copyright 2026 The solgcf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "solgcf/solgcf.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "solgcf/dynamics.hpp"
#include "solgcf/errors.hpp"
#include "solgcf/io.hpp"
#include "solgcf/soliton.hpp"
#include "solgcf/verify.hpp"

using namespace solgcf;

struct solgcf_trace {
  soliton::SolitonTrace trace;
  std::vector<io::TraceRow> rows;
  std::string termination[2];
};

struct solgcf_portrait {
  dynamics::PhaseSystem id;
  dynamics::Rect box;
  std::vector<dynamics::PortraitTrajectory> trajectories;
  std::vector<dynamics::EquilibriumReport> equilibria;
  std::vector<std::string> classes;
};

struct solgcf_report {
  verify::Report report;
  std::vector<std::string> names;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

solgcf_status fail(solgcf_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

// Maps exceptions from the core onto status codes.
template <class F>
solgcf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(static_cast<solgcf_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SOLGCF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SOLGCF_ERR_INTERNAL, e.what());
  }
}

std::string termination_text(const ode::CurveTrace<3>& t) {
  if (t.termination() == ode::Termination::event && t.terminal_event())
    return "event:" + t.terminal_event()->name;
  return ode::to_string(t.termination());
}

bool branch_failed(const ode::CurveTrace<3>& t) {
  switch (t.termination()) {
    case ode::Termination::step_failure:
    case ode::Termination::range_error:
      return true;
    case ode::Termination::event:
      return t.terminal_event() && t.terminal_event()->name == "z_limit";
    default:
      return false;
  }
}

std::string failure_reason(const solgcf_trace* t) {
  std::string out;
  const char* names[2] = {"backward", "forward"};
  const ode::CurveTrace<3>* br[2] = {&t->trace.backward, &t->trace.forward};
  for (int i = 0; i < 2; ++i) {
    if (!branch_failed(*br[i])) continue;
    if (!out.empty()) out += "; ";
    out += std::string(names[i]) + " " + t->termination[i] + " at s = " + io::format_double(br[i]->s_end());
    if (!br[i]->message().empty()) out += " (" + br[i]->message() + ")";
  }
  return out;
}

solgcf_status require(bool ok, const char* what) {
  return ok ? SOLGCF_OK : fail(SOLGCF_ERR_INVALID_ARGUMENT, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* solgcf_version(void) { return verify::version(); }

const char* solgcf_last_error(void) { return g_last_error.c_str(); }

const char* solgcf_status_name(solgcf_status s) {
  switch (s) {
    case SOLGCF_OK: return "ok";
    case SOLGCF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SOLGCF_ERR_DOMAIN: return "domain_error";
    case SOLGCF_ERR_RANGE: return "range_error";
    case SOLGCF_ERR_SINGULAR: return "singularity";
    case SOLGCF_ERR_IO: return "io_error";
    case SOLGCF_ERR_NUMERICAL: return "numerical_failure";
    case SOLGCF_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void solgcf_string_free(char* s) { std::free(s); }

void solgcf_trace_options_default(solgcf_trace_options* opt) {
  if (!opt) return;
  opt->abs_tol = defaults::kTolAbs;
  opt->rel_tol = defaults::kTolRel;
  opt->span = 10.0;
  opt->samples_per_branch = defaults::kTraceSamples;
}

solgcf_status solgcf_trace_create(const char* spec, double y0, double z0, double theta0,
                                  const solgcf_trace_options* opt, solgcf_trace** out) {
  return guarded([&] {
    if (auto s = require(spec && out, "null argument"); s != SOLGCF_OK) return s;
    *out = nullptr;
    solgcf_trace_options o;
    solgcf_trace_options_default(&o);
    if (opt) o = *opt;
    if (!(o.abs_tol > 0 && o.rel_tol > 0)) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "tolerances must be positive");
    if (!(o.span > 0) || !std::isfinite(o.span)) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "span must be positive");
    if (o.samples_per_branch < 2) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "need at least 2 samples per branch");
    if (!std::isfinite(y0) || !std::isfinite(z0) || !std::isfinite(theta0))
      return fail(SOLGCF_ERR_INVALID_ARGUMENT, "initial state must be finite");
    const auto kind = soliton::kind_from_spec(surface::parse_spec(spec));
    soliton::TraceOptions to;
    to.abs_tol = o.abs_tol;
    to.rel_tol = o.rel_tol;
    auto t = std::make_unique<solgcf_trace>();
    t->trace = soliton::trace_f1_soliton(kind, {y0, z0, theta0}, o.span, to);
    t->rows = io::trace_rows(t->trace, o.samples_per_branch);
    t->termination[SOLGCF_BACKWARD] = termination_text(t->trace.backward);
    t->termination[SOLGCF_FORWARD] = termination_text(t->trace.forward);
    *out = t.release();
    return SOLGCF_OK;
  });
}

void solgcf_trace_destroy(solgcf_trace* t) { delete t; }

size_t solgcf_trace_row_count(const solgcf_trace* t) { return t ? t->rows.size() : 0; }

solgcf_status solgcf_trace_row(const solgcf_trace* t, size_t i, double row[7]) {
  if (!t || !row) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "null argument");
  if (i >= t->rows.size()) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = t->rows[i];
  const double v[7] = {r.s, r.y, r.z, r.theta, r.k_ext, r.k_int, r.residual};
  std::copy(v, v + 7, row);
  return SOLGCF_OK;
}

const char* solgcf_trace_termination(const solgcf_trace* t, int branch) {
  if (!t || (branch != SOLGCF_BACKWARD && branch != SOLGCF_FORWARD)) return "";
  return t->termination[branch].c_str();
}

double solgcf_trace_s_end(const solgcf_trace* t, int branch) {
  if (!t) return std::nan("");
  if (branch == SOLGCF_BACKWARD) return t->trace.backward.s_end();
  if (branch == SOLGCF_FORWARD) return t->trace.forward.s_end();
  return std::nan("");
}

solgcf_status solgcf_trace_status(const solgcf_trace* t) {
  if (!t) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "null argument");
  const std::string why = failure_reason(t);
  return why.empty() ? SOLGCF_OK : fail(SOLGCF_ERR_NUMERICAL, why);
}

solgcf_status solgcf_trace_write_csv(const solgcf_trace* t, const char* path) {
  return guarded([&] {
    if (auto s = require(t && path, "null argument"); s != SOLGCF_OK) return s;
    std::ostringstream os;
    const std::string why = failure_reason(t);
    io::write_trace_csv(os, t->rows, why.empty() ? std::nullopt : std::optional<std::string>(why));
    io::write_file(path, os.str());
    return SOLGCF_OK;
  });
}

solgcf_status solgcf_trace_write_svg(const solgcf_trace* t, const char* path) {
  return guarded([&] {
    if (auto s = require(t && path, "null argument"); s != SOLGCF_OK) return s;
    io::write_file(path, io::render_svg(io::trace_plot(t->trace, t->rows)));
    return SOLGCF_OK;
  });
}

solgcf_status solgcf_portrait_options_default(const char* system, solgcf_portrait_options* opt) {
  return guarded([&] {
    if (auto s = require(system && opt, "null argument"); s != SOLGCF_OK) return s;
    const auto id = dynamics::parse_phase_system(system);
    if (!dynamics::is_smooth(id))
      return fail(SOLGCF_ERR_INVALID_ARGUMENT, std::string(system) + " is singular; use fase3 or fase5");
    constexpr double pi = std::numbers::pi;
    if (id == dynamics::PhaseSystem::fase1) {
      *opt = {-1.5, 1.5, 0.0, 2.5, 13, 11, 20.0, defaults::kTolAbs, defaults::kTolRel};
    } else {
      *opt = {-3.0, 3.0, -pi, pi, 13, 13, 20.0, defaults::kTolAbs, defaults::kTolRel};
    }
    return SOLGCF_OK;
  });
}

solgcf_status solgcf_portrait_create(const char* system, const solgcf_portrait_options* opt,
                                     solgcf_portrait** out) {
  return guarded([&] {
    if (auto s = require(system && out, "null argument"); s != SOLGCF_OK) return s;
    *out = nullptr;
    solgcf_portrait_options o;
    if (auto s = solgcf_portrait_options_default(system, &o); s != SOLGCF_OK) return s;
    if (opt) o = *opt;
    if (!(o.x_max > o.x_min && o.y_max > o.y_min)) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "empty box");
    if (o.nx < 2 || o.ny < 2) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "grid must be at least 2x2");
    if (!(o.span > 0)) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "span must be positive");
    if (!(o.abs_tol > 0 && o.rel_tol > 0)) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "tolerances must be positive");
    auto p = std::make_unique<solgcf_portrait>();
    p->id = dynamics::parse_phase_system(system);
    p->box = {o.x_min, o.x_max, o.y_min, o.y_max};
    ode::Options oo;
    oo.abs_tol = o.abs_tol;
    oo.rel_tol = o.rel_tol;
    p->trajectories = dynamics::sample_portrait(p->id, p->box, o.nx, o.ny, o.span, oo);
    p->equilibria = dynamics::find_equilibria(p->id, p->box);
    for (const auto& e : p->equilibria) p->classes.push_back(dynamics::to_string(e.classification));
    *out = p.release();
    return SOLGCF_OK;
  });
}

void solgcf_portrait_destroy(solgcf_portrait* p) { delete p; }

size_t solgcf_portrait_equilibrium_count(const solgcf_portrait* p) { return p ? p->equilibria.size() : 0; }

solgcf_status solgcf_portrait_equilibrium(const solgcf_portrait* p, size_t i, solgcf_equilibrium* out) {
  if (!p || !out) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "null argument");
  if (i >= p->equilibria.size()) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "equilibrium index out of range");
  const auto& e = p->equilibria[i];
  out->x = e.location[0];
  out->y = e.location[1];
  out->jacobian[0] = e.jacobian[0][0];
  out->jacobian[1] = e.jacobian[0][1];
  out->jacobian[2] = e.jacobian[1][0];
  out->jacobian[3] = e.jacobian[1][1];
  for (int k = 0; k < 2; ++k) {
    out->eig_re[k] = e.eigenvalues[k].real();
    out->eig_im[k] = e.eigenvalues[k].imag();
  }
  out->classification = p->classes[i].c_str();
  out->residual = e.residual;
  return SOLGCF_OK;
}

size_t solgcf_portrait_trajectory_count(const solgcf_portrait* p) { return p ? p->trajectories.size() : 0; }

solgcf_status solgcf_portrait_write_svg(const solgcf_portrait* p, const char* path) {
  return guarded([&] {
    if (auto s = require(p && path, "null argument"); s != SOLGCF_OK) return s;
    io::write_file(path, io::render_svg(io::portrait_plot(p->id, p->box, p->trajectories, p->equilibria)));
    return SOLGCF_OK;
  });
}

solgcf_status solgcf_portrait_write_equilibria_csv(const solgcf_portrait* p, const char* path) {
  return guarded([&] {
    if (auto s = require(p && path, "null argument"); s != SOLGCF_OK) return s;
    std::ostringstream os;
    io::write_equilibria_csv(os, p->equilibria);
    io::write_file(path, os.str());
    return SOLGCF_OK;
  });
}

solgcf_status solgcf_report_run(int parallel, solgcf_report** out) {
  return guarded([&] {
    if (auto s = require(out != nullptr, "null argument"); s != SOLGCF_OK) return s;
    *out = nullptr;
    auto r = std::make_unique<solgcf_report>();
    r->report = verify::run_all(parallel != 0);
    for (const auto& kv : r->report) r->names.push_back(kv.first);
    r->json = verify::report_json(r->report);
    *out = r.release();
    return SOLGCF_OK;
  });
}

void solgcf_report_destroy(solgcf_report* r) { delete r; }

size_t solgcf_report_check_count(const solgcf_report* r) { return r ? r->names.size() : 0; }

solgcf_status solgcf_report_check(const solgcf_report* r, size_t i, const char** name, int* pass,
                                  double* max_error) {
  if (!r) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "null argument");
  if (i >= r->names.size()) return fail(SOLGCF_ERR_INVALID_ARGUMENT, "check index out of range");
  const auto& c = r->report.at(r->names[i]);
  if (name) *name = r->names[i].c_str();
  if (pass) *pass = c.pass ? 1 : 0;
  if (max_error) *max_error = c.max_error;
  return SOLGCF_OK;
}

int solgcf_report_all_pass(const solgcf_report* r) { return r && verify::all_pass(r->report) ? 1 : 0; }

const char* solgcf_report_json(const solgcf_report* r) { return r ? r->json.c_str() : ""; }

solgcf_status solgcf_classify(const char* spec, char** json_out) {
  return guarded([&] {
    if (auto s = require(spec && json_out, "null argument"); s != SOLGCF_OK) return s;
    *json_out = nullptr;
    const surface::SolitonSpec sp = surface::parse_spec(spec);
    nlohmann::ordered_json j;
    j["spec"] = surface::to_string(sp);
    if (sp.invariance == surface::Invariance::F3) {
      const soliton::Verdict v = soliton::classify_f3_invariant(sp.field, sp.curvature);
      j["exists"] = v.exists;
      j["description"] = v.description;
      j["witness"] = v.witness;
    } else {
      const auto kind = soliton::kind_from_spec(sp);
      // Constant angle: scan the orientation circle, report distinct planes.
      std::set<std::string> planes;
      double refuted_min = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 48; ++k) {
        const soliton::Verdict v = soliton::classify_linear_theta(kind, 0.0, 2 * std::numbers::pi * k / 48);
        if (v.exists)
          planes.insert(v.description);
        else
          refuted_min = std::min(refuted_min, v.witness);
      }
      auto& ca = j["constant_angle"];
      ca["exists"] = !planes.empty();
      ca["solutions"] = std::vector<std::string>(planes.begin(), planes.end());
      ca["min_refuting_residual"] = refuted_min;
      auto& la = j["linear_angle"];
      bool any = false;
      nlohmann::ordered_json slopes = nlohmann::ordered_json::array();
      for (double c : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        const soliton::Verdict v = soliton::classify_linear_theta(kind, c, 0.0);
        any = any || v.exists;
        slopes.push_back({{"c", c}, {"exists", v.exists}, {"max_abs_identity", v.witness}});
      }
      la["exists"] = any;
      la["slopes"] = slopes;
    }
    *json_out = duplicate(j.dump(2) + "\n");
    return SOLGCF_OK;
  });
}

}  // extern "C"
