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


#include "solgcf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

#include "solgcf/constants.hpp"
#include "solgcf/dynamics.hpp"
#include "solgcf/errors.hpp"
#include "solgcf/sol3.hpp"
#include "solgcf/soliton.hpp"
#include "solgcf/special.hpp"
#include "solgcf/surface.hpp"

#ifndef SOLGCF_VERSION
#define SOLGCF_VERSION "unknown"
#endif

namespace solgcf::verify {

namespace {

using namespace surface;
using dynamics::PhaseSystem;
using dynamics::Point2;
using soliton::F1SolitonKind;

constexpr double kPi = std::numbers::pi;

CheckResult result(bool pass, double err, std::string note = {}) { return {pass, err, std::move(note)}; }

// Plane cells of the table of coordinate-plane solitons: generating curves
// with theta' = 0 at random positions (and orbit parameters for F3).
CheckResult plane_residuals(const SolitonSpec& spec, std::function<GeneratingState(std::mt19937_64&)> state,
                            unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> T(-3, 3);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const GeneratingState st = state(rng);
    worst = std::max(worst, std::abs(soliton_residual(spec, st, 0.0, T(rng))));
  }
  return result(worst < 1e-12, worst);
}

CheckResult f3_planes(Curvature curvature) {
  double worst = 0.0;
  for (Field field : {Field::F1, Field::F2}) {
    for (double c : {0.0, 0.5, 1.0, 2.0}) {
      const double expect = curvature == Curvature::extrinsic ? -c * c / (1 + c * c) : -1.0 / (1 + c * c);
      for (double s : {-1.0, 0.0, 0.7}) {
        const FundamentalForms ff = field == Field::F1 ? forms_f3(s, c, 1, 0, 0, 0) : forms_f3(c, s, 0, 1, 0, 0);
        const double k = curvature == Curvature::extrinsic ? ff.k_ext() : ff.k_int();
        worst = std::max(worst, std::abs(k - expect));
      }
    }
  }
  bool ok = worst < 1e-12;
  std::string note;
  for (Field field : {Field::F1, Field::F2}) {
    const soliton::Verdict v = soliton::classify_f3_invariant(field, curvature);
    ok = ok && v.exists == (curvature == Curvature::extrinsic);
    note += (note.empty() ? "" : "; ") + v.description;
  }
  return result(ok, worst, note);
}

CheckResult linear_angle(F1SolitonKind kind) {
  double shortfall = 0.0, plane_residual = 0.0;
  bool ok = true;
  for (double c : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    const soliton::Verdict v = soliton::classify_linear_theta(kind, c, 0.0);
    ok = ok && !v.exists && v.witness > defaults::kIdentityRefutationThreshold;
    shortfall = std::max(shortfall, defaults::kIdentityRefutationThreshold - v.witness);
  }
  // theta' = 0: only the coordinate planes of the table survive. The
  // extrinsic F3 horizontal plane needs the orientation theta = pi, since
  // <N, F3> changes sign with N and K_ext does not.
  for (int k = 0; k < 48; ++k) {
    const double th = 2 * kPi * k / 48;
    bool expect = false;
    if (kind == F1SolitonKind::int_F2) expect = k % 24 == 0;
    if (kind == F1SolitonKind::ext_F3) expect = k == 24 || k % 24 == 12;
    const soliton::Verdict v = soliton::classify_linear_theta(kind, 0.0, th);
    ok = ok && v.exists == expect;
    if (expect) plane_residual = std::max(plane_residual, v.witness);
  }
  return result(ok, std::max({0.0, shortfall, plane_residual}));
}

CheckResult closed_form_ext_f2() {
  const double theta0 = 0.3;
  const auto tr = soliton::trace_f1_soliton(F1SolitonKind::ext_F2, {0.0, 0.0, theta0}, 20.0, {1e-12, 1e-12});
  const auto cf = soliton::ClosedFormExtF2::fit(0.0, std::sin(theta0));
  if (!tr.forward.terminal_event() || tr.forward.terminal_event()->name != "vertical_tangency")
    return result(false, 0.0, "forward branch did not reach a vertical tangency");
  double worst = 0.0;
  for (const auto& smp : tr.forward.samples()) {
    const double z = smp.state[1], v = std::sin(smp.state[2]);
    // The trajectory turns at the fold from the principal sheet to the -1 sheet.
    const auto b = v >= 0.0 ? special::WBranch::principal : special::WBranch::minus_one;
    worst = std::max(worst, std::abs(cf.velocity(z, b) - v));
  }
  std::ostringstream os;
  os << "A = " << cf.A << ", tangency at s = " << tr.forward.s_end();
  return result(worst < 1e-8, worst, os.str());
}

ode::System<2> second_order_int_f2() {
  return {[](const ode::State<2>& y) { return ode::State<2>{y[1], y[1] * std::exp(-y[0]) - y[1] * y[1]}; }, {}};
}

CheckResult closed_form_int_f2() {
  double worst = 0.0, tail = 0.0;
  bool ok = true;
  for (double C : {0.5, 1.0}) {
    // z0 = 0, z'(0) = C gives v e^z - z = C.
    const auto cf = soliton::ClosedFormIntF2::fit(0.0, C, 0.0);
    for (double span : {-5.0, 5.0}) {
      const auto tr = ode::integrate(second_order_int_f2(), {0.0, C}, {0.0, span});
      ok = ok && tr.termination() == ode::Termination::reached_end;
      for (int k = 0; k <= 200; ++k) {
        const double s = span * k / 200.0;
        worst = std::max(worst, std::abs(soliton::closed_form_int_f2_eval(cf, s) - tr.evaluate(s)[0]));
      }
    }
    const double s_far = -20.0 * std::exp(-C);
    const auto back = ode::integrate(second_order_int_f2(), {0.0, C}, {0.0, s_far - 10.0});
    for (int k = 0; k <= 100; ++k) {
      const double s = s_far - 10.0 * k / 100.0;
      tail = std::max({tail, soliton::closed_form_int_f2_eval(cf, s) + C, back.evaluate(s)[0] + C});
    }
  }
  std::ostringstream os;
  os << "max z + C beyond the asymptote threshold: " << tail;
  return result(ok && worst < 1e-8 && tail < 0.01, worst, os.str());
}

CheckResult gauss_equation() {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double tp = U(rng);
    const CurveJet j1 = f1_jet({U(rng), U(rng), 2 * U(rng)}, tp);
    const FundamentalForms f1 = forms_f1(j1.a, j1.b, j1.ap, j1.bp, j1.app, j1.bpp);
    worst = std::max(worst, std::abs(intrinsic_gauss_brioschi_f1(j1) - f1.k_ext() - sol3::ambient_sectional(f1.normal)));
    const CurveJet j3 = f3_jet({U(rng), U(rng), 2 * U(rng)}, tp);
    const FundamentalForms f3 = forms_f3(j3.a, j3.b, j3.ap, j3.bp, j3.app, j3.bpp);
    worst = std::max(worst, std::abs(intrinsic_gauss_brioschi_f3(j3) - f3.k_ext() - sol3::ambient_sectional(f3.normal)));
  }
  return result(worst < 1e-10, worst);
}

CheckResult lambert_w() {
  double worst = 0.0;
  const double e_inv = std::exp(-1.0);
  const int n = 2000;
  for (int k = 0; k < n; ++k) {
    // Offsets from the branch point, log-spaced.
    const double t = static_cast<double>(k) / (n - 1);
    const double x0 = -e_inv + 1e-9 * std::pow((1e8 + e_inv) / 1e-9, t);
    const double w0 = special::lambert_w(special::WBranch::principal, std::min(x0, 1e8));
    worst = std::max(worst, std::abs(w0 * std::exp(w0) - std::min(x0, 1e8)) / std::max(1.0, std::abs(x0)));
    const double lo = 1e-9, hi = e_inv - 1e-9;
    const double x1 = -e_inv + lo * std::pow(hi / lo, t);
    const double w1 = special::lambert_w(special::WBranch::minus_one, x1);
    worst = std::max(worst, std::abs(w1 * std::exp(w1) - x1));
  }
  return result(worst < 1e-12, worst);
}

CheckResult exp_integral() {
  double worst = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = 0.1 + (20.0 - 0.1) * k / 400.0;
    const double h = 1e-5 * x;
    const double fd = (special::exp_integral_ei(x + h) - special::exp_integral_ei(x - h)) / (2 * h);
    const double exact = std::exp(x) / x;
    worst = std::max(worst, std::abs(fd - exact) / exact);
  }
  const double ratio = special::exp_integral_ei(30.0) * 30.0 / std::exp(30.0);
  std::ostringstream os;
  os << "Ei(30) 30 / e^30 = " << ratio;
  return result(worst < 1e-6 && std::abs(ratio - 1.0) < 0.05, worst, os.str());
}

CheckResult fase1_through_zero() {
  ode::System<2> fw = dynamics::phase_system(PhaseSystem::fase1);
  fw.events.push_back({"v=-1", [](const Point2& p) { return p[0] + 1.0; }, ode::Direction::falling, true});
  const auto f = ode::integrate(fw, {0.0, 1.0}, {0.0, 50.0});
  const double miss = std::abs(f.final_state()[0] + 1.0);
  bool ok = f.termination() == ode::Termination::event && miss < 1e-10;

  ode::System<2> bw = dynamics::phase_system(PhaseSystem::fase1);
  bw.events.push_back({"vw", [](const Point2& p) { return p[0] * p[1] - 0.97; }, ode::Direction::rising, true});
  bw.events.push_back({"w_max", [](const Point2& p) { return p[1] - 1e4; }, ode::Direction::rising, true});
  const auto b = ode::integrate(bw, {0.0, 1.0}, {0.0, -1e6});
  const auto hit = b.terminal_event();
  const double vw = b.final_state()[0] * b.final_state()[1];
  ok = ok && hit && hit->name == "vw" && vw >= 0.95 && vw <= 1.0;

  // z has its strict maximum at s = 0.
  for (const auto& smp : f.samples())
    if (smp.s > 0.0) ok = ok && smp.state[0] < 0.0;
  for (const auto& smp : b.samples())
    if (smp.s < 0.0) ok = ok && smp.state[0] > 0.0;
  std::ostringstream os;
  os << "s1 = " << f.s_end() << ", vw = " << vw << " at s = " << b.s_end();
  return result(ok, miss, os.str());
}

CheckResult fase1_slope() {
  ode::System<2> bw = dynamics::phase_system(PhaseSystem::fase1);
  bw.events.push_back({"w_max", [](const Point2& p) { return p[1] - 2e3; }, ode::Direction::rising, true});
  const auto b = ode::integrate(bw, {0.0, 1.0}, {0.0, -1e5});
  double worst = 0.0;
  int seen = 0;
  for (const auto& smp : b.samples()) {
    const auto [v, w] = smp.state;
    if (w <= 1e3) continue;
    worst = std::max(worst, std::abs(v * w / std::sqrt(1 - v * v) - 1.0));
    ++seen;
  }
  return result(seen > 0 && worst < 0.05, worst);
}

CheckResult equilibria() {
  const dynamics::Rect box{-3, 3, -kPi, kPi};
  double worst = 0.0;
  bool ok = true;
  auto near = [](const Point2& a, double x, double y) { return std::abs(a[0] - x) < 1e-9 && std::abs(a[1] - y) < 1e-9; };
  auto jac_err = [](const dynamics::Matrix2& J, const dynamics::Matrix2& ref) {
    double e = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(J[i][j] - ref[i][j]));
    return e;
  };

  const auto e1 = dynamics::find_equilibria(PhaseSystem::fase1, {-3, 3, -3, 3});
  ok = ok && e1.size() == 2;
  for (const auto& e : e1) {
    ok = ok && e.classification == dynamics::StabilityClass::saddle &&
         (near(e.location, 1, 0) || near(e.location, -1, 0));
    worst = std::max(worst, e.residual);
  }

  bool p1 = false;
  for (const auto& e : dynamics::find_equilibria(PhaseSystem::fase3, box)) {
    if (!near(e.location, 0, kPi / 2)) continue;
    p1 = true;
    worst = std::max({worst, jac_err(e.jacobian, {{{0, 0}, {1, 1}}}), std::abs(e.eigenvalues[0].real() - 1.0),
                      std::abs(e.eigenvalues[1].real())});
  }
  bool q1 = false;
  const double phi = 0.5 * (1 + std::sqrt(5.0));
  for (const auto& e : dynamics::find_equilibria(PhaseSystem::fase5, box)) {
    if (!near(e.location, 1, kPi / 2)) continue;
    q1 = true;
    ok = ok && e.real_spectrum && e.eigenvalues[0].real() > 0 && e.eigenvalues[1].real() < 0;
    worst = std::max({worst, jac_err(e.jacobian, {{{0, 1}, {1, 1}}}), std::abs(e.eigenvalues[0].real() - phi),
                      std::abs(e.eigenvalues[1].real() - (1 - phi))});
  }
  return result(ok && p1 && q1 && worst < 1e-12, worst);
}

CheckResult fase5_strip() {
  const auto sys = dynamics::phase_system(PhaseSystem::fase5);
  bool ok = true;
  std::ostringstream os;
  for (double span : {50.0, -50.0}) {
    const auto r = dynamics::reparametrize_tau_to_s(ode::integrate(sys, {0.0, 0.0}, {0.0, span}));
    ok = ok && r.crossing_tau && std::isfinite(r.s_end());
    if (r.crossing_tau) os << "crossing at tau = " << *r.crossing_tau << ", s = " << r.s_end() << "; ";
  }
  // Entire-graph witness: a trajectory staying in pi/2 < theta < 3 pi/2.
  bool witness = false;
  for (double th : {kPi, 2.5, 3.5, 2.0, 4.0}) {
    for (double u = -2.0; u <= 2.0 && !witness; u += 0.5) {
      const auto a = ode::integrate(sys, {u, th}, {0.0, 50.0});
      const auto b = ode::integrate(sys, {u, th}, {0.0, -50.0});
      if (a.termination() != ode::Termination::reached_end || b.termination() != ode::Termination::reached_end)
        continue;
      bool inside = true;
      for (const auto* t : {&a, &b})
        for (const auto& smp : t->samples()) inside = inside && smp.state[1] > kPi / 2 && smp.state[1] < 1.5 * kPi;
      if (!inside) continue;
      const auto ra = dynamics::reparametrize_tau_to_s(a), rb = dynamics::reparametrize_tau_to_s(b);
      if (ra.crossing_tau || rb.crossing_tau) continue;
      if (std::abs(ra.s_end()) > 20.0 && std::abs(rb.s_end()) > 20.0) {
        witness = true;
        os << "strip seed (" << u << ", " << th << "): s from " << rb.s_end() << " to " << ra.s_end();
      }
    }
    if (witness) break;
  }
  return result(ok && witness, 0.0, os.str());
}

GeneratingState f1_state(std::mt19937_64& rng, bool vertical, double theta = 0.0) {
  std::uniform_real_distribution<double> U(-3, 3);
  const double a = U(rng), b = U(rng);
  return vertical ? StateF1{0.0, b, kPi / 2} : StateF1{a, b, theta};
}

GeneratingState f3_state(std::mt19937_64& rng, bool vertical) {
  std::uniform_real_distribution<double> U(-3, 3);
  const double a = U(rng);
  return vertical ? StateF3{0.0, a, kPi / 2} : StateF3{a, 0.0, 0.0};
}

}  // namespace

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"plane_residual.f1_invariant.intrinsic_f2.z_const",
       [] {
         return plane_residuals({Invariance::F1, Field::F2, Curvature::intrinsic},
                                [](std::mt19937_64& r) { return f1_state(r, false); }, 1);
       }},
      {"plane_residual.f1_invariant.extrinsic_f3.z_const",
       [] {
         return plane_residuals({Invariance::F1, Field::F3, Curvature::extrinsic},
                                [](std::mt19937_64& r) { return f1_state(r, false, kPi); }, 2);
       }},
      {"plane_residual.f1_invariant.extrinsic_f3.y_zero",
       [] {
         return plane_residuals({Invariance::F1, Field::F3, Curvature::extrinsic},
                                [](std::mt19937_64& r) { return f1_state(r, true); }, 3);
       }},
      {"plane_residual.f3_invariant.extrinsic_f1.y_zero",
       [] {
         return plane_residuals({Invariance::F3, Field::F1, Curvature::extrinsic},
                                [](std::mt19937_64& r) { return f3_state(r, false); }, 4);
       }},
      {"plane_residual.f3_invariant.extrinsic_f2.x_zero",
       [] {
         return plane_residuals({Invariance::F3, Field::F2, Curvature::extrinsic},
                                [](std::mt19937_64& r) { return f3_state(r, true); }, 5);
       }},
      {"f3_invariant.planes.extrinsic", [] { return f3_planes(Curvature::extrinsic); }},
      {"f3_invariant.planes.intrinsic", [] { return f3_planes(Curvature::intrinsic); }},
      {"gauss_equation", gauss_equation},
      {"closed_form.ext_F2", closed_form_ext_f2},
      {"closed_form.int_F2", closed_form_int_f2},
      {"linear_angle.ext_F2", [] { return linear_angle(F1SolitonKind::ext_F2); }},
      {"linear_angle.int_F2", [] { return linear_angle(F1SolitonKind::int_F2); }},
      {"linear_angle.ext_F3", [] { return linear_angle(F1SolitonKind::ext_F3); }},
      {"linear_angle.int_F3", [] { return linear_angle(F1SolitonKind::int_F3); }},
      {"special.lambert_w", lambert_w},
      {"special.exp_integral", exp_integral},
      {"fase1.through_zero", fase1_through_zero},
      {"fase1.slope_asymptote", fase1_slope},
      {"equilibria", equilibria},
      {"fase5.strip", fase5_strip},
  };
  return all;
}

Report run_all(bool parallel) {
  auto guarded = [](const Check& c) {
    try {
      return c.run();
    } catch (const std::exception& e) {
      return result(false, std::numeric_limits<double>::infinity(), e.what());
    }
  };
  Report out;
  if (!parallel) {
    for (const auto& c : checks()) out[c.name] = guarded(c);
    return out;
  }
  std::vector<std::future<CheckResult>> jobs;
  for (const auto& c : checks()) jobs.push_back(std::async(std::launch::async, guarded, std::cref(c)));
  for (std::size_t i = 0; i < jobs.size(); ++i) out[checks()[i].name] = jobs[i].get();
  return out;
}

bool all_pass(const Report& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& kv) { return kv.second.pass; });
}

const char* version() { return SOLGCF_VERSION; }

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["version"] = version();
  j["checks"] = nlohmann::ordered_json::object();
  for (const auto& [name, c] : r) {
    // JSON has no infinity; a crashed check reports null.
    nlohmann::ordered_json e;
    e["pass"] = c.pass;
    if (std::isfinite(c.max_error))
      e["max_error"] = c.max_error;
    else
      e["max_error"] = nullptr;
    j["checks"][name] = e;
  }
  return j.dump(2) + "\n";
}

}  // namespace solgcf::verify
