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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "solgcf/errors.hpp"
#include "solgcf/soliton.hpp"
#include "solgcf/special.hpp"

using namespace solgcf;
using namespace solgcf::soliton;
using special::WBranch;
using surface::Curvature;
using surface::Field;

namespace {

constexpr double kPi = std::numbers::pi;
const F1SolitonKind kAllKinds[] = {F1SolitonKind::ext_F2, F1SolitonKind::int_F2, F1SolitonKind::ext_F3,
                                   F1SolitonKind::int_F3};

// (z, z') system of z'' + z'^2 - z' e^{-z} = 0.
ode::System<2> eq27_system() {
  return {[](const ode::State<2>& y) {
            return ode::State<2>{y[1], y[1] * std::exp(-y[0]) - y[1] * y[1]};
          },
          {}};
}

}  // namespace

TEST_CASE("soliton right-hand sides") {
  for (double y : {-1.0, 0.0, 2.0})
    for (double z : {-1.0, 0.5}) {
      auto r = f1_soliton_rhs(F1SolitonKind::ext_F3, {y, z, kPi});
      CHECK(std::abs(r[2]) < 1e-15);
      CHECK(std::abs(r[1]) < 1e-15);
    }
  auto h = f1_soliton_rhs(F1SolitonKind::int_F2, {0.0, 0.7, 0.0});
  CHECK(h[2] == 0.0);
  CHECK(h[1] == 0.0);
  CHECK(f1_soliton_rhs(F1SolitonKind::ext_F2, {0, 0, 0})[2] == -1.0);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int n = 0; n < 500; ++n) {
    StateF1 st{U(rng), U(rng), 1.5 * U(rng)};
    for (auto kind : kAllKinds) {
      auto r = f1_soliton_rhs(kind, st);
      // Unit speed in the Sol3 metric.
      CHECK(std::abs(std::pow(r[0] * std::exp(-st.z), 2) + r[1] * r[1] - 1.0) < 1e-14);
      // theta' is exactly the zero of the soliton residual.
      CHECK(std::abs(surface::soliton_residual(spec_of(kind), st, r[2], 0.0)) < 1e-12 * (1 + std::abs(r[2])));
    }
  }
  CHECK_THROWS_AS(theta_prime(F1SolitonKind::ext_F2, {0, 0, kPi / 2}), SingularityError);
  CHECK_THROWS_AS(f1_soliton_rhs(F1SolitonKind::int_F3, {0, 0, -kPi / 2}), SingularityError);
}

TEST_CASE("spec mapping") {
  for (auto kind : kAllKinds) CHECK(kind_from_spec(spec_of(kind)) == kind);
  CHECK_THROWS_AS(kind_from_spec(surface::parse_spec("F3,F1,ext")), ContractError);
  CHECK_THROWS_AS(kind_from_spec(surface::parse_spec("F1,F1,int")), ContractError);
  CHECK(to_string(F1SolitonKind::int_F3) == "int_F3");
}

TEST_CASE("residual vanishes along traced solutions") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto kind : kAllKinds) {
    for (int n = 0; n < 5; ++n) {
      StateF1 init{U(rng), U(rng), 1.2 * U(rng)};
      auto tr = trace_f1_soliton(kind, init, 4.0);
      for (const auto* branch : {&tr.forward, &tr.backward}) {
        CHECK(branch->termination() != ode::Termination::step_failure);
        CHECK(branch->termination() != ode::Termination::range_error);
        for (const auto& smp : branch->samples()) {
          const StateF1 st = to_state(smp.state);
          const double tp = theta_prime(kind, st);
          CHECK(std::abs(surface::soliton_residual(spec_of(kind), st, tp, 0.0)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("second-order reductions") {
  CHECK(reduction_211_residual(0.3, 0.0, -1.0) == 0.0);
    // Solving the residual for z'' at z' = 1 gives z'' = e^{-z}.
  CHECK(reduction_211_residual(0.4, 1.0, std::exp(-0.4)) == doctest::Approx(0.0).scale(1.0));
  CHECK(reduction_211_residual(0.4, 1.0, 1.0 + std::exp(-0.4)) == doctest::Approx(1.0));
  CHECK(reduction_211_residual(0.0, 0.0, 0.0) == 1.0);
  CHECK(reduction_eq27_residual(1.0, 0.0, 0.0) == 0.0);
  for (double C : {0.2, 0.5, 1.0}) CHECK(std::abs(reduction_eq27_residual(0.0, C, C * (1 - C))) < 1e-15);
  CHECK(reduction_eq27_residual(0.0, 1.0, 0.0) == 0.0);

  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 0; n < 4; ++n) {
    const StateF1 init{0.0, U(rng), U(rng)};
    // z'' = cos(theta) theta' along the exact right-hand side, checked on the
    // dense output by central differences of z'.
    auto ext = trace_f1_soliton(F1SolitonKind::ext_F2, init, 2.0);
    auto inr = trace_f1_soliton(F1SolitonKind::int_F2, init, 2.0);
    for (const auto& smp : ext.forward.samples()) {
      const StateF1 st = to_state(smp.state);
      const double zpp = std::cos(st.theta) * theta_prime(F1SolitonKind::ext_F2, st);
      CHECK(std::abs(reduction_211_residual(st.z, std::sin(st.theta), zpp)) < 1e-8);
    }
    for (const auto& smp : inr.backward.samples()) {
      const StateF1 st = to_state(smp.state);
      const double zpp = std::cos(st.theta) * theta_prime(F1SolitonKind::int_F2, st);
      CHECK(std::abs(reduction_eq27_residual(st.z, std::sin(st.theta), zpp)) < 1e-8);
    }
    const auto& tr = inr.forward;
    const double s_hi = std::min(1.0, tr.s_end());
    for (double s = 0.05; s < s_hi - 0.05; s += 0.05) {
      const double h = 1e-4;
      const double zp_a = std::sin(tr.evaluate(s + h)[2]), zp_b = std::sin(tr.evaluate(s - h)[2]);
      const StateF1 st = to_state(tr.evaluate(s));
      CHECK(std::abs(reduction_eq27_residual(st.z, std::sin(st.theta), (zp_a - zp_b) / (2 * h))) < 1e-6);
    }
  }
}

TEST_CASE("conserved quantities") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 0; n < 6; ++n) {
    const StateF1 init{U(rng), U(rng), 1.2 * U(rng)};
    auto tr = trace_f1_soliton(F1SolitonKind::int_F2, init, 1.0);
    const double C = std::sin(init.theta) * std::exp(init.z) - init.z;
    for (const auto* b : {&tr.forward, &tr.backward})
      for (const auto& smp : b->samples()) {
        CHECK(std::abs(std::sin(smp.state[2]) * std::exp(smp.state[1]) - smp.state[1] - C) < 1e-8);
      }

    // f = v w with v = sin(theta), w = e^{-z}: f' = e^{-z} (f - 1).
    // Tight tolerances so the dense output is smooth enough for differencing.
    auto ext = trace_f1_soliton(F1SolitonKind::ext_F2, init, 1.0, TraceOptions{1e-13, 1e-13, 1e-3});
    for (const auto* b : {&ext.forward, &ext.backward}) {
      const double lo = std::min(b->s_begin(), b->s_end()), hi = std::max(b->s_begin(), b->s_end());
      auto f = [&](double s) {
        auto y = b->evaluate(s);
        return std::sin(y[2]) * std::exp(-y[1]);
      };
      for (double s = lo + 0.01; s < hi - 0.01; s += 0.02) {
        const double h = 1e-3;
        auto y = b->evaluate(s);
        if (std::abs(std::cos(y[2])) < 0.05) continue;  // theta' blows up near the tangency
        const double fd = (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h);
        CHECK(std::abs(fd - std::exp(-y[1]) * (f(s) - 1.0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("vertical tangency ends the extrinsic F2 curve") {
  auto tr = trace_f1_soliton(F1SolitonKind::ext_F2, {0, 0, 0}, 20.0);
  REQUIRE(tr.forward.termination() == ode::Termination::event);
  CHECK(tr.forward.terminal_event()->name == "vertical_tangency");
  CHECK(tr.forward.s_end() < 5.0);
  const double c1 = std::cos(tr.forward.final_state()[2]);
  // Located in cos|cos|, which is regular at the tangency.
  CHECK(c1 > 0.0);
  CHECK(std::abs(c1 * c1 - std::pow(defaults::kVerticalTangencyCos, 2)) < 1e-11);
  CHECK(tr.forward.final_state()[2] < 0.0);
  // The backward branch descends without a tangency.
  CHECK(tr.backward.termination() == ode::Termination::reached_end);
  CHECK(tr.backward.final_state()[1] < -2.0);
  CHECK_THROWS_AS(trace_f1_soliton(F1SolitonKind::ext_F2, {0, 0, kPi / 2}, 1.0), SingularityError);
  CHECK_THROWS_AS(trace_f1_soliton(F1SolitonKind::ext_F2, {0, 0, 0}, -1.0), ContractError);
}

TEST_CASE("extrinsic F2 closed form against the integrator") {
  TraceOptions tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  struct Start {
    double z0, theta0;
  };
  // Folded (A < -1/e), unfolded negative A, and positive A.
  for (Start st : {Start{0.0, 0.3}, Start{0.0, -0.4}, Start{-1.0, 1.2}, Start{-0.5, 0.1}}) {
    const double v0 = std::sin(st.theta0);
    const ClosedFormExtF2 cf = ClosedFormExtF2::fit(st.z0, v0);
    CHECK(cf.velocity(st.z0) == doctest::Approx(v0).epsilon(1e-13));
    auto tr = trace_f1_soliton(F1SolitonKind::ext_F2, {0.0, st.z0, st.theta0}, 10.0, tight);
    for (const auto* b : {&tr.forward, &tr.backward}) {
      for (const auto& smp : b->samples()) {
        const double z = smp.state[1], v = std::sin(smp.state[2]);
        const WBranch sheet = v >= 0 ? WBranch::principal : WBranch::minus_one;
        if (!cf.fold_height() && sheet != cf.branch) continue;
        CHECK(std::abs(cf.velocity(z, sheet) - v) < 1e-8);
      }
    }
  }

  const ClosedFormExtF2 folded = ClosedFormExtF2::fit(0.0, std::sin(0.3));
  REQUIRE(folded.fold_height().has_value());
  const double zs = *folded.fold_height();
  CHECK(std::abs(folded.velocity(zs, WBranch::principal)) < 1e-7);
  CHECK_THROWS_AS(folded.velocity(zs + 0.1), DomainError);
  CHECK_THROWS_AS(ClosedFormExtF2::fit(0.0, 1.0), DomainError);
  // Far below, the argument tends to 0 and z' / e^z to 1 + W(0) = 1.
  CHECK(folded.velocity(-5.0, WBranch::principal) / std::exp(-5.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extrinsic F2 implicit integral reproduces arc length") {
  TraceOptions tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  auto tr = trace_f1_soliton(F1SolitonKind::ext_F2, {0.0, 0.0, 0.3}, 10.0, tight);
  const ClosedFormExtF2 cf = ClosedFormExtF2::fit(0.0, std::sin(0.3));
  const double zs = *cf.fold_height();
  // Rising part on the principal sheet, from s = 0.
  int checked = 0;
  for (const auto& smp : tr.forward.samples()) {
    const double z = smp.state[1], v = std::sin(smp.state[2]);
    if (v > 0 && z < zs - 1e-3 && smp.s > 0) {
      CHECK(std::abs(cf.arc_length(0.0, z, WBranch::principal) - smp.s) < 1e-8);
      ++checked;
    }
  }
  CHECK(checked > 3);
  // Falling part on the -1 sheet, between pairs of samples.
  const auto& sm = tr.forward.samples();
  std::vector<ode::Sample<3>> down;
  for (const auto& smp : sm)
    if (std::sin(smp.state[2]) < -0.05 && std::cos(smp.state[2]) > 0.05) down.push_back(smp);
  REQUIRE(down.size() > 4);
  for (std::size_t i = 1; i < down.size(); i += 3) {
    const double ds = cf.arc_length(down[0].state[1], down[i].state[1], WBranch::minus_one);
    CHECK(std::abs(ds - (down[i].s - down[0].s)) < 1e-8);
  }
}

TEST_CASE("intrinsic F2 closed form") {
  for (double C : {0.5, 1.0}) {
    const ClosedFormIntF2 cf = ClosedFormIntF2::fit(0.0, C, 0.0);
    CHECK(cf.C == doctest::Approx(C));
    CHECK(cf.is_global());
    CHECK(closed_form_int_f2_eval(cf, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // The peak slope e^{C-1} is reached at z = 1 - C.
    const double s_peak = std::exp(-C) * special::exp_integral_ei(1.0) + cf.A;
    CHECK(closed_form_int_f2_eval(cf, s_peak) == doctest::Approx(1.0 - C).epsilon(1e-12));
    CHECK(cf.velocity(1.0 - C) == doctest::Approx(std::exp(C - 1.0)).epsilon(1e-14));
    for (double s = -3.0; s <= 3.0; s += 0.25) {
      const double z = closed_form_int_f2_eval(cf, s);
      CHECK(z > -C);
      CHECK(std::abs(s - std::exp(-C) * special::exp_integral_ei(z + C) - cf.A) < 1e-10);
      const double h = 1e-5;
      const double fd = (closed_form_int_f2_eval(cf, s + h) - closed_form_int_f2_eval(cf, s - h)) / (2 * h);
      CHECK(std::abs(fd - cf.velocity(z)) < 1e-6);
    }
    CHECK(closed_form_int_f2_eval(cf, -10.0) + C < 1e-5);
    CHECK(closed_form_int_f2_eval(cf, -10.0) + C > 0.0);
    CHECK(closed_form_int_f2_eval(cf, -40.0) + C < 1e-12);

    // Against direct integration of the second-order equation.
    for (double span : {-5.0, 5.0}) {
      auto tr = ode::integrate(eq27_system(), {0.0, C}, {0.0, span});
      for (const auto& smp : tr.samples()) {
        CHECK(std::abs(closed_form_int_f2_eval(cf, smp.s) - smp.state[0]) < 1e-8);
      }
    }
  }
  CHECK_FALSE(ClosedFormIntF2{1.5, 0.0}.is_global());
  CHECK_THROWS_AS(ClosedFormIntF2::fit(0.0, -0.2, 0.0), DomainError);
}

TEST_CASE("linear angle classification") {
  Verdict a = classify_linear_theta(F1SolitonKind::int_F2, 0.0, 0.0);
  CHECK(a.exists);
  CHECK(a.description.find("horizontal plane") != std::string::npos);
  for (double th : {-1.0, 0.0, 0.3, 1.0, kPi / 2, 2.5, kPi}) {
    Verdict b = classify_linear_theta(F1SolitonKind::ext_F2, 0.0, th);
    CHECK_FALSE(b.exists);
    CHECK(b.witness > 1e-3);
  }
  CHECK_FALSE(classify_linear_theta(F1SolitonKind::int_F2, 0.0, 0.6).exists);
  Verdict c = classify_linear_theta(F1SolitonKind::int_F3, 1.0, 0.0);
  CHECK_FALSE(c.exists);
  CHECK(c.witness > 0.1);
  Verdict h = classify_linear_theta(F1SolitonKind::ext_F3, 0.0, kPi);
  CHECK(h.exists);
  CHECK(h.description.find("horizontal plane") != std::string::npos);
  Verdict v = classify_linear_theta(F1SolitonKind::ext_F3, 0.0, kPi / 2);
  CHECK(v.exists);
  CHECK(v.description.find("vertical plane y = 0") != std::string::npos);
  CHECK_FALSE(classify_linear_theta(F1SolitonKind::ext_F3, 0.0, 0.8).exists);
  for (double th : {0.0, kPi / 2, kPi, 0.4})
    CHECK_FALSE(classify_linear_theta(F1SolitonKind::int_F3, 0.0, th).exists);
  for (auto kind : kAllKinds)
    for (double cc : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
      Verdict r = classify_linear_theta(kind, cc, 0.0);
      CHECK_FALSE(r.exists);
      CHECK(r.witness > 0.1);
    }
}

TEST_CASE("F3-invariant classification") {
  Verdict a = classify_f3_invariant(Field::F1, Curvature::extrinsic);
  CHECK(a.exists);
  CHECK(a.description == "vertical plane y = 0");
  CHECK(a.witness < 1e-12);
  Verdict b = classify_f3_invariant(Field::F2, Curvature::extrinsic);
  CHECK(b.exists);
  CHECK(b.description == "vertical plane x = 0");
  for (Field f : {Field::F1, Field::F2}) {
    Verdict c = classify_f3_invariant(f, Curvature::intrinsic);
    CHECK_FALSE(c.exists);
    CHECK(c.witness == doctest::Approx(1.0 / 101.0));
  }
  CHECK_THROWS_AS(classify_f3_invariant(Field::F3, Curvature::extrinsic), ContractError);
}
