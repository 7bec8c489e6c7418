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
#include "solgcf/dynamics.hpp"
#include "solgcf/errors.hpp"
#include "solgcf/soliton.hpp"

using namespace solgcf;
using namespace solgcf::dynamics;

namespace {

constexpr double kPi = std::numbers::pi;
const Rect kBox{-3, 3, -kPi, kPi};

// Fourth-order central difference of a trace-valued map.
template <class F>
Point2 derivative(F&& f, double s, double h) {
  auto a = f(s - 2 * h), b = f(s - h), c = f(s + h), d = f(s + 2 * h);
  Point2 r;
  for (int i = 0; i < 2; ++i) r[i] = (a[i] - 8 * b[i] + 8 * c[i] - d[i]) / (12 * h);
  return r;
}

const EquilibriumReport& at(const std::vector<EquilibriumReport>& eqs, double x, double y) {
  for (auto& e : eqs)
    if (std::abs(e.location[0] - x) < 1e-9 && std::abs(e.location[1] - y) < 1e-9) return e;
  FAIL("no equilibrium at (" << x << ", " << y << ")");
  return eqs.front();
}

}  // namespace

TEST_CASE("phase right-hand sides") {
  auto r = phase_rhs(PhaseSystem::fase1, {1, 0});
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
  r = phase_rhs(PhaseSystem::fase3, {0, kPi / 2});
  CHECK(std::abs(r[0]) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);
  r = phase_rhs(PhaseSystem::fase5, {1, kPi / 2});
  CHECK(std::abs(r[0]) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);

  r = phase_rhs(PhaseSystem::fase1, {0.5, 2});
  CHECK(r[0] == doctest::Approx(0.25 + 1 - 1));
  CHECK(r[1] == doctest::Approx(-1));

  // Desingularised fields are the singular ones times cos(theta).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int n = 0; n < 200; ++n) {
    Point2 p{U(rng), U(rng)};
    const double c = std::cos(p[1]);
    for (auto [sing, desing] : {std::pair{PhaseSystem::fase2, PhaseSystem::fase3},
                                std::pair{PhaseSystem::fase4, PhaseSystem::fase5}}) {
      auto a = phase_rhs(sing, p), b = phase_rhs(desing, p);
      CHECK(std::abs(a[0] * c - b[0]) < 1e-12);
      CHECK(std::abs(a[1] * c - b[1]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(phase_rhs(PhaseSystem::fase2, {0, kPi / 2}), SingularityError);
  CHECK_THROWS_AS(phase_rhs(PhaseSystem::fase4, {1, -kPi / 2}), SingularityError);
  CHECK_NOTHROW(phase_rhs(PhaseSystem::fase5, {1, -kPi / 2}));

  CHECK(parse_phase_system("FASE3") == PhaseSystem::fase3);
  CHECK_THROWS_AS(parse_phase_system("fase6"), ContractError);
  CHECK(!is_smooth(PhaseSystem::fase4));
}

TEST_CASE("analytic Jacobians match finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  const double h = 1e-5;
  for (auto id : {PhaseSystem::fase1, PhaseSystem::fase2, PhaseSystem::fase3, PhaseSystem::fase4,
                  PhaseSystem::fase5}) {
    for (int n = 0; n < 200; ++n) {
      Point2 p{U(rng), U(rng)};
      if (!is_smooth(id) && std::abs(std::cos(p[1])) < 0.2) continue;
      auto J = jacobian(id, p);
      for (int j = 0; j < 2; ++j) {
        Point2 a = p, b = p;
        a[j] += h;
        b[j] -= h;
        auto fa = phase_rhs(id, a), fb = phase_rhs(id, b);
        for (int i = 0; i < 2; ++i) {
          const double fd = (fa[i] - fb[i]) / (2 * h);
          CHECK_MESSAGE(std::abs(J[i][j] - fd) < 1e-6 * (1 + std::abs(fd)), to_string(id) << " " << i << j);
        }
      }
    }
  }
}

TEST_CASE("equilibria") {
  auto e1 = find_equilibria(PhaseSystem::fase1, {-3, 3, -3, 3});
  REQUIRE(e1.size() == 2);
  for (auto& e : e1) {
    CHECK(e.classification == StabilityClass::saddle);
    CHECK(e.residual < 1e-12);
    CHECK(std::abs(std::abs(e.location[0]) - 1) < 1e-12);
    CHECK(std::abs(e.location[1]) < 1e-12);
  }
  CHECK(at(e1, 1, 0).eigenvalues[0].real() == doctest::Approx(2));
  CHECK(at(e1, 1, 0).eigenvalues[1].real() == doctest::Approx(-1));
  CHECK(at(e1, -1, 0).eigenvalues[0].real() == doctest::Approx(1));
  CHECK(at(e1, -1, 0).eigenvalues[1].real() == doctest::Approx(-2));

  auto e3 = find_equilibria(PhaseSystem::fase3, kBox);
  REQUIRE(e3.size() == 2);
  const auto& p1 = at(e3, 0, kPi / 2);
  const Matrix2 j3{{{0, 0}, {1, 1}}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(p1.jacobian[i][j] - j3[i][j]) < 1e-12);
  CHECK(std::abs(p1.eigenvalues[0].real() - 1) < 1e-12);
  CHECK(std::abs(p1.eigenvalues[1].real()) < 1e-12);
  CHECK(p1.classification == StabilityClass::degenerate);
  const auto& p2 = at(e3, 0, -kPi / 2);
  CHECK(std::abs(p2.eigenvalues[1].real() + 1) < 1e-12);
  CHECK(std::abs(p2.eigenvalues[0].real()) < 1e-12);

  auto e5 = find_equilibria(PhaseSystem::fase5, kBox);
  REQUIRE(e5.size() == 2);
  const auto& q1 = at(e5, 1, kPi / 2);
  const auto& q2 = at(e5, -1, -kPi / 2);
  const Matrix2 jq1{{{0, 1}, {1, 1}}}, jq2{{{0, -1}, {-1, -1}}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(q1.jacobian[i][j] - jq1[i][j]) < 1e-12);
      CHECK(std::abs(q2.jacobian[i][j] - jq2[i][j]) < 1e-12);
    }
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(q1.eigenvalues[0].real() - phi) < 1e-12);
  CHECK(std::abs(q1.eigenvalues[1].real() - (1 - phi)) < 1e-12);
  CHECK(q1.classification == StabilityClass::saddle);
  CHECK(q2.classification == StabilityClass::saddle);

  for (const auto* list : {&e1, &e3, &e5})
    for (auto& e : *list) {
      // Eigenpairs: J v = lambda v and the characteristic polynomial.
      const auto& J = e.jacobian;
      const double tr = J[0][0] + J[1][1], det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      for (int k = 0; k < 2; ++k) {
        const double l = e.eigenvalues[k].real();
        CHECK(std::abs(l * l - tr * l + det) < 1e-12);
        const auto& v = e.eigenvectors[k];
        CHECK(std::abs(J[0][0] * v[0] + J[0][1] * v[1] - l * v[0]) < 1e-12);
        CHECK(std::abs(J[1][0] * v[0] + J[1][1] * v[1] - l * v[1]) < 1e-12);
      }
    }

  // Periodic copies appear when the box admits them.
  auto wide = find_equilibria(PhaseSystem::fase5, {-3, 3, -kPi, 3 * kPi});
  CHECK(wide.size() == 4);
  CHECK_THROWS_AS(find_equilibria(PhaseSystem::fase2, kBox), ContractError);

  auto c = analyze_point(PhaseSystem::fase1, {0, 0});
  CHECK(c.residual == doctest::Approx(1));
}

TEST_CASE("invariant manifolds of fase1") {
  auto eqs = find_equilibria(PhaseSystem::fase1, {-3, 3, -3, 3});
  const auto& P1 = at(eqs, 1, 0);
  const auto& P2 = at(eqs, -1, 0);
  ManifoldOptions opt;
  opt.bounds = Rect{-3, 3, -3, 3};

  // Stable manifold of P1 in w > 0: z' in (0, 1), tending to 1.
  auto m = trace_manifold(PhaseSystem::fase1, P1, Manifold::stable, 1, 50, opt);
  CHECK(m.s_end() < 0);
  for (auto& smp : m.samples()) {
    CHECK(smp.state[1] > 0);
    CHECK(smp.state[0] > 0);
    CHECK(smp.state[0] < 1);
  }
  CHECK(std::abs(m.samples().front().state[0] - 1) < 1e-5);

  // At P2 the stable direction is the invariant line w = 0.
  auto s2 = trace_manifold(PhaseSystem::fase1, P2, Manifold::stable, 1, 50, opt);
  for (auto& smp : s2.samples()) CHECK(smp.state[1] == 0.0);
  CHECK(std::abs(s2.samples().front().state[0] + 1) < 1e-5);
  CHECK(s2.final_state()[0] > 0.99);
  // The unstable branch into w > 0 leaves the strip |v| < 1.
  auto u2 = trace_manifold(PhaseSystem::fase1, P2, Manifold::unstable, 1, 50, opt);
  for (auto& smp : u2.samples()) CHECK(smp.state[0] < -1);

  auto e3 = find_equilibria(PhaseSystem::fase3, kBox);
  const auto& p1 = at(e3, 0, kPi / 2);
  CHECK_THROWS_AS(trace_manifold(PhaseSystem::fase3, p1, Manifold::stable, 1, 5), ContractError);
  CHECK_NOTHROW(trace_manifold(PhaseSystem::fase3, p1, Manifold::unstable, 1, 1));
  CHECK_THROWS_AS(trace_manifold(PhaseSystem::fase1, P1, Manifold::stable, 0, 1), ContractError);
}

TEST_CASE("reparametrization to arc length") {
  ode::System<2> drift{[](const Point2& p) { return Point2{1.0, 0.0 * p[1]}; }, {}};
  auto t = ode::integrate(drift, {0, kPi}, {0, 7});
  auto r = reparametrize_tau_to_s(t);
  CHECK(!r.crossing_tau);
  for (auto& smp : r.samples) CHECK(std::abs(smp.s + smp.tau) < 1e-12);

  auto sys = phase_system(PhaseSystem::fase5);
  for (double span : {50.0, -50.0}) {
    auto tr = ode::integrate(sys, {0, 0}, {0, span});
    auto rp = reparametrize_tau_to_s(tr);
    REQUIRE(rp.crossing_tau);
    CHECK(std::abs(*rp.crossing_tau) < 5);
    CHECK(std::isfinite(rp.s_end()));
    CHECK(std::abs(rp.s_end()) < 5);
    CHECK(std::abs(std::cos(tr.evaluate(*rp.crossing_tau)[1])) < 1e-9);
  }
}

TEST_CASE("fase1 along extrinsic F2 generating curves") {
  using namespace soliton;
  for (StateF1 st : {StateF1{0, 0, 0}, StateF1{1, 0.3, 0.4}, StateF1{0, -0.5, -0.7}}) {
    auto tr = trace_f1_soliton(F1SolitonKind::ext_F2, st, 3, {1e-13, 1e-13, 1e-3});
    for (const auto* br : {&tr.forward, &tr.backward}) {
      const double a = std::min(br->s_begin(), br->s_end()), b = std::max(br->s_begin(), br->s_end());
      auto proj = [&](double s) {
        auto y = br->evaluate(s);
        return Point2{std::sin(y[2]), std::exp(-y[1])};
      };
      for (int k = 1; k < 40; ++k) {
        const double s = a + (b - a) * k / 40.0;
        if (s - a < 0.01 || b - s < 0.01) continue;
        auto d = derivative(proj, s, 1e-3);
        auto f = phase_rhs(PhaseSystem::fase1, proj(s));
        CHECK(std::abs(d[0] - f[0]) < 1e-6);
        CHECK(std::abs(d[1] - f[1]) < 1e-6);
      }
    }
  }
}

TEST_CASE("fase2 and fase4 along F3 generating curves") {
  using namespace soliton;
  for (auto [kind, id] : {std::pair{F1SolitonKind::ext_F3, PhaseSystem::fase2},
                          std::pair{F1SolitonKind::int_F3, PhaseSystem::fase4}}) {
    for (StateF1 st : {StateF1{0.2, 0, 0.3}, StateF1{-1, 0.4, 2.5}}) {
      auto tr = trace_f1_soliton(kind, st, 2, {1e-13, 1e-13, 1e-3});
      for (const auto* br : {&tr.forward, &tr.backward}) {
        const double a = std::min(br->s_begin(), br->s_end()), b = std::max(br->s_begin(), br->s_end());
        if (b - a < 0.1) continue;
        auto proj = [&](double s) {
          auto y = br->evaluate(s);
          return Point2{y[0] * std::exp(-y[1]), y[2]};
        };
        for (int k = 1; k < 20; ++k) {
          const double s = a + (b - a) * k / 20.0;
          if (s - a < 0.01 || b - s < 0.01) continue;
          auto p = proj(s);
          // theta' ~ 1/cos(theta): the stencil loses accuracy near tangency.
          if (std::abs(std::cos(p[1])) < 0.2) continue;
          auto d = derivative(proj, s, 2e-4);
          auto f = phase_rhs(id, p);
          CHECK(std::abs(d[0] - f[0]) < 1e-6);
          CHECK_MESSAGE(std::abs(d[1] - f[1]) < 1e-6, to_string(kind) << " s=" << s << " cos=" << std::cos(p[1]) << " span " << a << "," << b);
        }
      }
    }
  }
}

TEST_CASE("desingularised traces reproduce the generating curves") {
  using namespace soliton;
  for (auto [kind, id] : {std::pair{F1SolitonKind::ext_F3, PhaseSystem::fase3},
                          std::pair{F1SolitonKind::int_F3, PhaseSystem::fase5}}) {
    const StateF1 st{0.3, 0, 0.4};
    auto curve = trace_f1_soliton(kind, st, 3, {1e-12, 1e-12});
    ode::Options o;
    o.abs_tol = o.rel_tol = 1e-12;
    auto tr = ode::integrate(phase_system(id), {st.y, st.theta}, {0, 5}, o);
    auto rp = reparametrize_tau_to_s(tr);
    int compared = 0;
    for (auto& smp : rp.samples) {
      if (smp.s > curve.forward.s_end()) break;
      // At a fixed s, theta is ill-conditioned as cos(theta) -> 0.
      if (std::abs(std::cos(smp.state[1])) < 1e-3) continue;
      auto y = curve.forward.evaluate(smp.s);
      CHECK(std::abs(y[0] * std::exp(-y[1]) - smp.state[0]) < 1e-8);
      CHECK(std::abs(y[2] - smp.state[1]) < 1e-8);
      ++compared;
    }
    CHECK(compared > 20);
  }
}

TEST_CASE("fase1 trajectories through v = 0") {
  ode::System<2> f = phase_system(PhaseSystem::fase1);
  f.events.push_back({"v=-1", [](const Point2& p) { return p[0] + 1; }, ode::Direction::falling, true});
  auto fw = ode::integrate(f, {0, 1}, {0, 50});
  REQUIRE(fw.termination() == ode::Termination::event);
  CHECK(std::abs(fw.final_state()[0] + 1) < 1e-10);
  CHECK(fw.s_end() > 0.5);
  CHECK(fw.s_end() < 1.0);
  for (auto& smp : fw.samples())
    if (smp.s > 0) CHECK(smp.state[0] < 0);

  ode::System<2> b = phase_system(PhaseSystem::fase1);
  b.events.push_back({"w_max", [](const Point2& p) { return p[1] - 2e3; }, ode::Direction::rising, true});
  auto bw = ode::integrate(b, {0, 1}, {0, -1e5});
  REQUIRE(bw.terminal_event());
  CHECK(bw.terminal_event()->name == "w_max");
  for (auto& smp : bw.samples())
    if (smp.s < 0) CHECK(smp.state[0] > 0);
  // Slope asymptote over the last decade of w.
  for (auto& smp : bw.samples()) {
    const auto [v, w] = smp.state;
    if (w > 1e3) CHECK(std::abs(v * w / std::sqrt(1 - v * v) - 1) < 0.05);
  }
}

TEST_CASE("portrait sampling") {
  auto p1 = sample_portrait(PhaseSystem::fase1, {-1, 1, 0, 2}, 5, 5, 20);
  // Seeds on w = 0 are dropped.
  CHECK(p1.size() == 20);
  for (auto& t : p1) {
    CHECK(t.seed[1] > 0);
    if (t.seed[0] == 0.0) {
      REQUIRE(t.forward.terminal_event());
      CHECK(t.forward.terminal_event()->name == "left_strip");
      CHECK(std::abs(t.forward.final_state()[0] + 1) < 1e-9);
    }
  }

  auto p5 = sample_portrait(PhaseSystem::fase5, kBox, 5, 5, 10);
  bool found = false;
  for (auto& t : p5) {
    CHECK(std::abs(std::cos(t.seed[1])) >= defaults::kSingularLineGuard);
    if (t.seed[0] == 0.0 && t.seed[1] == 0.0) {
      found = true;
      int crossings = 0;
      for (auto& h : t.forward.event_hits()) crossings += h.name == "singular_line";
      CHECK(crossings > 0);
    }
  }
  CHECK(found);

  // Concurrency does not change the result.
  auto again = sample_portrait(PhaseSystem::fase5, kBox, 5, 5, 10);
  REQUIRE(again.size() == p5.size());
  for (size_t i = 0; i < p5.size(); ++i) {
    CHECK(again[i].forward.samples().size() == p5[i].forward.samples().size());
    CHECK(again[i].forward.final_state() == p5[i].forward.final_state());
  }
  CHECK_THROWS_AS(sample_portrait(PhaseSystem::fase3, kBox, 1, 5, 10), ContractError);
}
