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

#ifndef SOLGCF_DYNAMICS_HPP
#define SOLGCF_DYNAMICS_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "solgcf/ode.hpp"

// Planar systems behind the soliton ODEs.
//
//   fase1  (v, w) = (z', e^{-z})     extrinsic F2, arc length s
//   fase2  (u, theta), u = y e^{-z}  extrinsic F3, arc length s (singular)
//   fase3  (u, theta)                extrinsic F3, d tau = ds / cos(theta)
//   fase4  (u, theta)                intrinsic F3, arc length s (singular)
//   fase5  (u, theta)                intrinsic F3, d tau = ds / cos(theta)

namespace solgcf::dynamics {

enum class PhaseSystem { fase1, fase2, fase3, fase4, fase5 };

using Point2 = std::array<double, 2>;
using Matrix2 = std::array<std::array<double, 2>, 2>;

std::string to_string(PhaseSystem id);
// "fase1".."fase5" (case-insensitive); ContractError otherwise.
PhaseSystem parse_phase_system(const std::string& text);
// fase2 and fase4 divide by cos(theta).
bool is_smooth(PhaseSystem id);

// SingularityError for fase2/fase4 on cos(theta) = 0.
Point2 phase_rhs(PhaseSystem id, const Point2& p);
Matrix2 jacobian(PhaseSystem id, const Point2& p);
// phase_rhs as an event-free ODE system.
ode::System<2> phase_system(PhaseSystem id);

struct Rect {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
};

enum class StabilityClass { saddle, degenerate, node, focus, center };
std::string to_string(StabilityClass c);

struct EquilibriumReport {
  Point2 location{};
  Matrix2 jacobian{};
  // Real parts in decreasing order.
  std::array<std::complex<double>, 2> eigenvalues{};
  // Unit eigenvectors for real eigenvalues, oriented with a positive second
  // component (or positive first component when the second vanishes).
  std::array<Point2, 2> eigenvectors{};
  bool real_spectrum = true;
  StabilityClass classification = StabilityClass::degenerate;
  double residual = 0.0;  // |rhs(location)|_inf
};

EquilibriumReport analyze_point(PhaseSystem id, const Point2& p);

// Newton refinement from an nx-by-ny seed grid over the box; equilibria are
// reported once (dedup distance defaults::kEquilibriumDedupTol), ordered by
// location. Only the smooth systems are accepted.
std::vector<EquilibriumReport> find_equilibria(PhaseSystem id, const Rect& box, int nx = 25,
                                               int ny = 25);

enum class Manifold { stable, unstable };

struct ManifoldOptions {
  ode::Options ode;
  // Terminal event when the trajectory leaves this box.
  std::optional<Rect> bounds;
};

// Seeds at location + side * kManifoldOffset * eigenvector and integrates
// forward (unstable) or backward (stable) in system time over `length`.
// side is +1 or -1. ContractError when the requested eigenvalue is zero or
// complex.
ode::CurveTrace<2> trace_manifold(PhaseSystem id, const EquilibriumReport& eq, Manifold which,
                                  int side, double length, const ManifoldOptions& opt = {});

struct ArcSample {
  double tau = 0.0;
  double s = 0.0;
  Point2 state{};
};

struct ReparametrizedTrace {
  std::vector<ArcSample> samples;
  // Set when cos(theta) changes sign: the generating curve ends there at a
  // finite arc length.
  std::optional<double> crossing_tau;
  double s_end() const { return samples.empty() ? 0.0 : samples.back().s; }
};

// s(tau) = int cos(theta) d tau by end-corrected trapezoids on the dense output
// (panels of at most 1e-3, 8 stored samples per step), stopped at the first
// crossing of cos(theta) = 0.
ReparametrizedTrace reparametrize_tau_to_s(const ode::CurveTrace<2>& trace);

struct PortraitTrajectory {
  Point2 seed{};
  ode::CurveTrace<2> forward;
  ode::CurveTrace<2> backward;
};

// Forward and backward traces from each seed of an nx-by-ny grid, stopped on
// leaving the box scaled by 2 about its centre. fase1 seeds need w > 0 and
// stop where |v| = 1 is crossed outward; fase3/fase5 seeds keep
// kSingularLineGuard away from cos(theta) = 0, whose crossings are recorded as
// non-terminal "singular_line" events. Seeds are integrated concurrently and
// returned in grid order.
std::vector<PortraitTrajectory> sample_portrait(PhaseSystem id, const Rect& box, int nx, int ny,
                                                double span, const ode::Options& opt = {});

}  // namespace solgcf::dynamics

#endif  // SOLGCF_DYNAMICS_HPP
