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

#ifndef SOLGCF_SOLITON_HPP
#define SOLGCF_SOLITON_HPP

#include <optional>
#include <string>

#include "solgcf/constants.hpp"
#include "solgcf/ode.hpp"
#include "solgcf/special.hpp"
#include "solgcf/surface.hpp"

// Generating-curve ODEs of F1-invariant solitons, their reductions and closed
// forms, and the classification checks for linear angle functions and for
// F3-invariant surfaces.

namespace solgcf::soliton {

using surface::StateF1;

// Soliton equation K = -<N, F_k> for F1-invariant surfaces, solved for theta'.
enum class F1SolitonKind { ext_F2, int_F2, ext_F3, int_F3 };

std::string to_string(F1SolitonKind kind);
surface::SolitonSpec spec_of(F1SolitonKind kind);
// Throws ContractError for specs without an F1 generating-curve ODE.
F1SolitonKind kind_from_spec(const surface::SolitonSpec& spec);

// theta' from the soliton equation; SingularityError when cos(theta) = 0.
double theta_prime(F1SolitonKind kind, const StateF1& st);
// (y', z', theta') with y' = e^z cos(theta), z' = sin(theta).
ode::State<3> f1_soliton_rhs(F1SolitonKind kind, const StateF1& st);

inline StateF1 to_state(const ode::State<3>& y) { return {y[0], y[1], y[2]}; }
inline ode::State<3> to_array(const StateF1& s) { return {s.y, s.z, s.theta}; }

struct TraceOptions {
  double abs_tol = defaults::kTolAbs;
  double rel_tol = defaults::kTolRel;
  double max_step_fraction = defaults::kMaxStepFraction;
  double vertical_cos = defaults::kVerticalTangencyCos;
  // |z| at which integration stops before the metric exponentials overflow.
  double z_limit = 600.0;
};

struct SolitonTrace {
  F1SolitonKind kind;
  StateF1 initial;
  ode::CurveTrace<3> forward;   // s from 0 to +span
  ode::CurveTrace<3> backward;  // s from 0 to -span
};

// Integrates both branches from the initial state. The vertical tangency
// |cos(theta)| = vertical_cos is a terminal event named "vertical_tangency".
SolitonTrace trace_f1_soliton(F1SolitonKind kind, const StateF1& initial, double span,
                              const TraceOptions& opt = {});

// Second-order reductions in the height z(s).
double reduction_211_residual(double z, double zp, double zpp);
double reduction_eq27_residual(double z, double zp, double zpp);

// Extrinsic F2 closed form: with h = z' e^{-z},
//   (h - 1) e^{h - 1} = A exp(-e^{-2z} / 2),   z' = e^z (1 + W(A exp(-e^{-2z} / 2))).
struct ClosedFormExtF2 {
  double A = 0.0;
  special::WBranch branch = special::WBranch::principal;

  // Fits A and the branch from a point (z0, z'(z0)) of a trajectory. The
  // family h = 1 (A = 0) is rejected.
  static ClosedFormExtF2 fit(double z0, double zp0);

  double argument(double z) const;
  // Height where the argument reaches -1/e (only for A < -1/e). There z' = 0
  // and the trajectory passes from the principal sheet (z' > 0) to the -1
  // sheet (z' < 0).
  std::optional<double> fold_height() const;
  // DomainError when the argument leaves the branch domain.
  double velocity(double z, special::WBranch b) const;
  double velocity(double z) const { return velocity(z, branch); }
  // int_{z_a}^{z_b} e^{-z} / (1 + W(...)) dz on sheet b (adaptive Gauss-Kronrod).
  double arc_length(double z_a, double z_b, special::WBranch b) const;
};

double closed_form_ext_f2_velocity(const ClosedFormExtF2& cf, double z);

// Intrinsic F2 closed form: z' e^z - z = C and s = e^{-C} Ei(z + C) + A.
struct ClosedFormIntF2 {
  double C = 0.0;
  double A = 0.0;

  // From a point with z' > 0 at arc length s0.
  static ClosedFormIntF2 fit(double z0, double zp0, double s0);
  double velocity(double z) const;
  // Solutions are defined for every height iff the peak e^{C-1} of z' is <= 1.
  bool is_global() const { return C <= 1.0; }
};

// Inverts s = e^{-C} Ei(z + C) + A for z > -C.
double closed_form_int_f2_eval(const ClosedFormIntF2& cf, double s);

struct Verdict {
  bool exists = false;
  std::string description;
  // Largest |residual| (or |identity|) found; the refutation evidence when
  // exists is false.
  double witness = 0.0;
};

// Trigonometric identity that theta = c s + theta0 (c != 0) would have to
// satisfy identically for the given soliton kind.
double linear_theta_identity(F1SolitonKind kind, double c, double theta);

// Straight generating curve theta = theta0 (c = 0) or linear angle (c != 0).
Verdict classify_linear_theta(F1SolitonKind kind, double c, double theta0);

// F3-invariant solitons for the field F1 or F2 (field F3 is tangent).
Verdict classify_f3_invariant(surface::Field field, surface::Curvature curvature);

}  // namespace solgcf::soliton

#endif  // SOLGCF_SOLITON_HPP
