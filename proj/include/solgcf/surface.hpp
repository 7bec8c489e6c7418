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

#ifndef SOLGCF_SURFACE_HPP
#define SOLGCF_SURFACE_HPP

#include <string>
#include <variant>

#include "solgcf/sol3.hpp"

// Invariant surfaces of Sol3 and their curvatures.
//
// F1-invariant:  Psi(s, t) = (t, y(s), z(s)),
// F3-invariant:  Psi(s, t) = (x(s) e^{-t}, y(s) e^{t}, t).
//
// Arc-length generating curves carry a turning angle theta:
//   F1:  y' e^{-z} = cos(theta),  z' = sin(theta)
//   F3:  x' = cos(theta),         y' = sin(theta)     (curve in z = 0)
//
// Unit normals follow the orientation
//   F1:  N = (z' e^{z} E2 - y' E3) / W
//   F3:  N = (y' E1 - x' E2 + (x y' + y x') E3) / W
// and every sign below (second fundamental form, soliton residual) depends on
// it.

namespace solgcf::surface {

struct StateF1 {
  double y = 0.0;
  double z = 0.0;
  double theta = 0.0;
};

// The generating curve lies in the slice z = 0, so there is no z field.
struct StateF3 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

using GeneratingState = std::variant<StateF1, StateF3>;

// Rejects points off the z = 0 slice.
StateF3 f3_state_from_point(const sol3::Point& p, double theta);

sol3::Point f1_surface_point(const StateF1& st, double t);
sol3::Point f3_surface_point(const StateF3& st, double t);

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;  // first form, (t, s) ordering
  double e = 0.0, f = 0.0, g = 0.0;  // second form
  double W = 0.0;                    // sqrt(EG - F^2)
  sol3::FrameVector normal;

  double k_ext() const { return (e * g - f * f) / (W * W); }
  // Gauss equation with the ambient sectional curvature of the tangent plane.
  double k_int() const;
};

// Derivatives of the generating curve up to second order.
struct CurveJet {
  double a = 0.0, b = 0.0;      // (y, z) for F1, (x, y) for F3
  double ap = 0.0, bp = 0.0;    // first derivatives
  double app = 0.0, bpp = 0.0;  // second derivatives
};

FundamentalForms forms_f1(double y, double z, double yp, double zp, double ypp, double zpp);
FundamentalForms forms_f3(double x, double y, double xp, double yp, double xpp, double ypp);

CurveJet f1_jet(const StateF1& st, double theta_prime);
CurveJet f3_jet(const StateF3& st, double theta_prime);

// Intrinsic curvature from the first fundamental form alone (Brioschi formula
// for a metric depending on s only). Independent of the normal and of the
// ambient sectional curvature.
double intrinsic_gauss_brioschi_f1(const CurveJet& j);
double intrinsic_gauss_brioschi_f3(const CurveJet& j);

struct GaussPair {
  double k_ext = 0.0;
  double k_int = 0.0;
};

GaussPair gauss_f1_arclength(const StateF1& st, double theta_prime);
GaussPair gauss_f3_arclength(const StateF3& st, double theta_prime);

// Curvature of the generating curve as a curve of Sol3.
double curve_curvature_f1(double theta, double theta_prime);
double curve_curvature_f3(double theta, double theta_prime);

enum class Invariance { F1, F3 };
enum class Field { F1, F2, F3 };
enum class Curvature { extrinsic, intrinsic };

struct SolitonSpec {
  Invariance invariance = Invariance::F1;
  Field field = Field::F2;
  Curvature curvature = Curvature::extrinsic;

  // Field equal to the invariance direction (F_k tangent to the surface).
  bool is_self_case() const;
  bool operator==(const SolitonSpec&) const = default;
};

int field_index(Field f);
std::string to_string(const SolitonSpec& spec);
// Accepts "F1,F2,extrinsic", "F1:F2:int", "f3/f1/ext" and similar.
SolitonSpec parse_spec(const std::string& text);

// <N, F_k> for the invariance and state type of the spec; t is the orbit
// parameter (only F3-invariant surfaces depend on it).
double normal_killing_inner(const SolitonSpec& spec, const GeneratingState& state, double t);

// K + <N, F_k>; zero exactly when the soliton equation holds at the state.
double soliton_residual(const SolitonSpec& spec, const GeneratingState& state,
                        double theta_prime, double t);

}  // namespace solgcf::surface

#endif  // SOLGCF_SURFACE_HPP
