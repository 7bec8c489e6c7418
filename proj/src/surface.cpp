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

#include "solgcf/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "solgcf/errors.hpp"

namespace solgcf::surface {

using sol3::checked_exp;

StateF3 f3_state_from_point(const sol3::Point& p, double theta) {
  if (p.z != 0.0) {
    throw ContractError("F3 generating curves lie in z = 0; got z = " + std::to_string(p.z));
  }
  return {p.x, p.y, theta};
}

sol3::Point f1_surface_point(const StateF1& st, double t) { return {t, st.y, st.z}; }

sol3::Point f3_surface_point(const StateF3& st, double t) {
  return {st.x * checked_exp(-t), st.y * checked_exp(t), t};
}

double FundamentalForms::k_int() const { return k_ext() + sol3::ambient_sectional(normal); }

FundamentalForms forms_f1(double y, double z, double yp, double zp, double ypp, double zpp) {
  (void)y;
  if (yp == 0.0 && zp == 0.0) throw ContractError("forms_f1: degenerate velocity");
  const double ez = checked_exp(z);
  const double e2z = ez * ez;
  FundamentalForms ff;
  ff.E = e2z;
  ff.F = 0.0;
  ff.G = yp * yp / e2z + zp * zp;
  ff.W = std::hypot(yp, zp * ez);
  ff.normal = {0.0, zp * ez / ff.W, -yp / ff.W};
  ff.e = yp * e2z / ff.W;
  ff.f = 0.0;
  ff.g = -(yp * zpp - ypp * zp + 2.0 * yp * zp * zp + yp * yp * yp / e2z) / ff.W;
  return ff;
}

FundamentalForms forms_f3(double x, double y, double xp, double yp, double xpp, double ypp) {
  if (xp == 0.0 && yp == 0.0) throw ContractError("forms_f3: degenerate velocity");
  const double m = x * yp + y * xp;
  FundamentalForms ff;
  ff.E = x * x + y * y + 1.0;
  ff.F = -x * xp + y * yp;
  ff.G = xp * xp + yp * yp;
  ff.W = std::sqrt(xp * xp + yp * yp + m * m);
  ff.normal = {yp / ff.W, -xp / ff.W, m / ff.W};
  ff.e = -(x * yp - y * xp - (y * y - x * x) * m) / ff.W;
  ff.f = (x * xp + y * yp) * m / ff.W;
  ff.g = -(xp * ypp - xpp * yp - (yp * yp - xp * xp) * m) / ff.W;
  return ff;
}

CurveJet f1_jet(const StateF1& st, double theta_prime) {
  const double ez = checked_exp(st.z);
  const double c = std::cos(st.theta);
  const double s = std::sin(st.theta);
  // y' = e^z cos, z' = sin;  y'' = e^z (z' cos - theta' sin), z'' = theta' cos.
  return {st.y, st.z, ez * c, s, ez * (s * c - theta_prime * s), theta_prime * c};
}

CurveJet f3_jet(const StateF3& st, double theta_prime) {
  const double c = std::cos(st.theta);
  const double s = std::sin(st.theta);
  return {st.x, st.y, c, s, -theta_prime * s, theta_prime * c};
}

namespace {

double det3(double a11, double a12, double a13, double a21, double a22, double a23, double a31,
            double a32, double a33) {
  return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
         a13 * (a21 * a32 - a22 * a31);
}

// Brioschi formula with coordinates (u, v) = (t, s) and coefficients that
// only depend on v.
double brioschi_s_only(double E, double F, double G, double Es, double Fs, double Gs,
                       double Ess) {
  const double m1 = det3(-0.5 * Ess, 0.0, -0.5 * Es,  //
                         Fs, E, F,                    //
                         0.5 * Gs, F, G);
  const double m2 = det3(0.0, 0.5 * Es, 0.0,  //
                         0.5 * Es, E, F,      //
                         0.0, F, G);
  const double d = E * G - F * F;
  return (m1 - m2) / (d * d);
}

}  // namespace

double intrinsic_gauss_brioschi_f1(const CurveJet& j) {
  const double e2z = checked_exp(2.0 * j.b);
  const double yp = j.ap, zp = j.bp, ypp = j.app, zpp = j.bpp;
  const double E = e2z;
  const double Es = 2.0 * zp * e2z;
  const double Ess = (2.0 * zpp + 4.0 * zp * zp) * e2z;
  const double G = yp * yp / e2z + zp * zp;
  const double Gs = (2.0 * yp * ypp - 2.0 * zp * yp * yp) / e2z + 2.0 * zp * zpp;
  return brioschi_s_only(E, 0.0, G, Es, 0.0, Gs, Ess);
}

double intrinsic_gauss_brioschi_f3(const CurveJet& j) {
  const double x = j.a, y = j.b, xp = j.ap, yp = j.bp, xpp = j.app, ypp = j.bpp;
  const double E = x * x + y * y + 1.0;
  const double Es = 2.0 * (x * xp + y * yp);
  const double Ess = 2.0 * (xp * xp + x * xpp + yp * yp + y * ypp);
  const double F = -x * xp + y * yp;
  const double Fs = -xp * xp - x * xpp + yp * yp + y * ypp;
  const double G = xp * xp + yp * yp;
  const double Gs = 2.0 * (xp * xpp + yp * ypp);
  return brioschi_s_only(E, F, G, Es, Fs, Gs, Ess);
}

GaussPair gauss_f1_arclength(const StateF1& st, double theta_prime) {
  const double c = std::cos(st.theta);
  const double s = std::sin(st.theta);
  return {-theta_prime * c - c * c, -theta_prime * c - s * s};
}

GaussPair gauss_f3_arclength(const StateF3& st, double theta_prime) {
  const double c = std::cos(st.theta);
  const double s = std::sin(st.theta);
  const double u = st.x * s + st.y * c;
  const double q = 1.0 + u * u;
  const double root = std::sqrt(q);
  const double e = (-st.x * s + st.y * c + u * (st.y * st.y - st.x * st.x)) / root;
  const double f = u * (st.x * c + st.y * s) / root;
  const double g = -(theta_prime + u * (c * c - s * s)) / root;
  const double k_ext = (e * g - f * f) / q;
  return {k_ext, k_ext + (u * u - 1.0) / q};
}

double curve_curvature_f1(double theta, double theta_prime) {
  return std::abs(theta_prime + std::cos(theta));
}

double curve_curvature_f3(double theta, double theta_prime) {
  return std::hypot(theta_prime, std::cos(2.0 * theta));
}

bool SolitonSpec::is_self_case() const {
  return (invariance == Invariance::F1 && field == Field::F1) ||
         (invariance == Invariance::F3 && field == Field::F3);
}

int field_index(Field f) {
  switch (f) {
    case Field::F1:
      return 1;
    case Field::F2:
      return 2;
    default:
      return 3;
  }
}

std::string to_string(const SolitonSpec& spec) {
  std::ostringstream os;
  os << (spec.invariance == Invariance::F1 ? "F1" : "F3") << ',' << 'F'
     << field_index(spec.field) << ','
     << (spec.curvature == Curvature::extrinsic ? "extrinsic" : "intrinsic");
  return os.str();
}

SolitonSpec parse_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ':' || ch == '/' || ch == ' ') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  if (parts.size() != 3) {
    throw ContractError("spec '" + text + "' must have three parts: invariance,field,curvature");
  }
  SolitonSpec spec;
  if (parts[0] == "f1") {
    spec.invariance = Invariance::F1;
  } else if (parts[0] == "f3") {
    spec.invariance = Invariance::F3;
  } else {
    throw ContractError("spec invariance must be F1 or F3, got '" + parts[0] + "'");
  }
  if (parts[1] == "f1") {
    spec.field = Field::F1;
  } else if (parts[1] == "f2") {
    spec.field = Field::F2;
  } else if (parts[1] == "f3") {
    spec.field = Field::F3;
  } else {
    throw ContractError("spec field must be F1, F2 or F3, got '" + parts[1] + "'");
  }
  if (parts[2] == "extrinsic" || parts[2] == "ext") {
    spec.curvature = Curvature::extrinsic;
  } else if (parts[2] == "intrinsic" || parts[2] == "int") {
    spec.curvature = Curvature::intrinsic;
  } else {
    throw ContractError("spec curvature must be extrinsic or intrinsic, got '" + parts[2] + "'");
  }
  return spec;
}

double normal_killing_inner(const SolitonSpec& spec, const GeneratingState& state, double t) {
  if (spec.invariance == Invariance::F1) {
    const auto* st = std::get_if<StateF1>(&state);
    if (st == nullptr) throw ContractError("F1-invariant spec needs an F1 generating state");
    const double s = std::sin(st->theta);
    switch (spec.field) {
      case Field::F1:
        return 0.0;
      case Field::F2:
        return s / checked_exp(st->z);
      default:
        return st->y * s / checked_exp(st->z) - std::cos(st->theta);
    }
  }
  const auto* st = std::get_if<StateF3>(&state);
  if (st == nullptr) throw ContractError("F3-invariant spec needs an F3 generating state");
  const double c = std::cos(st->theta);
  const double s = std::sin(st->theta);
  const double u = st->x * s + st->y * c;
  const double root = std::sqrt(1.0 + u * u);
  switch (spec.field) {
    case Field::F1:
      return s / root * checked_exp(t);
    case Field::F2:
      return -c / root * checked_exp(-t);
    default:
      return 0.0;
  }
}

double soliton_residual(const SolitonSpec& spec, const GeneratingState& state,
                        double theta_prime, double t) {
  const double inner = normal_killing_inner(spec, state, t);
  GaussPair k;
  if (spec.invariance == Invariance::F1) {
    k = gauss_f1_arclength(std::get<StateF1>(state), theta_prime);
  } else {
    k = gauss_f3_arclength(std::get<StateF3>(state), theta_prime);
  }
  const double curvature = spec.curvature == Curvature::extrinsic ? k.k_ext : k.k_int;
  return curvature + inner;
}

}  // namespace solgcf::surface
