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

#include "solgcf/soliton.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "solgcf/errors.hpp"
#include "solgcf/sol3.hpp"

namespace solgcf::soliton {

using special::WBranch;
using surface::Curvature;
using surface::Field;
using surface::Invariance;
using surface::SolitonSpec;

std::string to_string(F1SolitonKind kind) {
  switch (kind) {
    case F1SolitonKind::ext_F2:
      return "ext_F2";
    case F1SolitonKind::int_F2:
      return "int_F2";
    case F1SolitonKind::ext_F3:
      return "ext_F3";
    default:
      return "int_F3";
  }
}

SolitonSpec spec_of(F1SolitonKind kind) {
  const bool f2 = kind == F1SolitonKind::ext_F2 || kind == F1SolitonKind::int_F2;
  const bool ext = kind == F1SolitonKind::ext_F2 || kind == F1SolitonKind::ext_F3;
  return {Invariance::F1, f2 ? Field::F2 : Field::F3,
          ext ? Curvature::extrinsic : Curvature::intrinsic};
}

F1SolitonKind kind_from_spec(const SolitonSpec& spec) {
  if (spec.invariance != Invariance::F1 || spec.field == Field::F1) {
    throw ContractError("no generating-curve ODE for spec " + surface::to_string(spec) +
                        " (supported: F1,F2,* and F1,F3,*)");
  }
  const bool ext = spec.curvature == Curvature::extrinsic;
  if (spec.field == Field::F2) return ext ? F1SolitonKind::ext_F2 : F1SolitonKind::int_F2;
  return ext ? F1SolitonKind::ext_F3 : F1SolitonKind::int_F3;
}

double theta_prime(F1SolitonKind kind, const StateF1& st) {
  const double c = std::cos(st.theta);
  const double s = std::sin(st.theta);
  // cos(pi/2) rounds to about 6e-17, not 0.
  if (std::abs(c) < 1e-15) throw SingularityError("soliton ODE: vertical tangency, cos(theta) = 0");
  const double emz = sol3::checked_exp(-st.z);
  switch (kind) {
    case F1SolitonKind::ext_F2:
      return (s * emz - c * c) / c;
    case F1SolitonKind::int_F2:
      return (s * emz - s * s) / c;
    case F1SolitonKind::ext_F3:
      return (st.y * s * emz - c - c * c) / c;
    default:
      return (st.y * s * emz - c - s * s) / c;
  }
}

ode::State<3> f1_soliton_rhs(F1SolitonKind kind, const StateF1& st) {
  const double tp = theta_prime(kind, st);
  return {sol3::checked_exp(st.z) * std::cos(st.theta), std::sin(st.theta), tp};
}

SolitonTrace trace_f1_soliton(F1SolitonKind kind, const StateF1& initial, double span,
                              const TraceOptions& opt) {
  if (!(span > 0.0)) throw ContractError("trace span must be positive");
  const double c0 = std::cos(initial.theta);
  if (std::abs(c0) <= opt.vertical_cos) {
    throw SingularityError("initial angle lies on the vertical-tangency line cos(theta) = 0");
  }
  // The curve cannot cross cos(theta) = 0, so the signed cosine keeps its
  // sign and a single falling event catches the tangency. cos(theta) behaves
  // like sqrt(s1 - s) there; cos|cos| is close to linear in s and can be
  // located to the event tolerance.
  const double sigma = c0 > 0.0 ? 1.0 : -1.0;
  const double eps2 = opt.vertical_cos * opt.vertical_cos;
  const double zl = opt.z_limit;
  ode::System<3> sys;
  sys.rhs = [kind](const ode::State<3>& y) { return f1_soliton_rhs(kind, to_state(y)); };
  sys.events.push_back({"vertical_tangency",
                        [sigma, eps2](const ode::State<3>& y) {
                          const double c = std::cos(y[2]);
                          return sigma * c * std::abs(c) - eps2;
                        },
                        ode::Direction::falling, true});
  sys.events.push_back({"z_limit", [zl](const ode::State<3>& y) { return std::abs(y[1]) - zl; },
                        ode::Direction::rising, true});
  ode::Options o;
  o.abs_tol = opt.abs_tol;
  o.rel_tol = opt.rel_tol;
  o.max_step_fraction = opt.max_step_fraction;
  const auto y0 = to_array(initial);
  return {kind, initial, ode::integrate(sys, y0, {0.0, span}, o),
          ode::integrate(sys, y0, {0.0, -span}, o)};
}

double reduction_211_residual(double z, double zp, double zpp) {
  return zpp - zp * zp - zp * sol3::checked_exp(-z) + 1.0;
}

double reduction_eq27_residual(double z, double zp, double zpp) {
  return zpp + zp * zp - zp * sol3::checked_exp(-z);
}

ClosedFormExtF2 ClosedFormExtF2::fit(double z0, double zp0) {
  const double h0 = zp0 * sol3::checked_exp(-z0);
  if (std::abs(h0 - 1.0) < 1e-14) {
    throw DomainError("z' = e^z is the A = 0 family; the Lambert W form is degenerate");
  }
  ClosedFormExtF2 cf;
  cf.A = (h0 - 1.0) * std::exp(h0 - 1.0 + 0.5 * std::exp(-2.0 * z0));
  cf.branch = h0 >= 0.0 ? WBranch::principal : WBranch::minus_one;
  return cf;
}

double ClosedFormExtF2::argument(double z) const { return A * std::exp(-0.5 * std::exp(-2.0 * z)); }

std::optional<double> ClosedFormExtF2::fold_height() const {
  if (A >= -special::kInvE) return std::nullopt;
  return -0.5 * std::log(2.0 * (1.0 + std::log(-A)));
}

double ClosedFormExtF2::velocity(double z, WBranch b) const {
  double x = argument(z);
  if (x < -special::kInvE) {
    // Rounding of A exp(...) right at the fold.
    if (x >= -special::kInvE * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) {
      x = -special::kInvE;
    } else {
      std::ostringstream os;
      os << "closed form leaves its branch at z = " << *fold_height() << " (requested z = " << z
         << ")";
      throw DomainError(os.str());
    }
  }
  if (b == WBranch::minus_one && x == 0.0) {
    throw DomainError("closed form on the -1 sheet needs A exp(-e^{-2z}/2) < 0");
  }
  return sol3::checked_exp(z) * (1.0 + special::lambert_w(b, x));
}

double ClosedFormExtF2::arc_length(double z_a, double z_b, WBranch b) const {
  auto f = [this, b](double z) { return std::exp(-z) / (1.0 + special::lambert_w(b, argument(z))); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, z_a, z_b, 15,
                                                                       defaults::kQuadratureAbsTol);
}

double closed_form_ext_f2_velocity(const ClosedFormExtF2& cf, double z) { return cf.velocity(z); }

ClosedFormIntF2 ClosedFormIntF2::fit(double z0, double zp0, double s0) {
  if (!(zp0 > 0.0)) throw DomainError("intrinsic F2 closed form needs z' > 0 at the fit point");
  ClosedFormIntF2 cf;
  cf.C = zp0 * sol3::checked_exp(z0) - z0;
  cf.A = s0 - std::exp(-cf.C) * special::exp_integral_ei(z0 + cf.C);
  return cf;
}

double ClosedFormIntF2::velocity(double z) const { return (z + C) * sol3::checked_exp(-z); }

double closed_form_int_f2_eval(const ClosedFormIntF2& cf, double s) {
  const double target = (s - cf.A) * std::exp(cf.C);
  if (!std::isfinite(target)) throw RangeError("closed_form_int_f2_eval: s out of range");
  // Ei(u) ~ gamma + log(u) for small u.
  double lo = std::min(0.3, 0.5 * std::exp(target - special::kEulerGamma));
  if (!(lo > 1e-300)) throw DomainError("closed_form_int_f2_eval: z + C underflows at this s");
  for (int i = 0; i < 200 && special::exp_integral_ei(lo) > target; ++i) lo *= 0.5;
  double hi = std::max(1.0, 2.0 * lo);
  while (special::exp_integral_ei(hi) < target) {
    hi *= 2.0;
    if (hi > defaults::kMaxExponent) throw RangeError("closed_form_int_f2_eval: z overflows at this s");
  }
  return special::ei_inverse(target, lo, hi) - cf.C;
}

double linear_theta_identity(F1SolitonKind kind, double c, double th) {
  const double c1 = std::cos(th), c2 = std::cos(2 * th), c3 = std::cos(3 * th), c4 = std::cos(4 * th);
  switch (kind) {
    case F1SolitonKind::ext_F2:
      return -8 * c * c - 8 * c * c1 - c4 + 1;
    case F1SolitonKind::int_F2:
      return -8 * c * c + 4 * c * c1 - 4 * c * c3 - 4 * c2 + c4 + 3;
    case F1SolitonKind::ext_F3:
      return 8 * c * c + 8 * c * c1 + 8 * c + c4 - 1;
    default:
      return 8 * c * c - 4 * c * c1 + 4 * c * c3 + 8 * c + 4 * c2 - c4 - 3;
  }
}

namespace {

// Straight line theta = theta0 through (y0, z0), evaluated exactly.
StateF1 straight_line(const StateF1& base, double s) {
  const double c = std::cos(base.theta), sn = std::sin(base.theta);
  const double z = base.z + s * sn;
  const double y = sn == 0.0 ? base.y + s * std::exp(base.z) * c
                             : base.y + c * (std::exp(z) - std::exp(base.z)) / sn;
  return {y, z, base.theta};
}

}  // namespace

Verdict classify_linear_theta(F1SolitonKind kind, double c, double theta0) {
  Verdict v;
  if (c != 0.0) {
    for (int k = 0; k < defaults::kAngleGridPoints; ++k) {
      const double th = 2.0 * std::numbers::pi * k / defaults::kAngleGridPoints;
      v.witness = std::max(v.witness, std::abs(linear_theta_identity(kind, c, th)));
    }
    v.exists = !(v.witness > 1e-8);
    std::ostringstream os;
    if (v.exists) {
      os << "linear angle not refuted (max |identity| = " << v.witness << ")";
    } else {
      os << "contradiction: linear-angle identity fails, max |lhs| = " << v.witness;
    }
    v.description = os.str();
    return v;
  }

  // theta' = 0: K is constant along the line and <N, F_k> is not, unless the
  // line is special. Pick the base point that zeroes the residual at s = 0 and
  // look at nearby points.
  // Horizontal and vertical lines are snapped so that sin(pi) ~ 1e-16 is not
  // mistaken for a slope.
  const SolitonSpec spec = spec_of(kind);
  double cs = std::cos(theta0), sn = std::sin(theta0);
  if (std::abs(sn) < 1e-12) sn = 0.0;
  if (std::abs(cs) < 1e-12) cs = 0.0;
  const surface::GaussPair k = surface::gauss_f1_arclength({0.0, 0.0, theta0}, 0.0);
  const double K = spec.curvature == Curvature::extrinsic ? k.k_ext : k.k_int;
  StateF1 base{0.0, 0.0, theta0};
  if (sn != 0.0 && cs != 0.0) {
    if (spec.field == Field::F2) {
      if (-K / sn > 0.0) base.z = -std::log(-K / sn);
    } else {
      base.y = (cs - K) / sn;
    }
  }
  for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double r = surface::soliton_residual(spec, straight_line(base, s), 0.0, 0.0);
    v.witness = std::max(v.witness, std::abs(r));
  }
  v.exists = v.witness <= 1e-12;
  std::ostringstream os;
  if (!v.exists) {
    os << "contradiction: constant angle " << theta0 << " leaves residual " << v.witness;
  } else if (std::abs(sn) < 1e-9) {
    os << "horizontal plane z = z0";
  } else if (std::abs(cs) < 1e-9) {
    os << "vertical plane y = 0";
  } else {
    os << "plane at constant angle " << theta0;
  }
  v.description = os.str();
  return v;
}

Verdict classify_f3_invariant(Field field, Curvature curvature) {
  if (field == Field::F3) {
    throw ContractError("F3 is tangent to F3-invariant surfaces; choose field F1 or F2");
  }
  const SolitonSpec spec{Invariance::F3, field, curvature};
  Verdict v;

  // <N, F1> carries e^{t} and <N, F2> carries e^{-t} while K does not; the
  // residual is t-independent exactly where sin(theta) = 0 (F1) or
  // cos(theta) = 0 (F2).
  bool forced_ok = true;
  for (int k = 0; k < defaults::kAngleGridPoints; ++k) {
    const double th = 2.0 * std::numbers::pi * k / defaults::kAngleGridPoints;
    for (double x : {-1.0, 0.0, 0.7}) {
      for (double y : {-0.5, 0.0, 1.3}) {
        const surface::StateF3 st{x, y, th};
        const double d = std::abs(surface::soliton_residual(spec, st, 0.3, 0.0) -
                                  surface::soliton_residual(spec, st, 0.3, 1.0));
        const double forcing = field == Field::F1 ? std::sin(th) : std::cos(th);
        if ((d <= 1e-12) != (std::abs(forcing) <= 1e-12)) forced_ok = false;
      }
    }
  }

  // Forced planes: y = c (F1, theta = 0) or x = c (F2, theta = pi/2), through
  // the fundamental-form pipeline.
  auto plane_curvature = [&](double c, double s) {
    const surface::FundamentalForms ff = field == Field::F1 ? surface::forms_f3(s, c, 1, 0, 0, 0)
                                                            : surface::forms_f3(c, s, 0, 1, 0, 0);
    return curvature == Curvature::extrinsic ? ff.k_ext() : ff.k_int();
  };
  const char* plane = field == Field::F1 ? "y" : "x";
  std::ostringstream os;
  if (curvature == Curvature::extrinsic) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
      const double s = U(rng), t = U(rng);
      const surface::StateF3 st =
          field == Field::F1 ? surface::StateF3{s, 0.0, 0.0} : surface::StateF3{0.0, s, std::numbers::pi / 2};
      v.witness = std::max(v.witness, std::abs(surface::soliton_residual(spec, st, 0.0, t)));
      v.witness = std::max(v.witness, std::abs(plane_curvature(0.0, s)));
    }
    // Any other plane of the family has K_ext = -c^2/(1+c^2) != 0.
    bool unique = true;
    for (double c = -3.0; c <= 3.0; c += 0.125) {
      if (c != 0.0 && std::abs(plane_curvature(c, 0.4)) < 1e-3) unique = false;
    }
    v.exists = forced_ok && unique && v.witness <= 1e-12;
    os << "vertical plane " << plane << " = 0";
    if (!v.exists) os << " check failed (residual " << v.witness << ")";
  } else {
    v.witness = std::numeric_limits<double>::infinity();
    for (double c = -10.0; c <= 10.0; c += 0.0625) {
      v.witness = std::min(v.witness, std::abs(plane_curvature(c, 0.4)));
    }
    v.exists = !forced_ok || !(v.witness > 0.0);
    os << "no solution: the forced planes " << plane << " = c have K_int = -1/(1+c^2), min |K_int| = "
       << v.witness;
  }
  v.description = os.str();
  return v;
}

}  // namespace solgcf::soliton
