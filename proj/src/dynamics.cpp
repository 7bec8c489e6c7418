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

#include "solgcf/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <thread>

#include "solgcf/constants.hpp"
#include "solgcf/errors.hpp"

namespace solgcf::dynamics {

std::string to_string(PhaseSystem id) {
  return "fase" + std::to_string(static_cast<int>(id) + 1);
}

PhaseSystem parse_phase_system(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (int k = 0; k < 5; ++k) {
    if (t == "fase" + std::to_string(k + 1)) return static_cast<PhaseSystem>(k);
  }
  throw ContractError("unknown phase system '" + text + "' (expected fase1..fase5)");
}

bool is_smooth(PhaseSystem id) { return id != PhaseSystem::fase2 && id != PhaseSystem::fase4; }

Point2 phase_rhs(PhaseSystem id, const Point2& p) {
  if (id == PhaseSystem::fase1) {
    const double v = p[0], w = p[1];
    return {v * v + v * w - 1.0, -v * w};
  }
  const double u = p[0];
  const double c = std::cos(p[1]), s = std::sin(p[1]);
  switch (id) {
    case PhaseSystem::fase2:
    case PhaseSystem::fase4: {
      if (std::abs(c) < 1e-15) throw SingularityError(to_string(id) + ": tan(theta) on cos(theta) = 0");
      const double tn = s / c;
      const double du = c - u * s;
      return {du, id == PhaseSystem::fase2 ? u * tn - 1.0 - c : u * tn - 1.0 - s * tn};
    }
    case PhaseSystem::fase3:
      return {c * c - u * s * c, u * s - c - c * c};
    default:
      return {c * c - u * s * c, u * s - c - s * s};
  }
}

Matrix2 jacobian(PhaseSystem id, const Point2& p) {
  if (id == PhaseSystem::fase1) {
    const double v = p[0], w = p[1];
    return {{{2.0 * v + w, v}, {-w, -v}}};
  }
  const double u = p[0];
  const double c = std::cos(p[1]), s = std::sin(p[1]);
  switch (id) {
    case PhaseSystem::fase2:
    case PhaseSystem::fase4: {
      if (std::abs(c) < 1e-15) throw SingularityError(to_string(id) + ": Jacobian on cos(theta) = 0");
      const double tn = s / c, sec2 = 1.0 / (c * c);
      const double dtheta = id == PhaseSystem::fase2 ? u * sec2 + s : u * sec2 - c * tn - s * sec2;
      return {{{-s, -s - u * c}, {tn, dtheta}}};
    }
    case PhaseSystem::fase3:
      return {{{-s * c, -2.0 * c * s - u * (c * c - s * s)}, {s, u * c + s + 2.0 * c * s}}};
    default:
      return {{{-s * c, -2.0 * c * s - u * (c * c - s * s)}, {s, u * c + s - 2.0 * s * c}}};
  }
}

std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::saddle:
      return "saddle";
    case StabilityClass::degenerate:
      return "degenerate";
    case StabilityClass::node:
      return "node";
    case StabilityClass::focus:
      return "focus";
    default:
      return "center";
  }
}

namespace {

double inf_norm(const Point2& p) { return std::max(std::abs(p[0]), std::abs(p[1])); }

Point2 eigenvector(const Matrix2& J, double lambda, int fallback) {
  const Point2 a{J[0][1], lambda - J[0][0]};
  const Point2 b{lambda - J[1][1], J[1][0]};
  Point2 v = std::hypot(a[0], a[1]) >= std::hypot(b[0], b[1]) ? a : b;
  double n = std::hypot(v[0], v[1]);
  if (n == 0.0) {
    v = fallback == 0 ? Point2{1.0, 0.0} : Point2{0.0, 1.0};
    n = 1.0;
  }
  v = {v[0] / n, v[1] / n};
  if (v[1] < 0.0 || (v[1] == 0.0 && v[0] < 0.0)) v = {-v[0], -v[1]};
  return v;
}

}  // namespace

EquilibriumReport analyze_point(PhaseSystem id, const Point2& p) {
  EquilibriumReport r;
  r.location = p;
  r.jacobian = jacobian(id, p);
  r.residual = inf_norm(phase_rhs(id, p));
  const Matrix2& J = r.jacobian;
  const double tr = J[0][0] + J[1][1];
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const double disc = tr * tr - 4.0 * det;
  const double tol = defaults::kZeroEigenvalueTol;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Larger-magnitude root first, the other from the product to avoid
    // cancellation.
    const double big = tr >= 0.0 ? 0.5 * (tr + root) : 0.5 * (tr - root);
    const double small = big != 0.0 ? det / big : 0.0;
    double l1 = std::max(big, small), l2 = std::min(big, small);
    r.eigenvalues = {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
    r.eigenvectors = {eigenvector(J, l1, 0), eigenvector(J, l2, 1)};
    r.real_spectrum = true;
    if (std::abs(l1) < tol || std::abs(l2) < tol) {
      r.classification = StabilityClass::degenerate;
    } else if (l1 * l2 < 0.0) {
      r.classification = StabilityClass::saddle;
    } else {
      r.classification = StabilityClass::node;
    }
  } else {
    const double re = 0.5 * tr, im = 0.5 * std::sqrt(-disc);
    r.eigenvalues = {std::complex<double>(re, im), std::complex<double>(re, -im)};
    r.real_spectrum = false;
    r.classification = std::abs(re) < tol ? StabilityClass::center : StabilityClass::focus;
  }
  return r;
}

std::vector<EquilibriumReport> find_equilibria(PhaseSystem id, const Rect& box, int nx, int ny) {
  if (!is_smooth(id)) throw ContractError("find_equilibria needs a smooth system (fase1, fase3, fase5)");
  if (nx < 2 || ny < 2) throw ContractError("find_equilibria: seed grid must be at least 2x2");
  std::vector<EquilibriumReport> found;
  const double margin = 1e-9 * (1.0 + std::max({std::abs(box.x_min), std::abs(box.x_max),
                                                std::abs(box.y_min), std::abs(box.y_max)}));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      Point2 x{box.x_min + (box.x_max - box.x_min) * i / (nx - 1),
               box.y_min + (box.y_max - box.y_min) * j / (ny - 1)};
      // Plain Newton; degenerate roots converge linearly, hence the long
      // iteration budget.
      for (int it = 0; it < 400; ++it) {
        const Point2 F = phase_rhs(id, x);
        const Matrix2 J = jacobian(id, x);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) break;
        Point2 d{-(J[1][1] * F[0] - J[0][1] * F[1]) / det, -(-J[1][0] * F[0] + J[0][0] * F[1]) / det};
        const double n = inf_norm(d);
        if (!std::isfinite(n)) break;
        if (n > 1.0) d = {d[0] / n, d[1] / n};
        x = {x[0] + d[0], x[1] + d[1]};
        if (n <= 4e-16 * (1.0 + inf_norm(x))) break;
      }
      if (!(x[0] >= box.x_min - margin && x[0] <= box.x_max + margin && x[1] >= box.y_min - margin &&
            x[1] <= box.y_max + margin)) {
        continue;
      }
      const double res = inf_norm(phase_rhs(id, x));
      if (!(res < defaults::kEquilibriumResidualTol)) continue;
      // At a zero-eigenvalue equilibrium the residual is flat to high order
      // along the centre direction and the location is only resolved to
      // about sqrt(eps); such points are merged with a wider radius.
      EquilibriumReport cand = analyze_point(id, x);
      bool duplicate = false;
      for (auto& e : found) {
        const bool degenerate = cand.classification == StabilityClass::degenerate ||
                                e.classification == StabilityClass::degenerate;
        const double radius = degenerate ? defaults::kDegenerateDedupTol : defaults::kEquilibriumDedupTol;
        if (inf_norm({e.location[0] - x[0], e.location[1] - x[1]}) < radius) {
          if (res < e.residual) e = cand;
          duplicate = true;
          break;
        }
      }
      if (!duplicate) found.push_back(cand);
    }
  }
  std::sort(found.begin(), found.end(), [](const EquilibriumReport& a, const EquilibriumReport& b) {
    return a.location < b.location;
  });
  return found;
}

namespace {

ode::Event<2> box_exit(const Rect& b, const std::string& name) {
  const double cx = 0.5 * (b.x_min + b.x_max), cy = 0.5 * (b.y_min + b.y_max);
  const double hx = 0.5 * (b.x_max - b.x_min), hy = 0.5 * (b.y_max - b.y_min);
  return {name,
          [=](const Point2& p) { return std::max(std::abs(p[0] - cx) / hx, std::abs(p[1] - cy) / hy) - 1.0; },
          ode::Direction::rising, true};
}

}  // namespace

ode::System<2> phase_system(PhaseSystem id) {
  return {[id](const Point2& p) { return phase_rhs(id, p); }, {}};
}

ode::CurveTrace<2> trace_manifold(PhaseSystem id, const EquilibriumReport& eq, Manifold which,
                                  int side, double length, const ManifoldOptions& opt) {
  if (side != 1 && side != -1) throw ContractError("trace_manifold: side must be +1 or -1");
  if (!(length > 0.0)) throw ContractError("trace_manifold: length must be positive");
  if (!eq.real_spectrum) throw ContractError("trace_manifold: complex eigenvalues have no invariant direction");
  const double tol = defaults::kZeroEigenvalueTol;
  int k = -1;
  for (int i = 0; i < 2; ++i) {
    const double l = eq.eigenvalues[i].real();
    if ((which == Manifold::unstable && l > tol) || (which == Manifold::stable && l < -tol)) k = i;
  }
  if (k < 0) {
    throw ContractError(std::string("trace_manifold: no ") +
                        (which == Manifold::stable ? "negative" : "positive") +
                        " eigenvalue (zero-eigenvalue directions are not traceable)");
  }
  const Point2& v = eq.eigenvectors[k];
  const double eps = defaults::kManifoldOffset * side;
  const Point2 start{eq.location[0] + eps * v[0], eq.location[1] + eps * v[1]};
  ode::System<2> sys = phase_system(id);
  if (opt.bounds) sys.events.push_back(box_exit(*opt.bounds, "left_bounds"));
  const double end = which == Manifold::unstable ? length : -length;
  return ode::integrate(sys, start, {0.0, end}, opt.ode);
}

ReparametrizedTrace reparametrize_tau_to_s(const ode::CurveTrace<2>& trace) {
  ReparametrizedTrace out;
  if (trace.empty()) return out;
  const auto& first = trace.samples().front();
  out.samples.push_back({first.s, 0.0, first.state});
  double s = 0.0;
  double tau_prev = first.s;
  double c_prev = std::cos(first.state[1]);
  double dc_prev = 0.0;
  // kReparamSamplesPerStep stored samples per accepted step. Trapezoid panels
  // are at most kReparamPanel wide and carry the Euler-Maclaurin end correction -h^2/12 (f'(b) - f'(a)),
  // which lifts the rule to fourth order.
  constexpr int kSub = defaults::kReparamSamplesPerStep;
  constexpr double kPanel = defaults::kReparamPanel;
  auto dcos = [](const ode::DenseSegment<2>& seg, double tau, const Point2& y) {
    return -std::sin(y[1]) * seg.derivative(tau)[1];
  };
  if (!trace.segments().empty()) dc_prev = dcos(trace.segments().front(), first.s, first.state);
  for (const auto& seg : trace.segments()) {
    const double width = (seg.s_end - seg.s0) / kSub;
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(width) / kPanel)));
    for (int k = 1; k <= kSub; ++k) {
      Point2 y{};
      for (int j = 1; j <= panels; ++j) {
        const double tau = j == panels ? seg.s0 + width * k : seg.s0 + width * (k - 1) + width * j / panels;
        y = k == kSub && j == panels && tau == trace.s_end() ? trace.final_state() : seg.evaluate(tau);
        const double c = std::cos(y[1]);
        if ((c_prev > 0.0 && c <= 0.0) || (c_prev < 0.0 && c >= 0.0)) {
          // Locate cos(theta) = 0 on the dense output and stop there.
          double lo = tau_prev, hi = tau;
          for (int it = 0; it < 200 && std::abs(hi - lo) > defaults::kEventLocationTol; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double cm = std::cos(seg.evaluate(mid)[1]);
            ((cm > 0.0) == (c_prev > 0.0) ? lo : hi) = mid;
          }
          const Point2 yc = seg.evaluate(hi);
          s += 0.5 * (c_prev + std::cos(yc[1])) * (hi - tau_prev);
          out.samples.push_back({hi, s, yc});
          out.crossing_tau = hi;
          return out;
        }
        const double dc = dcos(seg, tau, y);
        const double h = tau - tau_prev;
        s += 0.5 * (c_prev + c) * h - h * h / 12.0 * (dc - dc_prev);
        tau_prev = tau;
        c_prev = c;
        dc_prev = dc;
      }
      out.samples.push_back({tau_prev, s, y});
    }
  }
  return out;
}

std::vector<PortraitTrajectory> sample_portrait(PhaseSystem id, const Rect& box, int nx, int ny,
                                                double span, const ode::Options& opt) {
  if (nx < 2 || ny < 2) throw ContractError("sample_portrait: grid must be at least 2x2");
  if (!(span > 0.0)) throw ContractError("sample_portrait: span must be positive");
  if (!is_smooth(id)) throw ContractError("sample_portrait integrates the smooth systems only");

  const double cx = 0.5 * (box.x_min + box.x_max), cy = 0.5 * (box.y_min + box.y_max);
  const double hx = box.x_max - box.x_min, hy = box.y_max - box.y_min;
  const Rect outer{cx - hx, cx + hx, cy - hy, cy + hy};

  ode::System<2> sys = phase_system(id);
  sys.events.push_back(box_exit(outer, "left_box"));
  if (id == PhaseSystem::fase1) {
    sys.events.push_back({"left_strip", [](const Point2& p) { return std::abs(p[0]) - 1.0; },
                          ode::Direction::rising, true});
  } else {
    sys.events.push_back({"singular_line", [](const Point2& p) { return std::cos(p[1]); },
                          ode::Direction::any, false});
  }

  std::vector<Point2> seeds;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Point2 p{box.x_min + hx * i / (nx - 1), box.y_min + hy * j / (ny - 1)};
      if (id == PhaseSystem::fase1 && !(p[1] > 0.0)) continue;
      if (id != PhaseSystem::fase1 && std::abs(std::cos(p[1])) < defaults::kSingularLineGuard) continue;
      seeds.push_back(p);
    }
  }
  // Seeds are independent; a fixed pool of workers takes interleaved indices.
  std::vector<PortraitTrajectory> out(seeds.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(seeds.size())));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < seeds.size(); i += workers) {
        out[i] = {seeds[i], ode::integrate(sys, seeds[i], {0.0, span}, opt),
                  ode::integrate(sys, seeds[i], {0.0, -span}, opt)};
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace solgcf::dynamics
