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

#ifndef SOLGCF_ODE_HPP
#define SOLGCF_ODE_HPP

// Adaptive explicit Runge-Kutta integration of small autonomous systems.
//
// The method is the Dormand-Prince 5(4) pair (FSAL, local extrapolation: the
// solution is advanced with the 5th-order weights) with Hairer's 4th-order
// continuous extension. Events are sign changes of user functions located by
// bisection on the dense output, not on step endpoints.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solgcf/constants.hpp"
#include "solgcf/errors.hpp"

namespace solgcf::ode {

template <std::size_t N>
using State = std::array<double, N>;

enum class Direction { any, rising, falling };

template <std::size_t N>
struct Event {
  std::string name;
  std::function<double(const State<N>&)> fn;
  Direction direction = Direction::any;
  bool terminal = true;
};

template <std::size_t N>
struct System {
  std::function<State<N>(const State<N>&)> rhs;
  std::vector<Event<N>> events;
};

struct Options {
  double abs_tol = defaults::kTolAbs;
  double rel_tol = defaults::kTolRel;
  double max_step_fraction = defaults::kMaxStepFraction;
  double event_location_tol = defaults::kEventLocationTol;
  double event_value_tol = defaults::kEventValueTol;
  std::size_t max_steps = 20'000'000;
};

enum class Termination { reached_end, event, step_failure, range_error };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_end:
      return "reached_s_max";
    case Termination::event:
      return "event";
    case Termination::step_failure:
      return "step_failure";
    default:
      return "range_error";
  }
}

template <std::size_t N>
struct Sample {
  double s = 0.0;
  State<N> state{};
};

template <std::size_t N>
struct EventHit {
  std::size_t index = 0;
  std::string name;
  double s = 0.0;
  State<N> state{};
};

// One accepted step with its interpolation coefficients.
template <std::size_t N>
struct DenseSegment {
  double s0 = 0.0;
  double h = 0.0;
  double s_end = 0.0;  // s0 + h, or the terminal event location
  std::array<State<N>, 5> rc{};

  State<N> evaluate(double s) const {
    const double th = (s - s0) / h;
    const double th1 = 1.0 - th;
    State<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rc[0][i] +
             th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
    }
    return y;
  }

  // d/ds of the interpolant.
  State<N> derivative(double s) const {
    const double th = (s - s0) / h;
    const double th1 = 1.0 - th;
    State<N> d;
    for (std::size_t i = 0; i < N; ++i) {
      const double q3 = rc[3][i] + th1 * rc[4][i];
      const double q2 = rc[2][i] + th * q3;
      const double dq2 = q3 - th * rc[4][i];
      const double q1 = rc[1][i] + th1 * q2;
      const double dq1 = -q2 + th1 * dq2;
      d[i] = (q1 + th * dq1) / h;
    }
    return d;
  }
};

template <std::size_t N>
class CurveTrace {
 public:
  CurveTrace() = default;
  CurveTrace(std::vector<Sample<N>> samples, std::vector<DenseSegment<N>> segments,
             Termination termination, std::vector<EventHit<N>> hits, std::string message)
      : samples_(std::move(samples)),
        segments_(std::move(segments)),
        termination_(termination),
        hits_(std::move(hits)),
        message_(std::move(message)) {}

  const std::vector<Sample<N>>& samples() const { return samples_; }
  const std::vector<DenseSegment<N>>& segments() const { return segments_; }
  Termination termination() const { return termination_; }
  // Every event crossing in integration order; a terminal hit is last.
  const std::vector<EventHit<N>>& event_hits() const { return hits_; }
  const std::string& message() const { return message_; }

  bool empty() const { return samples_.empty(); }
  double s_begin() const { return samples_.front().s; }
  double s_end() const { return samples_.back().s; }
  const State<N>& final_state() const { return samples_.back().state; }

  std::optional<EventHit<N>> terminal_event() const {
    if (termination_ != Termination::event || hits_.empty()) return std::nullopt;
    return hits_.back();
  }

  // Dense-output state at s in [s_begin, s_end] (either orientation).
  State<N> evaluate(double s) const {
    if (samples_.empty()) throw ContractError("evaluate on an empty trace");
    if (segments_.empty()) return samples_.front().state;
    const bool fwd = s_end() >= s_begin();
    const double lo = fwd ? s_begin() : s_end();
    const double hi = fwd ? s_end() : s_begin();
    if (s < lo || s > hi) throw ContractError("evaluate outside the trace span");
    if (s == samples_.back().s) return samples_.back().state;
    // First segment whose end lies at or beyond s in the integration order.
    auto it = std::lower_bound(segments_.begin(), segments_.end(), s,
                               [fwd](const DenseSegment<N>& seg, double v) {
                                 return fwd ? seg.s_end < v : seg.s_end > v;
                               });
    if (it == segments_.end()) it = std::prev(segments_.end());
    return it->evaluate(s);
  }

 private:
  std::vector<Sample<N>> samples_;
  std::vector<DenseSegment<N>> segments_;
  Termination termination_ = Termination::reached_end;
  std::vector<EventHit<N>> hits_;
  std::string message_;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
bool finite(const State<N>& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [w, k] : terms) {
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * w * (*k)[i];
  }
  return out;
}

// Evaluates the right-hand side, mapping library errors and non-finite
// values to nullopt.
template <std::size_t N>
std::optional<State<N>> safe_rhs(const System<N>& sys, const State<N>& y) {
  try {
    State<N> f = sys.rhs(y);
    if (!finite(f)) return std::nullopt;
    return f;
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline bool crosses(double g_old, double g_new, Direction d) {
  const bool rising = g_old < 0.0 && g_new >= 0.0;
  const bool falling = g_old > 0.0 && g_new <= 0.0;
  switch (d) {
    case Direction::rising:
      return rising;
    case Direction::falling:
      return falling;
    default:
      return rising || falling;
  }
}

}  // namespace detail

// Integrates y' = rhs(y) from s_span.first towards s_span.second (either
// direction). Failures are reported through the trace termination, never
// thrown; only invalid arguments throw ContractError.
template <std::size_t N>
CurveTrace<N> integrate(const System<N>& sys, const State<N>& initial,
                        std::pair<double, double> s_span, const Options& opt = {}) {
  using namespace detail;
  const auto [s_start, s_stop] = s_span;
  if (!(opt.abs_tol > 0.0) || !(opt.rel_tol > 0.0)) {
    throw ContractError("integrate: tolerances must be positive");
  }
  if (!std::isfinite(s_start) || !std::isfinite(s_stop) || s_start == s_stop) {
    throw ContractError("integrate: degenerate span");
  }
  if (!finite(initial)) throw ContractError("integrate: non-finite initial state");

  const double dir = s_stop > s_start ? 1.0 : -1.0;
  const double span = std::abs(s_stop - s_start);
  const double h_max = std::max(opt.max_step_fraction, 1e-12) * span;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  std::vector<Sample<N>> samples{{s_start, initial}};
  std::vector<DenseSegment<N>> segments;
  std::vector<EventHit<N>> hits;
  auto finish = [&](Termination t, std::string msg) {
    return CurveTrace<N>(std::move(samples), std::move(segments), t, std::move(hits),
                         std::move(msg));
  };

  auto f0_opt = safe_rhs(sys, initial);
  if (!f0_opt) return finish(Termination::range_error, "right-hand side not finite at start");
  State<N> f0 = *f0_opt;

  std::vector<double> g_old(sys.events.size());
  for (std::size_t i = 0; i < sys.events.size(); ++i) {
    g_old[i] = sys.events[i].fn(initial);
    if (sys.events[i].terminal && std::abs(g_old[i]) <= opt.event_value_tol) {
      hits.push_back({i, sys.events[i].name, s_start, initial});
      return finish(Termination::event, sys.events[i].name);
    }
  }

  auto scale = [&](double a, double b) { return opt.abs_tol + opt.rel_tol * std::max(std::abs(a), std::abs(b)); };

  // Initial step (Hairer, Norsett & Wanner heuristic).
  double h;
  {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = scale(initial[i], initial[i]);
      d0 = std::max(d0, std::abs(initial[i]) / sc);
      d1n = std::max(d1n, std::abs(f0[i]) / sc);
    }
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, h_max);
    State<N> y1 = axpy<N>(initial, dir * h0, {{1.0, &f0}});
    double d2 = 0.0;
    if (auto f1 = safe_rhs(sys, y1)) {
      for (std::size_t i = 0; i < N; ++i) {
        d2 = std::max(d2, std::abs((*f1)[i] - f0[i]) / scale(initial[i], initial[i]) / h0);
      }
    }
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = dir * std::min({100.0 * h0, h1, h_max});
  }

  double s = s_start;
  State<N> y = initial;
  std::size_t steps = 0;
  while (true) {
    // Relative to the current position: near a terminal singularity the
    // step has to resolve s to a few ulps, whatever the total span.
    const double h_min = 16.0 * kEps * std::max(std::abs(s), 1e-6 * span);
    if (++steps > opt.max_steps) return finish(Termination::step_failure, "step budget exhausted");
    if (std::abs(s_stop - s) <= std::abs(h) * (1.0 + 1e-12)) h = s_stop - s;

    State<N> k1 = f0;
    std::optional<State<N>> k2, k3, k4, k5, k6, k7;
    State<N> y_new{};
    bool ok = false;
    do {
      k2 = safe_rhs(sys, axpy<N>(y, h, {{a21, &k1}}));
      if (!k2) break;
      k3 = safe_rhs(sys, axpy<N>(y, h, {{a31, &k1}, {a32, &*k2}}));
      if (!k3) break;
      k4 = safe_rhs(sys, axpy<N>(y, h, {{a41, &k1}, {a42, &*k2}, {a43, &*k3}}));
      if (!k4) break;
      k5 = safe_rhs(sys, axpy<N>(y, h, {{a51, &k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}}));
      if (!k5) break;
      k6 = safe_rhs(sys, axpy<N>(y, h, {{a61, &k1}, {a62, &*k2}, {a63, &*k3}, {a64, &*k4}, {a65, &*k5}}));
      if (!k6) break;
      y_new = axpy<N>(y, h, {{a71, &k1}, {a73, &*k3}, {a74, &*k4}, {a75, &*k5}, {a76, &*k6}});
      if (!finite(y_new)) break;
      k7 = safe_rhs(sys, y_new);
      if (!k7) break;
      ok = true;
    } while (false);

    if (!ok) {
      if (std::abs(h) <= h_min) {
        return finish(Termination::range_error, "right-hand side not finite near s = " + std::to_string(s));
      }
      h *= 0.25;
      continue;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * (*k3)[i] + e4 * (*k4)[i] + e5 * (*k5)[i] +
                             e6 * (*k6)[i] + e7 * (*k7)[i]);
      err = std::max(err, std::abs(ei) / scale(y[i], y_new[i]));
    }
    if (!(err <= 1.0)) {
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= fac;
      if (std::abs(h) < h_min) {
        return finish(Termination::step_failure, "step size underflow near s = " + std::to_string(s));
      }
      continue;
    }

    DenseSegment<N> seg;
    seg.s0 = s;
    seg.h = h;
    seg.s_end = s + h;
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = y_new[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      seg.rc[0][i] = y[i];
      seg.rc[1][i] = ydiff;
      seg.rc[2][i] = bspl;
      seg.rc[3][i] = ydiff - h * (*k7)[i] - bspl;
      seg.rc[4][i] = h * (d1 * k1[i] + d3 * (*k3)[i] + d4 * (*k4)[i] + d5 * (*k5)[i] +
                          d6 * (*k6)[i] + d7 * (*k7)[i]);
    }

    // Event detection on the dense output of this step.
    std::vector<double> g_new(sys.events.size());
    std::vector<EventHit<N>> step_hits;
    for (std::size_t i = 0; i < sys.events.size(); ++i) {
      const auto& ev = sys.events[i];
      g_new[i] = ev.fn(y_new);
      if (!crosses(g_old[i], g_new[i], ev.direction)) continue;
      double lo = s, hi = s + h;
      double g_lo = g_old[i];
      while (std::abs(hi - lo) > opt.event_location_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = ev.fn(seg.evaluate(mid));
        if ((g_lo < 0.0) == (gm < 0.0) && gm != 0.0) {
          lo = mid;
          g_lo = gm;
        } else {
          hi = mid;
        }
      }
      const State<N> y_lo = seg.evaluate(lo);
      const State<N> y_hi = hi == s + h ? y_new : seg.evaluate(hi);
      const bool pick_lo = std::abs(ev.fn(y_lo)) < std::abs(ev.fn(y_hi));
      step_hits.push_back({i, ev.name, pick_lo ? lo : hi, pick_lo ? y_lo : y_hi});
    }
    std::sort(step_hits.begin(), step_hits.end(),
              [dir](const EventHit<N>& a, const EventHit<N>& b) { return dir * a.s < dir * b.s; });
    std::optional<EventHit<N>> terminal;
    for (const auto& hit : step_hits) {
      hits.push_back(hit);
      if (sys.events[hit.index].terminal) {
        terminal = hit;
        break;
      }
    }
    if (terminal) {
      seg.s_end = terminal->s;
      segments.push_back(seg);
      if (terminal->s != s) samples.push_back({terminal->s, terminal->state});
      return finish(Termination::event, terminal->name);
    }

    segments.push_back(seg);
    s = (h == s_stop - s) ? s_stop : s + h;
    y = y_new;
    f0 = *k7;
    g_old = std::move(g_new);
    samples.push_back({s, y});
    if (s == s_stop) return finish(Termination::reached_end, "");

    const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    h = dir * std::min(std::abs(h) * fac, h_max);
  }
}

// n points uniform in s over the trace; the endpoints are the exact first and
// last samples.
template <std::size_t N>
std::vector<Sample<N>> resample(const CurveTrace<N>& trace, std::size_t n) {
  if (n < 2) throw ContractError("resample: need at least two points");
  if (trace.empty()) throw ContractError("resample: empty trace");
  std::vector<Sample<N>> out;
  out.reserve(n);
  const double a = trace.s_begin();
  const double b = trace.s_end();
  out.push_back(trace.samples().front());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back({s, trace.evaluate(s)});
  }
  out.push_back(trace.samples().back());
  return out;
}

}  // namespace solgcf::ode

#endif  // SOLGCF_ODE_HPP
