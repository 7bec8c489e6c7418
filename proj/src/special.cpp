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

#include "solgcf/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "solgcf/constants.hpp"
#include "solgcf/errors.hpp"

namespace solgcf::special {

namespace {

constexpr double kE = 2.718281828459045;
// e - kE, used to evaluate 1 + e x without cancellation near the branch point.
constexpr double kELow = 1.4456468917292502e-16;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series in p = +-sqrt(2 (1 + e x)) about the branch point.
double branch_point_series(double p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 +
                         p * (11.0 / 72.0 +
                              p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

double halley(double w, double x) {
  for (int it = 0; it < 32; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    if (!std::isfinite(dw)) break;
    w -= dw;
    if (std::abs(dw) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
  }
  return w;
}

double e1_positive(double y) {
  if (y <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int n = 1; n < 200; ++n) {
      term *= -y / n;
      const double add = term / n;
      sum += add;
      if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(y) - sum;
  }
  // Modified Lentz evaluation of the continued fraction.
  constexpr double kTiny = 1e-300;
  double b = y + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-y);
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
  if (x < -kInvE) {
    throw DomainError("lambert_w: argument " + std::to_string(x) + " below -1/e");
  }
  if (branch == WBranch::minus_one && x >= 0.0) {
    throw DomainError("lambert_w: branch -1 needs x < 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (branch == WBranch::principal && x == 0.0) return 0.0;

  const double q = std::fma(kE, x, 1.0) + kELow * x;
  if (q <= 0.0) return -1.0;
  const double p = (branch == WBranch::principal ? 1.0 : -1.0) * std::sqrt(2.0 * q);

  if (std::abs(p) < 1e-3) return branch_point_series(p);

  double w;
  if (std::abs(p) < 0.5) {
    w = branch_point_series(p);
  } else if (branch == WBranch::principal) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  w = halley(w, x);
  if (branch == WBranch::principal && w < -1.0) w = -1.0;
  if (branch == WBranch::minus_one && w > -1.0) w = -1.0;
  return w;
}

double exp_integral_ei(double x) {
  if (std::isnan(x)) throw DomainError("exp_integral_ei: NaN argument");
  if (x == 0.0) throw DomainError("exp_integral_ei: undefined at x = 0");
  if (x < 0.0) return -e1_positive(-x);

  if (x <= 40.0) {
    double sum = 0.0;
    double term = 1.0;
    for (int n = 1; n < 500; ++n) {
      term *= x / n;
      const double add = term / n;
      sum += add;
      if (add < kEps * sum) break;
    }
    return kEulerGamma + std::log(x) + sum;
  }

  // Asymptotic series e^x / x * sum k! / x^k, truncated at its smallest term.
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  const double scale = x < 700.0 ? std::exp(x) / x : std::exp(x - std::log(x));
  const double result = scale * sum;
  if (!std::isfinite(result)) {
    throw RangeError("exp_integral_ei: overflow at x = " + std::to_string(x));
  }
  return result;
}

double ei_inverse(double target, double bracket_low, double bracket_high) {
  if (!(bracket_low > 0.0) || !(bracket_high > bracket_low) || !std::isfinite(target)) {
    throw ContractError("ei_inverse: need 0 < low < high and a finite target");
  }
  double lo = bracket_low;
  double hi = bracket_high;
  const double f_lo = exp_integral_ei(lo) - target;
  const double f_hi = exp_integral_ei(hi) - target;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw ContractError("ei_inverse: Ei(low) and Ei(high) do not straddle the target");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  const double tol = std::max(defaults::kEiInverseTol, 4.0 * kEps * std::abs(target));
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = exp_integral_ei(u) - target;
    if (std::abs(f) < tol) return u;
    if (f < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    if (hi - lo <= 2.0 * kEps * hi) return u;
    // Newton step with Ei'(u) = e^u / u, falling back to bisection.
    const double step = f * u * std::exp(-u);
    double next = u - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  throw Error(ErrorCode::numerical, "ei_inverse: no convergence");
}

}  // namespace solgcf::special
