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

#ifndef SOLGCF_SPECIAL_HPP
#define SOLGCF_SPECIAL_HPP

namespace solgcf::special {

enum class WBranch { principal, minus_one };

inline constexpr double kInvE = 0.36787944117144232159552377016146;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Real Lambert W: the w solving w e^w = x.
//   principal: x >= -1/e, w >= -1
//   minus_one: -1/e <= x < 0, w <= -1
// Throws DomainError outside the branch domain.
double lambert_w(WBranch branch, double x);

// Exponential integral Ei(x) = PV int_{-inf}^{x} e^t / t dt, x != 0.
// Negative arguments return -E1(-x). Throws DomainError at 0 and RangeError
// when the result overflows.
double exp_integral_ei(double x);

// The u in [low, high] (0 < low < high) with Ei(u) = target. Ei(low) and
// Ei(high) must straddle the target. Converges to |Ei(u) - target| below
// max(tol, a few ulp of target).
double ei_inverse(double target, double bracket_low, double bracket_high);

}  // namespace solgcf::special

#endif  // SOLGCF_SPECIAL_HPP
