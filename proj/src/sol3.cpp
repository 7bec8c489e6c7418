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

#include "solgcf/sol3.hpp"

#include <array>
#include <cmath>
#include <string>

#include "solgcf/constants.hpp"
#include "solgcf/errors.hpp"

namespace solgcf::sol3 {

namespace {

void check_index(int i, const char* what) {
  if (i < 1 || i > 3) {
    throw ContractError(std::string(what) + ": index must be 1, 2 or 3, got " +
                        std::to_string(i));
  }
}

// Connection table: kConnection[i][j] = nabla_{E_{i+1}} E_{j+1}.
constexpr std::array<std::array<FrameVector, 3>, 3> kConnection = {{
    {{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}}},
    {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}},
    {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
}};

// Sectional curvatures K_{12}, K_{13}, K_{23}.
constexpr double kK12 = 1.0;
constexpr double kK13 = -1.0;
constexpr double kK23 = -1.0;

}  // namespace

double FrameVector::norm() const { return std::sqrt(norm2()); }

FrameVector operator+(const FrameVector& a, const FrameVector& b) {
  return {a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3};
}
FrameVector operator-(const FrameVector& a, const FrameVector& b) {
  return {a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3};
}
FrameVector operator*(double s, const FrameVector& a) {
  return {s * a.a1, s * a.a2, s * a.a3};
}

double checked_exp(double z) {
  if (!(std::abs(z) <= defaults::kMaxExponent)) {
    throw RangeError("exponent " + std::to_string(z) + " outside [-700, 700]");
  }
  return std::exp(z);
}

Point group_multiply(const Point& p, const Point& q) {
  return {p.x + checked_exp(-p.z) * q.x, p.y + checked_exp(p.z) * q.y, p.z + q.z};
}

Point group_inverse(const Point& p) {
  return {-checked_exp(p.z) * p.x, -checked_exp(-p.z) * p.y, -p.z};
}

double metric_inner(const Point& p, const CoordinateVector& u, const CoordinateVector& v) {
  const double ez = checked_exp(p.z);
  return (ez * u.c1) * (ez * v.c1) + (u.c2 / ez) * (v.c2 / ez) + u.c3 * v.c3;
}

FrameVector coordinate_to_frame(const Point& p, const CoordinateVector& v) {
  const double ez = checked_exp(p.z);
  return {ez * v.c1, v.c2 / ez, v.c3};
}

CoordinateVector frame_to_coordinate(const Point& p, const FrameVector& v) {
  const double ez = checked_exp(p.z);
  return {v.a1 / ez, ez * v.a2, v.a3};
}

FrameVector killing_field(int k, const Point& p) {
  check_index(k, "killing_field");
  const double ez = checked_exp(p.z);
  switch (k) {
    case 1:
      return {ez, 0.0, 0.0};
    case 2:
      return {0.0, 1.0 / ez, 0.0};
    default:
      return {-p.x * ez, p.y / ez, 1.0};
  }
}

FrameVector connection_frame(int i, int j) {
  check_index(i, "connection_frame");
  check_index(j, "connection_frame");
  return kConnection[i - 1][j - 1];
}

double ambient_sectional(const FrameVector& n) {
  const double n2 = n.norm2();
  if (!(std::abs(n2 - 1.0) <= 2.0 * defaults::kUnitNormRelTol)) {
    throw ContractError("ambient_sectional: normal is not unit (|n|^2 = " +
                        std::to_string(n2) + ")");
  }
  return kK23 * n.a1 * n.a1 + kK13 * n.a2 * n.a2 + kK12 * n.a3 * n.a3;
}

Point swap_isometry(const Point& p) { return {p.y, p.x, -p.z}; }

CoordinateVector swap_differential(const CoordinateVector& v) { return {v.c2, v.c1, -v.c3}; }

}  // namespace solgcf::sol3
