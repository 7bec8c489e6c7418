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

#ifndef SOLGCF_SOL3_HPP
#define SOLGCF_SOL3_HPP

// Ambient geometry of Sol3 modelled on R^3 with metric
//   ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2
// and the left-invariant orthonormal frame E1 = e^{-z} d/dx, E2 = e^{z} d/dy,
// E3 = d/dz. Tangent vectors are carried in frame components; coordinate
// components only appear at the conversion functions below.

namespace solgcf::sol3 {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Components in {E1, E2, E3}.
struct FrameVector {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  double dot(const FrameVector& o) const { return a1 * o.a1 + a2 * o.a2 + a3 * o.a3; }
  double norm2() const { return dot(*this); }
  double norm() const;
};

// Components in {d/dx, d/dy, d/dz}.
struct CoordinateVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

FrameVector operator+(const FrameVector& a, const FrameVector& b);
FrameVector operator-(const FrameVector& a, const FrameVector& b);
FrameVector operator*(double s, const FrameVector& a);

// e^{z}, throwing RangeError for |z| > defaults::kMaxExponent.
double checked_exp(double z);

Point group_multiply(const Point& p, const Point& q);
Point group_inverse(const Point& p);

double metric_inner(const Point& p, const CoordinateVector& u, const CoordinateVector& v);

FrameVector coordinate_to_frame(const Point& p, const CoordinateVector& v);
CoordinateVector frame_to_coordinate(const Point& p, const FrameVector& v);

// Killing fields F1 = d/dx, F2 = d/dy, F3 = -x d/dx + y d/dy + d/dz, k = 1..3.
FrameVector killing_field(int k, const Point& p);

// nabla_{E_i} E_j in frame components (constant over Sol3), i, j = 1..3.
FrameVector connection_frame(int i, int j);

// Sectional curvature of the plane with unit normal n.
double ambient_sectional(const FrameVector& n);

// (x, y, z) -> (y, x, -z); exchanges F1- and F2-invariant surfaces.
Point swap_isometry(const Point& p);
CoordinateVector swap_differential(const CoordinateVector& v);

}  // namespace solgcf::sol3

#endif  // SOLGCF_SOL3_HPP
