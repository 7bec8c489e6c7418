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

#ifndef SOLGCF_CONSTANTS_HPP
#define SOLGCF_CONSTANTS_HPP

// Default tolerances and thresholds. Every numeric default used by the
// library, the CLI and the acceptance suite lives here.

namespace solgcf::defaults {

// Integrator tolerances (per-component local error <= abs + rel*|y|).
inline constexpr double kTolAbs = 1e-10;
inline constexpr double kTolRel = 1e-10;
// Largest step as a fraction of the integration span.
inline constexpr double kMaxStepFraction = 1e-2;
// Event roots are bisected on the dense output to this width in s.
inline constexpr double kEventLocationTol = 1e-12;
// A terminal event whose function is this close to zero at the initial
// state fires immediately.
inline constexpr double kEventValueTol = 1e-10;

// Relative tolerance for unit-norm preconditions.
inline constexpr double kUnitNormRelTol = 1e-9;
// |z| beyond this raises a range error instead of overflowing e^{+-z}.
inline constexpr double kMaxExponent = 700.0;

// Integration of the generating-curve ODE stops when |cos(theta)| falls to
// this value (vertical tangency).
inline constexpr double kVerticalTangencyCos = 1e-6;

// Offset along an eigenvector when seeding invariant manifolds.
inline constexpr double kManifoldOffset = 1e-6;
// Portrait seeds keep this distance from cos(theta) = 0.
inline constexpr double kSingularLineGuard = 1e-3;
inline constexpr double kEquilibriumResidualTol = 1e-12;
inline constexpr double kEquilibriumDedupTol = 1e-8;
// Degenerate equilibria are only located to about 1e-8 by Newton, so their
// duplicates are merged within this wider radius.
inline constexpr double kDegenerateDedupTol = 1e-6;
// Eigenvalues smaller than this in magnitude are treated as zero.
inline constexpr double kZeroEigenvalueTol = 1e-10;

// Angle grid used to refute the linear-angle identities.
inline constexpr int kAngleGridPoints = 1024;
inline constexpr double kIdentityRefutationThreshold = 0.1;

inline constexpr double kQuadratureAbsTol = 1e-11;
inline constexpr double kEiInverseTol = 1e-11;

// tau -> s reparametrization of the desingularized systems.
inline constexpr int kReparamSamplesPerStep = 8;
inline constexpr double kReparamPanel = 1e-3;

// Resampled points per branch written by the trace command.
inline constexpr int kTraceSamples = 401;

}  // namespace solgcf::defaults

#endif  // SOLGCF_CONSTANTS_HPP
