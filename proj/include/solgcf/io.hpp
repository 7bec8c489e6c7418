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


#ifndef SOLGCF_IO_HPP
#define SOLGCF_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "solgcf/dynamics.hpp"
#include "solgcf/soliton.hpp"

namespace solgcf::io {

struct TraceRow {
  double s = 0.0;
  double y = 0.0, z = 0.0, theta = 0.0;
  double k_ext = 0.0, k_int = 0.0;
  double residual = 0.0;
};

inline constexpr const char* kTraceHeader = "s,y,z,theta,k_ext,k_int,residual";

// Backward branch (reversed, without its s = 0 row) followed by the forward
// branch, each resampled to `per_branch` points. Curvatures and the soliton
// residual are evaluated at theta' from the ODE.
std::vector<TraceRow> trace_rows(const soliton::SolitonTrace& tr, int per_branch);

// 17 significant digits, independent of the global locale.
std::string format_double(double v);
double parse_double(const std::string& text);

// `terminated` adds a "# terminated: <reason>" footer.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows,
                     const std::optional<std::string>& terminated = std::nullopt);
// Comment lines are skipped; ContractError on a malformed header or row.
std::vector<TraceRow> read_trace_csv(std::istream& is);

void write_equilibria_csv(std::ostream& os, const std::vector<dynamics::EquilibriumReport>& eqs);

struct Polyline {
  std::vector<dynamics::Point2> points;
  std::string stroke = "#1f4e9c";
};

struct Marker {
  dynamics::Point2 at{};
  std::string label;
  std::string fill = "#c0392b";
};

struct Plot {
  std::string title;
  std::string x_label, y_label;
  std::vector<Polyline> lines;
  std::vector<Marker> markers;
  // Dashed horizontal guide lines (y values), clipped to the viewport.
  std::vector<double> guides;
  // When set the viewport is this box instead of the data bounds.
  std::optional<dynamics::Rect> frame;
};

// Viewport = data bounds (or frame) plus a 5% margin on each side.
std::string render_svg(const Plot& plot);

// Generating curve in the (y, z)-plane.
Plot trace_plot(const soliton::SolitonTrace& tr, const std::vector<TraceRow>& rows);
Plot portrait_plot(dynamics::PhaseSystem id, const dynamics::Rect& box,
                   const std::vector<dynamics::PortraitTrajectory>& trajectories,
                   const std::vector<dynamics::EquilibriumReport>& eqs);

// Error(ErrorCode::io) when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace solgcf::io

#endif  // SOLGCF_IO_HPP
