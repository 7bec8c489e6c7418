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


#include "solgcf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "solgcf/errors.hpp"

namespace solgcf::io {

namespace {

std::string format_fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;  // no "-0.000"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string out(buf, res.ptr);
  if (out.find_first_not_of("-0.") == std::string::npos) return "0";
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

TraceRow make_row(soliton::F1SolitonKind kind, double s, const ode::State<3>& y) {
  const surface::StateF1 st = soliton::to_state(y);
  const double tp = soliton::theta_prime(kind, st);
  const surface::GaussPair k = surface::gauss_f1_arclength(st, tp);
  const double r = surface::soliton_residual(soliton::spec_of(kind), st, tp, 0.0);
  return {s, st.y, st.z, st.theta, k.k_ext, k.k_int, r};
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ContractError("not a number: '" + text + "'");
  return v;
}

std::vector<TraceRow> trace_rows(const soliton::SolitonTrace& tr, int per_branch) {
  std::vector<TraceRow> rows;
  if (!tr.backward.empty()) {
    auto back = ode::resample(tr.backward, per_branch);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
      if (it->s == 0.0 && !tr.forward.empty()) continue;
      rows.push_back(make_row(tr.kind, it->s, it->state));
    }
  }
  if (!tr.forward.empty())
    for (const auto& smp : ode::resample(tr.forward, per_branch)) rows.push_back(make_row(tr.kind, smp.s, smp.state));
  return rows;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows,
                     const std::optional<std::string>& terminated) {
  os << kTraceHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.s) << ',' << format_double(r.y) << ',' << format_double(r.z) << ','
       << format_double(r.theta) << ',' << format_double(r.k_ext) << ',' << format_double(r.k_int) << ','
       << format_double(r.residual) << '\n';
  }
  if (terminated) os << "# terminated: " << *terminated << '\n';
}

std::vector<TraceRow> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader) throw ContractError("trace csv: bad header");
  std::vector<TraceRow> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, ',');
    if (f.size() != 7) throw ContractError("trace csv: expected 7 fields in '" + line + "'");
    rows.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                    parse_double(f[4]), parse_double(f[5]), parse_double(f[6])});
  }
  return rows;
}

void write_equilibria_csv(std::ostream& os, const std::vector<dynamics::EquilibriumReport>& eqs) {
  os << "x1,x2,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class,residual\n";
  for (const auto& e : eqs) {
    os << format_double(e.location[0]) << ',' << format_double(e.location[1]) << ','
       << format_double(e.eigenvalues[0].real()) << ',' << format_double(e.eigenvalues[0].imag()) << ','
       << format_double(e.eigenvalues[1].real()) << ',' << format_double(e.eigenvalues[1].imag()) << ','
       << dynamics::to_string(e.classification) << ',' << format_double(e.residual) << '\n';
  }
}

std::string render_svg(const Plot& plot) {
  constexpr double W = 800, H = 600, pad_l = 70, pad_r = 20, pad_t = 40, pad_b = 50;
  double x0, x1, y0, y1;
  if (plot.frame) {
    x0 = plot.frame->x_min, x1 = plot.frame->x_max, y0 = plot.frame->y_min, y1 = plot.frame->y_max;
  } else {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -x0;
    auto take = [&](const dynamics::Point2& p) {
      if (!std::isfinite(p[0]) || !std::isfinite(p[1])) return;
      x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
    };
    for (const auto& l : plot.lines)
      for (const auto& p : l.points) take(p);
    for (const auto& m : plot.markers) take(m.at);
    if (!std::isfinite(x0)) x0 = y0 = -1, x1 = y1 = 1;
  }
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
  x0 -= mx, x1 += mx, y0 -= my, y1 += my;

  const double pw = W - pad_l - pad_r, ph = H - pad_t - pad_b;
  auto px = [&](double x) { return pad_l + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return pad_t + (y1 - y) / (y1 - y0) * ph; };
  auto num = [](double v) { return format_fixed(v, 2); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << num(pad_l) << "\" y=\"" << num(pad_t) << "\" width=\"" << num(pw) << "\" height=\""
     << num(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  os << "<clipPath id=\"plot\"><rect x=\"" << num(pad_l) << "\" y=\"" << num(pad_t) << "\" width=\"" << num(pw)
     << "\" height=\"" << num(ph) << "\"/></clipPath>\n";
  if (!plot.title.empty())
    os << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << escape(plot.title) << "</text>\n";
  // Axis extents as tick labels.
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  os << "<text x=\"" << num(pad_l) << "\" y=\"" << num(H - pad_b + 16) << "\">" << format_fixed(x0, 3) << "</text>\n";
  os << "<text x=\"" << num(W - pad_r) << "\" y=\"" << num(H - pad_b + 16) << "\" text-anchor=\"end\">"
     << format_fixed(x1, 3) << "</text>\n";
  os << "<text x=\"" << num(pad_l - 6) << "\" y=\"" << num(H - pad_b) << "\" text-anchor=\"end\">"
     << format_fixed(y0, 3) << "</text>\n";
  os << "<text x=\"" << num(pad_l - 6) << "\" y=\"" << num(pad_t + 10) << "\" text-anchor=\"end\">"
     << format_fixed(y1, 3) << "</text>\n";
  if (!plot.x_label.empty())
    os << "<text x=\"" << num(pad_l + pw / 2) << "\" y=\"" << num(H - 12) << "\" text-anchor=\"middle\">"
       << escape(plot.x_label) << "</text>\n";
  if (!plot.y_label.empty())
    os << "<text x=\"16\" y=\"" << num(pad_t + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << num(pad_t + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";
  os << "</g>\n";

  os << "<g clip-path=\"url(#plot)\">\n";
  for (double g : plot.guides) {
    if (g < y0 || g > y1) continue;
    os << "<line x1=\"" << num(pad_l) << "\" y1=\"" << num(py(g)) << "\" x2=\"" << num(pad_l + pw) << "\" y2=\""
       << num(py(g)) << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (const auto& l : plot.lines) {
    if (l.points.size() < 2) continue;
    os << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& p : l.points) {
      if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
      if (!first) os << ' ';
      os << num(px(p[0])) << ',' << num(py(p[1]));
      first = false;
    }
    os << "\"/>\n";
  }
  for (const auto& m : plot.markers) {
    os << "<circle cx=\"" << num(px(m.at[0])) << "\" cy=\"" << num(py(m.at[1])) << "\" r=\"4\" fill=\"" << m.fill
       << "\"/>\n";
    if (!m.label.empty())
      os << "<text x=\"" << num(px(m.at[0]) + 6) << "\" y=\"" << num(py(m.at[1]) - 6)
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(m.label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

Plot trace_plot(const soliton::SolitonTrace& tr, const std::vector<TraceRow>& rows) {
  Plot p;
  p.title = "generating curve, " + soliton::to_string(tr.kind);
  p.x_label = "y";
  p.y_label = "z";
  Polyline line;
  for (const auto& r : rows) line.points.push_back({r.y, r.z});
  p.lines.push_back(std::move(line));
  p.markers.push_back({{tr.initial.y, tr.initial.z}, "s = 0", "#2c7a2c"});
  return p;
}

Plot portrait_plot(dynamics::PhaseSystem id, const dynamics::Rect& box,
                   const std::vector<dynamics::PortraitTrajectory>& trajectories,
                   const std::vector<dynamics::EquilibriumReport>& eqs) {
  Plot p;
  p.title = "phase portrait, " + dynamics::to_string(id);
  if (id == dynamics::PhaseSystem::fase1) {
    p.x_label = "v";
    p.y_label = "w";
  } else {
    p.x_label = "u";
    p.y_label = "theta";
    p.guides = {-std::numbers::pi / 2, std::numbers::pi / 2, 3 * std::numbers::pi / 2};
  }
  p.frame = box;
  for (const auto& t : trajectories) {
    for (const auto* branch : {&t.backward, &t.forward}) {
      Polyline line;
      for (const auto& smp : branch->samples()) line.points.push_back(smp.state);
      p.lines.push_back(std::move(line));
    }
  }
  for (const auto& e : eqs) {
    const bool saddle = e.classification == dynamics::StabilityClass::saddle;
    p.markers.push_back({e.location, dynamics::to_string(e.classification), saddle ? "#c0392b" : "#8e44ad"});
  }
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error(ErrorCode::io, "write failed for '" + path + "'");
}

}  // namespace solgcf::io
