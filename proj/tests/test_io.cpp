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


#include <cmath>
#include <cstring>
#include <limits>
#include <locale>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "solgcf/errors.hpp"
#include "solgcf/io.hpp"

using namespace solgcf;
using namespace solgcf::io;

namespace {

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

std::uint64_t bits(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

}  // namespace

TEST_CASE("doubles round-trip through the CSV formatter") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> U;
  int tested = 0;
  while (tested < 20000) {
    const std::uint64_t b = U(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(bits(parse_double(format_double(v))) == b);
    ++tested;
  }
  for (double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 5e-324, std::numeric_limits<double>::max(), -std::numbers::pi})
    CHECK(bits(parse_double(format_double(v))) == bits(v));
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e20) == "1e+20");
  CHECK(std::isnan(parse_double(format_double(std::nan("")))));
  CHECK(parse_double(format_double(-INFINITY)) == -INFINITY);
  CHECK_THROWS_AS(parse_double("1,5"), ContractError);
  CHECK_THROWS_AS(parse_double(""), ContractError);
}

TEST_CASE("CSV output ignores the global locale") {
  const std::vector<TraceRow> rows = {{0.25, -1.5, 2.0, 0.125, 1e-9, -3.5, 0.0},
                                      {1234567.5, 1.0 / 3.0, -2e-17, 3.0, 4.0, 5.0, 6.0}};
  std::ostringstream plain;
  write_trace_csv(plain, rows);
  const std::locale old = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  std::ostringstream comma;
  comma.imbue(std::locale());
  write_trace_csv(comma, rows);
  std::locale::global(old);
  CHECK(plain.str() == comma.str());
  CHECK(plain.str().find("1234567.5,") != std::string::npos);

  std::istringstream in(comma.str());
  const auto back = read_trace_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(bits(back[i].s) == bits(rows[i].s));
    CHECK(bits(back[i].y) == bits(rows[i].y));
    CHECK(bits(back[i].residual) == bits(rows[i].residual));
  }
}

TEST_CASE("CSV header, footer and malformed input") {
  std::ostringstream os;
  write_trace_csv(os, {{1, 2, 3, 4, 5, 6, 7}}, std::string("forward step_failure at s = 2"));
  const std::string text = os.str();
  CHECK(text.rfind("s,y,z,theta,k_ext,k_int,residual\n", 0) == 0);
  CHECK(text.find("\n# terminated: forward step_failure at s = 2\n") != std::string::npos);
  std::istringstream in(text);
  CHECK(read_trace_csv(in).size() == 1);

  std::istringstream bad_header("s,y,z\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(bad_header), ContractError);
  std::istringstream short_row(std::string(kTraceHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(short_row), ContractError);
}

TEST_CASE("trace rows follow the ODE and satisfy the soliton equation") {
  using namespace soliton;
  const auto tr = trace_f1_soliton(F1SolitonKind::ext_F2, {0, 0, 0}, 10.0);
  const auto rows = trace_rows(tr, 101);
  REQUIRE(rows.size() == 201);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].s > rows[i - 1].s);
  CHECK(rows.front().s == tr.backward.s_end());
  CHECK(rows.back().s == tr.forward.s_end());
  for (const auto& r : rows) {
    CHECK(std::abs(r.residual) < 1e-8);
    // K = -<N, F2>, and <N, F2> = sin(theta) e^{-z} for this orientation.
    CHECK(std::abs(r.k_ext + std::sin(r.theta) * std::exp(-r.z)) < 1e-8);
  }
  // Ends at the vertical tangency.
  CHECK(std::abs(rows.back().theta + std::numbers::pi / 2) < 1e-5);
}

TEST_CASE("SVG viewport and determinism") {
  Plot p;
  p.title = "a < b & c";
  p.lines.push_back({{{0, 0}, {10, 0}, {10, 20}}});
  p.markers.push_back({{5, 5}, "m"});
  p.guides = {1.0, 100.0};
  const std::string svg = render_svg(p);
  CHECK(svg == render_svg(p));
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  // x in [0, 10] widened by 5% each side; labels carry the viewport.
  CHECK(svg.find(">-0.500<") != std::string::npos);
  CHECK(svg.find(">10.500<") != std::string::npos);
  CHECK(svg.find(">-1.000<") != std::string::npos);
  CHECK(svg.find(">21.000<") != std::string::npos);
  // The guide outside the viewport is dropped.
  std::regex line("<line ");
  CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), line), std::sregex_iterator()) == 1);
  // Polyline endpoints land on the plot rectangle inset by the margin.
  CHECK(svg.find("points=\"102.27,526.82") != std::string::npos);

  Plot framed;
  framed.frame = dynamics::Rect{-1, 1, -2, 2};
  const std::string f = render_svg(framed);
  CHECK(f.find(">-1.100<") != std::string::npos);
  CHECK(f.find(">2.200<") != std::string::npos);
}

TEST_CASE("equilibria CSV") {
  const auto eqs = dynamics::find_equilibria(dynamics::PhaseSystem::fase1, {-3, 3, -3, 3});
  std::ostringstream os;
  write_equilibria_csv(os, eqs);
  CHECK(os.str() ==
        "x1,x2,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class,residual\n"
        "-1,0,1,0,-2,0,saddle,0\n"
        "1,0,2,0,-1,0,saddle,0\n");
}
