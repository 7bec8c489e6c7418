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


// solgcf command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "solgcf/solgcf.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string spec;
  std::string init;
  std::string system;
  std::optional<double> span;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  std::string out_csv;
  std::string out_svg;
  std::string config;
};

struct Options {
  CLI::Option* spec = nullptr;
  CLI::Option* init = nullptr;
  CLI::Option* system = nullptr;
  CLI::Option* span = nullptr;
  CLI::Option* tol_abs = nullptr;
  CLI::Option* tol_rel = nullptr;
  CLI::Option* out_csv = nullptr;
  CLI::Option* out_svg = nullptr;
};

// Parses "0.3", "pi", "-pi/2", "3*pi/4" and the like without consulting the
// locale.
double parse_number(std::string text) {
  auto plain = [](const std::string& t) {
    double v = 0.0;
    const char* end = t.data() + t.size();
    auto r = std::from_chars(t.data(), end, v);
    if (t.empty() || r.ec != std::errc() || r.ptr != end) throw UsageError("not a number: '" + t + "'");
    return v;
  };
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
  double sign = 1.0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    if (text[0] == '-') sign = -1.0;
    text.erase(0, 1);
  }
  const auto p = text.find("pi");
  if (p == std::string::npos) return sign * plain(text);
  double factor = 1.0, divisor = 1.0;
  std::string head = text.substr(0, p), tail = text.substr(p + 2);
  if (!head.empty()) {
    if (head.back() != '*') throw UsageError("bad multiple of pi: '" + text + "'");
    head.pop_back();
    factor = plain(head);
  }
  if (!tail.empty()) {
    if (tail[0] != '/') throw UsageError("bad multiple of pi: '" + text + "'");
    divisor = plain(tail.substr(1));
  }
  return sign * factor * std::numbers::pi / divisor;
}

std::vector<double> parse_init(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_number(item));
  if (v.size() != 3) throw UsageError("--init expects y,z,theta");
  return v;
}

std::string config_key(std::string k) {
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

// Fills settings that were not given on the command line from the JSON file.
void apply_config(Settings& s, const Options& o) {
  if (s.config.empty()) return;
  std::ifstream f(s.config);
  if (!f) throw UsageError("cannot read config '" + s.config + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + s.config + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  auto given = [](const CLI::Option* opt) { return opt && opt->count() > 0; };
  auto number = [](const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_number(v.get<std::string>());
    throw UsageError("config key '" + key + "' must be a number");
  };
  auto string = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
    return v.get<std::string>();
  };
  for (const auto& [raw, v] : j.items()) {
    const std::string key = config_key(raw);
    if (key == "spec") {
      if (!given(o.spec)) s.spec = string(v, key);
    } else if (key == "init") {
      if (given(o.init)) continue;
      if (v.is_array()) {
        if (v.size() != 3) throw UsageError("config init expects [y, z, theta]");
        std::ostringstream os;
        os.precision(17);
        for (std::size_t i = 0; i < 3; ++i) os << (i ? "," : "") << number(v[i], key);
        s.init = os.str();
      } else {
        s.init = string(v, key);
      }
    } else if (key == "system") {
      if (!given(o.system)) s.system = string(v, key);
    } else if (key == "span") {
      if (!given(o.span)) s.span = number(v, key);
    } else if (key == "tol_abs") {
      if (!given(o.tol_abs)) s.tol_abs = number(v, key);
    } else if (key == "tol_rel") {
      if (!given(o.tol_rel)) s.tol_rel = number(v, key);
    } else if (key == "out_csv") {
      if (!given(o.out_csv)) s.out_csv = string(v, key);
    } else if (key == "out_svg") {
      if (!given(o.out_svg)) s.out_svg = string(v, key);
    } else {
      throw UsageError("unknown config key '" + raw + "'");
    }
  }
}

void check_tolerances(const Settings& s) {
  if (!(s.tol_abs > 0) || !(s.tol_rel > 0)) throw UsageError("tolerances must be positive");
}

int report(solgcf_status st, const char* what) {
  std::cerr << "solgcf: " << what << ": " << solgcf_status_name(st) << ": " << solgcf_last_error() << '\n';
  return st == SOLGCF_ERR_INVALID_ARGUMENT || st == SOLGCF_ERR_SINGULAR ? kUsage : kNumerical;
}

int run_trace(Settings s, const Options& o) {
  apply_config(s, o);
  if (s.spec.empty()) throw UsageError("trace needs --spec");
  if (s.init.empty()) throw UsageError("trace needs --init y,z,theta");
  check_tolerances(s);
  const auto init = parse_init(s.init);
  solgcf_trace_options opt;
  solgcf_trace_options_default(&opt);
  opt.abs_tol = s.tol_abs;
  opt.rel_tol = s.tol_rel;
  if (s.span) opt.span = *s.span;
  if (s.out_csv.empty()) s.out_csv = "trace.csv";
  if (s.out_svg.empty()) s.out_svg = "trace.svg";

  solgcf_trace* t = nullptr;
  if (auto st = solgcf_trace_create(s.spec.c_str(), init[0], init[1], init[2], &opt, &t); st != SOLGCF_OK)
    return report(st, "trace");
  int code = kOk;
  const solgcf_status run = solgcf_trace_status(t);
  std::printf("forward: %s at s = %.17g\n", solgcf_trace_termination(t, SOLGCF_FORWARD),
              solgcf_trace_s_end(t, SOLGCF_FORWARD));
  std::printf("backward: %s at s = %.17g\n", solgcf_trace_termination(t, SOLGCF_BACKWARD),
              solgcf_trace_s_end(t, SOLGCF_BACKWARD));
  if (run != SOLGCF_OK) {
    std::printf("terminated: %s\n", solgcf_last_error());
    code = kNumerical;
  }
  if (auto st = solgcf_trace_write_csv(t, s.out_csv.c_str()); st != SOLGCF_OK) code = report(st, "csv");
  if (auto st = solgcf_trace_write_svg(t, s.out_svg.c_str()); st != SOLGCF_OK) code = report(st, "svg");
  std::printf("rows: %zu -> %s, %s\n", solgcf_trace_row_count(t), s.out_csv.c_str(), s.out_svg.c_str());
  solgcf_trace_destroy(t);
  return code;
}

int run_phase(Settings s, const Options& o) {
  apply_config(s, o);
  if (s.system.empty()) throw UsageError("phase needs --system fase1|fase3|fase5");
  check_tolerances(s);
  solgcf_portrait_options opt;
  if (auto st = solgcf_portrait_options_default(s.system.c_str(), &opt); st != SOLGCF_OK)
    return report(st, "phase");
  opt.abs_tol = s.tol_abs;
  opt.rel_tol = s.tol_rel;
  if (s.span) opt.span = *s.span;
  if (s.out_csv.empty()) s.out_csv = "equilibria.csv";
  if (s.out_svg.empty()) s.out_svg = "phase.svg";

  solgcf_portrait* p = nullptr;
  if (auto st = solgcf_portrait_create(s.system.c_str(), &opt, &p); st != SOLGCF_OK) return report(st, "phase");
  int code = kOk;
  for (std::size_t i = 0; i < solgcf_portrait_equilibrium_count(p); ++i) {
    solgcf_equilibrium e;
    solgcf_portrait_equilibrium(p, i, &e);
    std::printf("equilibrium (%.17g, %.17g) %s eigenvalues %.17g%+.3gi, %.17g%+.3gi\n", e.x, e.y, e.classification,
                e.eig_re[0], e.eig_im[0], e.eig_re[1], e.eig_im[1]);
  }
  std::printf("trajectories: %zu\n", solgcf_portrait_trajectory_count(p));
  if (auto st = solgcf_portrait_write_equilibria_csv(p, s.out_csv.c_str()); st != SOLGCF_OK) code = report(st, "csv");
  if (auto st = solgcf_portrait_write_svg(p, s.out_svg.c_str()); st != SOLGCF_OK) code = report(st, "svg");
  solgcf_portrait_destroy(p);
  return code;
}

int run_verify(Settings s, const Options& o) {
  apply_config(s, o);
  solgcf_report* r = nullptr;
  if (auto st = solgcf_report_run(1, &r); st != SOLGCF_OK) return report(st, "verify");
  std::fputs(solgcf_report_json(r), stdout);
  for (std::size_t i = 0; i < solgcf_report_check_count(r); ++i) {
    const char* name = nullptr;
    int pass = 0;
    double err = 0.0;
    solgcf_report_check(r, i, &name, &pass, &err);
    std::fprintf(stderr, "%s %s (max_error %.3g)\n", pass ? "PASS" : "FAIL", name, err);
  }
  const int code = solgcf_report_all_pass(r) ? kOk : kVerifyFailed;
  solgcf_report_destroy(r);
  return code;
}

int run_classify(Settings s, const Options& o) {
  apply_config(s, o);
  if (s.spec.empty()) throw UsageError("classify needs --spec");
  char* json = nullptr;
  if (auto st = solgcf_classify(s.spec.c_str(), &json); st != SOLGCF_OK) return report(st, "classify");
  std::fputs(json, stdout);
  solgcf_string_free(json);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss curvature flow solitons on invariant surfaces of Sol3"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(solgcf_version()));

  Settings s;
  struct Sub {
    CLI::App* app;
    Options opt;
  };
  auto common = [&](CLI::App* sub, bool spec, bool init, bool system, bool span, bool tol, bool outputs) {
    Options o;
    sub->add_option("--config", s.config, "JSON file with defaults; command-line flags win");
    if (spec) o.spec = sub->add_option("--spec", s.spec, "invariance,field,curvature, e.g. F1,F2,extrinsic");
    if (init) o.init = sub->add_option("--init", s.init, "initial y,z,theta (theta may use pi)");
    if (system) o.system = sub->add_option("--system", s.system, "fase1, fase3 or fase5");
    if (span) o.span = sub->add_option("--span", s.span, "integration length in each direction");
    if (tol) {
      o.tol_abs = sub->add_option("--tol-abs", s.tol_abs, "absolute tolerance");
      o.tol_rel = sub->add_option("--tol-rel", s.tol_rel, "relative tolerance");
    }
    if (outputs) {
      o.out_csv = sub->add_option("--out-csv", s.out_csv, "CSV output path");
      o.out_svg = sub->add_option("--out-svg", s.out_svg, "SVG output path");
    }
    return Sub{sub, o};
  };
  Sub trace = common(app.add_subcommand("trace", "integrate a generating curve"), true, true, false, true, true, true);
  Sub phase = common(app.add_subcommand("phase", "phase portrait and equilibria"), false, false, true, true, true, true);
  Sub verify = common(app.add_subcommand("verify", "run the verification suite"), false, false, false, false, false,
                      false);
  Sub classify = common(app.add_subcommand("classify", "existence of special solitons"), true, false, false, false,
                        false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (trace.app->parsed()) return run_trace(s, trace.opt);
    if (phase.app->parsed()) return run_phase(s, phase.opt);
    if (verify.app->parsed()) return run_verify(s, verify.opt);
    if (classify.app->parsed()) return run_classify(s, classify.opt);
  } catch (const UsageError& e) {
    std::cerr << "solgcf: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
