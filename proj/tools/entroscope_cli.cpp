// Copyright 2026 The Entroscope Authors
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

// entroscope command-line front end. Talks to the library only through the
// C interface. Exit codes: 0 success, 1 numerical fault, 2 validation error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entroscope/entroscope.h"

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitValidation = 2;

struct ReportDeleter {
  void operator()(entroscope_report* r) const { entroscope_report_free(r); }
};
struct StateDeleter {
  void operator()(entroscope_state* s) const { entroscope_state_free(s); }
};
using ReportPtr = std::unique_ptr<entroscope_report, ReportDeleter>;
using StatePtr = std::unique_ptr<entroscope_state, StateDeleter>;

// Thrown to unwind with a specific exit code after the message is printed.
struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "entroscope: error: " << message << "\n";
  throw Exit{code};
}

void check(entroscope_status s) {
  if (s == ENTROSCOPE_OK) return;
  die(s == ENTROSCOPE_ERR_VALIDATION ? kExitValidation : kExitNumeric, entroscope_last_error());
}

double angle(const std::string& text, const char* flag) {
  double v = 0.0;
  if (entroscope_parse_angle(text.c_str(), &v) != ENTROSCOPE_OK) {
    die(kExitValidation, std::string(flag) + ": " + entroscope_last_error());
  }
  return v;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  std::istringstream is(text);
  if (text.empty() || text[0] == '-' || !(is >> v) || !is.eof()) {
    die(kExitValidation, std::string(what) + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_count(*flag, "--seed");
  if (const char* env = std::getenv("ENTROSCOPE_SEED"); env && *env) {
    return parse_count(env, "ENTROSCOPE_SEED");
  }
  entroscope_scenario_params defaults;
  entroscope_scenario_params_init(&defaults);
  return defaults.seed;
}

void emit(const entroscope_report* report, const std::string& format) {
  char* text = nullptr;
  check(entroscope_report_render(
      report, format == "json" ? ENTROSCOPE_FORMAT_JSON : ENTROSCOPE_FORMAT_TABLE, &text));
  std::fputs(text, stdout);
  entroscope_string_free(text);
}

StatePtr load_state(const std::string& path) {
  entroscope_state* raw = nullptr;
  check(entroscope_state_load(path.c_str(), &raw));
  return StatePtr(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum entropy Venn diagrams, device measurement and CHSH checks", "entroscope"};
  app.set_version_flag("--version", std::string(entroscope_version()));
  app.require_subcommand(1);

  std::string format = "table";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  };

  // scenario
  auto* scenario = app.add_subcommand("scenario", "Run a named scenario");
  std::string scenario_id;
  std::string theta1 = "0", theta2 = "0";
  std::string shots = "0";
  std::optional<std::string> seed;
  std::string grouping = "atom,gamma";
  bool observer = false;
  scenario->add_option("id", scenario_id, "epr_pair | epr_measure | cat | chsh")->required();
  scenario->add_option("--theta1", theta1, "Angle of device A1 (radians, or z / x)");
  scenario->add_option("--theta2", theta2, "Angle of device A2 (radians, or z / x)");
  scenario->add_option("--shots", shots, "Monte Carlo shots (0 disables sampling)");
  scenario->add_option("--seed", seed, "Sampling seed (default: $ENTROSCOPE_SEED or 1)");
  scenario->add_option("--grouping", grouping, "cat: factors of the atomic party (atom | atom,gamma)");
  scenario->add_flag("--observer", observer, "cat: include the observer");
  add_format(scenario);

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Entropy diagram of a state file");
  std::string state_path;
  std::optional<std::string> partition;
  diagram->add_option("--state", state_path, "State JSON file")->required();
  diagram->add_option("--partition", partition, "Parties, e.g. L=0;R=1")->required();
  add_format(diagram);

  // chsh
  auto* chsh = app.add_subcommand("chsh", "CHSH value on the singlet");
  std::optional<std::string> angles;
  std::string scan = "0";
  std::optional<std::string> chsh_seed;
  auto* angles_opt = chsh->add_option("--angles", angles, "a,a',b,b' in radians");
  auto* scan_opt = chsh->add_option("--scan", scan, "Random scan points");
  chsh->add_option("--seed", chsh_seed, "Scan seed (default: $ENTROSCOPE_SEED or 1)");
  angles_opt->excludes(scan_opt);
  add_format(chsh);

  // audit
  auto* audit = app.add_subcommand("audit", "Entropy inequality audit of a state file");
  std::optional<std::string> audit_partition;
  audit->add_option("--state", state_path, "State JSON file")->required();
  audit->add_option("--partition", audit_partition, "Parties (default: one per factor)");
  add_format(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "entroscope: error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    entroscope_report* raw = nullptr;
    if (*scenario) {
      entroscope_scenario_params p;
      entroscope_scenario_params_init(&p);
      p.theta1 = angle(theta1, "--theta1");
      p.theta2 = angle(theta2, "--theta2");
      p.shots = parse_count(shots, "--shots");
      p.seed = resolve_seed(seed);
      p.with_observer = observer ? 1 : 0;
      p.grouping = grouping.c_str();
      check(entroscope_run_scenario(scenario_id.c_str(), &p, &raw));
    } else if (*diagram) {
      const auto state = load_state(state_path);
      check(entroscope_state_diagram(state.get(), partition->c_str(), &raw));
    } else if (*chsh) {
      entroscope_scenario_params p;
      entroscope_scenario_params_init(&p);
      if (angles) {
        std::vector<double> values;
        std::stringstream ss(*angles);
        for (std::string item; std::getline(ss, item, ',');) values.push_back(angle(item, "--angles"));
        if (values.size() != 4) die(kExitValidation, "--angles: expected four comma-separated angles");
        p.use_angles = 1;
        for (int i = 0; i < 4; ++i) p.angles[i] = values[static_cast<std::size_t>(i)];
      }
      p.scan_points = parse_count(scan, "--scan");
      p.seed = resolve_seed(chsh_seed);
      check(entroscope_run_scenario("chsh", &p, &raw));
    } else if (*audit) {
      const auto state = load_state(state_path);
      check(entroscope_state_audit(state.get(), audit_partition ? audit_partition->c_str() : nullptr,
                                   &raw));
    }
    ReportPtr report(raw);
    emit(report.get(), format);
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
