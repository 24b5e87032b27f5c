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

// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "entroscope/entroscope.h"

namespace {

std::string render(const entroscope_report* r, entroscope_format f) {
  char* text = nullptr;
  REQUIRE(entroscope_report_render(r, f, &text) == ENTROSCOPE_OK);
  std::string s(text);
  entroscope_string_free(text);
  return s;
}

}  // namespace

TEST_CASE("version string") { CHECK(std::string(entroscope_version()) == "1.0.0"); }

TEST_CASE("parameter defaults") {
  entroscope_scenario_params p;
  entroscope_scenario_params_init(&p);
  CHECK(p.seed == 1u);
  CHECK(p.chunk_size == 4096u);
  CHECK(p.shots == 0u);
  CHECK(p.grouping == nullptr);
}

TEST_CASE("running a scenario and reading quantities") {
  entroscope_scenario_params p;
  entroscope_scenario_params_init(&p);
  entroscope_report* r = nullptr;
  REQUIRE(entroscope_run_scenario("epr_pair", &p, &r) == ENTROSCOPE_OK);
  double v = 0.0;
  CHECK(entroscope_report_quantity(r, "S(L:R)", &v) == ENTROSCOPE_OK);
  CHECK(std::abs(v - 2.0) < 1e-9);
  CHECK(entroscope_report_quantity(r, "missing", &v) == ENTROSCOPE_ERR_VALIDATION);
  CHECK(render(r, ENTROSCOPE_FORMAT_JSON) == render(r, ENTROSCOPE_FORMAT_JSON));
  CHECK(render(r, ENTROSCOPE_FORMAT_TABLE).find("L:R") != std::string::npos);
  CHECK(entroscope_report_render(r, static_cast<entroscope_format>(9), nullptr) == ENTROSCOPE_ERR_ARGUMENT);
  entroscope_report_free(r);
}

TEST_CASE("errors map to status codes") {
  entroscope_scenario_params p;
  entroscope_scenario_params_init(&p);
  entroscope_report* r = nullptr;
  CHECK(entroscope_run_scenario("nope", &p, &r) == ENTROSCOPE_ERR_VALIDATION);
  CHECK(r == nullptr);
  CHECK(std::string(entroscope_last_error()).find("nope") != std::string::npos);
  CHECK(entroscope_run_scenario(nullptr, &p, &r) == ENTROSCOPE_ERR_ARGUMENT);
  p.grouping = "cat";
  CHECK(entroscope_run_scenario("cat", &p, &r) == ENTROSCOPE_ERR_VALIDATION);
  double v = 0.0;
  CHECK(entroscope_parse_angle("sideways", &v) == ENTROSCOPE_ERR_VALIDATION);
  CHECK(entroscope_parse_angle("x", &v) == ENTROSCOPE_OK);
}

TEST_CASE("state handles") {
  entroscope_state* s = nullptr;
  REQUIRE(entroscope_state_load(ENTROSCOPE_TEST_DATA "/epr.json", &s) == ENTROSCOPE_OK);
  CHECK(entroscope_state_factor_count(s) == 2u);
  entroscope_report* r = nullptr;
  REQUIRE(entroscope_state_diagram(s, "L=0;R=1", &r) == ENTROSCOPE_OK);
  entroscope_report_free(r);
  REQUIRE(entroscope_state_audit(s, nullptr, &r) == ENTROSCOPE_OK);
  CHECK(render(r, ENTROSCOPE_FORMAT_TABLE).find("monotonicity violated") != std::string::npos);
  entroscope_report_free(r);
  CHECK(entroscope_state_diagram(s, "L=0;R=7", &r) == ENTROSCOPE_ERR_VALIDATION);
  entroscope_state_free(s);

  CHECK(entroscope_state_load(ENTROSCOPE_TEST_DATA "/bad_trace.json", &s) == ENTROSCOPE_ERR_VALIDATION);
  CHECK(s == nullptr);
  CHECK(entroscope_state_parse("{", &s) == ENTROSCOPE_ERR_VALIDATION);
}

TEST_CASE("grid entry point") {
  double center = 1.0, purity = 1.0;
  REQUIRE(entroscope_epr_grid(4, 1.5707963267948966, &center, &purity) == ENTROSCOPE_OK);
  CHECK(center < 1e-9);
  CHECK(purity < 1e-9);
  CHECK(entroscope_epr_grid(1, 1.0, &center, &purity) == ENTROSCOPE_ERR_VALIDATION);
}
