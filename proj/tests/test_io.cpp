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

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "doctest.h"
#include "entroscope/io.hpp"

using namespace entroscope;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string validation_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("fixed-point number formatting") {
  CHECK(format_bits(1.0) == "1.000000000");
  CHECK(format_bits(-1.0) == "-1.000000000");
  CHECK(format_bits(-1e-13) == "0.000000000");
  CHECK(format_bits(-0.0) == "0.000000000");
  CHECK(format_bits(2 * std::numbers::sqrt2) == "2.828427125");
}

TEST_CASE("report JSON round-trips through the parser") {
  for (const auto& r : {run_epr_pair(), run_epr_measure(0, std::numbers::pi / 2, 2000, 5),
                        run_cat(true, "atom"), run_chsh(std::nullopt, 50, 2)}) {
    const auto text = report_to_json(r);
    CHECK(text.back() == '\n');
    const auto back = report_from_json(text);
    CHECK(back.scenario == r.scenario);
    CHECK(back.quantities.size() == r.quantities.size());
    CHECK(report_to_json(back) == text);
  }
}

TEST_CASE("report JSON layout") {
  const auto text = report_to_json(run_epr_pair());
  CHECK(text.rfind("{\n  \"schema_version\": \"1.0.0\",\n  \"tool_version\": \"1.0.0\"", 0) == 0);
  CHECK(contains(text, "\"parties\": [\"L\", \"R\"]"));
  CHECK(contains(text, "\"region\": \"L:R\""));
  CHECK(contains(text, "\"bits\": 2.000000000"));
  CHECK_FALSE(contains(text, "-0.000000000"));
}

TEST_CASE("report parser names the bad field") {
  CHECK(contains(validation_message([] { report_from_json("{}"); }), "schema_version"));
  CHECK(contains(validation_message([] { report_from_json("not json"); }), "JSON"));
}

TEST_CASE("region labels and ordering") {
  const std::vector<std::string> two{"L", "R"};
  CHECK(region_label(two, 0b01) == "L|R");
  CHECK(region_label(two, 0b11) == "L:R");
  const std::vector<std::string> three{"Q", "A1", "A2"};
  CHECK(region_label(three, 0b001) == "Q|A1,A2");
  CHECK(region_label(three, 0b011) == "Q:A1|A2");
  CHECK(region_label(three, 0b111) == "Q:A1:A2");
  CHECK(region_order(2) == std::vector<PartyMask>{1, 3, 2});
  CHECK(region_order(3) == std::vector<PartyMask>{1, 2, 4, 3, 5, 6, 7});
}

TEST_CASE("tables") {
  const auto table = render_report_table(run_epr_pair());
  CHECK(contains(table, "L:R"));
  CHECK(contains(table, "+2.000000000"));
  CHECK(contains(table, "monotonicity violated"));
  const auto g = ghz(4);
  const auto wide = render_venn_table(venn_atoms(joint_entropies(g, PartitionSpec::per_factor(g.shape()))));
  CHECK_FALSE(wide.empty());
}

TEST_CASE("state files") {
  const auto loaded = load_state_file(std::string(ENTROSCOPE_TEST_DATA) + "/epr.json");
  REQUIRE(std::holds_alternative<PureState>(loaded));
  CHECK(state_shape(loaded) == TensorShape::qubits(2));
  CHECK(max_abs_diff(to_density(loaded).matrix(), epr_singlet().density().matrix()) < 1e-12);
  const auto again = parse_state_json(state_to_json(loaded));
  CHECK(max_abs_diff(to_density(again).matrix(), to_density(loaded).matrix()) < 1e-15);
}

TEST_CASE("state file errors") {
  const std::string dir = ENTROSCOPE_TEST_DATA;
  CHECK(contains(validation_message([&] { load_state_file(dir + "/bad_trace.json"); }), "trace"));
  CHECK(contains(validation_message([&] { load_state_file(dir + "/dims_mismatch.json"); }),
                 "state.data: dims product 4 requires 4 entries but data has 3"));
  CHECK_THROWS_AS(load_state_file(dir + "/missing.json"), ValidationError);
  CHECK(contains(validation_message([] { parse_state_json(R"({"kind":"mixed","dims":[2],"data":[]})"); }),
                 "state.kind"));
  CHECK(contains(validation_message([] { parse_state_json(R"({"kind":"pure","dims":[1],"data":[]})"); }),
                 "state.dims[0]"));
}

TEST_CASE("density state files") {
  const auto s = parse_state_json(R"({"kind":"density","dims":[2],"data":[[0.5,0],[0,0],[0,0],[0.5,0]]})");
  REQUIRE(std::holds_alternative<DensityOperator>(s));
  CHECK(purity(std::get<DensityOperator>(s)) == doctest::Approx(0.5));
}

TEST_CASE("partition parsing") {
  const auto p = parse_partition("Q=0,1; A1=2 ;A2=3");
  REQUIRE(p.size() == 3);
  CHECK(p.parties()[0].name == "Q");
  CHECK(p.parties()[0].factors == std::vector<std::size_t>{0, 1});
  CHECK(p.parties()[2].name == "A2");
  CHECK_THROWS_AS(parse_partition(""), ValidationError);
  CHECK_THROWS_AS(parse_partition("Q"), ValidationError);
  CHECK_THROWS_AS(parse_partition("Q=a"), ValidationError);
  CHECK_THROWS_AS(parse_partition("Q=0;R=0"), ValidationError);
}

TEST_CASE("angle parsing") {
  CHECK(parse_angle("z") == 0.0);
  CHECK(parse_angle("x") == doctest::Approx(std::numbers::pi / 2));
  CHECK(parse_angle("0.25") == 0.25);
  CHECK(parse_angle("-1.5") == -1.5);
  CHECK_THROWS_AS(parse_angle("y"), ValidationError);
  CHECK_THROWS_AS(parse_angle("1.0rad"), ValidationError);
  CHECK_THROWS_AS(parse_angle("inf"), ValidationError);
}
