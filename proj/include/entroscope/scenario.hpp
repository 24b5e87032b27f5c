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

#ifndef ENTROSCOPE_SCENARIO_HPP
#define ENTROSCOPE_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "entroscope/entropy.hpp"
#include "entroscope/measurement.hpp"

namespace entroscope {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kSchemaVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 1;

enum class ScenarioId { EprPair, EprMeasure, Cat, Chsh };

std::string_view scenario_name(ScenarioId id);
/// ValidationError for anything outside {epr_pair, epr_measure, cat, chsh}.
ScenarioId parse_scenario_id(std::string_view name);

struct ScenarioConfig {
  ScenarioId id = ScenarioId::EprPair;
  // epr_measure
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::uint64_t shots = 0;  // 0 disables sampling
  std::uint64_t chunk_size = 4096;
  // cat: comma-separated factor names forming the atomic party
  bool with_observer = true;
  std::string grouping = "atom,gamma";
  // chsh: explicit angles, else canonical; scan_points > 0 adds a random scan
  std::optional<ChshAngles> angles;
  std::uint64_t scan_points = 0;

  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

using ParameterValue = std::variant<bool, std::uint64_t, double, std::string>;

struct NamedDiagram {
  std::string name;
  VennDiagram diagram;
};

struct SamplingBlock {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 0;
  std::vector<std::string> devices;
  std::vector<double> exact_probabilities;
  std::vector<double> empirical_frequencies;
  double exact_mutual = 0.0;
  double empirical_mutual = 0.0;
};

enum class OrthodoxCase { Parallel, Orthogonal };

/// Classical expectation for the measured pair: fixed data, not computed
/// from any state.
struct OrthodoxReference {
  std::string case_name;
  std::string label;
  VennDiagram diagram;  // parties Q, A1, A2
  std::string warning;
};

struct ChshBlock {
  ChshAngles angles;
  double value = 0.0;
  double classical_bound = 2.0;
  double tsirelson_bound = 0.0;
  bool violates_classical = false;
  double local_deterministic_max = 0.0;
  std::uint64_t scan_points = 0;
  std::uint64_t scan_seed = 0;
  double scan_max = 0.0;
};

struct DiagramReport {
  std::string schema_version{kSchemaVersion};
  std::string tool_version{kToolVersion};
  std::string scenario;
  std::vector<std::pair<std::string, ParameterValue>> parameters;
  std::optional<std::uint64_t> seed;
  std::vector<NamedDiagram> diagrams;
  std::vector<std::pair<std::string, double>> quantities;
  std::optional<InequalityAudit> audit;
  std::optional<SamplingBlock> sampling;
  std::optional<OrthodoxReference> orthodox;
  std::optional<ChshBlock> chsh;
  std::vector<std::string> notes;

  /// ValidationError when absent.
  double quantity(std::string_view name) const;
  const NamedDiagram& diagram(std::string_view name) const;
};

DiagramReport run_epr_pair();
DiagramReport run_epr_measure(double theta1, double theta2, std::uint64_t shots, std::uint64_t seed,
                              std::uint64_t chunk_size = 4096);
DiagramReport run_cat(bool with_observer, std::string_view grouping);
DiagramReport run_chsh(const std::optional<ChshAngles>& angles, std::uint64_t scan_points,
                       std::uint64_t seed);
DiagramReport run_scenario(const ScenarioConfig& config);

OrthodoxReference orthodox_reference(OrthodoxCase which);

/// Diagram (plus ternary center for 3 parties) of an arbitrary state.
DiagramReport run_state_diagram(const DensityOperator& rho, const PartitionSpec& partition);
/// Same as run_state_diagram but the inequality audit is fatal on failure.
DiagramReport run_state_audit(const DensityOperator& rho, const PartitionSpec& partition);

struct GridSummary {
  std::size_t points = 0;
  double max_abs_center = 0.0;
  double max_purity_deviation = 0.0;
  double min_device_atom = 0.0;
};

/// run_epr_measure's exact part over an n x n grid on [0, max_angle]^2.
GridSummary epr_measure_grid(std::size_t points_per_axis, double max_angle);

/// Max |S| over `points` uniformly random angle quadruples in [0, 2 pi).
double chsh_scan_max(std::uint64_t points, std::uint64_t seed);

}  // namespace entroscope

#endif  // ENTROSCOPE_SCENARIO_HPP
