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

#ifndef ENTROSCOPE_IO_HPP
#define ENTROSCOPE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entroscope/scenario.hpp"

namespace entroscope {

/// Fixed 9-fractional-digit rendering used by both JSON and tables; values
/// that round to zero never carry a minus sign.
std::string format_bits(double x);

/// Canonical report JSON: fixed key order, 2-space indent, numbers via
/// format_bits, trailing newline.
std::string report_to_json(const DiagramReport& report);
/// Inverse of report_to_json. ValidationError names the offending field.
DiagramReport report_from_json(std::string_view text);

/// Region label of one atom: "L|R", "A:B|C", "A:B:C".
std::string region_label(std::span<const std::string> parties, PartyMask mask);

/// Order in which atoms are listed: 2 parties read left to right
/// (L|R, L:R, R|L); otherwise by subset size, then mask.
std::vector<PartyMask> region_order(std::size_t party_count);

/// Fixed-width atom table for 2 or 3 parties; plain subset listing beyond that.
std::string render_venn_table(const VennDiagram& diagram);
std::string render_report_table(const DiagramReport& report);

using LoadedState = std::variant<PureState, DensityOperator>;

/// {"kind": "pure"|"density", "dims": [...], "data": [[re, im], ...]}
LoadedState parse_state_json(std::string_view text);
LoadedState load_state_file(const std::filesystem::path& path);
std::string state_to_json(const LoadedState& state);
DensityOperator to_density(const LoadedState& state);
const TensorShape& state_shape(const LoadedState& state);

/// "L=0;R=1" or "Q=0,1;A1=2;A2=3".
PartitionSpec parse_partition(std::string_view text);

/// Radians, or the aliases "z" (0) and "x" (pi/2).
double parse_angle(std::string_view text);

}  // namespace entroscope

#endif  // ENTROSCOPE_IO_HPP
