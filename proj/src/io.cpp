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

#include "entroscope/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace entroscope {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- writer

bool is_scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void emit(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::null: out += "null"; return;
    case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_bits(x) : "null";
      return;
    }
    case json::value_t::string: out += j.dump(); return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(j.begin(), j.end(), is_scalar)) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], out, indent + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += inner;
        emit(j[i], out, indent + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += inner + json(it.key()).dump() + ": ";
        emit(it.value(), out, indent + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    default: throw ValidationError("report_to_json: unsupported value");
  }
}

// ---------------------------------------------------------------- report -> json

json names_of(std::span<const std::string> parties, PartyMask mask) {
  json a = json::array();
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (mask & (PartyMask{1} << i)) a.push_back(parties[i]);
  }
  return a;
}

std::vector<PartyMask> joint_order(std::size_t n) {
  std::vector<PartyMask> order;
  for (PartyMask m = 1; m < (PartyMask{1} << n); ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](PartyMask a, PartyMask b) { return std::popcount(a) < std::popcount(b); });
  return order;
}

json diagram_json(const VennDiagram& d) {
  json j;
  j["parties"] = d.parties;
  json joints = json::array();
  for (auto m : joint_order(d.party_count())) {
    joints.push_back({{"subset", names_of(d.parties, m)}, {"bits", d.joints.at(m)}});
  }
  j["joints"] = joints;
  json atoms = json::array();
  for (auto m : region_order(d.party_count())) {
    atoms.push_back({{"region", region_label(d.parties, m)},
                     {"subset", names_of(d.parties, m)},
                     {"bits", d.atoms.at(m)}});
  }
  j["atoms"] = atoms;
  return j;
}

json check_json(const InequalityCheck& c) {
  return {{"checked", c.checked},
          {"ok", c.ok},
          {"worst_slack", c.checked ? json(c.worst_slack) : json(nullptr)}};
}

json audit_json(const InequalityAudit& a) {
  json j;
  j["parties"] = a.parties;
  json mono = json::array();
  for (const auto& [sub, sup] : a.monotonicity_violated) {
    mono.push_back({{"subset", names_of(a.parties, sub)}, {"superset", names_of(a.parties, sup)}});
  }
  j["monotonicity_violated"] = mono;
  j["subadditivity"] = check_json(a.subadditivity);
  j["triangle"] = check_json(a.triangle);
  j["strong_subadditivity"] = check_json(a.strong_subadditivity);
  return j;
}

json angles_json(const ChshAngles& g) {
  return {{"a", g.a}, {"a_prime", g.a_prime}, {"b", g.b}, {"b_prime", g.b_prime}};
}

json parameter_json(const ParameterValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

// ---------------------------------------------------------------- json -> report

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) field_error(path + "." + key, "missing");
  return j.at(key);
}

double need_number(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_number()) field_error(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or_inf(const json& v, const std::string& path) {
  if (v.is_null()) return INFINITY;
  if (!v.is_number()) field_error(path, "expected a number or null");
  return v.get<double>();
}

std::string need_string(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_string()) field_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool need_bool(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_boolean()) field_error(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::uint64_t need_count(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_number_unsigned()) field_error(path + "." + key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::string> need_strings(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_array()) field_error(path + "." + key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) field_error(path + "." + key + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::vector<double> need_numbers(const json& j, const char* key, const std::string& path) {
  const auto& v = need(j, key, path);
  if (!v.is_array()) field_error(path + "." + key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) field_error(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

PartyMask mask_from_names(const std::vector<std::string>& parties, const json& names,
                          const std::string& path) {
  if (!names.is_array() || names.empty()) field_error(path, "expected a nonempty array of party names");
  PartyMask m = 0;
  for (const auto& n : names) {
    const auto it = n.is_string() ? std::find(parties.begin(), parties.end(), n.get<std::string>())
                                  : parties.end();
    if (it == parties.end()) field_error(path, "unknown party " + n.dump());
    m |= PartyMask{1} << (it - parties.begin());
  }
  return m;
}

VennDiagram diagram_from(const json& j, const std::string& path) {
  VennDiagram d;
  d.parties = need_strings(j, "parties", path);
  if (d.parties.empty() || d.parties.size() > kMaxParties) field_error(path + ".parties", "need 1 to 5 parties");
  const std::size_t size = std::size_t{1} << d.parties.size();
  d.joints.assign(size, 0.0);
  d.atoms.assign(size, 0.0);
  for (const char* key : {"joints", "atoms"}) {
    const auto& arr = need(j, key, path);
    const std::string p = path + "." + key;
    if (!arr.is_array() || arr.size() != size - 1) field_error(p, "expected " + std::to_string(size - 1) + " entries");
    auto& target = std::string_view(key) == "joints" ? d.joints : d.atoms;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string pi = p + "[" + std::to_string(i) + "]";
      target[mask_from_names(d.parties, need(arr[i], "subset", pi), pi + ".subset")] =
          need_number(arr[i], "bits", pi);
    }
  }
  return d;
}

InequalityCheck check_from(const json& j, const std::string& path) {
  InequalityCheck c;
  c.checked = need_bool(j, "checked", path);
  c.ok = need_bool(j, "ok", path);
  c.worst_slack = number_or_inf(need(j, "worst_slack", path), path + ".worst_slack");
  return c;
}

ChshAngles angles_from(const json& j, const std::string& path) {
  return {need_number(j, "a", path), need_number(j, "a_prime", path), need_number(j, "b", path),
          need_number(j, "b_prime", path)};
}

// ---------------------------------------------------------------- text helpers

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string pad_right(std::string s, std::size_t width) {
  // Count code points so non-ASCII labels still line up.
  std::size_t cols = 0;
  for (unsigned char c : s) cols += (c & 0xC0) != 0x80;
  if (cols < width) s.append(width - cols, ' ');
  return s;
}

std::string parameter_text(const ParameterValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::uint64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_bits(x);
        else return x;
      },
      v);
}

std::string check_text(const char* name, const InequalityCheck& c) {
  std::string s = pad_right(std::string("  ") + name, 28);
  if (!c.checked) return s + "not applicable\n";
  return s + (c.ok ? "ok" : "VIOLATED") + " (worst slack " + format_bits(c.worst_slack) + ")\n";
}

}  // namespace

// ---------------------------------------------------------------- public

std::string format_bits(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s(buf);
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<PartyMask> region_order(std::size_t party_count) {
  if (party_count == 2) return {0b01, 0b11, 0b10};
  return joint_order(party_count);
}

std::string region_label(std::span<const std::string> parties, PartyMask mask) {
  const PartyMask full = (PartyMask{1} << parties.size()) - 1;
  std::string label = subset_label(parties, mask, ":");
  const PartyMask rest = full & ~mask;
  if (rest) label += "|" + subset_label(parties, rest, ",");
  return label;
}

std::string report_to_json(const DiagramReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["scenario"] = r.scenario;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = parameter_json(v);
  j["parameters"] = params;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);

  json diagrams = json::array();
  for (const auto& nd : r.diagrams) {
    json d;
    d["name"] = nd.name;
    const json body = diagram_json(nd.diagram);
    for (auto it = body.begin(); it != body.end(); ++it) d[it.key()] = it.value();
    diagrams.push_back(d);
  }
  j["diagrams"] = diagrams;

  json q = json::object();
  for (const auto& [k, v] : r.quantities) q[k] = v;
  j["quantities"] = q;
  j["audit"] = r.audit ? audit_json(*r.audit) : json(nullptr);

  if (r.sampling) {
    const auto& s = *r.sampling;
    j["sampling"] = {{"shots", s.shots},
                     {"seed", s.seed},
                     {"chunk_size", s.chunk_size},
                     {"devices", s.devices},
                     {"exact_probabilities", s.exact_probabilities},
                     {"empirical_frequencies", s.empirical_frequencies},
                     {"exact_mutual", s.exact_mutual},
                     {"empirical_mutual", s.empirical_mutual}};
  } else {
    j["sampling"] = nullptr;
  }

  if (r.orthodox) {
    const auto& o = *r.orthodox;
    j["orthodox"] = {{"case", o.case_name},
                     {"label", o.label},
                     {"warning", o.warning},
                     {"diagram", diagram_json(o.diagram)}};
  } else {
    j["orthodox"] = nullptr;
  }

  if (r.chsh) {
    const auto& c = *r.chsh;
    j["chsh"] = {{"angles", angles_json(c.angles)},
                 {"value", c.value},
                 {"classical_bound", c.classical_bound},
                 {"tsirelson_bound", c.tsirelson_bound},
                 {"violates_classical", c.violates_classical},
                 {"local_deterministic_max", c.local_deterministic_max},
                 {"scan_points", c.scan_points},
                 {"scan_seed", c.scan_seed},
                 {"scan_max", c.scan_max}};
  } else {
    j["chsh"] = nullptr;
  }
  j["notes"] = r.notes;

  std::string out;
  emit(j, out, 0);
  out += '\n';
  return out;
}

DiagramReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("report: malformed JSON: ") + e.what());
  }
  const std::string root = "report";
  DiagramReport r;
  r.schema_version = need_string(j, "schema_version", root);
  r.tool_version = need_string(j, "tool_version", root);
  r.scenario = need_string(j, "scenario", root);

  const auto& params = need(j, "parameters", root);
  if (!params.is_object()) field_error(root + ".parameters", "expected an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    const auto& v = it.value();
    if (v.is_boolean()) r.parameters.emplace_back(it.key(), v.get<bool>());
    else if (v.is_number_unsigned()) r.parameters.emplace_back(it.key(), v.get<std::uint64_t>());
    else if (v.is_number()) r.parameters.emplace_back(it.key(), v.get<double>());
    else if (v.is_string()) r.parameters.emplace_back(it.key(), v.get<std::string>());
    else field_error(root + ".parameters." + it.key(), "unsupported value");
  }

  const auto& seed = need(j, "seed", root);
  if (!seed.is_null()) r.seed = need_count(j, "seed", root);

  const auto& diagrams = need(j, "diagrams", root);
  if (!diagrams.is_array()) field_error(root + ".diagrams", "expected an array");
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const std::string p = root + ".diagrams[" + std::to_string(i) + "]";
    r.diagrams.push_back({need_string(diagrams[i], "name", p), diagram_from(diagrams[i], p)});
  }

  const auto& q = need(j, "quantities", root);
  if (!q.is_object()) field_error(root + ".quantities", "expected an object");
  for (auto it = q.begin(); it != q.end(); ++it) {
    if (!it.value().is_number()) field_error(root + ".quantities." + it.key(), "expected a number");
    r.quantities.emplace_back(it.key(), it.value().get<double>());
  }

  if (const auto& a = need(j, "audit", root); !a.is_null()) {
    const std::string p = root + ".audit";
    InequalityAudit audit;
    audit.parties = need_strings(a, "parties", p);
    const auto& mono = need(a, "monotonicity_violated", p);
    if (!mono.is_array()) field_error(p + ".monotonicity_violated", "expected an array");
    for (std::size_t i = 0; i < mono.size(); ++i) {
      const std::string pi = p + ".monotonicity_violated[" + std::to_string(i) + "]";
      audit.monotonicity_violated.emplace_back(
          mask_from_names(audit.parties, need(mono[i], "subset", pi), pi + ".subset"),
          mask_from_names(audit.parties, need(mono[i], "superset", pi), pi + ".superset"));
    }
    audit.subadditivity = check_from(need(a, "subadditivity", p), p + ".subadditivity");
    audit.triangle = check_from(need(a, "triangle", p), p + ".triangle");
    audit.strong_subadditivity =
        check_from(need(a, "strong_subadditivity", p), p + ".strong_subadditivity");
    r.audit = std::move(audit);
  }

  if (const auto& s = need(j, "sampling", root); !s.is_null()) {
    const std::string p = root + ".sampling";
    SamplingBlock b;
    b.shots = need_count(s, "shots", p);
    b.seed = need_count(s, "seed", p);
    b.chunk_size = need_count(s, "chunk_size", p);
    b.devices = need_strings(s, "devices", p);
    b.exact_probabilities = need_numbers(s, "exact_probabilities", p);
    b.empirical_frequencies = need_numbers(s, "empirical_frequencies", p);
    b.exact_mutual = need_number(s, "exact_mutual", p);
    b.empirical_mutual = need_number(s, "empirical_mutual", p);
    r.sampling = std::move(b);
  }

  if (const auto& o = need(j, "orthodox", root); !o.is_null()) {
    const std::string p = root + ".orthodox";
    OrthodoxReference ref;
    ref.case_name = need_string(o, "case", p);
    ref.label = need_string(o, "label", p);
    ref.warning = need_string(o, "warning", p);
    ref.diagram = diagram_from(need(o, "diagram", p), p + ".diagram");
    r.orthodox = std::move(ref);
  }

  if (const auto& c = need(j, "chsh", root); !c.is_null()) {
    const std::string p = root + ".chsh";
    ChshBlock b;
    b.angles = angles_from(need(c, "angles", p), p + ".angles");
    b.value = need_number(c, "value", p);
    b.classical_bound = need_number(c, "classical_bound", p);
    b.tsirelson_bound = need_number(c, "tsirelson_bound", p);
    b.violates_classical = need_bool(c, "violates_classical", p);
    b.local_deterministic_max = need_number(c, "local_deterministic_max", p);
    b.scan_points = need_count(c, "scan_points", p);
    b.scan_seed = need_count(c, "scan_seed", p);
    b.scan_max = need_number(c, "scan_max", p);
    r.chsh = b;
  }
  r.notes = need_strings(j, "notes", root);
  return r;
}

std::string render_venn_table(const VennDiagram& d) {
  std::string out;
  const std::size_t n = d.party_count();
  if (n >= 2 && n <= 3) {
    out += pad_right("  region", 22) + "bits\n";
    for (auto m : region_order(n)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%+.9f", d.atoms.at(m));
      std::string v(buf);
      if (v == "-0.000000000") v = "+0.000000000";
      out += pad_right("  " + region_label(d.parties, m), 22) + v + "\n";
    }
    return out;
  }
  out += pad_right("  subset", 22) + pad_right("joint", 16) + "atom\n";
  for (auto m : joint_order(n)) {
    out += pad_right("  {" + subset_label(d.parties, m, ",") + "}", 22) +
           pad_right(format_bits(d.joints.at(m)), 16) + format_bits(d.atoms.at(m)) + "\n";
  }
  return out;
}

std::string render_report_table(const DiagramReport& r) {
  std::ostringstream os;
  os << "scenario: " << r.scenario << " (tool " << r.tool_version << ", schema " << r.schema_version
     << ")\n";
  if (!r.parameters.empty()) {
    os << "parameters:";
    for (const auto& [k, v] : r.parameters) os << " " << k << "=" << parameter_text(v);
    os << "\n";
  }
  if (r.seed) os << "seed: " << *r.seed << "\n";

  for (const auto& nd : r.diagrams) {
    os << "\n[" << nd.name << "] parties: " << subset_label(nd.diagram.parties, nd.diagram.full_mask(), ", ")
       << "\n"
       << render_venn_table(nd.diagram);
  }

  if (!r.quantities.empty()) {
    os << "\nquantities:\n";
    for (const auto& [k, v] : r.quantities) {
      std::string label = k;
      std::replace(label.begin(), label.end(), '_', ' ');
      os << pad_right("  " + label, 28) << format_bits(v) << "\n";
    }
  }

  if (r.audit) {
    const auto& a = *r.audit;
    os << "\naudit:\n";
    if (a.monotonicity_violated.empty()) {
      os << "  monotonicity violations: none\n";
    } else {
      for (const auto& [sub, sup] : a.monotonicity_violated) {
        os << "  monotonicity violated: S(" << subset_label(a.parties, sub, ",") << ") > S("
           << subset_label(a.parties, sup, ",") << ")\n";
      }
    }
    os << check_text("subadditivity", a.subadditivity) << check_text("triangle", a.triangle)
       << check_text("strong subadditivity", a.strong_subadditivity);
  }

  if (r.sampling) {
    const auto& s = *r.sampling;
    os << "\nsampling: " << s.shots << " shots, seed " << s.seed << ", chunk size " << s.chunk_size << "\n";
    const std::size_t k = s.devices.size();
    for (std::size_t o = 0; o < s.exact_probabilities.size(); ++o) {
      std::string bits;
      for (std::size_t d = 0; d < k; ++d) bits += ((o >> (k - 1 - d)) & 1U) ? '1' : '0';
      os << "  P(" << bits << ")  exact " << format_bits(s.exact_probabilities[o]) << "  empirical "
         << format_bits(s.empirical_frequencies.at(o)) << "\n";
    }
    os << pad_right("  device mutual exact", 28) << format_bits(s.exact_mutual) << "\n"
       << pad_right("  device mutual sampled", 28) << format_bits(s.empirical_mutual) << "\n";
  }

  if (r.orthodox) {
    const auto& o = *r.orthodox;
    os << "\northodox reference (" << o.case_name << "): " << o.label << "\n"
       << render_venn_table(o.diagram) << "  warning: " << o.warning << "\n";
  }

  if (r.chsh) {
    const auto& c = *r.chsh;
    os << "\nchsh:\n"
       << "  angles a=" << format_bits(c.angles.a) << " a'=" << format_bits(c.angles.a_prime)
       << " b=" << format_bits(c.angles.b) << " b'=" << format_bits(c.angles.b_prime) << "\n"
       << pad_right("  S", 28) << format_bits(c.value) << "\n"
       << pad_right("  |S|", 28) << format_bits(std::abs(c.value)) << "\n"
       << pad_right("  classical bound", 28) << format_bits(c.classical_bound) << "\n"
       << pad_right("  tsirelson bound", 28) << format_bits(c.tsirelson_bound) << "\n"
       << pad_right("  local deterministic max", 28) << format_bits(c.local_deterministic_max) << "\n";
    if (c.scan_points > 0) {
      os << pad_right("  scan max |S|", 28) << format_bits(c.scan_max) << " (" << c.scan_points
         << " points, seed " << c.scan_seed << ")\n";
    }
    os << "  " << (c.violates_classical ? "violates classical bound 2" : "within classical bound 2")
       << "\n";
  }

  for (const auto& n : r.notes) os << "\nnote: " << n << "\n";
  return os.str();
}

// ---------------------------------------------------------------- states

LoadedState parse_state_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("state: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) field_error("state", "expected an object");
  const std::string kind = need_string(j, "kind", "state");
  if (kind != "pure" && kind != "density") field_error("state.kind", "expected \"pure\" or \"density\"");

  const auto& dims_j = need(j, "dims", "state");
  if (!dims_j.is_array() || dims_j.empty()) field_error("state.dims", "expected a nonempty array");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dims_j.size(); ++i) {
    if (!dims_j[i].is_number_unsigned() || dims_j[i].get<std::uint64_t>() < 2) {
      field_error("state.dims[" + std::to_string(i) + "]", "expected an integer >= 2");
    }
    dims.push_back(dims_j[i].get<std::size_t>());
  }
  std::size_t product = 1;
  for (auto d : dims) {
    product *= d;
    if (product > 4096) field_error("state.dims", "total dimension too large");
  }

  const auto& data = need(j, "data", "state");
  if (!data.is_array()) field_error("state.data", "expected an array of [re, im] pairs");
  std::vector<Complex> values;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& e = data[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      field_error("state.data[" + std::to_string(i) + "]", "expected a [re, im] pair of numbers");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }

  const std::size_t expected = kind == "pure" ? product : product * product;
  if (values.size() != expected) {
    field_error("state.data", "dims product " + std::to_string(product) + " requires " +
                                  std::to_string(expected) + " entries but data has " +
                                  std::to_string(values.size()));
  }
  try {
    if (kind == "pure") return PureState(std::move(values), TensorShape(std::move(dims)));
    return DensityOperator::from_matrix(ComplexMatrix(product, product, std::move(values)),
                                        TensorShape(std::move(dims)));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("state.data: ") + e.what());
  }
}

LoadedState load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open state file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string state_to_json(const LoadedState& state) {
  json j;
  std::span<const Complex> data;
  if (const auto* p = std::get_if<PureState>(&state)) {
    j["kind"] = "pure";
    j["dims"] = std::vector<std::size_t>(p->shape().dims().begin(), p->shape().dims().end());
    data = p->amplitudes();
  } else {
    const auto& rho = std::get<DensityOperator>(state);
    j["kind"] = "density";
    j["dims"] = std::vector<std::size_t>(rho.shape().dims().begin(), rho.shape().dims().end());
    data = rho.matrix().entries();
  }
  json arr = json::array();
  for (const auto& c : data) arr.push_back({c.real(), c.imag()});
  j["data"] = arr;
  // Full precision here: state files must reload bit-exactly.
  return j.dump(2) + "\n";
}

DensityOperator to_density(const LoadedState& state) {
  if (const auto* p = std::get_if<PureState>(&state)) return p->density();
  return std::get<DensityOperator>(state);
}

const TensorShape& state_shape(const LoadedState& state) {
  return std::visit([](const auto& s) -> const TensorShape& { return s.shape(); }, state);
}

PartitionSpec parse_partition(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ValidationError("partition: empty specification");
  std::vector<Party> parties;
  for (const auto& item : split(t, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("partition: expected name=factor[,factor...] in '" + item + "'");
    }
    Party p{trim(std::string_view(item).substr(0, eq)), {}};
    if (p.name.empty()) throw ValidationError("partition: empty party name in '" + item + "'");
    for (const auto& f : split(std::string_view(item).substr(eq + 1), ',')) {
      std::size_t idx = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), idx);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw ValidationError("partition: bad factor index '" + f + "' for party '" + p.name + "'");
      }
      p.factors.push_back(idx);
    }
    parties.push_back(std::move(p));
  }
  return PartitionSpec(std::move(parties));
}

double parse_angle(std::string_view text) {
  const std::string t = trim(text);
  if (t == "z") return 0.0;
  if (t == "x") return std::numbers::pi / 2;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ValidationError("angle: expected radians or 'z'/'x', got '" + t + "'");
  }
  return v;
}

}  // namespace entroscope
