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

#include "entroscope/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace entroscope {

namespace {

constexpr PartyMask kFirst = 0b001;
constexpr PartyMask kSecond = 0b010;
constexpr PartyMask kThird = 0b100;

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

std::optional<OrthodoxCase> orthodox_case_for(double theta1, double theta2) {
  const double z = 0.0, x = std::numbers::pi / 2;
  if (near(theta1, theta2) && (near(theta1, z) || near(theta1, x))) return OrthodoxCase::Parallel;
  if ((near(theta1, z) && near(theta2, x)) || (near(theta1, x) && near(theta2, z))) {
    return OrthodoxCase::Orthogonal;
  }
  return std::nullopt;
}

VennDiagram from_atoms(std::vector<std::string> parties, std::vector<double> atoms) {
  VennDiagram d;
  d.parties = std::move(parties);
  d.atoms = std::move(atoms);
  d.joints.assign(d.atoms.size(), 0.0);
  for (PartyMask u = 1; u <= d.full_mask(); ++u) d.joints[u] = resum_joint(d, u);
  return d;
}

struct CatLayout {
  std::vector<std::size_t> atomic;
  std::vector<std::size_t> remainder;  // quantum factors outside the atomic party
  std::string atomic_label;
};

CatLayout parse_cat_grouping(bool with_observer, std::string_view grouping) {
  static const std::vector<std::string> kNames{"atom", "gamma", "cat", "observer"};
  std::set<std::size_t> chosen;
  std::size_t start = 0;
  const std::string g(grouping);
  while (start <= g.size()) {
    std::size_t end = g.find_first_of(",+", start);
    if (end == std::string::npos) end = g.size();
    const std::string name = g.substr(start, end - start);
    if (name.empty()) throw ValidationError("cat grouping: empty factor name in '" + g + "'");
    const auto it = std::find(kNames.begin(), kNames.end(), name);
    if (it == kNames.end()) {
      throw ValidationError("cat grouping: unknown factor '" + name +
                            "' (expected atom, gamma, cat or observer)");
    }
    if (name == "observer" && !with_observer) {
      throw ValidationError("cat grouping: references the observer but the scenario has none");
    }
    chosen.insert(static_cast<std::size_t>(it - kNames.begin()));
    start = end + 1;
  }
  CatLayout layout;
  if (chosen == std::set<std::size_t>{0}) {
    layout.atomic = {0};
    layout.remainder = {1};
    layout.atomic_label = "atom";
  } else if (chosen == std::set<std::size_t>{0, 1}) {
    layout.atomic = {0, 1};
    layout.atomic_label = "atom+gamma";
  } else {
    throw ValidationError("cat grouping: atomic party must be 'atom' or 'atom,gamma', got '" + g +
                          "'");
  }
  return layout;
}

}  // namespace

std::string_view scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::EprPair: return "epr_pair";
    case ScenarioId::EprMeasure: return "epr_measure";
    case ScenarioId::Cat: return "cat";
    case ScenarioId::Chsh: return "chsh";
  }
  return "unknown";
}

ScenarioId parse_scenario_id(std::string_view name) {
  for (auto id : {ScenarioId::EprPair, ScenarioId::EprMeasure, ScenarioId::Cat, ScenarioId::Chsh}) {
    if (scenario_name(id) == name) return id;
  }
  throw ValidationError("unknown scenario '" + std::string(name) +
                        "' (expected epr_pair, epr_measure, cat or chsh)");
}

void ScenarioConfig::validate() const {
  switch (id) {
    case ScenarioId::EprPair:
      break;
    case ScenarioId::EprMeasure:
      if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
        throw ValidationError("epr_measure: angles must be finite");
      }
      if (shots > 0 && chunk_size == 0) throw ValidationError("epr_measure: chunk_size must be >= 1");
      break;
    case ScenarioId::Cat:
      parse_cat_grouping(with_observer, grouping);
      break;
    case ScenarioId::Chsh:
      if (angles) {
        for (double a : {angles->a, angles->a_prime, angles->b, angles->b_prime}) {
          if (!std::isfinite(a)) throw ValidationError("chsh: angles must be finite");
        }
      }
      break;
  }
}

double DiagramReport::quantity(std::string_view name) const {
  for (const auto& [k, v] : quantities) {
    if (k == name) return v;
  }
  throw ValidationError("report has no quantity '" + std::string(name) + "'");
}

const NamedDiagram& DiagramReport::diagram(std::string_view name) const {
  for (const auto& d : diagrams) {
    if (d.name == name) return d;
  }
  throw ValidationError("report has no diagram '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- scenarios

DiagramReport run_epr_pair() {
  const auto psi = epr_singlet();
  const PartitionSpec parts({{"L", {0}}, {"R", {1}}});
  const auto joints = joint_entropies(psi, parts);

  DiagramReport r;
  r.scenario = "epr_pair";
  r.diagrams.push_back({"pair", venn_atoms(joints)});
  r.audit = audit_inequalities(joints);
  r.quantities = {
      {"S(L)", joints.at(kFirst)},
      {"S(R)", joints.at(kSecond)},
      {"S(LR)", joints.at(kFirst | kSecond)},
      {"S(L|R)", conditional_entropy(joints, kFirst, kSecond)},
      {"S(R|L)", conditional_entropy(joints, kSecond, kFirst)},
      {"S(L:R)", mutual_entropy(joints, kFirst, kSecond)},
      {"purity", purity(psi.density())},
  };
  return r;
}

DiagramReport run_epr_measure(double theta1, double theta2, std::uint64_t shots, std::uint64_t seed,
                              std::uint64_t chunk_size) {
  const BasisAngle a1(theta1), a2(theta2);
  const MeasurementSetup setup({{0, a1, "A1"}, {1, a2, "A2"}});
  setup.check_against(TensorShape::qubits(2), std::vector<std::string>{"Q", "Q1", "Q2"});
  const auto post = premeasure(epr_singlet(), setup);

  const PartitionSpec system_devices({{"Q", {0, 1}}, {"A1", {2}}, {"A2", {3}}});
  const PartitionSpec four({{"Q1", {0}}, {"Q2", {1}}, {"A1", {2}}, {"A2", {3}}});
  const PartitionSpec devices({{"A1", {2}}, {"A2", {3}}});

  const auto j3 = joint_entropies(post, system_devices);
  const auto d3 = venn_atoms(j3);
  const auto jd = device_joints(post, setup, devices);
  const auto dd = venn_atoms(jd);
  const auto d4 = venn_atoms(joint_entropies(post, four));

  DiagramReport r;
  r.scenario = "epr_measure";
  r.parameters = {{"theta1", a1.radians()}, {"theta2", a2.radians()}, {"shots", shots}};
  r.seed = seed;
  r.diagrams = {{"system_devices", d3}, {"devices", dd}, {"four_party", d4}};
  r.audit = audit_inequalities(j3);

  const auto probs = outcome_probabilities(post, setup.device_factors(2));
  r.quantities = {
      {"S(Q)", j3.at(kFirst)},
      {"S(A1)", j3.at(kSecond)},
      {"S(A2)", j3.at(kThird)},
      {"device_mutual", mutual_entropy(jd, kFirst, kSecond)},
      {"ternary_center", ternary_center(d3)},
      {"system_devices_mutual", mutual_entropy(j3, kFirst, kSecond | kThird)},
      {"purity", purity(post.density())},
      {"P(00)", probs[0]},
      {"P(01)", probs[1]},
      {"P(10)", probs[2]},
      {"P(11)", probs[3]},
  };
  r.notes.push_back(
      "ternary_center is S(Q:A1:A2); system_devices_mutual is the bipartite S(Q:A1A2), which "
      "equals 2 S(Q) for any pure joint state");

  if (shots > 0) {
    SamplingPlan plan{shots, seed, chunk_size, 1};
    const auto records = sample_records(probs, 2, plan);
    SamplingBlock s;
    s.shots = shots;
    s.seed = seed;
    s.chunk_size = chunk_size;
    s.devices = setup.device_labels();
    s.exact_probabilities = probs;
    s.empirical_frequencies = empirical_distribution(records, 2);
    s.exact_mutual = two_bit_mutual_information(probs);
    s.empirical_mutual = two_bit_mutual_information(s.empirical_frequencies);
    r.sampling = std::move(s);
  }
  if (const auto c = orthodox_case_for(a1.radians(), a2.radians())) r.orthodox = orthodox_reference(*c);
  return r;
}

DiagramReport run_cat(bool with_observer, std::string_view grouping) {
  const auto layout = parse_cat_grouping(with_observer, grouping);
  const auto psi = cat_chain(with_observer);

  std::vector<std::size_t> cat_side{2};
  cat_side.insert(cat_side.end(), layout.remainder.begin(), layout.remainder.end());
  std::sort(cat_side.begin(), cat_side.end());
  const std::string cat_label = layout.remainder.empty() ? "cat" : "cat+gamma";

  DiagramReport r;
  r.scenario = "cat";
  r.parameters = {{"with_observer", with_observer}, {"grouping", std::string(grouping)}};

  const double s_cat = von_neumann_entropy(partial_trace(psi, std::vector<std::size_t>{2}));

  if (with_observer) {
    const PartitionSpec chain({{layout.atomic_label, layout.atomic}, {cat_label, cat_side}, {"observer", {3}}});
    const auto j = joint_entropies(psi, chain);
    const auto d = venn_atoms(j);
    const PartitionSpec pair({{"cat", {2}}, {"observer", {3}}});
    const auto jp = reduced_joint_entropies(psi, pair);

    r.diagrams = {{"atomic_cat_observer", d}, {"cat_observer", venn_atoms(jp)}};
    r.audit = audit_inequalities(j);
    r.quantities = {
        {"S(cat)", s_cat},
        {"cat_observer_mutual", mutual_entropy(jp, kFirst, kSecond)},
        {"ternary_center", ternary_center(d)},
        {"atomic_rest_mutual", mutual_entropy(j, kFirst, kSecond | kThird)},
        {"purity", purity(psi.density())},
    };
    if (!layout.remainder.empty()) {
      // The same center with gamma discarded instead of grouped with the cat.
      const PartitionSpec traced({{"atom", {0}}, {"cat", {2}}, {"observer", {3}}});
      const auto dt = venn_atoms(reduced_joint_entropies(psi, traced));
      r.diagrams.push_back({"atom_cat_observer_gamma_traced", dt});
      r.quantities.emplace_back("center_gamma_traced", ternary_center(dt));
      r.notes.push_back(
          "with the atom-only grouping the unobserved gamma factor is grouped with the cat so the "
          "three parties stay a pure state; center_gamma_traced discards it instead");
    }
  } else {
    const PartitionSpec chain({{layout.atomic_label, layout.atomic}, {cat_label, cat_side}});
    const auto j = joint_entropies(psi, chain);
    r.diagrams = {{"atomic_cat", venn_atoms(j)}};
    r.audit = audit_inequalities(j);
    r.quantities = {
        {"S(cat)", s_cat},
        {"S(atomic)", j.at(kFirst)},
        {"atomic_cat_mutual", mutual_entropy(j, kFirst, kSecond)},
        {"purity", purity(psi.density())},
    };
  }
  return r;
}

double chsh_scan_max(std::uint64_t points, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  const double two_pi = 2 * std::numbers::pi;
  for (std::uint64_t i = 0; i < points; ++i) {
    ChshAngles g;
    g.a = two_pi * rng.uniform();
    g.a_prime = two_pi * rng.uniform();
    g.b = two_pi * rng.uniform();
    g.b_prime = two_pi * rng.uniform();
    best = std::max(best, std::abs(chsh_value(g)));
  }
  return best;
}

DiagramReport run_chsh(const std::optional<ChshAngles>& angles, std::uint64_t scan_points,
                       std::uint64_t seed) {
  ChshBlock c;
  c.angles = angles.value_or(ChshAngles::canonical());
  c.value = chsh_value(c.angles);
  c.tsirelson_bound = 2 * std::numbers::sqrt2;
  c.violates_classical = std::abs(c.value) > c.classical_bound + kDerivedTol;
  c.local_deterministic_max = local_deterministic_chsh_max();
  c.scan_points = scan_points;
  if (scan_points > 0) {
    c.scan_seed = seed;
    c.scan_max = chsh_scan_max(scan_points, seed);
  }

  DiagramReport r;
  r.scenario = "chsh";
  r.parameters = {{"angles", std::string(angles ? "explicit" : "canonical")},
                  {"scan_points", scan_points}};
  if (scan_points > 0) r.seed = seed;
  r.quantities = {
      {"S", c.value},
      {"E(a,b)", singlet_correlator(c.angles.a, c.angles.b)},
      {"E(a,b')", singlet_correlator(c.angles.a, c.angles.b_prime)},
      {"E(a',b)", singlet_correlator(c.angles.a_prime, c.angles.b)},
      {"E(a',b')", singlet_correlator(c.angles.a_prime, c.angles.b_prime)},
  };
  r.chsh = c;
  return r;
}

DiagramReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  switch (config.id) {
    case ScenarioId::EprPair: return run_epr_pair();
    case ScenarioId::EprMeasure:
      return run_epr_measure(config.theta1, config.theta2, config.shots, config.seed,
                             config.chunk_size);
    case ScenarioId::Cat: return run_cat(config.with_observer, config.grouping);
    case ScenarioId::Chsh: return run_chsh(config.angles, config.scan_points, config.seed);
  }
  throw ValidationError("unknown scenario");
}

OrthodoxReference orthodox_reference(OrthodoxCase which) {
  // Masks: Q = 1, A1 = 2, A2 = 4.
  OrthodoxReference o;
  o.label = "orthodox expectation \xE2\x80\x94 not derivable from any joint state";
  o.warning =
      "no classical five-variable diagram (Q, A1[z], A1[x], A2[z], A2[x]) is consistent with both "
      "cases: it would assign simultaneous values to incompatible spin projections";
  if (which == OrthodoxCase::Parallel) {
    o.case_name = "parallel";
    // Q holds two independent bits; both devices copy the same one.
    o.diagram = from_atoms({"Q", "A1", "A2"}, {0, 1, 0, 0, 0, 0, 0, 1});
  } else {
    o.case_name = "orthogonal";
    // Each device copies a different one of Q's two bits.
    o.diagram = from_atoms({"Q", "A1", "A2"}, {0, 0, 0, 1, 0, 1, 0, 0});
  }
  return o;
}

DiagramReport run_state_diagram(const DensityOperator& rho, const PartitionSpec& partition) {
  const auto j = joint_entropies(rho, partition);
  DiagramReport r;
  r.scenario = "diagram";
  const auto d = venn_atoms(j);
  r.diagrams.push_back({"state", d});
  r.audit = evaluate_inequalities(j);
  r.quantities.emplace_back("purity", purity(rho));
  r.quantities.emplace_back("S(total)", j.at(j.full_mask()));
  if (j.party_count() == 2) r.quantities.emplace_back("mutual", mutual_entropy(j, kFirst, kSecond));
  if (j.party_count() == 3) r.quantities.emplace_back("ternary_center", ternary_center(d));
  return r;
}

DiagramReport run_state_audit(const DensityOperator& rho, const PartitionSpec& partition) {
  auto r = run_state_diagram(rho, partition);
  r.scenario = "audit";
  r.audit = audit_inequalities(r.diagrams.front().diagram.joint_entropies());
  return r;
}

GridSummary epr_measure_grid(std::size_t points_per_axis, double max_angle) {
  if (points_per_axis < 2) throw ValidationError("epr_measure_grid: need at least 2 points per axis");
  GridSummary g;
  g.min_device_atom = INFINITY;
  const PartitionSpec system_devices({{"Q", {0, 1}}, {"A1", {2}}, {"A2", {3}}});
  const PartitionSpec devices({{"A1", {2}}, {"A2", {3}}});
  const double step = max_angle / static_cast<double>(points_per_axis - 1);
  for (std::size_t i = 0; i < points_per_axis; ++i) {
    for (std::size_t k = 0; k < points_per_axis; ++k) {
      const MeasurementSetup setup({{0, BasisAngle(step * i), "A1"}, {1, BasisAngle(step * k), "A2"}});
      const auto post = premeasure(epr_singlet(), setup);
      const auto d3 = venn_atoms(joint_entropies(post, system_devices));
      const auto dd = venn_atoms(device_joints(post, setup, devices));
      g.max_abs_center = std::max(g.max_abs_center, std::abs(ternary_center(d3)));
      g.max_purity_deviation =
          std::max(g.max_purity_deviation, std::abs(purity(post.density()) - 1.0));
      for (PartyMask m = 1; m <= dd.full_mask(); ++m) {
        g.min_device_atom = std::min(g.min_device_atom, dd.atom(m));
      }
      ++g.points;
    }
  }
  return g;
}

}  // namespace entroscope
