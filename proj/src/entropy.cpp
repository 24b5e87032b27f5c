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

#include "entroscope/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace entroscope {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void check_mask(PartyMask mask, PartyMask full, const char* what) {
  if (mask == 0 || (mask & ~full) != 0) {
    throw ValidationError(std::string(what) + ": party subset must be nonempty and in range");
  }
}

template <class State>
JointEntropies compute_joints(const State& state, const PartitionSpec& partition) {
  JointEntropies out;
  out.parties = partition.names();
  const PartyMask full = partition.full_mask();
  out.values.assign(std::size_t{full} + 1, 0.0);
  for (PartyMask m = 1; m <= full; ++m) {
    const auto keep = partition.factors_of(m);
    out.values[m] = von_neumann_entropy(partial_trace(state, keep));
  }
  return out;
}

void record(InequalityCheck& check, double slack) {
  check.checked = true;
  check.worst_slack = std::min(check.worst_slack, slack);
  if (slack < -kDerivedTol) check.ok = false;
}

}  // namespace

// ---------------------------------------------------------------- PartitionSpec

PartitionSpec::PartitionSpec(std::vector<Party> parties) : parties_(std::move(parties)) {
  if (parties_.empty() || parties_.size() > kMaxParties) {
    throw ValidationError("PartitionSpec: need 1 to 5 parties, got " +
                          std::to_string(parties_.size()));
  }
  std::set<std::string> names;
  std::set<std::size_t> seen;
  for (auto& p : parties_) {
    if (p.name.empty()) throw ValidationError("PartitionSpec: party names must be nonempty");
    if (!names.insert(p.name).second) {
      throw ValidationError("PartitionSpec: duplicate party name '" + p.name + "'");
    }
    if (p.factors.empty()) {
      throw ValidationError("PartitionSpec: party '" + p.name + "' has no factors");
    }
    std::sort(p.factors.begin(), p.factors.end());
    for (auto f : p.factors) {
      if (!seen.insert(f).second) {
        throw ValidationError("PartitionSpec: factor " + std::to_string(f) +
                              " assigned to more than one party");
      }
    }
  }
}

PartitionSpec PartitionSpec::per_factor(const TensorShape& shape, std::vector<std::string> names) {
  const std::size_t n = shape.factor_count();
  if (!names.empty() && names.size() != n) {
    throw ValidationError("PartitionSpec::per_factor: " + std::to_string(names.size()) +
                          " names for " + std::to_string(n) + " factors");
  }
  std::vector<Party> parties;
  for (std::size_t k = 0; k < n; ++k) {
    parties.push_back({names.empty() ? std::to_string(k) : names[k], {k}});
  }
  return PartitionSpec(std::move(parties));
}

std::vector<std::string> PartitionSpec::names() const {
  std::vector<std::string> out;
  for (const auto& p : parties_) out.push_back(p.name);
  return out;
}

std::vector<std::size_t> PartitionSpec::factors_of(PartyMask mask) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (mask & (PartyMask{1} << i)) {
      out.insert(out.end(), parties_[i].factors.begin(), parties_[i].factors.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartyMask PartitionSpec::mask_of(std::string_view name) const {
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (parties_[i].name == name) return PartyMask{1} << i;
  }
  throw ValidationError("unknown party '" + std::string(name) + "'");
}

void PartitionSpec::check_fits(const TensorShape& shape) const {
  for (const auto& p : parties_) {
    for (auto f : p.factors) {
      if (f >= shape.factor_count()) {
        throw ValidationError("PartitionSpec: party '" + p.name + "' names factor " +
                              std::to_string(f) + " but the state has " +
                              std::to_string(shape.factor_count()) + " factors");
      }
    }
  }
}

void PartitionSpec::check_covers(const TensorShape& shape) const {
  check_fits(shape);
  const auto all = factors_of(full_mask());
  if (all.size() != shape.factor_count()) {
    throw ValidationError("PartitionSpec: parties cover " + std::to_string(all.size()) + " of " +
                          std::to_string(shape.factor_count()) + " factors");
  }
}

// ---------------------------------------------------------------- containers

double JointEntropies::at(PartyMask mask) const {
  check_mask(mask, full_mask(), "JointEntropies");
  return values.at(mask);
}

PartyMask JointEntropies::mask_of(std::string_view name) const {
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (parties[i] == name) return PartyMask{1} << i;
  }
  throw ValidationError("unknown party '" + std::string(name) + "'");
}

double VennDiagram::atom(PartyMask mask) const {
  check_mask(mask, full_mask(), "VennDiagram");
  return atoms.at(mask);
}

double VennDiagram::joint(PartyMask mask) const {
  check_mask(mask, full_mask(), "VennDiagram");
  return joints.at(mask);
}

std::string subset_label(std::span<const std::string> parties, PartyMask mask,
                         std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (!(mask & (PartyMask{1} << i))) continue;
    if (!out.empty()) out += sep;
    out += parties[i];
  }
  return out;
}

// ---------------------------------------------------------------- entropies

double shannon_entropy(std::span<const double> p) {
  if (p.empty()) throw ValidationError("shannon_entropy: empty distribution");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) {
      throw ValidationError("shannon_entropy: entry " + std::to_string(i) + " = " + fmt(p[i]) +
                            " is negative");
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kDerivedTol) {
    throw ValidationError("shannon_entropy: probabilities sum to " + fmt(sum));
  }
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double spectrum_entropy(std::span<const double> eigenvalues) {
  const auto clamped = clamp_spectrum({eigenvalues.begin(), eigenvalues.end()});
  double s = 0.0;
  for (double l : clamped) {
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return spectrum_entropy(hermitian_eigenvalues(rho.matrix()));
}

JointEntropies joint_entropies(const DensityOperator& rho, const PartitionSpec& partition) {
  partition.check_covers(rho.shape());
  return compute_joints(rho, partition);
}

JointEntropies joint_entropies(const PureState& psi, const PartitionSpec& partition) {
  partition.check_covers(psi.shape());
  return compute_joints(psi, partition);
}

JointEntropies reduced_joint_entropies(const DensityOperator& rho, const PartitionSpec& partition) {
  partition.check_fits(rho.shape());
  return compute_joints(rho, partition);
}

JointEntropies reduced_joint_entropies(const PureState& psi, const PartitionSpec& partition) {
  partition.check_fits(psi.shape());
  return compute_joints(psi, partition);
}

double conditional_entropy(const JointEntropies& joints, PartyMask a, PartyMask b) {
  check_mask(a, joints.full_mask(), "conditional_entropy");
  check_mask(b, joints.full_mask(), "conditional_entropy");
  if (a & b) throw ValidationError("conditional_entropy: subsets overlap");
  return joints.at(a | b) - joints.at(b);
}

double mutual_entropy(const JointEntropies& joints, PartyMask a, PartyMask b) {
  check_mask(a, joints.full_mask(), "mutual_entropy");
  check_mask(b, joints.full_mask(), "mutual_entropy");
  if (a & b) throw ValidationError("mutual_entropy: subsets overlap");
  return joints.at(a) + joints.at(b) - joints.at(a | b);
}

// ---------------------------------------------------------------- Venn atoms

VennDiagram venn_atoms(const JointEntropies& joints) {
  const std::size_t n = joints.party_count();
  if (n == 0 || n > kMaxParties) throw ValidationError("venn_atoms: need 1 to 5 parties");
  const PartyMask full = joints.full_mask();
  if (joints.values.size() != std::size_t{full} + 1) {
    throw ValidationError("venn_atoms: joints incomplete");
  }
  const std::size_t m = full;  // unknowns: masks 1..full

  // Row U, column T: 1 when T intersects U.
  std::vector<double> a(m * (m + 1), 0.0);
  const std::size_t w = m + 1;
  for (std::size_t r = 0; r < m; ++r) {
    const PartyMask u = static_cast<PartyMask>(r + 1);
    for (std::size_t c = 0; c < m; ++c) {
      const PartyMask t = static_cast<PartyMask>(c + 1);
      a[r * w + c] = (u & t) ? 1.0 : 0.0;
    }
    a[r * w + m] = joints.values[u];
  }

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r * w + col]) > std::abs(a[pivot * w + col])) pivot = r;
    }
    if (std::abs(a[pivot * w + col]) < 1e-12) {
      throw NumericalError("venn_atoms: singular inclusion system");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < w; ++c) std::swap(a[pivot * w + c], a[col * w + c]);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r * w + col] / a[col * w + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < w; ++c) a[r * w + c] -= f * a[col * w + c];
    }
  }

  VennDiagram d;
  d.parties = joints.parties;
  d.joints = joints.values;
  d.atoms.assign(std::size_t{full} + 1, 0.0);
  for (std::size_t r = 0; r < m; ++r) d.atoms[r + 1] = a[r * w + m] / a[r * w + r];

  for (PartyMask u = 1; u <= full; ++u) {
    const double residual = std::abs(resum_joint(d, u) - d.joints[u]);
    if (residual > kDerivedTol) {
      throw NumericalError("venn_atoms: residual " + fmt(residual) + " exceeds 1e-9");
    }
  }
  return d;
}

double resum_joint(const VennDiagram& diagram, PartyMask u) {
  double s = 0.0;
  for (PartyMask t = 1; t <= diagram.full_mask(); ++t) {
    if (t & u) s += diagram.atoms.at(t);
  }
  return s;
}

double ternary_center(const VennDiagram& diagram) {
  if (diagram.party_count() != 3) {
    throw ValidationError("ternary_center: diagram has " +
                          std::to_string(diagram.party_count()) +
                          " parties; group them into exactly 3 first");
  }
  return diagram.atom(0b111);
}

// ---------------------------------------------------------------- inequalities

InequalityAudit evaluate_inequalities(const JointEntropies& joints) {
  const std::size_t n = joints.party_count();
  const PartyMask full = joints.full_mask();
  if (joints.values.size() != std::size_t{full} + 1) {
    throw ValidationError("audit: joints incomplete");
  }
  const auto& s = joints.values;

  InequalityAudit audit;
  audit.parties = joints.parties;
  constexpr double inf = std::numeric_limits<double>::infinity();
  audit.subadditivity.worst_slack = inf;
  audit.triangle.worst_slack = inf;
  audit.strong_subadditivity.worst_slack = inf;

  for (PartyMask sub = 1; sub <= full; ++sub) {
    for (PartyMask sup = 1; sup <= full; ++sup) {
      if (sub == sup || (sub & ~sup) != 0) continue;
      if (s[sub] > s[sup] + kDerivedTol) audit.monotonicity_violated.emplace_back(sub, sup);
    }
  }

  // Disjoint pairs (A, B).
  for (PartyMask a = 1; a <= full; ++a) {
    for (PartyMask b = 1; b <= full; ++b) {
      if (a & b) continue;
      record(audit.subadditivity, s[a] + s[b] - s[a | b]);
      record(audit.triangle, s[a | b] - std::abs(s[a] - s[b]));
    }
  }

  // Disjoint triples (A, B, C): S(AB) + S(BC) >= S(ABC) + S(B).
  if (n >= 3) {
    for (PartyMask a = 1; a <= full; ++a) {
      for (PartyMask b = 1; b <= full; ++b) {
        if (a & b) continue;
        for (PartyMask c = 1; c <= full; ++c) {
          if ((c & a) || (c & b)) continue;
          record(audit.strong_subadditivity, s[a | b] + s[b | c] - s[a | b | c] - s[b]);
        }
      }
    }
  }
  return audit;
}

InequalityAudit audit_inequalities(const JointEntropies& joints) {
  auto audit = evaluate_inequalities(joints);
  if (!audit.physical()) {
    const double worst = std::min({audit.subadditivity.worst_slack, audit.triangle.worst_slack,
                                   audit.strong_subadditivity.worst_slack});
    throw NumericalError("non-physical state or numerical fault (entropy inequality slack " +
                         fmt(worst) + ")");
  }
  return audit;
}

}  // namespace entroscope
