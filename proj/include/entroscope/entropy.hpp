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

#ifndef ENTROSCOPE_ENTROPY_HPP
#define ENTROSCOPE_ENTROPY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entroscope/tensor.hpp"

namespace entroscope {

/// Bit set over the parties of a partition; bit i is party i.
using PartyMask = std::uint32_t;

inline constexpr std::size_t kMaxParties = 5;

struct Party {
  std::string name;
  std::vector<std::size_t> factors;
};

/// Grouping of tensor factors into named, disjoint parties (1 to 5 of them).
class PartitionSpec {
 public:
  explicit PartitionSpec(std::vector<Party> parties);

  /// One party per factor, named by `names` (or "0", "1", ... when empty).
  static PartitionSpec per_factor(const TensorShape& shape, std::vector<std::string> names = {});

  std::span<const Party> parties() const { return parties_; }
  std::size_t size() const { return parties_.size(); }
  PartyMask full_mask() const { return (PartyMask{1} << parties_.size()) - 1; }
  std::vector<std::string> names() const;

  /// Sorted union of the factors of every party in `mask`.
  std::vector<std::size_t> factors_of(PartyMask mask) const;
  /// Mask of a named party; ValidationError for unknown names.
  PartyMask mask_of(std::string_view name) const;

  /// Throws unless every party factor exists in `shape`.
  void check_fits(const TensorShape& shape) const;
  /// Throws unless the parties cover every factor of `shape` exactly.
  void check_covers(const TensorShape& shape) const;

 private:
  std::vector<Party> parties_;
};

/// Joint entropy (bits) of every nonempty party subset, indexed by mask.
struct JointEntropies {
  std::vector<std::string> parties;
  std::vector<double> values;  // size 2^n; values[0] = 0

  std::size_t party_count() const { return parties.size(); }
  PartyMask full_mask() const { return (PartyMask{1} << parties.size()) - 1; }
  double at(PartyMask mask) const;
  PartyMask mask_of(std::string_view name) const;
};

/// Entropy Venn diagram: joints and I-measure atoms, both indexed by mask.
/// Atoms may be negative.
struct VennDiagram {
  std::vector<std::string> parties;
  std::vector<double> joints;
  std::vector<double> atoms;

  std::size_t party_count() const { return parties.size(); }
  PartyMask full_mask() const { return (PartyMask{1} << parties.size()) - 1; }
  double atom(PartyMask mask) const;
  double joint(PartyMask mask) const;
  JointEntropies joint_entropies() const { return {parties, joints}; }
};

struct InequalityCheck {
  bool ok = true;
  double worst_slack = 0.0;  // min over instances of (rhs - lhs); +inf when nothing to check
  bool checked = false;
};

struct InequalityAudit {
  std::vector<std::string> parties;
  /// (subset, superset) pairs with S(subset) > S(superset) + 1e-9.
  std::vector<std::pair<PartyMask, PartyMask>> monotonicity_violated;
  InequalityCheck subadditivity;
  InequalityCheck triangle;
  InequalityCheck strong_subadditivity;

  bool physical() const {
    return subadditivity.ok && triangle.ok && strong_subadditivity.ok;
  }
};

/// -sum p log2 p with 0 log 0 = 0. Entries must be >= 0 and sum to 1 (1e-9).
double shannon_entropy(std::span<const double> p);

/// -sum l log2 l over a clamped spectrum.
double spectrum_entropy(std::span<const double> eigenvalues);

double von_neumann_entropy(const DensityOperator& rho);

/// Requires `partition` to cover every factor of the state.
JointEntropies joint_entropies(const DensityOperator& rho, const PartitionSpec& partition);
JointEntropies joint_entropies(const PureState& psi, const PartitionSpec& partition);

/// Like joint_entropies, but factors not named by any party are traced out.
JointEntropies reduced_joint_entropies(const DensityOperator& rho, const PartitionSpec& partition);
JointEntropies reduced_joint_entropies(const PureState& psi, const PartitionSpec& partition);

/// S(A|B) = S(AB) - S(B). A and B must be disjoint and nonempty.
double conditional_entropy(const JointEntropies& joints, PartyMask a, PartyMask b);
/// S(A:B) = S(A) + S(B) - S(AB). A and B must be disjoint and nonempty.
double mutual_entropy(const JointEntropies& joints, PartyMask a, PartyMask b);

/// Solves joints[U] = sum_{T : T & U != 0} atoms[T] by dense elimination.
VennDiagram venn_atoms(const JointEntropies& joints);

/// Sum of atoms intersecting U; inverse of venn_atoms.
double resum_joint(const VennDiagram& diagram, PartyMask u);

/// The all-three-parties atom of a 3-party diagram.
double ternary_center(const VennDiagram& diagram);

/// Monotonicity scan plus subadditivity, triangle and (3+ parties) strong
/// subadditivity over all disjoint subset combinations. Never throws.
InequalityAudit evaluate_inequalities(const JointEntropies& joints);

/// evaluate_inequalities, then throws NumericalError if any inequality that
/// holds for every quantum state is broken beyond 1e-9.
InequalityAudit audit_inequalities(const JointEntropies& joints);

/// Party names of `mask` joined with `sep`, in party order.
std::string subset_label(std::span<const std::string> parties, PartyMask mask,
                         std::string_view sep = "");

}  // namespace entroscope

#endif  // ENTROSCOPE_ENTROPY_HPP
