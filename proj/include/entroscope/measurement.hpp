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

#ifndef ENTROSCOPE_MEASUREMENT_HPP
#define ENTROSCOPE_MEASUREMENT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entroscope/entropy.hpp"
#include "entroscope/states.hpp"

namespace entroscope {

/// One device qubit copying the angle-basis bit of one system factor.
struct Tap {
  std::size_t system_factor = 0;
  BasisAngle angle = BasisAngle::z();
  std::string device_label;
};

class MeasurementSetup {
 public:
  explicit MeasurementSetup(std::vector<Tap> taps);

  std::span<const Tap> taps() const { return taps_; }
  std::size_t device_count() const { return taps_.size(); }

  /// Every tapped factor exists and is a qubit; device labels avoid
  /// `system_labels`.
  void check_against(const TensorShape& system, std::span<const std::string> system_labels = {}) const;

  /// Factor indices of the devices once appended after `system_factors` factors.
  std::vector<std::size_t> device_factors(std::size_t system_factors) const;
  std::vector<std::string> device_labels() const;

 private:
  std::vector<Tap> taps_;
};

/// One experimental shot: one bit per device, in tap order.
struct OutcomeRecord {
  std::uint64_t shot = 0;
  std::uint64_t chunk = 0;
  std::uint64_t chunk_seed = 0;
  std::vector<std::uint8_t> bits;

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

/// Appends a |0> device per tap and, tap by tap, applies
/// (R^dagger x 1) CNOT (R x 1) so the device records the system qubit's
/// angle-basis bit. Unitary; no collapse.
PureState premeasure(const PureState& state, const MeasurementSetup& setup);

/// Joint entropies of `grouping` on the post-measurement state; factors not in
/// any group (typically the measured system) are traced out.
JointEntropies device_joints(const PureState& post, const MeasurementSetup& setup,
                             const PartitionSpec& grouping);

/// Computational-basis distribution of the listed factors (all qubits):
/// diagonal of their reduced state, indexed big-endian over `devices`.
std::vector<double> outcome_probabilities(const PureState& post, std::span<const std::size_t> devices);

struct SamplingPlan {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 4096;
  unsigned threads = 1;
};

/// i.i.d. draws from `probabilities` (over device_count-bit strings). Chunk c
/// draws from Rng(seed).split(c); output depends only on (seed, shots,
/// chunk_size), never on `threads`.
std::vector<OutcomeRecord> sample_records(std::span<const double> probabilities,
                                          std::size_t device_count, const SamplingPlan& plan);

std::vector<OutcomeRecord> sample_records(const PureState& post, std::span<const std::size_t> devices,
                                          const SamplingPlan& plan);

/// Relative frequency of every device bitstring.
std::vector<double> empirical_distribution(std::span<const OutcomeRecord> records,
                                           std::size_t device_count);

/// Mutual information (bits) between the two bits of a distribution over 2-bit strings.
double two_bit_mutual_information(std::span<const double> p);

/// <O(x) x O(y)> on the singlet, from the state.
double singlet_correlator(double x, double y);

struct ChshAngles {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;

  static ChshAngles canonical();
};

/// E(a,b) - E(a,b') + E(a',b) + E(a',b') on the singlet.
double chsh_value(const ChshAngles& angles);

/// Largest |S| over all 16 deterministic local +-1 strategies.
double local_deterministic_chsh_max();

}  // namespace entroscope

#endif  // ENTROSCOPE_MEASUREMENT_HPP
