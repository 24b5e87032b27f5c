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

#include "entroscope/measurement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace entroscope {

namespace {

std::vector<std::size_t> strides(const TensorShape& shape) {
  std::vector<std::size_t> s(shape.factor_count(), 1);
  for (std::size_t k = shape.factor_count(); k-- > 1;) s[k - 1] = s[k] * shape.factor_dim(k);
  return s;
}

// Applies a 2x2 matrix to qubit `factor`.
void apply_single(std::vector<Complex>& amps, const TensorShape& shape, std::size_t factor,
                  const ComplexMatrix& u) {
  const std::size_t stride = strides(shape)[factor];
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i / stride) % 2 != 0) continue;
    const Complex a0 = amps[i], a1 = amps[i + stride];
    amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_cnot(std::vector<Complex>& amps, const TensorShape& shape, std::size_t control,
                std::size_t target) {
  const auto s = strides(shape);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i / s[control]) % 2 == 1 && (i / s[target]) % 2 == 0) {
      std::swap(amps[i], amps[i + s[target]]);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- setup

MeasurementSetup::MeasurementSetup(std::vector<Tap> taps) : taps_(std::move(taps)) {
  std::set<std::size_t> factors;
  std::set<std::string> labels;
  for (const auto& t : taps_) {
    if (t.device_label.empty()) throw ValidationError("MeasurementSetup: empty device label");
    if (!factors.insert(t.system_factor).second) {
      throw ValidationError("MeasurementSetup: factor " + std::to_string(t.system_factor) +
                            " tapped twice");
    }
    if (!labels.insert(t.device_label).second) {
      throw ValidationError("MeasurementSetup: duplicate device label '" + t.device_label + "'");
    }
  }
}

void MeasurementSetup::check_against(const TensorShape& system,
                                     std::span<const std::string> system_labels) const {
  for (const auto& t : taps_) {
    if (t.system_factor >= system.factor_count()) {
      throw ValidationError("premeasure: tap on nonexistent factor " +
                            std::to_string(t.system_factor) + " (state has " +
                            std::to_string(system.factor_count()) + " factors)");
    }
    if (system.factor_dim(t.system_factor) != 2) {
      throw ValidationError("premeasure: factor " + std::to_string(t.system_factor) +
                            " is not a qubit");
    }
    if (std::find(system_labels.begin(), system_labels.end(), t.device_label) !=
        system_labels.end()) {
      throw ValidationError("MeasurementSetup: device label '" + t.device_label +
                            "' collides with a system party");
    }
  }
}

std::vector<std::size_t> MeasurementSetup::device_factors(std::size_t system_factors) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < taps_.size(); ++i) out.push_back(system_factors + i);
  return out;
}

std::vector<std::string> MeasurementSetup::device_labels() const {
  std::vector<std::string> out;
  for (const auto& t : taps_) out.push_back(t.device_label);
  return out;
}

// ---------------------------------------------------------------- premeasurement

PureState premeasure(const PureState& state, const MeasurementSetup& setup) {
  setup.check_against(state.shape());
  const std::size_t n = state.shape().factor_count();
  const std::size_t k = setup.device_count();
  if (k == 0) return state;

  const TensorShape shape = state.shape().append(TensorShape::qubits(k));
  const std::size_t ancilla_dim = std::size_t{1} << k;
  std::vector<Complex> amps(shape.total_dim());
  for (std::size_t i = 0; i < state.dimension(); ++i) amps[i * ancilla_dim] = state.amplitudes()[i];

  for (std::size_t t = 0; t < k; ++t) {
    const Tap& tap = setup.taps()[t];
    const auto r = basis_rotation(tap.angle);
    apply_single(amps, shape, tap.system_factor, r);
    apply_cnot(amps, shape, tap.system_factor, n + t);
    apply_single(amps, shape, tap.system_factor, r.adjoint());
  }

  // Renormalize away accumulated rounding; the map is unitary.
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return PureState(std::move(amps), shape);
}

JointEntropies device_joints(const PureState& post, const MeasurementSetup& setup,
                             const PartitionSpec& grouping) {
  if (post.shape().factor_count() < setup.device_count()) {
    throw ValidationError("device_joints: state has fewer factors than the setup has devices");
  }
  return reduced_joint_entropies(post, grouping);
}

std::vector<double> outcome_probabilities(const PureState& post, std::span<const std::size_t> devices) {
  for (auto d : devices) {
    if (d >= post.shape().factor_count() || post.shape().factor_dim(d) != 2) {
      throw ValidationError("outcome_probabilities: factor " + std::to_string(d) +
                            " is not a qubit of the state");
    }
  }
  const auto s = strides(post.shape());
  std::vector<double> p(std::size_t{1} << devices.size(), 0.0);
  for (std::size_t i = 0; i < post.dimension(); ++i) {
    std::size_t outcome = 0;
    for (auto d : devices) outcome = (outcome << 1) | ((i / s[d]) % 2);
    p[outcome] += std::norm(post.amplitudes()[i]);
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (auto& x : p) x /= total;
  return p;
}

// ---------------------------------------------------------------- sampling

std::vector<OutcomeRecord> sample_records(std::span<const double> probabilities,
                                          std::size_t device_count, const SamplingPlan& plan) {
  if (plan.shots == 0) throw ValidationError("sample_records: shots must be >= 1");
  if (plan.chunk_size == 0) throw ValidationError("sample_records: chunk_size must be >= 1");
  if (probabilities.size() != (std::size_t{1} << device_count)) {
    throw ValidationError("sample_records: distribution size does not match device count");
  }
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = (acc += probabilities[i]);
  if (!(acc > 0.0)) throw ValidationError("sample_records: distribution has no mass");
  for (auto& c : cdf) c /= acc;
  // Pin the tail at 1 from the last outcome with mass onward.
  std::size_t last_mass = cdf.size() - 1;
  while (probabilities[last_mass] <= 0.0) --last_mass;
  std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(last_mass), cdf.end(), 1.0);

  const std::uint64_t chunks = (plan.shots + plan.chunk_size - 1) / plan.chunk_size;
  std::vector<std::vector<OutcomeRecord>> per_chunk(chunks);
  const Rng root(plan.seed);

  auto run_chunk = [&](std::uint64_t c) {
    Rng rng = root.split(c);
    const std::uint64_t first = c * plan.chunk_size;
    const std::uint64_t last = std::min(plan.shots, first + plan.chunk_size);
    auto& out = per_chunk[c];
    out.reserve(last - first);
    for (std::uint64_t shot = first; shot < last; ++shot) {
      const double u = rng.uniform();
      // Skip zero-probability outcomes even when u lands on a flat CDF step.
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t outcome = static_cast<std::size_t>(it - cdf.begin());
      OutcomeRecord rec{shot, c, rng.seed(), std::vector<std::uint8_t>(device_count)};
      for (std::size_t d = 0; d < device_count; ++d) {
        rec.bits[d] = static_cast<std::uint8_t>((outcome >> (device_count - 1 - d)) & 1U);
      }
      out.push_back(std::move(rec));
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(plan.threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
      });
    }
  }

  std::vector<OutcomeRecord> records;
  records.reserve(plan.shots);
  for (auto& chunk : per_chunk) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(records));
  }
  return records;
}

std::vector<OutcomeRecord> sample_records(const PureState& post, std::span<const std::size_t> devices,
                                          const SamplingPlan& plan) {
  const auto p = outcome_probabilities(post, devices);
  return sample_records(p, devices.size(), plan);
}

std::vector<double> empirical_distribution(std::span<const OutcomeRecord> records,
                                           std::size_t device_count) {
  if (records.empty()) throw ValidationError("empirical_distribution: no records");
  std::vector<double> freq(std::size_t{1} << device_count, 0.0);
  for (const auto& r : records) {
    if (r.bits.size() != device_count) {
      throw ValidationError("empirical_distribution: record has wrong number of bits");
    }
    std::size_t outcome = 0;
    for (auto b : r.bits) outcome = (outcome << 1) | b;
    freq[outcome] += 1.0;
  }
  for (auto& f : freq) f /= static_cast<double>(records.size());
  return freq;
}

double two_bit_mutual_information(std::span<const double> p) {
  if (p.size() != 4) throw ValidationError("two_bit_mutual_information: need 4 probabilities");
  const std::array<double, 2> first{p[0] + p[1], p[2] + p[3]};
  const std::array<double, 2> second{p[0] + p[2], p[1] + p[3]};
  return std::max(0.0, shannon_entropy(first) + shannon_entropy(second) - shannon_entropy(p));
}

// ---------------------------------------------------------------- CHSH

double singlet_correlator(double x, double y) {
  const auto psi = epr_singlet();
  const auto op = kron(spin_observable(x), spin_observable(y));
  Complex e = 0.0;
  const auto a = psi.amplitudes();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) e += std::conj(a[i]) * op(i, j) * a[j];
  }
  return e.real();
}

ChshAngles ChshAngles::canonical() {
  using std::numbers::pi;
  return {0.0, pi / 2, pi / 4, 3 * pi / 4};
}

double chsh_value(const ChshAngles& g) {
  return singlet_correlator(g.a, g.b) - singlet_correlator(g.a, g.b_prime) +
         singlet_correlator(g.a_prime, g.b) + singlet_correlator(g.a_prime, g.b_prime);
}

double local_deterministic_chsh_max() {
  double best = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    const double a = (mask & 1) ? 1 : -1, ap = (mask & 2) ? 1 : -1;
    const double b = (mask & 4) ? 1 : -1, bp = (mask & 8) ? 1 : -1;
    best = std::max(best, std::abs(a * b - a * bp + ap * b + ap * bp));
  }
  return best;
}

}  // namespace entroscope
