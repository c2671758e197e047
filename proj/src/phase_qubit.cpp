// Copyright 2026 The qpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpt/phase_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpt::phase_qubit {

PhaseQubitParams::PhaseQubitParams(double critical_current, double bias_current,
                                   double capacitance)
    : critical_current_(critical_current),
      bias_current_(bias_current),
      capacitance_(capacitance) {
  if (!(critical_current > 0.0)) {
    throw std::invalid_argument("critical current must be positive");
  }
  if (!(capacitance > 0.0)) {
    throw std::invalid_argument("capacitance must be positive");
  }
  if (!(bias_current >= 0.0)) {
    throw std::invalid_argument("bias current must be non-negative");
  }
  if (bias_current > critical_current) {
    throw std::invalid_argument("bias current exceeds critical current: no stationary phase");
  }
}

double PhaseQubitParams::charging_energy() const {
  const double q = 2.0 * kElementaryCharge;
  return q * q / (2.0 * capacitance_);
}

double PhaseQubitParams::josephson_energy() const {
  return kHbar / (2.0 * kElementaryCharge) * critical_current_;
}

double PhaseQubitParams::josephson_frequency() const {
  return std::sqrt(2.0 * kElementaryCharge * critical_current_ / (kHbar * capacitance_));
}

bool PhaseQubitParams::deep_josephson_regime() const {
  return josephson_energy() / charging_energy() >= kRegimeRatio;
}

double equilibrium_phase(const PhaseQubitParams& params) {
  // The constructor guarantees the ratio lies in [0, 1].
  return std::asin(params.bias_current() / params.critical_current());
}

double plasma_frequency(const PhaseQubitParams& params) {
  const double r = params.bias_current() / params.critical_current();
  return params.josephson_frequency() * std::pow(std::max(0.0, 1.0 - r * r), 0.25);
}

std::vector<double> harmonic_levels(const PhaseQubitParams& params, int k_max) {
  if (k_max < 0) {
    return {};
  }
  const double quantum = kHbar * plasma_frequency(params);
  std::vector<double> levels(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    levels[static_cast<std::size_t>(k)] = quantum * (k + 0.5);
  }
  return levels;
}

ComplexMatrix qubit_hamiltonian(double epsilon) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = -0.5 * epsilon;
  h(1, 1) = 0.5 * epsilon;
  return h;
}

}  // namespace qpt::phase_qubit
