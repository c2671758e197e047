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

#pragma once

#include <vector>

#include "qpt/qmatrix.hpp"

// Harmonic-approximation utilities for a current-biased Josephson junction
// operated as a phase qubit. All quantities are SI.
namespace qpt::phase_qubit {

inline constexpr double kHbar = 1.054571817e-34;             // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C

/// Below this E_J/E_C ratio the deep-Josephson (E_C << E_J) regime is not assumed.
inline constexpr double kRegimeRatio = 100.0;

class PhaseQubitParams {
public:
  /// Throws std::invalid_argument unless I_c > 0, C > 0 and 0 <= I_e <= I_c.
  PhaseQubitParams(double critical_current, double bias_current, double capacitance);

  double critical_current() const { return critical_current_; }
  double bias_current() const { return bias_current_; }
  double capacitance() const { return capacitance_; }

  /// E_C = (2e)^2 / (2C)
  double charging_energy() const;
  /// E_J = (hbar / 2e) I_c
  double josephson_energy() const;
  /// omega_J = sqrt(2e I_c / (hbar C))
  double josephson_frequency() const;
  /// False when E_J / E_C < 100; callers surface this as a warning.
  bool deep_josephson_regime() const;

private:
  double critical_current_;
  double bias_current_;
  double capacitance_;
};

/// phi_0 = arcsin(I_e / I_c), in [0, pi/2].
double equilibrium_phase(const PhaseQubitParams& params);

/// omega_p = omega_J (1 - (I_e/I_c)^2)^(1/4)
double plasma_frequency(const PhaseQubitParams& params);

/// E_k = hbar omega_p (k + 1/2) for k = 0..k_max.
std::vector<double> harmonic_levels(const PhaseQubitParams& params, int k_max);

/// diag(-epsilon/2, +epsilon/2): ground state |0> = (1,0) sits at -epsilon/2.
ComplexMatrix qubit_hamiltonian(double epsilon);

}  // namespace qpt::phase_qubit
