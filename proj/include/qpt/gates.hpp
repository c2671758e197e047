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

#include <optional>
#include <string>
#include <string_view>

#include "qpt/qmatrix.hpp"

namespace qpt {

/// A unitary together with a display label. Two-qubit gates use the basis
/// order |00>, |01>, |10>, |11>, first tensor factor = first (control) qubit.
struct Gate {
  ComplexMatrix matrix;
  std::string label;
};

enum class Axis { x, y };

/// Sign in R_a(alpha) = exp(sign * i * alpha * sigma_a / 2).
enum class RotationSign { negative, positive };

std::string_view to_string(RotationSign sign);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// R_a(alpha) = cos(alpha/2) I -+ i sin(alpha/2) sigma_a. The default is the
/// exp(-i alpha sigma/2) convention.
Gate rotation_gate(Axis axis, double alpha, RotationSign sign = RotationSign::negative);

/// Capacitive coupling hbar (g/2) (|01><10| + |10><01|), in joules for g in rad/s.
ComplexMatrix interaction_hamiltonian(double g);

/// Closed-form evolution under the coupling for pulse phase gt >= 0.
Gate interaction_unitary(double gt);

/// exp(-i H_int t / hbar) evaluated through the Hermitian eigendecomposition of
/// H_int; independent of the closed form in interaction_unitary.
ComplexMatrix interaction_propagator(double g, double t);

/// interaction_unitary(pi / 2).
Gate sqiswap();
/// interaction_unitary(pi).
Gate iswap();
/// Canonical CNOT with the first qubit as control.
Gate cnot();

/// Product R_y(-pi/2)xI . R_x(pi/2)xR_x(-pi/2) . SQiSW . R_x(pi)xI . SQiSW . R_y(pi/2)xI
/// evaluated as an ordinary matrix product (rightmost factor acts first).
ComplexMatrix cnot_product(RotationSign sign);

struct PhaseMatch {
  Complex phase;    // e^{i phi}
  double residual;  // max |a b^dagger - e^{i phi} I|
};

/// Fits e^{i phi} from the first diagonal entry of a b^dagger whose modulus
/// exceeds 0.5, then reports the entrywise deviation from e^{i phi} I.
/// Returns nullopt when no diagonal entry qualifies.
std::optional<PhaseMatch> match_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b);

struct CnotDecomposition {
  Gate gate;
  RotationSign convention;
  PhaseMatch match;
};

/// Evaluates cnot_product under exp(-i a s/2) first and exp(+i a s/2) second and
/// returns the first that equals CNOT up to global phase within 1e-10. Throws
/// NumericalError when neither does.
CnotDecomposition cnot_via_sqiswap();

/// Gate lookup for the CLI: identity, sqiswap, iswap, cnot, interaction (needs gt).
/// Throws std::invalid_argument for unknown names.
Gate gate_by_name(std::string_view name, std::optional<double> gt = std::nullopt);

}  // namespace qpt
