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

#include "qpt/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpt/phase_qubit.hpp"

namespace qpt {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPhaseTolerance = 1e-10;

ComplexMatrix kron(const Gate& a, const Gate& b) {
  return tensor_product(a.matrix, b.matrix);
}

}  // namespace

std::string_view to_string(RotationSign sign) {
  return sign == RotationSign::negative ? "exp(-i*alpha*sigma/2)" : "exp(+i*alpha*sigma/2)";
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Gate rotation_gate(Axis axis, double alpha, RotationSign sign) {
  const double s = sign == RotationSign::negative ? -1.0 : 1.0;
  const ComplexMatrix& sigma = axis == Axis::x ? pauli_x() : pauli_y();
  Gate g;
  g.matrix = std::cos(alpha / 2.0) * identity(2) + s * kI * std::sin(alpha / 2.0) * sigma;
  g.label = std::string(axis == Axis::x ? "Rx(" : "Ry(") + std::to_string(alpha) + ")";
  return g;
}

ComplexMatrix interaction_hamiltonian(double g) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  const double coupling = phase_qubit::kHbar * g / 2.0;
  h(1, 2) = coupling;
  h(2, 1) = coupling;
  return h;
}

Gate interaction_unitary(double gt) {
  if (gt < 0.0) {
    throw std::invalid_argument("interaction_unitary: gt must be non-negative");
  }
  const double c = std::cos(gt / 2.0);
  const double s = std::sin(gt / 2.0);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = c;
  u(1, 2) = -kI * s;
  u(2, 1) = -kI * s;
  u(2, 2) = c;
  u(3, 3) = 1.0;
  return {u, "Uint(gt=" + std::to_string(gt) + ")"};
}

ComplexMatrix interaction_propagator(double g, double t) {
  // Work in units of hbar so the eigenvalues stay O(g).
  const ComplexMatrix h = interaction_hamiltonian(g) / phase_qubit::kHbar;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  ComplexVector phases(h.rows());
  for (Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::exp(-kI * eig.eigenvalues()(k) * t);
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Gate sqiswap() {
  return {interaction_unitary(std::numbers::pi / 2.0).matrix, "SQiSW"};
}

Gate iswap() {
  return {interaction_unitary(std::numbers::pi).matrix, "iSWAP"};
}

Gate cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return {m, "CNOT"};
}

ComplexMatrix cnot_product(RotationSign sign) {
  using std::numbers::pi;
  const Gate id{identity(2), "I"};
  const ComplexMatrix s = sqiswap().matrix;
  return kron(rotation_gate(Axis::y, -pi / 2, sign), id) *
         kron(rotation_gate(Axis::x, pi / 2, sign), rotation_gate(Axis::x, -pi / 2, sign)) * s *
         kron(rotation_gate(Axis::x, pi, sign), id) * s *
         kron(rotation_gate(Axis::y, pi / 2, sign), id);
}

std::optional<PhaseMatch> match_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("match_up_to_phase: shapes " + shape_string(a) + " and " +
                         shape_string(b));
  }
  const ComplexMatrix ratio = a * b.adjoint();
  for (Index k = 0; k < ratio.rows(); ++k) {
    if (std::abs(ratio(k, k)) > 0.5) {
      const Complex phase = ratio(k, k) / std::abs(ratio(k, k));
      const double residual =
          (ratio - phase * identity(ratio.rows())).cwiseAbs().maxCoeff();
      return PhaseMatch{phase, residual};
    }
  }
  return std::nullopt;
}

CnotDecomposition cnot_via_sqiswap() {
  const ComplexMatrix target = cnot().matrix;
  for (const RotationSign sign : {RotationSign::negative, RotationSign::positive}) {
    ComplexMatrix product = cnot_product(sign);
    const auto match = match_up_to_phase(product, target);
    if (match && match->residual < kPhaseTolerance) {
      return {{std::move(product), "CNOT[SQiSW]"}, sign, *match};
    }
  }
  throw NumericalError("cnot_via_sqiswap: product is not CNOT up to phase under either rotation "
                       "convention");
}

Gate gate_by_name(std::string_view name, std::optional<double> gt) {
  if (name == "identity") {
    return {identity(4), "I"};
  }
  if (name == "sqiswap") {
    return sqiswap();
  }
  if (name == "iswap") {
    return iswap();
  }
  if (name == "cnot") {
    return cnot();
  }
  if (name == "interaction") {
    if (!gt) {
      throw std::invalid_argument("gate 'interaction' requires --gt");
    }
    return interaction_unitary(*gt);
  }
  throw std::invalid_argument("unknown gate '" + std::string(name) +
                              "' (valid: identity, sqiswap, iswap, cnot, interaction)");
}

}  // namespace qpt
