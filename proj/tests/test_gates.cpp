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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "qpt/gates.hpp"
#include "qpt/phase_qubit.hpp"
#include "test_util.hpp"

using namespace qpt;
using qpt::testing::max_abs_diff;
using std::numbers::pi;

namespace {

ComplexVector basis_ket(Index n, Index k) {
  ComplexVector v = ComplexVector::Zero(n);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("rotation gates") {
  CHECK(max_abs_diff(rotation_gate(Axis::x, 0.0).matrix, identity(2)) == 0.0);
  CHECK(max_abs_diff(rotation_gate(Axis::x, 2 * pi).matrix, -identity(2)) < 1e-15);
  CHECK(max_abs_diff(rotation_gate(Axis::y, 2 * pi).matrix, -identity(2)) < 1e-15);

  const ComplexVector out = rotation_gate(Axis::y, pi / 2).matrix * basis_ket(2, 0);
  CHECK(std::abs(out(0) - 1.0 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(out(1) - 1.0 / std::numbers::sqrt2) < 1e-15);

  // The two sign conventions are inverse to each other.
  for (double a : {0.3, 1.7, -2.2}) {
    for (Axis axis : {Axis::x, Axis::y}) {
      const auto minus = rotation_gate(axis, a, RotationSign::negative).matrix;
      const auto plus = rotation_gate(axis, a, RotationSign::positive).matrix;
      CHECK(is_unitary(minus));
      CHECK(max_abs_diff(minus * plus, identity(2)) < 1e-15);
    }
  }
}

TEST_CASE("interaction Hamiltonian") {
  CHECK(interaction_hamiltonian(0.0).norm() == 0.0);
  const double g = 2 * pi * 25e6;
  const auto h = interaction_hamiltonian(g);
  const double expected = phase_qubit::kHbar * g / 2.0;
  int nonzero = 0;
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      if (h(i, j) != 0.0) {
        ++nonzero;
        CHECK(h(i, j).real() == expected);
      }
    }
  }
  CHECK(nonzero == 2);
  CHECK(h(1, 2).real() == expected);
  CHECK(h(2, 1).real() == expected);

  const Eigen::VectorXd ev = hermitian_eigenvalues(h / expected);
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(std::abs(ev(1)) < 1e-15);
  CHECK(std::abs(ev(2)) < 1e-15);
  CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("interaction unitary") {
  CHECK(max_abs_diff(interaction_unitary(0.0).matrix, identity(4)) == 0.0);

  const auto iswap_m = interaction_unitary(pi).matrix;
  const Complex minus_i(0.0, -1.0);
  CHECK(((iswap_m * basis_ket(4, 1)) - minus_i * basis_ket(4, 2)).norm() < 1e-15);
  CHECK(((iswap_m * basis_ket(4, 2)) - minus_i * basis_ket(4, 1)).norm() < 1e-15);

  const auto half = interaction_unitary(pi / 2).matrix;
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(half(1, 1) - r) < 1e-15);
  CHECK(std::abs(half(2, 2) - r) < 1e-15);
  CHECK(std::abs(half(1, 2) - Complex(0, -r)) < 1e-15);
  CHECK(std::abs(half(2, 1) - Complex(0, -r)) < 1e-15);

  CHECK_THROWS_AS(interaction_unitary(-0.1), std::invalid_argument);
}

TEST_CASE("interaction unitary is a one-parameter group matching exp(-i H t / hbar)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 4 * pi);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = u(rng);
    const double b = u(rng);
    CHECK(max_abs_diff(interaction_unitary(a).matrix * interaction_unitary(b).matrix,
                       interaction_unitary(a + b).matrix) < 1e-12);
    CHECK(is_unitary(interaction_unitary(a).matrix));
  }
  const double g = 2 * pi * 30e6;
  for (const double t : {0.0, 3e-9, 8.3333e-9, 1.7e-8, 5e-8}) {
    CHECK(max_abs_diff(interaction_propagator(g, t), interaction_unitary(g * t).matrix) < 1e-12);
  }
}

TEST_CASE("SQiSW") {
  const auto s = sqiswap().matrix;
  CHECK(max_abs_diff(s * s, iswap().matrix) < 1e-12);
  CHECK(((s * basis_ket(4, 0)) - basis_ket(4, 0)).norm() == 0.0);
  CHECK(std::norm(s(1, 1)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(is_unitary(s));
}

TEST_CASE("CNOT from SQiSW and single-qubit rotations") {
  const CnotDecomposition d = cnot_via_sqiswap();
  CHECK(d.convention == RotationSign::negative);
  CHECK(d.match.residual < 1e-10);
  CHECK(std::abs(std::abs(d.match.phase) - 1.0) < 1e-12);
  CHECK(is_unitary(d.gate.matrix));

  // gate * CNOT^dagger is a scalar multiple of the identity.
  const ComplexMatrix ratio = d.gate.matrix * cnot().matrix.adjoint();
  CHECK(max_abs_diff(ratio, ratio(0, 0) * identity(4)) < 1e-10);

  // Truth table up to the global phase.
  const ComplexVector on10 = d.gate.matrix * basis_ket(4, 2);
  CHECK((on10 - d.match.phase * basis_ket(4, 3)).norm() < 1e-10);
  const ComplexVector on00 = d.gate.matrix * basis_ket(4, 0);
  CHECK((on00 - d.match.phase * basis_ket(4, 0)).norm() < 1e-10);

  // Under the opposite sign the same product is not CNOT.
  const auto other = match_up_to_phase(cnot_product(RotationSign::positive), cnot().matrix);
  CHECK((!other || other->residual > 1e-3));
}

TEST_CASE("match_up_to_phase") {
  const Complex phase = std::polar(1.0, 0.7);
  const auto m = match_up_to_phase(phase * sqiswap().matrix, sqiswap().matrix);
  REQUIRE(m.has_value());
  CHECK(std::abs(m->phase - phase) < 1e-15);
  CHECK(m->residual < 1e-15);
  CHECK_FALSE(match_up_to_phase(ComplexMatrix::Zero(2, 2), identity(2)).has_value());
  CHECK_THROWS_AS(match_up_to_phase(identity(2), identity(4)), DimensionError);
}

TEST_CASE("gate lookup") {
  CHECK(gate_by_name("sqiswap").label == "SQiSW");
  CHECK(max_abs_diff(gate_by_name("iswap").matrix, iswap().matrix) == 0.0);
  CHECK(max_abs_diff(gate_by_name("identity").matrix, identity(4)) == 0.0);
  CHECK(max_abs_diff(gate_by_name("interaction", pi / 2).matrix, sqiswap().matrix) == 0.0);
  CHECK_THROWS_AS(gate_by_name("interaction"), std::invalid_argument);
  CHECK_THROWS_AS(gate_by_name("toffoli"), std::invalid_argument);
}
