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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "qpt/channels.hpp"
#include "qpt/gates.hpp"
#include "qpt/tomography.hpp"
#include "test_util.hpp"

using namespace qpt;
using qpt::testing::max_abs_diff;

namespace {

// Rank-1 fidelity oracle: F = <u|chi|u> for unit vector u = vec(U)/sqrt(S).
double rank_one_fidelity(const ComplexMatrix& u, const ChiMatrix& chi) {
  const ComplexVector v = vec(u) / std::sqrt(static_cast<double>(u.rows()));
  return (v.adjoint() * chi.matrix() * v)(0, 0).real();
}

ChiMatrix random_chi(Index dim, Index rank, std::mt19937_64& rng) {
  return chi_from_kraus(testing::random_channel(dim, rank, rng));
}

}  // namespace

TEST_CASE("apply_channel") {
  std::mt19937_64 rng(11);
  const auto rho = testing::random_density(2, rng);
  CHECK(max_abs_diff(apply_channel(KrausSet({identity(2)}), rho), rho) < 1e-15);

  const auto u = testing::random_unitary(2, rng);
  CHECK(max_abs_diff(apply_channel(KrausSet({u}), rho), u * rho * u.adjoint()) < 1e-14);

  const KrausSet white = kraus_from_chi(noisy_chi({NoiseModel::Kind::depolarizing, 1.0, sqiswap()}));
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho4 = testing::random_density(4, rng);
    CHECK(max_abs_diff(apply_channel(white, rho4), identity(4) / 4.0) < 1e-12);
  }
  CHECK_THROWS_AS(apply_channel(KrausSet({identity(2)}), identity(3)), DimensionError);
}

TEST_CASE("check_trace_preserving") {
  const auto one = check_trace_preserving(KrausSet({identity(2)}));
  CHECK(one.preserving);
  CHECK(one.residual == 0.0);

  const auto two = check_trace_preserving(KrausSet({identity(2), identity(2)}));
  CHECK_FALSE(two.preserving);
  CHECK(two.residual == doctest::Approx(std::sqrt(2.0)));

  const KrausSet mixed = kraus_from_chi(noisy_chi({NoiseModel::Kind::depolarizing, 0.5, sqiswap()}));
  CHECK(mixed.size() == 16);
  const auto check = check_trace_preserving(mixed);
  CHECK(check.preserving);
  CHECK(check.residual < 1e-10);

  CHECK_THROWS_AS(KrausSet({}), DimensionError);
  CHECK_THROWS_AS(KrausSet({identity(2), identity(3)}), DimensionError);
}

TEST_CASE("chi_from_kraus") {
  SUBCASE("identity channel") {
    const ChiMatrix chi = chi_from_kraus(KrausSet({identity(2)}));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    CHECK(max_abs_diff(chi.matrix(), expected) < 1e-15);
    CHECK(chi.basis() == ChiBasis::natural);
    CHECK(chi.dim() == 2);
  }
  SUBCASE("any unitary gives rank one") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const ChiMatrix chi = chi_from_kraus(KrausSet({testing::random_unitary(4, rng)}));
      const Eigen::VectorXd ev = hermitian_eigenvalues(chi.matrix());
      CHECK(ev(15) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(ev.head(15).sum()) < 1e-12);
    }
  }
  SUBCASE("fully depolarizing single-qubit channel") {
    // rho -> I/2 via the four normalized Paulis.
    std::vector<ComplexMatrix> e{identity(2) / 2.0, pauli_x() / 2.0, pauli_y() / 2.0,
                                 pauli_z() / 2.0};
    const ChiMatrix chi = chi_from_kraus(KrausSet(e));
    CHECK(max_abs_diff(chi.matrix(), identity(4) / 4.0) < 1e-15);
  }
}

TEST_CASE("kraus_from_chi") {
  std::mt19937_64 rng(13);
  SUBCASE("unitary recovered up to phase") {
    const auto u = testing::random_unitary(4, rng);
    const KrausSet k = kraus_from_chi(unitary_chi(u));
    REQUIRE(k.size() == 1);
    const auto m = match_up_to_phase(k[0], u);
    REQUIRE(m.has_value());
    CHECK(m->residual < 1e-10);
  }
  SUBCASE("depolarized SQiSW round trip") {
    const ChiMatrix chi = noisy_chi({NoiseModel::Kind::depolarizing, 0.5, sqiswap()});
    const ChiMatrix back = chi_from_kraus(kraus_from_chi(chi));
    CHECK((back.matrix() - chi.matrix()).norm() < 1e-10);
  }
  SUBCASE("maximally mixed single-qubit chi") {
    const KrausSet k = kraus_from_chi(ChiMatrix(identity(4) / 4.0));
    CHECK(k.size() == 4);
    for (std::size_t j = 0; j < k.size(); ++j) {
      CHECK((k[j].adjoint() * k[j]).trace().real() == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(check_trace_preserving(k).residual < 1e-10);
  }
  SUBCASE("elements come in descending weight") {
    const KrausSet k = kraus_from_chi(noisy_chi({NoiseModel::Kind::depolarizing, 0.2, sqiswap()}));
    for (std::size_t j = 0; j + 1 < k.size(); ++j) {
      CHECK(k[j].squaredNorm() >= k[j + 1].squaredNorm() - 1e-12);
    }
  }
  SUBCASE("non-CP input is rejected") {
    // Eigenvalues 0.75 and -0.25 on the {0,3} block.
    ComplexMatrix m = identity(4) / 4.0;
    m(0, 3) = m(3, 0) = 0.5;
    CHECK_THROWS_AS(kraus_from_chi(ChiMatrix(m)), NumericalError);
  }
}

TEST_CASE("chi_from_kraus and kraus_from_chi are mutually inverse on random channels") {
  std::mt19937_64 rng(14);
  for (Index dim : {2, 4}) {
    for (Index rank = 1; rank <= dim * dim; rank += (dim == 2 ? 1 : 5)) {
      const ChiMatrix chi = random_chi(dim, rank, rng);
      const ChiMatrix back = chi_from_kraus(kraus_from_chi(chi));
      CHECK((back.matrix() - chi.matrix()).norm() < 1e-10);
      CHECK(tp_residual(chi) < 1e-8);
      CHECK(std::abs(chi.matrix().trace() - 1.0) < 1e-12);
      CHECK(min_eigenvalue(chi) > -1e-10);
    }
  }
}

TEST_CASE("reduced chi of a TP process is I/S") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const ChiMatrix chi = random_chi(4, 1 + trial, rng);
    CHECK(max_abs_diff(partial_trace_second(chi.matrix(), 4, 4), identity(4) / 4.0) < 1e-8);
    CHECK(max_abs_diff(partial_trace_second(chi.trace_dim_matrix(), 4, 4), identity(4)) < 1e-8);
  }
  // sum E^dagger E = diag(2, 1) is not proportional to I, so no rescaling is TP.
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  const ChiMatrix leaky = chi_from_kraus(KrausSet({identity(2), p0}));
  CHECK(tp_residual(leaky) > 1e-3);
}

TEST_CASE("unitary_remix leaves chi invariant") {
  std::mt19937_64 rng(16);
  for (Index m = 2; m <= 4; ++m) {
    for (int trial = 0; trial < 10; ++trial) {
      const KrausSet k = testing::random_channel(2, m, rng);
      const ChiMatrix before = chi_from_kraus(k);
      const ChiMatrix after = chi_from_kraus(unitary_remix(k, testing::random_unitary(m, rng)));
      CHECK(max_abs_diff(before.matrix(), after.matrix()) < 1e-12);
    }
  }
  const KrausSet k = testing::random_channel(2, 3, rng);
  const KrausSet same = unitary_remix(k, identity(3));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(max_abs_diff(same[j], k[j]) < 1e-15);
  }
  ComplexMatrix perm = ComplexMatrix::Zero(3, 3);
  perm(1, 0) = perm(2, 1) = perm(0, 2) = 1.0;
  const KrausSet rotated = unitary_remix(k, perm);
  CHECK(max_abs_diff(rotated[0], k[1]) == 0.0);
  CHECK(max_abs_diff(rotated[1], k[2]) == 0.0);
  CHECK(max_abs_diff(rotated[2], k[0]) == 0.0);
  CHECK(max_abs_diff(chi_from_kraus(rotated).matrix(), chi_from_kraus(k).matrix()) < 1e-12);
  CHECK_THROWS_AS(unitary_remix(k, identity(2)), DimensionError);
}

TEST_CASE("pauli_basis") {
  const ProcessBasis one = pauli_basis(1);
  REQUIRE(one.operators.size() == 4);
  CHECK(one.labels == std::vector<std::string>{"I", "X", "Y", "Z"});
  const ComplexMatrix& y = one.operators[2];
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(y.imag().norm() == 0.0);
  CHECK(y(0, 1).real() == doctest::Approx(-r));
  CHECK(y(1, 0).real() == doctest::Approx(r));

  const ProcessBasis two = pauli_basis(2);
  CHECK(two.operators.size() == 16);
  CHECK(two.labels[1] == "IX");
  CHECK(two.labels[4] == "XI");
  CHECK(two.labels[15] == "ZZ");
  CHECK(max_abs_diff(two.operators[6], tensor_product(one.operators[1], one.operators[2])) == 0.0);

  for (const ProcessBasis* b : {&one, &two}) {
    const auto n = b->operators.size();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex ip = (b->operators[j].adjoint() * b->operators[k]).trace();
        CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-12);
      }
    }
    CHECK(is_unitary(b->change, 1e-12));
  }
  CHECK_THROWS_AS(pauli_basis(0), std::invalid_argument);
}

TEST_CASE("change_basis") {
  const ProcessBasis one = pauli_basis(1);
  const ChiMatrix id_pauli = change_basis(chi_from_kraus(KrausSet({identity(2)})), one);
  CHECK(id_pauli.basis() == ChiBasis::pauli);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(id_pauli.matrix(), expected) < 1e-15);

  std::mt19937_64 rng(17);
  const ProcessBasis two = pauli_basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ChiMatrix a = random_chi(4, 3, rng);
    const ChiMatrix b = random_chi(4, 16, rng);
    const ChiMatrix ap = change_basis(a, two);
    const ChiMatrix bp = change_basis(b, two);
    CHECK(max_abs_diff(change_basis_inverse(ap, two).matrix(), a.matrix()) < 1e-12);
    CHECK(std::abs(ap.matrix().trace() - 1.0) < 1e-12);
    CHECK(is_hermitian(ap.matrix()));
    CHECK((hermitian_eigenvalues(ap.matrix()) - hermitian_eigenvalues(a.matrix())).norm() < 1e-12);
    CHECK(std::abs(process_fidelity(ap, bp) - process_fidelity(a, b)) < 1e-10);
  }
  CHECK_THROWS_AS(change_basis(id_pauli, one), std::invalid_argument);
  CHECK_THROWS_AS(change_basis(chi_from_kraus(KrausSet({identity(2)})), two), DimensionError);
}

TEST_CASE("noisy_chi") {
  const Gate g = sqiswap();
  const ChiMatrix clean = noisy_chi({NoiseModel::Kind::depolarizing, 0.0, g});
  CHECK(max_abs_diff(clean.matrix(), unitary_chi(g.matrix).matrix()) == 0.0);
  CHECK(max_abs_diff(noisy_chi({NoiseModel::Kind::none, 0.7, g}).matrix(), clean.matrix()) == 0.0);

  const ChiMatrix white = noisy_chi({NoiseModel::Kind::depolarizing, 1.0, g});
  CHECK(max_abs_diff(white.matrix(), identity(16) / 16.0) == 0.0);

  const ChiMatrix half = noisy_chi({NoiseModel::Kind::depolarizing, 0.5, g});
  CHECK(std::abs(rank_one_fidelity(g.matrix, half) - 0.53125) < 1e-12);
  CHECK(std::abs(process_fidelity(clean, half) - 0.53125) < 1e-10);

  // Affine in p.
  const double p1 = 0.125, p2 = 0.625, alpha = 0.25;
  const auto at = [&](double p) { return noisy_chi({NoiseModel::Kind::depolarizing, p, g}).matrix(); };
  CHECK(max_abs_diff(at(alpha * p1 + (1 - alpha) * p2), alpha * at(p1) + (1 - alpha) * at(p2)) <
        1e-15);

  CHECK_THROWS_AS(noisy_chi({NoiseModel::Kind::depolarizing, 1.5, g}), std::invalid_argument);
  CHECK_THROWS_AS(noisy_chi({NoiseModel::Kind::depolarizing, -0.1, g}), std::invalid_argument);
}

TEST_CASE("ChiMatrix validation") {
  CHECK_THROWS_AS(ChiMatrix(identity(3) / 3.0), DimensionError);
  CHECK_THROWS_AS(ChiMatrix(identity(4)), NumericalError);
  ComplexMatrix skew = identity(4) / 4.0;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(ChiMatrix{skew}, NumericalError);
  const ChiMatrix n = ChiMatrix::normalized(identity(4) * 3.0);
  CHECK(std::abs(n.matrix().trace() - 1.0) < 1e-15);
}

TEST_CASE("free_parameter_count") {
  CHECK(free_parameter_count(4) == 240);
  CHECK(free_parameter_count(2) == 12);
  CHECK(free_parameter_count(8) == 4032);
  CHECK_THROWS_AS(free_parameter_count(0), std::invalid_argument);
}
