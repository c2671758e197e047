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

#include "qpt/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpt {

namespace {

constexpr double kRankCutoff = 1e-12;

Index chi_side_to_dim(Index side) {
  const auto s = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(side))));
  if (s * s != side || s < 1) {
    throw DimensionError("chi matrix side " + std::to_string(side) + " is not a perfect square");
  }
  return s;
}

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw DimensionError("KrausSet: at least one element required");
  }
  dim_ = elements_.front().rows();
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw DimensionError("KrausSet: element " + shape_string(e) + " does not match dimension " +
                           std::to_string(dim_));
    }
  }
}

ComplexMatrix KrausSet::stacked_columns() const {
  ComplexMatrix e(dim_ * dim_, static_cast<Index>(elements_.size()));
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    e.col(static_cast<Index>(k)) = vec(elements_[k]);
  }
  return e;
}

std::string_view to_string(ChiBasis basis) {
  return basis == ChiBasis::natural ? "natural" : "pauli";
}

ChiMatrix::ChiMatrix(ComplexMatrix matrix, ChiBasis basis)
    : matrix_(std::move(matrix)), basis_(basis) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("ChiMatrix: matrix " + shape_string(matrix_) + " is not square");
  }
  dim_ = chi_side_to_dim(matrix_.rows());
  if (!is_hermitian(matrix_, 1e-10)) {
    throw NumericalError("ChiMatrix: matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw NumericalError("ChiMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  matrix_ = hermitian_part(matrix_);
}

ChiMatrix ChiMatrix::normalized(const ComplexMatrix& unnormalized, ChiBasis basis) {
  const double tr = unnormalized.trace().real();
  if (!(tr > 0.0)) {
    throw NumericalError("ChiMatrix::normalized: trace must be positive");
  }
  return ChiMatrix(hermitian_part(unnormalized) / tr, basis);
}

ComplexMatrix apply_channel(const KrausSet& kraus, const ComplexMatrix& rho) {
  if (rho.rows() != kraus.dim() || rho.cols() != kraus.dim()) {
    throw DimensionError("apply_channel: state " + shape_string(rho) + " vs Kraus dimension " +
                         std::to_string(kraus.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& e : kraus.elements()) {
    out.noalias() += e * rho * e.adjoint();
  }
  return out;
}

TraceCheck check_trace_preserving(const KrausSet& kraus) {
  ComplexMatrix sum = ComplexMatrix::Zero(kraus.dim(), kraus.dim());
  for (const auto& e : kraus.elements()) {
    sum.noalias() += e.adjoint() * e;
  }
  const double residual = (sum - identity(kraus.dim())).norm();
  return {residual < kDefaultTolerance, residual};
}

ChiMatrix chi_from_kraus(const KrausSet& kraus) {
  const ComplexMatrix e = kraus.stacked_columns();
  return ChiMatrix::normalized(e * e.adjoint());
}

KrausSet kraus_from_chi(const ChiMatrix& chi) {
  if (chi.basis() != ChiBasis::natural) {
    throw std::invalid_argument("kraus_from_chi: chi must be in the natural basis");
  }
  const Index s = chi.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(chi.trace_dim_matrix());
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -kNegativeEigenTolerance) {
    throw NumericalError("kraus_from_chi: eigenvalue " + std::to_string(lambda.minCoeff()) +
                         " < -1e-10, process is not completely positive");
  }
  std::vector<ComplexMatrix> elements;
  // Descending order so the dominant element comes first.
  for (Index j = lambda.size() - 1; j >= 0; --j) {
    if (lambda(j) > kRankCutoff) {
      elements.push_back(unvec(std::sqrt(lambda(j)) * eig.eigenvectors().col(j), s, s));
    }
  }
  if (elements.empty()) {
    throw NumericalError("kraus_from_chi: process matrix has no eigenvalue above 1e-12");
  }
  return KrausSet(std::move(elements));
}

KrausSet unitary_remix(const KrausSet& kraus, const ComplexMatrix& u) {
  const auto m = static_cast<Index>(kraus.size());
  if (u.rows() != m || u.cols() != m) {
    throw DimensionError("unitary_remix: mixing matrix " + shape_string(u) + " for " +
                         std::to_string(m) + " elements");
  }
  if (!is_unitary(u, 1e-10)) {
    throw NumericalError("unitary_remix: mixing matrix is not unitary");
  }
  const ComplexMatrix mixed = kraus.stacked_columns() * u;
  std::vector<ComplexMatrix> elements;
  elements.reserve(kraus.size());
  for (Index k = 0; k < m; ++k) {
    elements.push_back(unvec(mixed.col(k), kraus.dim(), kraus.dim()));
  }
  return KrausSet(std::move(elements));
}

ProcessBasis pauli_basis(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("pauli_basis: n_qubits must be >= 1");
  }
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  const std::vector<ComplexMatrix> single = {identity(2) * r, pauli_x() * r,
                                             ComplexMatrix(-i * pauli_y() * r),
                                             pauli_z() * r};
  const std::vector<std::string> names = {"I", "X", "Y", "Z"};

  ProcessBasis basis;
  basis.operators = single;
  basis.labels = names;
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<ComplexMatrix> ops;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < basis.operators.size(); ++a) {
      for (std::size_t b = 0; b < single.size(); ++b) {
        ops.push_back(tensor_product(basis.operators[a], single[b]));
        labels.push_back(basis.labels[a] + names[b]);
      }
    }
    basis.operators = std::move(ops);
    basis.labels = std::move(labels);
  }
  basis.dim = basis.operators.front().rows();
  const Index n = basis.dim * basis.dim;
  basis.change.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    basis.change.col(j) = vec(basis.operators[static_cast<std::size_t>(j)]);
  }
  return basis;
}

ChiMatrix change_basis(const ChiMatrix& chi, const ProcessBasis& basis) {
  if (chi.basis() != ChiBasis::natural) {
    throw std::invalid_argument("change_basis: input must be in the natural basis");
  }
  if (chi.matrix().rows() != basis.change.rows()) {
    throw DimensionError("change_basis: chi " + shape_string(chi.matrix()) + " vs basis " +
                         shape_string(basis.change));
  }
  return ChiMatrix(basis.change.adjoint() * chi.matrix() * basis.change, ChiBasis::pauli);
}

ChiMatrix change_basis_inverse(const ChiMatrix& chi, const ProcessBasis& basis) {
  if (chi.basis() != ChiBasis::pauli) {
    throw std::invalid_argument("change_basis_inverse: input must be in the pauli basis");
  }
  if (chi.matrix().rows() != basis.change.rows()) {
    throw DimensionError("change_basis_inverse: chi " + shape_string(chi.matrix()) +
                         " vs basis " + shape_string(basis.change));
  }
  return ChiMatrix(basis.change * chi.matrix() * basis.change.adjoint(), ChiBasis::natural);
}

ChiMatrix unitary_chi(const ComplexMatrix& u) {
  return chi_from_kraus(KrausSet({u}));
}

ChiMatrix noisy_chi(const NoiseModel& model) {
  if (!(model.p >= 0.0 && model.p <= 1.0)) {
    throw std::invalid_argument("noisy_chi: p must lie in [0,1]");
  }
  const ChiMatrix ideal = unitary_chi(model.base.matrix);
  if (model.kind == NoiseModel::Kind::none) {
    return ideal;
  }
  const Index n = ideal.matrix().rows();
  const ComplexMatrix white = identity(n) / static_cast<double>(n);
  return ChiMatrix((1.0 - model.p) * ideal.matrix() + model.p * white);
}

double tp_residual(const ChiMatrix& chi) {
  if (chi.basis() != ChiBasis::natural) {
    throw std::invalid_argument("tp_residual: chi must be in the natural basis");
  }
  const Index s = chi.dim();
  return (partial_trace_second(chi.trace_dim_matrix(), s, s) - identity(s)).norm();
}

double min_eigenvalue(const ChiMatrix& chi) {
  return hermitian_eigenvalues(chi.matrix()).minCoeff();
}

long long free_parameter_count(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("free_parameter_count: dimension must be positive");
  }
  const long long s2 = static_cast<long long>(dim) * dim;
  return s2 * s2 - s2;
}

}  // namespace qpt
