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

#include <string>
#include <string_view>
#include <vector>

#include "qpt/gates.hpp"
#include "qpt/qmatrix.hpp"

namespace qpt {

/// Operator-sum representation rho -> sum_k E_k rho E_k^dagger.
class KrausSet {
public:
  /// All elements must be square and share one dimension; the list must be non-empty.
  explicit KrausSet(std::vector<ComplexMatrix> elements);

  Index dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t k) const { return elements_[k]; }

  /// S^2 x m matrix whose k-th column is vec(E_k).
  ComplexMatrix stacked_columns() const;

private:
  Index dim_;
  std::vector<ComplexMatrix> elements_;
};

enum class ChiBasis { natural, pauli };

std::string_view to_string(ChiBasis basis);

/// Process matrix of a channel on a dim-S space: S^2 x S^2, Hermitian, PSD, unit
/// trace. The unnormalized sum vec(E_k) vec(E_k)^dagger has trace S for a
/// trace-preserving channel; only the unit-trace version is stored.
class ChiMatrix {
public:
  /// Takes a unit-trace Hermitian matrix. Throws DimensionError for a bad shape
  /// and NumericalError if the matrix is not Hermitian or the trace is not 1
  /// within 1e-10.
  ChiMatrix(ComplexMatrix matrix, ChiBasis basis = ChiBasis::natural);

  /// Rescales a Hermitian PSD matrix with positive trace to unit trace.
  static ChiMatrix normalized(const ComplexMatrix& unnormalized,
                              ChiBasis basis = ChiBasis::natural);

  Index dim() const { return dim_; }
  ChiBasis basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// matrix() * S, the normalization in which TP means Tr_2 = I.
  ComplexMatrix trace_dim_matrix() const { return matrix_ * static_cast<double>(dim_); }

private:
  ComplexMatrix matrix_;
  Index dim_;
  ChiBasis basis_;
};

/// Hilbert-Schmidt orthonormal operator basis and the unitary whose columns
/// are vec(B_j).
struct ProcessBasis {
  Index dim = 0;
  std::vector<ComplexMatrix> operators;
  std::vector<std::string> labels;
  ComplexMatrix change;
};

struct NoiseModel {
  enum class Kind { none, depolarizing };
  Kind kind = Kind::none;
  double p = 0.0;
  Gate base;
};

struct TraceCheck {
  bool preserving;
  double residual;  // || sum E^dagger E - I ||_F
};

ComplexMatrix apply_channel(const KrausSet& kraus, const ComplexMatrix& rho);

TraceCheck check_trace_preserving(const KrausSet& kraus);

ChiMatrix chi_from_kraus(const KrausSet& kraus);

/// Rank-revealing inverse of chi_from_kraus: one element per eigenvalue of
/// chi * S above 1e-12. Throws NumericalError when chi is not CP.
KrausSet kraus_from_chi(const ChiMatrix& chi);

/// e -> e u; u must be an m x m unitary.
KrausSet unitary_remix(const KrausSet& kraus, const ComplexMatrix& u);

/// Tensor powers of {I/sqrt2, sx/sqrt2, -i sy/sqrt2, sz/sqrt2}, lexicographic in
/// the factor indices (first qubit slowest).
ProcessBasis pauli_basis(int n_qubits);

/// chi' = U0^dagger chi U0. Requires a natural-basis input.
ChiMatrix change_basis(const ChiMatrix& chi, const ProcessBasis& basis);
/// chi = U0 chi' U0^dagger. Requires a pauli-basis input.
ChiMatrix change_basis_inverse(const ChiMatrix& chi, const ProcessBasis& basis);

/// Rank-1 process matrix of a unitary channel.
ChiMatrix unitary_chi(const ComplexMatrix& u);

/// (1 - p) chi_U + p I / S^2, the image of rho -> p I/S + (1-p) U rho U^dagger.
ChiMatrix noisy_chi(const NoiseModel& model);

/// || Tr_2(chi * S) - I_S ||_F; zero for trace-preserving processes.
double tp_residual(const ChiMatrix& chi);

/// Smallest eigenvalue of the process matrix (CP iff >= -1e-10).
double min_eigenvalue(const ChiMatrix& chi);

/// Real parameters of a full-rank trace-preserving process: S^4 - S^2.
long long free_parameter_count(int dim);

}  // namespace qpt
