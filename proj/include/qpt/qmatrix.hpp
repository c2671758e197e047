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

#include <complex>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

namespace qpt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues in [-kNegativeEigenTolerance, 0) are treated as round-off and clamped.
inline constexpr double kNegativeEigenTolerance = 1e-10;

/// Raised when operand shapes are incompatible.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a numerical precondition (non-Hermitian,
/// not positive semidefinite, not completely positive, ...).
class NumericalError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Kronecker product; the first operand is the slow (outer) index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// Left fold of tensor_product over a non-empty list.
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

/// Traces out the second tensor factor of a (dim_first*dim_second)-square matrix.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index dim_first, Index dim_second);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues down to
/// -1e-10 are clamped to zero; anything more negative throws NumericalError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Column-stacking vectorization: column 0 first, column 1 beneath it, ...
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = kHermitianTolerance);

/// Eigenvalues (ascending) of a Hermitian matrix. Only the lower triangle is read.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

/// Returns (m + m^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

ComplexMatrix identity(Index n);

/// Serialization as {rows, cols, re: [...], im: [...]}, entries in column-stacking order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Human-readable "rows x cols" used in error messages.
std::string shape_string(const ComplexMatrix& m);

}  // namespace qpt
