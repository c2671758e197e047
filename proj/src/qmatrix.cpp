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

#include "qpt/qmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace qpt {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) {
    throw DimensionError("tensor_product: empty factor list");
  }
  ComplexMatrix out = factors.front();
  for (const auto& f : factors.subspan(1)) {
    out = tensor_product(out, f);
  }
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index dim_first, Index dim_second) {
  if (dim_first <= 0 || dim_second <= 0 || m.rows() != m.cols() ||
      m.rows() != dim_first * dim_second) {
    throw DimensionError("partial_trace_second: matrix " + shape_string(m) +
                         " does not factor as " + std::to_string(dim_first) + " x " +
                         std::to_string(dim_second));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
  for (Index a = 0; a < dim_first; ++a) {
    for (Index b = 0; b < dim_first; ++b) {
      Complex acc{0.0, 0.0};
      for (Index k = 0; k < dim_second; ++k) {
        acc += m(a * dim_second + k, b * dim_second + k);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("psd_sqrt: matrix " + shape_string(m) + " is not square");
  }
  if (!is_hermitian(m, 1e-10 * std::max(1.0, m.norm()))) {
    throw NumericalError("psd_sqrt: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(m));
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -kNegativeEigenTolerance) {
    throw NumericalError("psd_sqrt: eigenvalue " + std::to_string(lambda.minCoeff()) +
                         " is below -1e-10");
  }
  Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  const auto& v = eig.eigenvectors();
  ComplexMatrix out = v * root.asDiagonal() * v.adjoint();
  return hermitian_part(out);
}

ComplexVector vec(const ComplexMatrix& m) {
  // Eigen storage is column-major, so the reshaped view is already column-stacked.
  return m.reshaped();
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0 || v.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " cannot form " +
                         std::to_string(rows) + " x " + std::to_string(cols));
  }
  return v.reshaped(rows, cols);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
         tol;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix identity(Index n) {
  return ComplexMatrix::Identity(n, n);
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (rows <= 0 || cols <= 0 || re.size() != static_cast<std::size_t>(rows * cols) ||
      im.size() != re.size()) {
    throw DimensionError("matrix_from_json: entry count does not match rows x cols");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r, ++k) {
      m(r, c) = Complex(re[k], im[k]);
    }
  }
  return m;
}

std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + " x " + std::to_string(m.cols());
}

}  // namespace qpt
