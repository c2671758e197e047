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

#include <cstdint>
#include <random>

#include "qpt/channels.hpp"
#include "qpt/qmatrix.hpp"

namespace qpt::testing {

inline ComplexMatrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = Complex(n(rng), n(rng));
    }
  }
  return m;
}

/// Haar-ish unitary from the QR of a Gaussian matrix.
inline ComplexMatrix random_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(n, n, rng));
  return qr.householderQ();
}

inline ComplexMatrix random_density(Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex(n, n, rng);
  const ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Random CPTP channel with `rank` Kraus elements: slices of a random isometry.
inline KrausSet random_channel(Index dim, Index rank, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rank * dim, dim, rng));
  const ComplexMatrix iso = ComplexMatrix(qr.householderQ()).leftCols(dim);
  std::vector<ComplexMatrix> elements;
  for (Index k = 0; k < rank; ++k) {
    elements.push_back(iso.block(k * dim, 0, dim, dim));
  }
  return KrausSet(std::move(elements));
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qpt::testing
