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

#include "qpt/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpt {

BlochState BlochState::from_ket(const ComplexVector& ket) {
  if (ket.size() != 2) {
    throw DimensionError("BlochState: ket must have length 2");
  }
  BlochState s;
  s.ket = ket.normalized();
  s.projector = s.ket * s.ket.adjoint();
  const Complex off = s.projector(1, 0);  // <1|P|0> = (x + i y) / 2
  s.bloch = {2.0 * off.real(), 2.0 * off.imag(),
             (s.projector(0, 0) - s.projector(1, 1)).real()};
  return s;
}

BlochState BlochState::from_bloch(const Eigen::Vector3d& direction) {
  if (!(direction.norm() > 0.0)) {
    throw std::invalid_argument("BlochState::from_bloch: direction must be a nonzero vector");
  }
  const Eigen::Vector3d n = direction.normalized();
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  ComplexVector ket(2);
  ket << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  BlochState s = from_ket(ket);
  s.bloch = n;
  return s;
}

std::vector<BlochState> standard_states() {
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  std::vector<ComplexVector> kets(4, ComplexVector(2));
  kets[0] << 1.0, 0.0;
  kets[1] << 0.0, 1.0;
  kets[2] << r, r;
  kets[3] << r, i * r;
  std::vector<BlochState> out;
  for (const auto& k : kets) {
    out.push_back(BlochState::from_ket(k));
  }
  return out;
}

std::vector<BlochState> tetrahedron_states() {
  const std::vector<Eigen::Vector3d> directions = {
      {1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}};
  std::vector<BlochState> out;
  for (const auto& d : directions) {
    out.push_back(BlochState::from_bloch(d));
  }
  return out;
}

std::vector<ComplexMatrix> product_inputs(const std::vector<BlochState>& states, int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("product_inputs: n_qubits must be >= 1");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& s : states) {
    out.push_back(s.projector);
  }
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<ComplexMatrix> next;
    for (const auto& a : out) {
      for (const auto& s : states) {
        next.push_back(tensor_product(a, s.projector));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string_view to_string(ProtocolKind kind) {
  return kind == ProtocolKind::standard ? "standard" : "tetrahedron";
}

ProtocolKind protocol_from_string(std::string_view name) {
  if (name == "standard") {
    return ProtocolKind::standard;
  }
  if (name == "tetrahedron") {
    return ProtocolKind::tetrahedron;
  }
  throw std::invalid_argument("unknown protocol '" + std::string(name) +
                              "' (valid: standard, tetrahedron)");
}

Eigen::VectorXd hermitian_coordinates(const ComplexMatrix& h) {
  const Index n = h.rows();
  Eigen::VectorXd x(n * n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    x(k++) = h(i, i).real();
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      x(k++) = h(i, j).real();
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      x(k++) = h(i, j).imag();
    }
  }
  return x;
}

Eigen::VectorXd trace_functional(const ComplexMatrix& a) {
  // Tr(A X) = sum_i A_ii X_ii + 2 sum_{i<j} Re(A_ij conj(X_ij))
  //        = sum_i A_ii X_ii + 2 sum_{i<j} (Re A_ij Re X_ij + Im A_ij Im X_ij).
  Eigen::VectorXd c = 2.0 * hermitian_coordinates(a);
  for (Index i = 0; i < a.rows(); ++i) {
    c(i) = a(i, i).real();
  }
  return c;
}

ComplexMatrix hermitian_from_gradient(const Eigen::VectorXd& g, Index n) {
  if (g.size() != n * n) {
    throw DimensionError("hermitian_from_gradient: coordinate length mismatch");
  }
  ComplexMatrix h(n, n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    h(i, i) = g(k++);
  }
  const Index offset = n * (n - 1) / 2;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j, ++k) {
      h(i, j) = Complex(g(k), g(k + offset)) / 2.0;
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

Protocol::Protocol(ProtocolKind kind, int n_qubits, std::vector<BlochState> states,
                   std::vector<ComplexMatrix> inputs, std::vector<Povm> povms)
    : kind_(kind),
      n_qubits_(n_qubits),
      states_(std::move(states)),
      inputs_(std::move(inputs)),
      povms_(std::move(povms)) {
  if (inputs_.empty() || povms_.empty() || povms_.front().effects.empty()) {
    throw std::invalid_argument("Protocol: inputs and POVMs must be non-empty");
  }
  dim_ = inputs_.front().rows();
  const std::size_t k = povms_.front().effects.size();
  for (const auto& povm : povms_) {
    if (povm.effects.size() != k) {
      throw std::invalid_argument("Protocol: all POVMs must have the same outcome count");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& m : povm.effects) {
      if (m.rows() != dim_ || m.cols() != dim_) {
        throw DimensionError("Protocol: effect " + shape_string(m) + " in dimension " +
                             std::to_string(dim_));
      }
      sum += m;
    }
    if ((sum - identity(dim_)).cwiseAbs().maxCoeff() > 1e-12) {
      throw NumericalError("Protocol: POVM effects do not sum to identity");
    }
  }

  const Index n = dim_ * dim_;
  design_.resize(static_cast<Index>(outcome_count()), n * n);
  for (std::size_t r = 0; r < outcome_count(); ++r) {
    design_.row(static_cast<Index>(r)) = trace_functional(design_operator(r)).transpose();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(design_);
  svd.setThreshold(1e-10);
  design_rank_ = svd.rank();
}

ComplexMatrix Protocol::design_operator(std::size_t outcome) const {
  const std::size_t config = outcome / outcomes_per_config();
  const std::size_t j = outcome % outcomes_per_config();
  return tensor_product(ComplexMatrix(inputs_[input_of(config)].transpose()),
                        povms_[povm_of(config)].effects[j]);
}

Protocol build_protocol(ProtocolKind kind, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) {
    throw std::invalid_argument("build_protocol: n_qubits must be 1 or 2");
  }
  std::vector<BlochState> states =
      kind == ProtocolKind::standard ? standard_states() : tetrahedron_states();

  std::vector<Povm> single;
  if (kind == ProtocolKind::standard) {
    for (const auto& s : states) {
      single.push_back({{s.projector, identity(2) - s.projector}});
    }
  } else {
    Povm tet;
    for (const auto& s : states) {
      tet.effects.push_back(s.projector / 2.0);
    }
    single.push_back(std::move(tet));
  }

  std::vector<Povm> povms = single;
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<Povm> next;
    for (const auto& a : povms) {
      for (const auto& b : single) {
        Povm joint;
        for (const auto& ma : a.effects) {
          for (const auto& mb : b.effects) {
            joint.effects.push_back(tensor_product(ma, mb));
          }
        }
        next.push_back(std::move(joint));
      }
    }
    povms = std::move(next);
  }

  auto inputs = product_inputs(states, n_qubits);
  return Protocol(kind, n_qubits, std::move(states), std::move(inputs), std::move(povms));
}

}  // namespace qpt
