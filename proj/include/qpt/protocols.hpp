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

#include <Eigen/Dense>

#include "qpt/qmatrix.hpp"

namespace qpt {

/// Pure single-qubit state with its Bloch vector and projector.
struct BlochState {
  Eigen::Vector3d bloch;
  ComplexVector ket;
  ComplexMatrix projector;

  static BlochState from_ket(const ComplexVector& ket);
  static BlochState from_bloch(const Eigen::Vector3d& direction);
};

/// |0>, |1>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2.
std::vector<BlochState> standard_states();

/// Regular tetrahedron: Bloch vectors (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), over sqrt3.
std::vector<BlochState> tetrahedron_states();

/// All ordered n-fold tensor products of the states' projectors (first qubit slowest).
std::vector<ComplexMatrix> product_inputs(const std::vector<BlochState>& states, int n_qubits);

enum class ProtocolKind { standard, tetrahedron };

std::string_view to_string(ProtocolKind kind);
/// Throws std::invalid_argument listing the valid names.
ProtocolKind protocol_from_string(std::string_view name);

struct Povm {
  std::vector<ComplexMatrix> effects;
};

/// Inputs x measurement POVMs. A configuration is one (input, POVM) pair,
/// indexed input * povm_count + povm; its outcomes occupy the flat outcome
/// range [config * outcomes_per_config, (config+1) * outcomes_per_config).
class Protocol {
public:
  Protocol(ProtocolKind kind, int n_qubits, std::vector<BlochState> states,
           std::vector<ComplexMatrix> inputs, std::vector<Povm> povms);

  ProtocolKind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  Index dim() const { return dim_; }
  const std::vector<BlochState>& states() const { return states_; }
  const std::vector<ComplexMatrix>& inputs() const { return inputs_; }
  const std::vector<Povm>& povms() const { return povms_; }

  std::size_t config_count() const { return inputs_.size() * povms_.size(); }
  std::size_t outcomes_per_config() const { return povms_.front().effects.size(); }
  std::size_t outcome_count() const { return config_count() * outcomes_per_config(); }
  std::size_t input_of(std::size_t config) const { return config / povms_.size(); }
  std::size_t povm_of(std::size_t config) const { return config % povms_.size(); }

  /// A_r = rho^T (x) M for flat outcome r.
  ComplexMatrix design_operator(std::size_t outcome) const;

  /// Real design matrix D (outcome_count x S^4) with D * hermitian_coordinates(X)
  /// = Tr(A_r X) for Hermitian X.
  const Eigen::MatrixXd& design_matrix() const { return design_; }
  Index design_rank() const { return design_rank_; }
  bool informationally_complete() const { return design_rank_ == dim_ * dim_ * dim_ * dim_; }

private:
  ProtocolKind kind_;
  int n_qubits_;
  Index dim_;
  std::vector<BlochState> states_;
  std::vector<ComplexMatrix> inputs_;
  std::vector<Povm> povms_;
  Eigen::MatrixXd design_;
  Index design_rank_ = 0;
};

/// standard: per-qubit binary projective POVMs {|s><s|, I - |s><s|} for every
/// standard state s, tensored across qubits. tetrahedron: the per-qubit
/// 4-outcome POVM {|t_i><t_i| / 2}, tensored across qubits.
Protocol build_protocol(ProtocolKind kind, int n_qubits);

/// Real coordinates of a Hermitian n x n matrix: the n diagonal entries, then
/// Re and Im of the strict upper triangle (row-major over i < j). Length n^2.
Eigen::VectorXd hermitian_coordinates(const ComplexMatrix& h);

/// Coefficient row c such that c . hermitian_coordinates(X) = Tr(A X) for Hermitian A, X.
Eigen::VectorXd trace_functional(const ComplexMatrix& a);

/// Inverse of the adjoint map: the Hermitian G with Tr(G X) = g . hermitian_coordinates(X).
ComplexMatrix hermitian_from_gradient(const Eigen::VectorXd& g, Index n);

}  // namespace qpt
