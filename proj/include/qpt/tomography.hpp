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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpt/channels.hpp"
#include "qpt/protocols.hpp"

namespace qpt {

/// Outcome counts of one simulated (or measured) tomography experiment.
struct CountsRecord {
  ProtocolKind protocol = ProtocolKind::standard;
  int n_qubits = 0;
  std::vector<std::int64_t> counts;             // flat outcome index
  std::vector<std::int64_t> shots_per_config;
  std::uint64_t seed = 0;
};

/// Knobs for mle_reconstruct. root_width 0 means S^2 (full rank).
struct MleOptions {
  int max_iterations = 2000;
  double relative_tolerance = 1e-10;
  int root_width = 0;
  std::uint64_t init_seed = 0;
  double init_perturbation = 1e-3;
};

struct ReconstructionResult {
  ChiMatrix chi_hat;
  std::vector<double> log_likelihood;  // one entry per accepted iterate, starting point first
  int iterations = 0;
  bool converged = false;
  double tp_residual = 0.0;
  bool informationally_complete = true;
};

/// p_r = S Tr[(rho^T (x) M) chi] for every flat outcome r, clamped to [0, 1].
Eigen::VectorXd outcome_probabilities(const ChiMatrix& chi, const Protocol& protocol);

/// Splits total_shots evenly over configurations; the remainder goes to the
/// earliest ones.
std::vector<std::int64_t> allocate_shots(std::int64_t total_shots, std::size_t configs);

/// One multinomial draw per configuration. Deterministic for a given seed.
CountsRecord simulate_counts(const ChiMatrix& chi, const Protocol& protocol,
                             std::int64_t total_shots, std::uint64_t seed);

/// Multinomial log-likelihood sum_r w_r log p_r, up to a chi-independent constant.
double log_likelihood(const ChiMatrix& chi, const Protocol& protocol,
                      std::span<const double> weights);

/// Maximum-likelihood process matrix over the CPTP set.
///
/// The process is parameterized by its stacked Kraus root W = [E_1; ...; E_m]
/// with W^dagger W = I, so every iterate is completely positive and exactly
/// trace preserving. The likelihood is maximized by Riemannian L-BFGS on that
/// Stiefel manifold (polar retraction, projection transport) with an Armijo
/// backtracking guard, so the likelihood trace is monotone. Iteration stops
/// when |dL| <= relative_tolerance * |L| or after max_iterations.
ReconstructionResult mle_reconstruct(const CountsRecord& counts, const Protocol& protocol,
                                     const MleOptions& options = {});

/// Same estimator on arbitrary non-negative outcome weights (for example exact
/// probabilities, which gives the noiseless fixed point).
ReconstructionResult mle_reconstruct_weights(std::span<const double> weights,
                                             const Protocol& protocol,
                                             const MleOptions& options = {});

/// (Tr sqrt(sqrt(chi0) chi sqrt(chi0)))^2 for unit-trace process matrices.
double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi0);

}  // namespace qpt
