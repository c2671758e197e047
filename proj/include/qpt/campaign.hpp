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
#include <vector>

#include "qpt/gates.hpp"
#include "qpt/protocols.hpp"
#include "qpt/tomography.hpp"

namespace qpt {

/// Monte Carlo campaign: R independent simulate -> reconstruct -> fidelity
/// pipelines per protocol against a depolarized gate.
struct CampaignConfig {
  Gate gate;
  double noise_p = 0.0;
  std::vector<ProtocolKind> protocols{ProtocolKind::standard, ProtocolKind::tetrahedron};
  std::int64_t shots = 100000;
  int runs = 200;
  std::uint64_t seed = 42;
  /// Reconstruct from the exact outcome probabilities instead of sampled counts.
  bool exact_probabilities = false;
  int max_iterations = 2000;
};

struct FidelitySample {
  int run = 0;
  double fidelity = 0.0;
  double loss = 0.0;  // clamp(1 - F, 0, 1)
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;
};

struct ProtocolSamples {
  ProtocolKind protocol;
  std::vector<FidelitySample> samples;

  std::vector<double> losses() const;
  double mean_loss() const;
};

/// Validates the config; throws std::invalid_argument.
void validate(const CampaignConfig& config);

/// Run r of a campaign uses seed + r for both the counts and the MLE start.
FidelitySample run_single(const CampaignConfig& config, const Protocol& protocol,
                          const ChiMatrix& truth, int run);

/// Serial reference implementation.
std::vector<ProtocolSamples> run_campaign_serial(const CampaignConfig& config);

/// OpenMP implementation; threads <= 0 picks QPT_THREADS or the OpenMP default.
/// Output is identical to run_campaign_serial for every thread count.
std::vector<ProtocolSamples> run_campaign(const CampaignConfig& config, int threads = 0);

/// The OpenMP maximum, capped by QPT_THREADS when that is a positive integer.
int default_thread_count();

}  // namespace qpt
