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

#include "qpt/campaign.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace qpt {

std::vector<double> ProtocolSamples::losses() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back(s.loss);
  }
  return out;
}

double ProtocolSamples::mean_loss() const {
  if (samples.empty()) {
    return 0.0;
  }
  const auto l = losses();
  return std::accumulate(l.begin(), l.end(), 0.0) / static_cast<double>(l.size());
}

void validate(const CampaignConfig& config) {
  if (config.gate.matrix.rows() != 4 || !is_unitary(config.gate.matrix, 1e-10)) {
    throw std::invalid_argument("campaign gate must be a 4x4 unitary");
  }
  if (!(config.noise_p >= 0.0 && config.noise_p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0,1]");
  }
  if (config.shots < 1) {
    throw std::invalid_argument("shots must be >= 1");
  }
  if (config.runs < 1) {
    throw std::invalid_argument("runs must be >= 1");
  }
  if (config.protocols.empty()) {
    throw std::invalid_argument("at least one protocol is required");
  }
}

namespace {

ChiMatrix campaign_truth(const CampaignConfig& config) {
  NoiseModel model;
  model.kind = config.noise_p > 0.0 ? NoiseModel::Kind::depolarizing : NoiseModel::Kind::none;
  model.p = config.noise_p;
  model.base = config.gate;
  return noisy_chi(model);
}

}  // namespace

FidelitySample run_single(const CampaignConfig& config, const Protocol& protocol,
                          const ChiMatrix& truth, int run) {
  const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(run);
  MleOptions options;
  options.max_iterations = config.max_iterations;
  options.init_seed = seed;

  ReconstructionResult result = [&] {
    if (config.exact_probabilities) {
      const Eigen::VectorXd p = outcome_probabilities(truth, protocol);
      return mle_reconstruct_weights(std::span<const double>(p.data(), p.size()), protocol,
                                     options);
    }
    return mle_reconstruct(simulate_counts(truth, protocol, config.shots, seed), protocol,
                           options);
  }();

  FidelitySample s;
  s.run = run;
  s.seed = seed;
  s.fidelity = process_fidelity(result.chi_hat, truth);
  s.loss = std::clamp(1.0 - s.fidelity, 0.0, 1.0);
  s.converged = result.converged;
  s.iterations = result.iterations;
  return s;
}

std::vector<ProtocolSamples> run_campaign_serial(const CampaignConfig& config) {
  validate(config);
  const ChiMatrix truth = campaign_truth(config);
  std::vector<ProtocolSamples> out;
  for (const ProtocolKind kind : config.protocols) {
    const Protocol protocol = build_protocol(kind, 2);
    ProtocolSamples ps{kind, {}};
    ps.samples.reserve(static_cast<std::size_t>(config.runs));
    for (int r = 0; r < config.runs; ++r) {
      ps.samples.push_back(run_single(config, protocol, truth, r));
    }
    out.push_back(std::move(ps));
  }
  return out;
}

std::vector<ProtocolSamples> run_campaign(const CampaignConfig& config, int threads) {
  validate(config);
  if (threads <= 0) {
    threads = default_thread_count();
  }
  const ChiMatrix truth = campaign_truth(config);
  std::vector<ProtocolSamples> out;
  for (const ProtocolKind kind : config.protocols) {
    const Protocol protocol = build_protocol(kind, 2);
    ProtocolSamples ps{kind, std::vector<FidelitySample>(static_cast<std::size_t>(config.runs))};
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int r = 0; r < config.runs; ++r) {
      try {
        ps.samples[static_cast<std::size_t>(r)] = run_single(config, protocol, truth, r);
      } catch (...) {
#pragma omp critical(qpt_campaign_failure)
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
    out.push_back(std::move(ps));
  }
  return out;
}

int default_thread_count() {
  if (const char* env = std::getenv("QPT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) {
        return std::min(n, omp_get_max_threads());
      }
    } catch (const std::exception&) {
      // Malformed value: fall through to the OpenMP default.
    }
  }
  return omp_get_max_threads();
}

}  // namespace qpt
