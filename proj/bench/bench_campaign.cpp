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

// Serial reference vs OpenMP campaign runner on the SQiSW / p = 0.5 setup.

#include <benchmark/benchmark.h>

#include "qpt/campaign.hpp"

namespace {

qpt::CampaignConfig bench_config(int runs) {
  qpt::CampaignConfig c;
  c.gate = qpt::sqiswap();
  c.noise_p = 0.5;
  c.protocols = {qpt::ProtocolKind::tetrahedron};
  c.shots = 100000;
  c.runs = runs;
  c.seed = 7;
  return c;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::run_campaign_serial(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignParallel(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::run_campaign(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Reconstruct(benchmark::State& state) {
  const auto kind = static_cast<qpt::ProtocolKind>(state.range(0));
  const auto protocol = qpt::build_protocol(kind, 2);
  const auto truth = qpt::noisy_chi({qpt::NoiseModel::Kind::depolarizing, 0.5, qpt::sqiswap()});
  const auto counts = qpt::simulate_counts(truth, protocol, 100000, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qpt::mle_reconstruct(counts, protocol));
  }
}

}  // namespace

BENCHMARK(BM_CampaignSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reconstruct)
    ->Arg(static_cast<int>(qpt::ProtocolKind::standard))
    ->Arg(static_cast<int>(qpt::ProtocolKind::tetrahedron))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
