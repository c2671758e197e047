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

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <omp.h>

#include "doctest.h"

#include "qpt/campaign.hpp"
#include "qpt/fidelity_stats.hpp"
#include "qpt/gates.hpp"

using namespace qpt;

namespace {

CampaignConfig small_config() {
  CampaignConfig c;
  c.gate = sqiswap();
  c.noise_p = 0.5;
  c.protocols = {ProtocolKind::tetrahedron};
  c.shots = 20000;
  c.runs = 6;
  c.seed = 123;
  return c;
}

bool same_samples(const std::vector<ProtocolSamples>& a, const std::vector<ProtocolSamples>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].protocol != b[k].protocol || a[k].samples.size() != b[k].samples.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a[k].samples.size(); ++i) {
      const auto& x = a[k].samples[i];
      const auto& y = b[k].samples[i];
      if (x.run != y.run || x.seed != y.seed || x.fidelity != y.fidelity || x.loss != y.loss ||
          x.converged != y.converged || x.iterations != y.iterations) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("campaign results do not depend on the worker count") {
  CampaignConfig c = small_config();
  c.protocols = {ProtocolKind::standard, ProtocolKind::tetrahedron};
  c.runs = 5;
  const auto serial = run_campaign_serial(c);
  REQUIRE(serial.size() == 2);
  CHECK(serial[0].protocol == ProtocolKind::standard);
  CHECK(serial[1].protocol == ProtocolKind::tetrahedron);
  for (const auto& ps : serial) {
    REQUIRE(ps.samples.size() == 5);
    for (int r = 0; r < 5; ++r) {
      CHECK(ps.samples[static_cast<std::size_t>(r)].run == r);
      CHECK(ps.samples[static_cast<std::size_t>(r)].seed == 123u + static_cast<unsigned>(r));
    }
  }
  CHECK(same_samples(serial, run_campaign(c, 1)));
  CHECK(same_samples(serial, run_campaign(c, 3)));
  CHECK(same_samples(run_campaign(c, 3), run_campaign(c, 2)));
}

TEST_CASE("samples are valid fidelity losses") {
  const auto out = run_campaign(small_config());
  for (const auto& s : out[0].samples) {
    CHECK(s.loss >= 0.0);
    CHECK(s.loss <= 1.0);
    CHECK(s.loss == doctest::Approx(1.0 - s.fidelity).epsilon(1e-12));
    CHECK(s.converged);
  }
  CHECK(out[0].losses().size() == 6);
  double sum = 0.0;
  for (double l : out[0].losses()) {
    sum += l;
  }
  CHECK(out[0].mean_loss() == doctest::Approx(sum / 6.0));
}

TEST_CASE("exact-probability mode recovers the process") {
  CampaignConfig c = small_config();
  c.runs = 1;
  c.exact_probabilities = true;
  for (ProtocolKind k : {ProtocolKind::standard, ProtocolKind::tetrahedron}) {
    c.protocols = {k};
    const auto out = run_campaign_serial(c);
    CHECK(out[0].samples[0].loss < 1e-6);
  }
}

TEST_CASE("non-convergence is recorded, not fatal") {
  CampaignConfig c = small_config();
  c.runs = 2;
  c.max_iterations = 3;
  const auto out = run_campaign(c, 1);
  for (const auto& s : out[0].samples) {
    CHECK_FALSE(s.converged);
    CHECK(s.iterations == 3);
  }
}

TEST_CASE("loss distribution is right-skewed") {
  CampaignConfig c = small_config();
  c.shots = 100000;
  c.runs = 60;
  const auto out = run_campaign(c);
  CHECK(sample_skewness(out[0].losses()) > 0.0);
}

TEST_CASE("doubling the shot budget halves the mean loss") {
  // Asymptotic regime: at desk-scale budgets the true small eigenvalues of the
  // depolarized process are still masked by the positivity boundary.
  CampaignConfig c = small_config();
  c.runs = 100;
  c.shots = 1000000;
  const double base = run_campaign(c)[0].mean_loss();
  c.shots = 2000000;
  const double doubled = run_campaign(c)[0].mean_loss();
  const double ratio = doubled / base;
  MESSAGE("mean loss ratio after doubling N: " << ratio);
  CHECK(std::abs(ratio - 0.5) / 0.5 < 0.2);
}

TEST_CASE("configuration validation") {
  CampaignConfig c = small_config();
  CHECK_NOTHROW(validate(c));
  auto bad = c;
  bad.shots = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = c;
  bad.runs = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = c;
  bad.noise_p = 1.5;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = c;
  bad.protocols.clear();
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = c;
  bad.gate = rotation_gate(Axis::x, 0.3);
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  CHECK_THROWS_AS(run_campaign(bad), std::invalid_argument);
}

TEST_CASE("thread count honours QPT_THREADS as an upper bound") {
  const int max = omp_get_max_threads();
  setenv("QPT_THREADS", "1", 1);
  CHECK(default_thread_count() == 1);
  setenv("QPT_THREADS", "100000", 1);
  CHECK(default_thread_count() == max);
  setenv("QPT_THREADS", "junk", 1);
  CHECK(default_thread_count() == max);
  unsetenv("QPT_THREADS");
  CHECK(default_thread_count() == max);
}
