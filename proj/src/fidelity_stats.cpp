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

#include "qpt/fidelity_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qpt {

Moments gx2_moments(const Gx2Coeffs& c) {
  Moments m;
  for (const double d : c.d) {
    m.mean += d;
    m.variance += 2.0 * d * d;
  }
  return m;
}

double effective_dof(const Gx2Coeffs& c) {
  double sum = 0.0;
  double sq = 0.0;
  for (const double d : c.d) {
    sum += d;
    sq += d * d;
  }
  return sq > 0.0 ? sum * sum / sq : 0.0;
}

std::vector<double> gx2_sample(const Gx2Coeffs& c, std::size_t n, std::uint64_t seed) {
  // Equal weights are pooled: d * (sum of k squared normals) is d * chi2(k).
  std::map<double, int> groups;
  for (const double d : c.d) {
    if (d < 0.0) {
      throw std::invalid_argument("gx2_sample: coefficients must be non-negative");
    }
    if (d > 0.0) {
      ++groups[d];
    }
  }
  std::vector<std::pair<double, std::chi_squared_distribution<double>>> parts;
  for (const auto& [d, k] : groups) {
    parts.emplace_back(d, std::chi_squared_distribution<double>(k));
  }
  std::mt19937_64 rng(seed);
  std::vector<double> out(n, 0.0);
  for (auto& x : out) {
    for (auto& [d, dist] : parts) {
      x += d * dist(rng);
    }
  }
  return out;
}

Moments sample_moments(std::span<const double> samples) {
  Moments m;
  if (samples.empty()) {
    return m;
  }
  const double n = static_cast<double>(samples.size());
  m.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (const double x : samples) {
      ss += (x - m.mean) * (x - m.mean);
    }
    m.variance = ss / (n - 1.0);
  }
  return m;
}

Gx2Coeffs gx2_fit(std::span<const double> samples, int j_max) {
  if (samples.size() < 2) {
    throw std::invalid_argument("gx2_fit: at least two samples required");
  }
  if (j_max < 1) {
    throw std::invalid_argument("gx2_fit: j_max must be >= 1");
  }
  if (std::any_of(samples.begin(), samples.end(), [](double x) { return !(x >= 0.0); })) {
    throw std::invalid_argument("gx2_fit: samples must be non-negative");
  }
  const Moments mom = sample_moments(samples);
  // A spread at the rounding level of the mean counts as zero variance.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * mom.mean;
  if (!(mom.mean > 0.0) || !(mom.variance > noise * noise)) {
    throw std::invalid_argument("gx2_fit: degenerate samples (zero variance or zero mean)");
  }
  const double m = mom.mean;
  const double q = mom.variance / 2.0;  // target sum of d^2
  const double nu = m * m / q;

  Gx2Coeffs c;
  c.j_max = j_max;
  if (nu >= j_max) {
    c.d.assign(static_cast<std::size_t>(j_max), m / j_max);
    return c;
  }
  if (nu < 1.0) {
    c.d = {m};
    return c;
  }
  // n equal coefficients a plus a remainder b >= 0:
  //   n a + b = m,  n a^2 + b^2 = q.
  const auto n = static_cast<int>(std::floor(nu));
  const double nn = n;
  const double disc = std::max(0.0, nn * ((nn + 1.0) * q - m * m));
  const double a = (m * nn + std::sqrt(disc)) / (nn * (nn + 1.0));
  const double b = std::max(0.0, m - nn * a);
  c.d.assign(static_cast<std::size_t>(n), a);
  if (b > 0.0) {
    c.d.push_back(b);
  }
  return c;
}

Histogram empirical_density(std::span<const double> samples, int bins, double upper) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_density: no samples");
  }
  if (bins < 2) {
    throw std::invalid_argument("empirical_density: at least two bins required");
  }
  if (!(upper > 0.0)) {
    upper = *std::max_element(samples.begin(), samples.end());
  }
  if (!(upper > 0.0)) {
    upper = 1.0;
  }
  const double width = upper / bins;
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  h.centers.resize(static_cast<std::size_t>(bins));
  for (int k = 0; k <= bins; ++k) {
    h.edges[static_cast<std::size_t>(k)] = k * width;
  }
  for (int k = 0; k < bins; ++k) {
    h.centers[static_cast<std::size_t>(k)] = (k + 0.5) * width;
  }
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (const double x : samples) {
    auto k = static_cast<long>(std::floor(x / width));
    k = std::clamp<long>(k, 0, bins - 1);
    counts[static_cast<std::size_t>(k)] += 1.0;
  }
  const double norm = static_cast<double>(samples.size()) * width;
  h.density.resize(counts.size());
  std::transform(counts.begin(), counts.end(), h.density.begin(),
                 [norm](double c) { return c / norm; });
  return h;
}

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

ProtocolComparison compare_protocols(std::span<const double> standard,
                                     std::span<const double> tetrahedron, int resamples,
                                     std::uint64_t seed) {
  if (standard.empty() || tetrahedron.empty()) {
    throw std::invalid_argument("compare_protocols: both sample sets must be non-empty");
  }
  ProtocolComparison out;
  out.mean_standard = mean_of(standard);
  out.mean_tetrahedron = mean_of(tetrahedron);
  out.ratio = out.mean_standard / out.mean_tetrahedron;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_std(0, standard.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_tet(0, tetrahedron.size() - 1);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(std::max(resamples, 0)));
  for (int b = 0; b < resamples; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < standard.size(); ++i) {
      s += standard[pick_std(rng)];
    }
    double t = 0.0;
    for (std::size_t i = 0; i < tetrahedron.size(); ++i) {
      t += tetrahedron[pick_tet(rng)];
    }
    ratios.push_back((s / static_cast<double>(standard.size())) /
                     (t / static_cast<double>(tetrahedron.size())));
  }
  if (ratios.empty()) {
    out.ci_low = out.ci_high = out.ratio;
    return out;
  }
  std::sort(ratios.begin(), ratios.end());
  out.ci_low = quantile(ratios, 0.025);
  out.ci_high = quantile(ratios, 0.975);
  return out;
}

double sample_skewness(std::span<const double> samples) {
  const Moments m = sample_moments(samples);
  if (!(m.variance > 0.0)) {
    return 0.0;
  }
  double m3 = 0.0;
  for (const double x : samples) {
    m3 += std::pow(x - m.mean, 3);
  }
  m3 /= static_cast<double>(samples.size());
  return m3 / std::pow(m.variance, 1.5);
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need at least two paired points");
  }
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  const double mx = mean_of(lx);
  const double my = mean_of(ly);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace qpt
