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

namespace qpt {

/// Weights of a generalized chi-square variable sum_j d_j xi_j^2, xi_j ~ N(0,1).
struct Gx2Coeffs {
  std::vector<double> d;
  int j_max = 0;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = sum d, variance = 2 sum d^2.
Moments gx2_moments(const Gx2Coeffs& c);

/// (sum d)^2 / sum d^2, the dof of the chi-square with matching two moments.
double effective_dof(const Gx2Coeffs& c);

std::vector<double> gx2_sample(const Gx2Coeffs& c, std::size_t n, std::uint64_t seed);

/// Sample mean and unbiased sample variance.
Moments sample_moments(std::span<const double> samples);

/// Two-moment fit. With nu = 2 mean^2 / variance the fit uses floor(nu) equal
/// coefficients plus one remainder coefficient, which reproduces both sample
/// moments. When nu >= j_max it returns j_max equal coefficients (mean only);
/// when nu < 1 it returns the single coefficient [mean] (mean only).
/// Throws std::invalid_argument for empty, negative, or zero-variance samples.
Gx2Coeffs gx2_fit(std::span<const double> samples, int j_max);

struct Histogram {
  std::vector<double> edges;    // bins + 1 entries
  std::vector<double> centers;
  std::vector<double> density;  // integrates to 1
};

/// Normalized histogram over [0, upper]; upper defaults to the sample maximum.
Histogram empirical_density(std::span<const double> samples, int bins, double upper = 0.0);

struct ProtocolComparison {
  double mean_standard = 0.0;
  double mean_tetrahedron = 0.0;
  double ratio = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Ratio of mean losses with a percentile bootstrap 95% interval; each set is
/// resampled independently.
ProtocolComparison compare_protocols(std::span<const double> standard,
                                     std::span<const double> tetrahedron,
                                     int resamples = 1000, std::uint64_t seed = 0);

double sample_skewness(std::span<const double> samples);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qpt
