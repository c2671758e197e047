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

#include "qpt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace qpt {

namespace {

constexpr double kProbabilityFloor = 1e-300;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr std::size_t kLbfgsMemory = 20;

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

// Stacked Kraus root W (mS x S, block k = E_k) <-> column matrix e (S^2 x m,
// column k = vec(E_k)). Pure index permutations.
ComplexMatrix root_to_columns(const ComplexMatrix& w, Index s) {
  const Index m = w.rows() / s;
  ComplexMatrix e(s * s, m);
  for (Index k = 0; k < m; ++k) {
    e.col(k) = w.block(k * s, 0, s, s).reshaped();
  }
  return e;
}

ComplexMatrix columns_to_root(const ComplexMatrix& e, Index s) {
  const Index m = e.cols();
  ComplexMatrix w(m * s, s);
  for (Index k = 0; k < m; ++k) {
    w.block(k * s, 0, s, s) = e.col(k).reshaped(s, s);
  }
  return w;
}

// X (X^dagger X)^{-1/2}: nearest isometry, used as the Stiefel retraction.
ComplexMatrix polar_isometry(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(x.adjoint() * x);
  const Eigen::VectorXd inv_root = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return x * (eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().adjoint());
}

ComplexMatrix tangent_projection(const ComplexMatrix& root, const ComplexMatrix& v) {
  return v - root * hermitian_part(root.adjoint() * v);
}

// Limited-memory inverse-Hessian approximation for minimizing -L, acting on
// ascent directions: apply(g) approximates H^{-1} g with g the gradient of L.
class CurvatureMemory {
public:
  explicit CurvatureMemory(std::size_t capacity) : capacity_(capacity) {}

  bool empty() const { return s_.empty(); }
  void clear() {
    s_.clear();
    y_.clear();
  }

  void push(ComplexMatrix s, ComplexMatrix y) {
    const double sy = real_inner(s, y);
    if (!(sy > 1e-12 * s.norm() * y.norm())) {
      return;
    }
    if (s_.size() == capacity_) {
      s_.erase(s_.begin());
      y_.erase(y_.begin());
    }
    s_.push_back(std::move(s));
    y_.push_back(std::move(y));
  }

  void transport(const ComplexMatrix& root) {
    for (std::size_t i = 0; i < s_.size(); ++i) {
      s_[i] = tangent_projection(root, s_[i]);
      y_[i] = tangent_projection(root, y_[i]);
    }
    // Drop pairs whose curvature turned non-positive after projection.
    for (std::size_t i = s_.size(); i-- > 0;) {
      if (!(real_inner(s_[i], y_[i]) > 0.0)) {
        s_.erase(s_.begin() + static_cast<std::ptrdiff_t>(i));
        y_.erase(y_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  ComplexMatrix apply(const ComplexMatrix& g) const {
    ComplexMatrix q = g;
    std::vector<double> alpha(s_.size());
    for (std::size_t i = s_.size(); i-- > 0;) {
      alpha[i] = real_inner(s_[i], q) / real_inner(s_[i], y_[i]);
      q -= alpha[i] * y_[i];
    }
    if (!s_.empty()) {
      q *= real_inner(s_.back(), y_.back()) / y_.back().squaredNorm();
    }
    for (std::size_t i = 0; i < s_.size(); ++i) {
      const double beta = real_inner(y_[i], q) / real_inner(s_[i], y_[i]);
      q += (alpha[i] - beta) * s_[i];
    }
    return q;
  }

private:
  std::size_t capacity_;
  std::vector<ComplexMatrix> s_;
  std::vector<ComplexMatrix> y_;
};

// Likelihood restricted to outcomes with positive weight.
class Likelihood {
public:
  Likelihood(const Protocol& protocol, std::span<const double> weights)
      : dim_(protocol.dim()) {
    std::vector<Index> active;
    for (std::size_t r = 0; r < weights.size(); ++r) {
      if (weights[r] > 0.0) {
        active.push_back(static_cast<Index>(r));
      }
    }
    design_ = protocol.design_matrix()(active, Eigen::all);

    // Observed frequencies within each configuration: the saturated model.
    const std::size_t k = protocol.outcomes_per_config();
    std::vector<double> group_total(protocol.config_count(), 0.0);
    for (std::size_t r = 0; r < weights.size(); ++r) {
      group_total[r / k] += weights[r];
    }
    weights_.resize(static_cast<Index>(active.size()));
    frequencies_.resize(static_cast<Index>(active.size()));
    offset_ = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const auto r = static_cast<std::size_t>(active[i]);
      const auto ii = static_cast<Index>(i);
      weights_(ii) = weights[r];
      frequencies_(ii) = weights[r] / group_total[r / k];
      offset_ += weights_(ii) * std::log(frequencies_(ii));
    }
  }

  // L = ratio + offset. The ratio to the saturated model is O(1) near the
  // optimum, whereas L itself carries a large entropy term, so all
  // comparisons and the stopping rule use the ratio.
  double offset() const { return offset_; }

  Eigen::VectorXd probabilities(const ComplexMatrix& root) const {
    const ComplexMatrix e = root_to_columns(root, dim_);
    return design_ * hermitian_coordinates(e * e.adjoint());
  }

  double value(const Eigen::VectorXd& p) const {
    double sum = 0.0;
    for (Index r = 0; r < p.size(); ++r) {
      const double q = std::max(p(r), kProbabilityFloor);
      sum += weights_(r) * std::log1p((q - frequencies_(r)) / frequencies_(r));
    }
    return sum;
  }

  // Change of the Lagrangian L - Re Tr(multiplier (W^dagger W - I)) from
  // `from` to `to`, accurate relative to the change itself. The Gram and
  // chi differences are formed from the difference of the roots. With the
  // multiplier of the isometry constraint at `from`, rounding drift of the
  // retraction off the Stiefel manifold cancels to first order; without it
  // that drift moves L by O(N eps) and swamps the last ascent steps.
  double increment(const ComplexMatrix& from, const Eigen::VectorXd& p_from,
                   const ComplexMatrix& to, const ComplexMatrix& multiplier) const {
    const ComplexMatrix e0 = root_to_columns(from, dim_);
    const ComplexMatrix e1 = root_to_columns(to, dim_);
    const ComplexMatrix d = e1 - e0;
    const Eigen::VectorXd dp =
        design_ * hermitian_coordinates(hermitian_part(d * e1.adjoint() + e0 * d.adjoint()));
    double sum = 0.0;
    for (Index r = 0; r < dp.size(); ++r) {
      const double x = dp(r) / std::max(p_from(r), kProbabilityFloor);
      if (!(x > -1.0)) {
        return -std::numeric_limits<double>::infinity();
      }
      sum += weights_(r) * std::log1p(x);
    }
    const ComplexMatrix dw = to - from;
    const ComplexMatrix gram_change = dw.adjoint() * to + from.adjoint() * dw;
    return sum - real_inner(multiplier, gram_change);
  }

  // dL/dW* at a root with probabilities p.
  ComplexMatrix gradient(const ComplexMatrix& root, const Eigen::VectorXd& p) const {
    const Eigen::VectorXd ratio = weights_.cwiseQuotient(p.cwiseMax(kProbabilityFloor));
    const ComplexMatrix g = hermitian_from_gradient(design_.transpose() * ratio, dim_ * dim_);
    return columns_to_root(g * root_to_columns(root, dim_), dim_);
  }

private:
  Index dim_;
  Eigen::MatrixXd design_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd frequencies_;
  double offset_ = 0.0;
};

ComplexMatrix initial_root(Index s, Index m, const MleOptions& options) {
  const Index n = s * s;
  std::mt19937_64 rng(options.init_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix noise(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      noise(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  const ComplexMatrix e =
      (identity(n) + options.init_perturbation * hermitian_part(noise)) / std::sqrt(double(s));
  return polar_isometry(columns_to_root(e.leftCols(m), s));
}

}  // namespace

Eigen::VectorXd outcome_probabilities(const ChiMatrix& chi, const Protocol& protocol) {
  if (chi.basis() != ChiBasis::natural) {
    throw std::invalid_argument("outcome_probabilities: chi must be in the natural basis");
  }
  if (chi.dim() != protocol.dim()) {
    throw DimensionError("outcome_probabilities: chi dimension " + std::to_string(chi.dim()) +
                         " vs protocol dimension " + std::to_string(protocol.dim()));
  }
  Eigen::VectorXd p = protocol.design_matrix() * hermitian_coordinates(chi.trace_dim_matrix());
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

std::vector<std::int64_t> allocate_shots(std::int64_t total_shots, std::size_t configs) {
  if (total_shots < 0) {
    throw std::invalid_argument("allocate_shots: total_shots must be non-negative");
  }
  if (configs == 0) {
    return {};
  }
  const auto c = static_cast<std::int64_t>(configs);
  std::vector<std::int64_t> shots(configs, total_shots / c);
  for (std::int64_t k = 0; k < total_shots % c; ++k) {
    ++shots[static_cast<std::size_t>(k)];
  }
  return shots;
}

CountsRecord simulate_counts(const ChiMatrix& chi, const Protocol& protocol,
                             std::int64_t total_shots, std::uint64_t seed) {
  const Eigen::VectorXd p = outcome_probabilities(chi, protocol);
  CountsRecord rec;
  rec.protocol = protocol.kind();
  rec.n_qubits = protocol.n_qubits();
  rec.seed = seed;
  rec.shots_per_config = allocate_shots(total_shots, protocol.config_count());
  rec.counts.assign(protocol.outcome_count(), 0);

  std::mt19937_64 rng(seed);
  const std::size_t k = protocol.outcomes_per_config();
  for (std::size_t c = 0; c < protocol.config_count(); ++c) {
    std::int64_t remaining = rec.shots_per_config[c];
    double mass = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      mass += p(static_cast<Index>(c * k + j));
    }
    // Sequential conditional binomials; the last outcome takes what is left.
    for (std::size_t j = 0; j + 1 < k && remaining > 0; ++j) {
      const double pj = p(static_cast<Index>(c * k + j));
      const double q = mass > 0.0 ? std::clamp(pj / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> draw(remaining, q);
      const std::int64_t n = draw(rng);
      rec.counts[c * k + j] = n;
      remaining -= n;
      mass -= pj;
    }
    rec.counts[c * k + k - 1] += remaining;
  }
  return rec;
}

double log_likelihood(const ChiMatrix& chi, const Protocol& protocol,
                      std::span<const double> weights) {
  if (weights.size() != protocol.outcome_count()) {
    throw DimensionError("log_likelihood: weight count does not match protocol outcomes");
  }
  const Eigen::VectorXd p = outcome_probabilities(chi, protocol);
  double sum = 0.0;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (weights[r] > 0.0) {
      sum += weights[r] * std::log(std::max(p(static_cast<Index>(r)), kProbabilityFloor));
    }
  }
  return sum;
}

ReconstructionResult mle_reconstruct(const CountsRecord& counts, const Protocol& protocol,
                                     const MleOptions& options) {
  if (counts.protocol != protocol.kind() || counts.n_qubits != protocol.n_qubits() ||
      counts.counts.size() != protocol.outcome_count()) {
    throw std::invalid_argument("mle_reconstruct: counts were not recorded with this protocol");
  }
  std::vector<double> weights(counts.counts.begin(), counts.counts.end());
  return mle_reconstruct_weights(weights, protocol, options);
}

ReconstructionResult mle_reconstruct_weights(std::span<const double> weights,
                                             const Protocol& protocol,
                                             const MleOptions& options) {
  if (weights.size() != protocol.outcome_count()) {
    throw DimensionError("mle_reconstruct: expected " + std::to_string(protocol.outcome_count()) +
                         " outcome weights, got " + std::to_string(weights.size()));
  }
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); })) {
    throw std::invalid_argument("mle_reconstruct: weights must be non-negative");
  }
  if (std::none_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; })) {
    throw std::invalid_argument("mle_reconstruct: at least one nonzero count is required");
  }

  const Index s = protocol.dim();
  const Index n = s * s;
  const Index m = options.root_width > 0 ? std::min<Index>(options.root_width, n) : n;
  const Likelihood likelihood(protocol, weights);

  ComplexMatrix root = initial_root(s, m, options);
  Eigen::VectorXd probs = likelihood.probabilities(root);
  // Ratio to the saturated model; the plain log-likelihood is value + offset.
  double value = likelihood.value(probs);
  // Riemannian gradient of L under <A, B> = Re Tr(A^dagger B).
  ComplexMatrix euclid = likelihood.gradient(root, probs);
  ComplexMatrix grad = 2.0 * tangent_projection(root, euclid);

  std::vector<double> trace{value + likelihood.offset()};
  bool converged = false;
  int iterations = 0;
  CurvatureMemory memory(kLbfgsMemory);

  while (iterations < options.max_iterations) {
    if (grad.squaredNorm() == 0.0) {
      converged = true;
      break;
    }
    ComplexMatrix direction = tangent_projection(root, memory.apply(grad));
    double slope = real_inner(grad, direction);
    if (!(slope > 0.0)) {
      memory.clear();
      direction = grad;
      slope = grad.squaredNorm();
    }
    double step = memory.empty() ? 0.1 / direction.norm() : 1.0;

    const ComplexMatrix multiplier = hermitian_part(root.adjoint() * euclid);
    ComplexMatrix candidate;
    double gain = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      candidate = polar_isometry(root + step * direction);
      gain = likelihood.increment(root, probs, candidate, multiplier);
      if (gain > 0.0 && gain >= kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted && !memory.empty()) {
      // Stale curvature pairs; retry along the gradient.
      memory.clear();
      continue;
    }
    if (!accepted) {
      // No ascent left at working precision.
      converged = true;
      break;
    }

    Eigen::VectorXd candidate_probs = likelihood.probabilities(candidate);
    ComplexMatrix candidate_euclid = likelihood.gradient(candidate, candidate_probs);
    ComplexMatrix candidate_grad = 2.0 * tangent_projection(candidate, candidate_euclid);

    // Pairs are stored for the minimization of -L; old pairs are carried over
    // to the new tangent space by projection.
    memory.transport(candidate);
    memory.push(tangent_projection(candidate, candidate - root),
                tangent_projection(candidate, grad) - candidate_grad);

    root = std::move(candidate);
    probs = std::move(candidate_probs);
    euclid = std::move(candidate_euclid);
    grad = std::move(candidate_grad);
    value += gain;
    trace.push_back(value + likelihood.offset());
    ++iterations;
    if (gain <= options.relative_tolerance * std::abs(value)) {
      converged = true;
      break;
    }
  }

  const ComplexMatrix e = root_to_columns(root, s);
  ChiMatrix chi_hat = ChiMatrix::normalized(e * e.adjoint());
  const double residual = tp_residual(chi_hat);
  return {std::move(chi_hat), std::move(trace), iterations, converged, residual,
          protocol.informationally_complete()};
}

namespace {

// Square root with eigenvalues at the eigensolver noise floor set to zero.
// Keeping them would add O(sqrt(eps)) to the trace norm below.
ComplexMatrix fidelity_root(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(m));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -kNegativeEigenTolerance) {
    throw NumericalError("process_fidelity: eigenvalue " + std::to_string(lambda.minCoeff()) +
                         " < -1e-10, process is not completely positive");
  }
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(lambda.maxCoeff(), 0.0) * static_cast<double>(lambda.size());
  const Eigen::VectorXd root =
      lambda.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi0) {
  if (chi.basis() != chi0.basis()) {
    throw std::invalid_argument("process_fidelity: basis mismatch");
  }
  if (chi.dim() != chi0.dim()) {
    throw DimensionError("process_fidelity: dimension mismatch");
  }
  // Tr sqrt(r0 chi r0) is the trace norm of r0 * sqrt(chi); singular values
  // carry absolute error near eps, unlike square roots of tiny eigenvalues.
  const ComplexMatrix product = fidelity_root(chi0.matrix()) * fidelity_root(chi.matrix());
  const double tr = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
  return tr * tr;
}

}  // namespace qpt
