// Copyright 2026 The bdsest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bds/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bds {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Cubature weight of a lattice point by its number of zero coordinates.
// These make the weighted point count equal the simplex volume for every m.
constexpr std::array<double, 4> kBoundaryWeights = {1.0, 0.5, 7.0 / 36.0,
                                                    1.0 / 24.0};

double safe_log(double p) { return p < kProbabilityFloor ? kNegInf : std::log(p); }

Estimate from_t_estimate(const Vec3& t) {
  Estimate e;
  e.theta_hat = t_to_theta(t);
  e.physical = is_physical(t);
  return e;
}

// Pseudo-inverse solve of a symmetric positive semidefinite 3x3 system.
Vec3 min_norm_solve(const Eigen::Matrix3d& a, const Vec3& b, double threshold) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(a);
  Vec3 x = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda > threshold) {
      const Vec3 v = solver.eigenvectors().col(k);
      x += v * (v.dot(b) / lambda);
    }
  }
  return x;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol, double* best_value) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double best = fc >= fd ? c : d;
  double best_f = std::max(fc, fd);
  for (double s : {lo, hi}) {
    const double fs = f(s);
    if (fs > best_f) {
      best = s;
      best_f = fs;
    }
  }
  *best_value = best_f;
  return best;
}

}  // namespace

StateGrid::StateGrid(int resolution) : resolution_(resolution) {
  if (resolution < 1) {
    throw std::invalid_argument("grid resolution must be >= 1");
  }
  const long m = resolution;
  const long count = (m + 3) * (m + 2) * (m + 1) / 6;
  thetas_.resize(count, 4);
  weights_.resize(count);
  Eigen::Index row = 0;
  const double inv = 1.0 / static_cast<double>(m);
  for (long a = 0; a <= m; ++a) {
    for (long b = 0; a + b <= m; ++b) {
      for (long c = 0; a + b + c <= m; ++c) {
        const long d = m - a - b - c;
        thetas_.row(row) << a * inv, b * inv, c * inv, d * inv;
        const int zeros = (a == 0) + (b == 0) + (c == 0) + (d == 0);
        weights_(row) = kBoundaryWeights[static_cast<std::size_t>(zeros)];
        ++row;
      }
    }
  }
}

StateGrid build_grid(int resolution) { return StateGrid(resolution); }

void PriorSpec::validate() const {
  if (!alpha.allFinite() || (alpha.array() <= 0.0).any()) {
    throw std::invalid_argument("Dirichlet concentrations must be positive");
  }
}

LikelihoodModel::LikelihoodModel(const OutcomeRecord& record)
    : total_shots_(record.total_shots) {
  record.validate();
  const std::size_t capacity = record.bases.size() * 4 + record.parity.size() * 2;
  q_.resize(static_cast<Eigen::Index>(capacity), 4);
  counts_.resize(static_cast<Eigen::Index>(capacity));

  const Mat34& m = theta_to_t_matrix();
  for (const auto& entry : record.bases) {
    const Eigen::Matrix<double, 4, 3> w = born_response(entry.basis);
    for (int k = 0; k < 4; ++k) {
      const auto count = entry.counts[static_cast<std::size_t>(k)];
      if (count == 0) continue;
      const Vec4 q = (Vec4::Ones() + m.transpose() * w.row(k).transpose()) / 4.0;
      add_term(q, static_cast<double>(count));
    }
  }
  for (const auto& p : record.parity) {
    const Vec4 row = m.row(static_cast<int>(p.axis)).transpose();
    if (p.even > 0) add_term((Vec4::Ones() + row) / 2.0, static_cast<double>(p.even));
    if (p.odd > 0) add_term((Vec4::Ones() - row) / 2.0, static_cast<double>(p.odd));
  }
  q_.conservativeResize(size_, 4);
  counts_.conservativeResize(size_);
}

void LikelihoodModel::add_term(const Vec4& q, double count) {
  // Merge with an identical functional; per-shot Haar terms are essentially
  // never equal, so only look back over short models.
  if (size_ <= 64) {
    for (Eigen::Index j = 0; j < size_; ++j) {
      if ((q_.row(j).transpose() - q).cwiseAbs().maxCoeff() < 1e-13) {
        counts_(j) += count;
        return;
      }
    }
  }
  q_.row(size_) = q.transpose();
  counts_(size_) = count;
  ++size_;
}

double LikelihoodModel::log_likelihood(const Vec4& theta) const {
  double ll = 0.0;
  for (Eigen::Index j = 0; j < size_; ++j) {
    ll += counts_(j) * safe_log(q_.row(j).dot(theta.transpose()));
  }
  return ll;
}

Eigen::VectorXd LikelihoodModel::log_likelihood(const StateGrid& grid) const {
  Eigen::VectorXd ll = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  if (size_ == 0) return ll;
  const Eigen::MatrixXd probs = grid.thetas() * q_.transpose();
  for (Eigen::Index j = 0; j < size_; ++j) {
    const auto col = probs.col(j).array();
    ll.array() += counts_(j) * (col < kProbabilityFloor).select(kNegInf, col.log());
  }
  return ll;
}

double log_likelihood(const OutcomeRecord& record, const Vec4& theta) {
  return LikelihoodModel(record).log_likelihood(theta);
}

Estimate direct_inversion(const OutcomeRecord& record) {
  record.validate();
  if (is_parity(record.strategy)) {
    const auto totals = record.parity_totals();
    Vec3 t = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
      const auto& tally = totals[static_cast<std::size_t>(i)];
      const auto y = tally.total();
      if (y > 0) t(i) = 2.0 * static_cast<double>(tally.even) / static_cast<double>(y) - 1.0;
    }
    return from_t_estimate(t);
  }
  if (record.total_shots <= 0) {
    throw std::invalid_argument("direct inversion needs at least one shot");
  }
  if (record.strategy == Strategy::bell) {
    Vec4 x = Vec4::Zero();
    for (const auto& entry : record.bases) {
      for (int k = 0; k < 4; ++k) x(k) += static_cast<double>(entry.counts[static_cast<std::size_t>(k)]);
    }
    Estimate e;
    e.theta_hat = x / static_cast<double>(record.total_shots);
    e.physical = true;
    return e;
  }
  // Least squares over shots of (onehot - 1/4 - w.t/4)^2 via the normal
  // equations accumulated per basis.
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Vec3 atb = Vec3::Zero();
  for (const auto& entry : record.bases) {
    const double n = static_cast<double>(entry.total());
    if (n == 0.0) continue;
    const Eigen::Matrix<double, 4, 3> a = born_response(entry.basis) / 4.0;
    ata += n * a.transpose() * a;
    for (int k = 0; k < 4; ++k) {
      const double residual = static_cast<double>(entry.counts[static_cast<std::size_t>(k)]) - n / 4.0;
      atb += a.row(k).transpose() * residual;
    }
  }
  const double threshold = 1e-10 * static_cast<double>(record.total_shots);
  return from_t_estimate(min_norm_solve(ata, atb, threshold));
}

Estimate mle(const OutcomeRecord& record, const StateGrid& grid,
             const MleOptions& options) {
  Estimate e;
  if (record.total_shots == 0) {
    record.validate();
    return e;
  }
  const LikelihoodModel model(record);
  const Eigen::VectorXd ll = model.log_likelihood(grid);
  Eigen::Index best = 0;
  for (Eigen::Index g = 1; g < ll.size(); ++g) {
    if (ll(g) > ll(best)) best = g;
  }
  if (!std::isfinite(ll(best))) {
    throw std::runtime_error("record has zero likelihood on every grid point");
  }
  Vec4 theta = grid.theta(static_cast<std::size_t>(best));

  if (options.refine) {
    const auto& q = model.functionals();
    const auto& counts = model.counts();
    double current = ll(best);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      double gain = 0.0;
      double max_step = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          // Move mass s from j to i: theta + s (e_i - e_j), s in [-theta_i, theta_j].
          const Eigen::VectorXd base = q * theta;
          const Eigen::VectorXd dir = q.col(i) - q.col(j);
          auto f = [&](double s) {
            double acc = 0.0;
            for (Eigen::Index k = 0; k < base.size(); ++k) {
              acc += counts(k) * safe_log(base(k) + s * dir(k));
            }
            return acc;
          };
          double value = kNegInf;
          const double s = golden_section_max(f, -theta(i), theta(j),
                                              options.tolerance, &value);
          if (value > current) {
            theta(i) += s;
            theta(j) -= s;
            theta = theta.cwiseMax(0.0);
            theta /= theta.sum();
            gain += value - current;
            current = model.log_likelihood(theta);
            max_step = std::max(max_step, std::abs(s));
          }
        }
      }
      if (gain <= options.tolerance && max_step <= options.tolerance) break;
    }
  }
  e.theta_hat = theta;
  e.physical = true;
  return e;
}

Estimate bme(const OutcomeRecord& record, const StateGrid& grid,
             const PriorSpec& prior) {
  prior.validate();
  const LikelihoodModel model(record);
  Eigen::VectorXd logw = model.log_likelihood(grid);
  const auto& thetas = grid.thetas();
  const double boundary_theta = 0.25 / static_cast<double>(grid.resolution());
  for (Eigen::Index g = 0; g < logw.size(); ++g) {
    double lp = std::log(grid.weights()(g));
    for (int i = 0; i < 4; ++i) {
      const double a = prior.alpha(i);
      if (a == 1.0) continue;
      const double th = thetas(g, i);
      if (th > 0.0) {
        lp += (a - 1.0) * std::log(th);
      } else if (a > 1.0) {
        lp = kNegInf;
        break;
      } else {
        // Integrable singularity on the boundary: evaluate a quarter step in.
        lp += (a - 1.0) * std::log(boundary_theta);
      }
    }
    logw(g) += lp;
  }
  const double peak = logw.maxCoeff();
  if (!std::isfinite(peak)) {
    throw std::runtime_error("posterior has no mass on the grid");
  }
  // Fixed summation order keeps the result reproducible.
  double norm = 0.0;
  Vec4 mean = Vec4::Zero();
  Eigen::VectorXd w(logw.size());
  for (Eigen::Index g = 0; g < logw.size(); ++g) {
    w(g) = std::exp(logw(g) - peak);
    norm += w(g);
    mean += w(g) * thetas.row(g).transpose();
  }
  mean /= norm;
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  for (Eigen::Index g = 0; g < logw.size(); ++g) {
    if (w(g) == 0.0) continue;
    const Vec4 d = thetas.row(g).transpose() - mean;
    cov += w(g) * d * d.transpose();
  }
  cov /= norm;

  Estimate e;
  e.theta_hat = mean;
  e.physical = is_physical(theta_to_t_matrix() * mean);
  e.posterior_mean = mean;
  e.posterior_cov = cov;
  return e;
}

Eigen::Matrix4d posterior_covariance(const OutcomeRecord& record,
                                     const StateGrid& grid,
                                     const PriorSpec& prior) {
  return *bme(record, grid, prior).posterior_cov;
}

Estimate bme_bell_conjugate(const OutcomeRecord& record, const PriorSpec& prior) {
  prior.validate();
  record.validate();
  if (record.strategy != Strategy::bell) {
    throw std::invalid_argument("conjugate posterior requires a Bell record");
  }
  Vec4 a = prior.alpha;
  for (const auto& entry : record.bases) {
    for (int k = 0; k < 4; ++k) a(k) += static_cast<double>(entry.counts[static_cast<std::size_t>(k)]);
  }
  const double a0 = a.sum();
  Estimate e;
  e.theta_hat = a / a0;
  e.physical = true;
  e.posterior_mean = e.theta_hat;
  Eigen::Matrix4d cov = -(a * a.transpose());
  cov.diagonal() += a0 * a;
  e.posterior_cov = cov / (a0 * a0 * (a0 + 1.0));
  return e;
}

Vec4 project_to_simplex(const Vec4& v) {
  std::array<double, 4> u{v(0), v(1), v(2), v(3)};
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (int k = 0; k < 4; ++k) {
    cumulative += u[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - 1.0) / (k + 1);
    if (u[static_cast<std::size_t>(k)] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0).matrix();
}

}  // namespace bds
