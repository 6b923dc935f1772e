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

#include "bds/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bds {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Vec2c = Eigen::Vector2cd;

// Eigenvector of sigma_axis with eigenvalue +1 (plus) or -1.
Vec2c qubit_eigenvector(Axis axis, bool plus) {
  const Complex i(0.0, 1.0);
  Vec2c v;
  switch (axis) {
    case Axis::x:
      v << kInvSqrt2, plus ? kInvSqrt2 : -kInvSqrt2;
      break;
    case Axis::y:
      v << kInvSqrt2, (plus ? 1.0 : -1.0) * kInvSqrt2 * i;
      break;
    case Axis::z:
      if (plus) {
        v << 1.0, 0.0;
      } else {
        v << 0.0, 1.0;
      }
      break;
  }
  return v;
}

Vec4c kron(const Vec2c& a, const Vec2c& b) {
  Vec4c v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

char axis_char(Axis a) { return "xyz"[static_cast<int>(a)]; }

// Common eigenbasis of two commuting two-qubit Pauli products, ordered by
// the eigenvalue signs (+,+), (+,-), (-,+), (-,-).
Mat4c common_eigenbasis(const Mat4c& first, const Mat4c& second) {
  Eigen::SelfAdjointEigenSolver<Mat4c> solver(first + 2.0 * second);
  const Mat4c& vecs = solver.eigenvectors();
  Mat4c out;
  for (int k = 0; k < 4; ++k) {
    Vec4c v = vecs.col(k);
    const double a = (v.adjoint() * first * v)(0).real();
    const double b = (v.adjoint() * second * v)(0).real();
    const int slot = (a > 0 ? 0 : 2) + (b > 0 ? 0 : 1);
    // Fix the global phase: first non-negligible amplitude real positive.
    for (int r = 0; r < 4; ++r) {
      if (std::abs(v(r)) > 1e-8) {
        v *= std::conj(v(r)) / std::abs(v(r));
        break;
      }
    }
    out.col(slot) = v;
  }
  return out;
}

void check_probabilities(Vec4& probs) {
  probs = probs.cwiseMax(0.0);
  const double s = probs.sum();
  if (!(s > 0.0)) {
    throw std::logic_error("outcome probabilities vanish");
  }
  probs /= s;
}

int sample_categorical(const Vec4& probs, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (int k = 0; k < 4; ++k) {
    if (probs(k) > 0.0) last_positive = k;
    acc += probs(k);
    if (u < acc) return k;
  }
  return last_positive;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::bell:
      return "bell";
    case Strategy::parity_ordered:
      return "parity_ordered";
    case Strategy::parity_random:
      return "parity_random";
    case Strategy::mub:
      return "mub";
    case Strategy::pauli:
      return "pauli";
    case Strategy::haar:
      return "haar";
    case Strategy::haar_separable:
      return "haar_separable";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown measurement strategy '" +
                              std::string(name) + "'");
}

int shot_divisor(Strategy strategy) {
  switch (strategy) {
    case Strategy::parity_ordered:
      return 3;
    case Strategy::mub:
      return 5;
    case Strategy::pauli:
      return 9;
    default:
      return 1;
  }
}

bool is_random_basis(Strategy strategy) {
  return strategy == Strategy::parity_random || strategy == Strategy::haar ||
         strategy == Strategy::haar_separable;
}

bool is_parity(Strategy strategy) {
  return strategy == Strategy::parity_ordered ||
         strategy == Strategy::parity_random;
}

bool ProjectiveBasis::is_orthonormal(double tolerance) const {
  const Mat4c gram = vectors.adjoint() * vectors;
  return (gram - Mat4c::Identity()).cwiseAbs().maxCoeff() <= tolerance;
}

ProjectiveBasis bell_basis() { return {"bell", bell_vectors()}; }

ProjectiveBasis computational_basis() {
  return {"computational", Mat4c::Identity()};
}

ProjectiveBasis pauli_product_basis(Axis a, Axis b) {
  ProjectiveBasis basis;
  basis.label = std::string(1, axis_char(a)) + axis_char(b);
  int col = 0;
  for (bool pa : {true, false}) {
    for (bool pb : {true, false}) {
      basis.vectors.col(col++) =
          kron(qubit_eigenvector(a, pa), qubit_eigenvector(b, pb));
    }
  }
  return basis;
}

std::vector<ProjectiveBasis> mub_bases() {
  std::vector<ProjectiveBasis> out;
  out.push_back(pauli_product_basis(Axis::z, Axis::z));
  out.push_back(pauli_product_basis(Axis::x, Axis::x));
  out.push_back(pauli_product_basis(Axis::y, Axis::y));
  // {XY, YZ, ZX} and {YX, ZY, XZ}; the third member of each triple is
  // (up to sign) the product of the first two.
  out.push_back({"mub_xy_yz_zx", common_eigenbasis(pauli_pair(1, 2),
                                                   pauli_pair(2, 3))});
  out.push_back({"mub_yx_zy_xz", common_eigenbasis(pauli_pair(2, 1),
                                                   pauli_pair(3, 2))});
  return out;
}

std::vector<ProjectiveBasis> pauli_bases() {
  std::vector<ProjectiveBasis> out;
  out.reserve(9);
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    for (Axis b : {Axis::x, Axis::y, Axis::z}) {
      out.push_back(pauli_product_basis(a, b));
    }
  }
  return out;
}

Eigen::MatrixXcd haar_unitary(Rng& rng, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("unitary dimension must be positive");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im) * kInvSqrt2;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ProjectiveBasis haar_basis(Rng& rng, bool separable) {
  ProjectiveBasis basis;
  if (separable) {
    const Eigen::MatrixXcd u = haar_unitary(rng, 2);
    const Eigen::MatrixXcd v = haar_unitary(rng, 2);
    basis.label = "haar_separable";
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        basis.vectors.block<2, 2>(2 * r, 2 * c) = u(r, c) * v;
      }
    }
  } else {
    basis.label = "haar";
    basis.vectors = haar_unitary(rng, 4);
  }
  return basis;
}

ParityProbs parity_check_probs(const BellDiagonalState& state, Axis axis) {
  const double t = state.t()(static_cast<int>(axis));
  return {(1.0 + t) / 2.0, (1.0 - t) / 2.0};
}

Vec4 basis_probs(const BellDiagonalState& state, const ProjectiveBasis& basis) {
  const Mat4c& rho = density_matrix(state).matrix();
  Vec4 p;
  for (int k = 0; k < 4; ++k) {
    const auto v = basis.vectors.col(k);
    p(k) = (v.adjoint() * rho * v)(0).real();
  }
  return p;
}

Eigen::Matrix<double, 4, 3> born_response(const ProjectiveBasis& basis) {
  Eigen::Matrix<double, 4, 3> w;
  for (int i = 0; i < 3; ++i) {
    const Mat4c op = pauli_pair(i + 1, i + 1);
    for (int k = 0; k < 4; ++k) {
      const auto v = basis.vectors.col(k);
      w(k, i) = (v.adjoint() * op * v)(0).real();
    }
  }
  return w;
}

void MeasurementPlan::validate() const {
  if (shots < 0) {
    throw std::invalid_argument("shot count must be non-negative");
  }
  const int div = shot_divisor(strategy);
  if (shots % div != 0) {
    throw std::invalid_argument(
        std::string(to_string(strategy)) + " requires a shot count divisible by " +
        std::to_string(div) + ", got " + std::to_string(shots));
  }
}

void OutcomeRecord::validate() const {
  std::int64_t sum = 0;
  for (const auto& b : bases) {
    for (auto c : b.counts) {
      if (c < 0) throw std::invalid_argument("negative outcome count");
    }
    sum += b.total();
  }
  for (const auto& p : parity) {
    if (p.even < 0 || p.odd < 0) {
      throw std::invalid_argument("negative parity count");
    }
    sum += p.total();
  }
  if (sum != total_shots) {
    throw std::invalid_argument("outcome counts do not add up to total_shots");
  }
}

std::array<ParityCounts, 3> OutcomeRecord::parity_totals() const {
  std::array<ParityCounts, 3> out{ParityCounts{Axis::x, 0, 0},
                                  ParityCounts{Axis::y, 0, 0},
                                  ParityCounts{Axis::z, 0, 0}};
  for (const auto& p : parity) {
    auto& slot = out[static_cast<std::size_t>(p.axis)];
    slot.even += p.even;
    slot.odd += p.odd;
  }
  return out;
}

std::array<std::int64_t, 4> sample_multinomial(const Vec4& probs,
                                               std::int64_t n, Rng& rng) {
  std::array<std::int64_t, 4> counts{};
  std::int64_t remaining = n;
  double mass = 1.0;
  for (int k = 0; k < 3 && remaining > 0; ++k) {
    const double p = mass > 0.0 ? std::clamp(probs(k) / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> binom(remaining, p);
    counts[static_cast<std::size_t>(k)] = binom(rng);
    remaining -= counts[static_cast<std::size_t>(k)];
    mass -= probs(k);
  }
  counts[3] += remaining;
  return counts;
}

OutcomeRecord sample_outcomes(const BellDiagonalState& state,
                              const MeasurementPlan& plan, Rng& rng) {
  plan.validate();
  OutcomeRecord record;
  record.strategy = plan.strategy;
  record.total_shots = plan.shots;
  const std::int64_t n = plan.shots;

  auto fixed_bases = [&](const std::vector<ProjectiveBasis>& bases) {
    const auto per_basis = n / static_cast<std::int64_t>(bases.size());
    for (const auto& basis : bases) {
      Vec4 p = basis_probs(state, basis);
      check_probabilities(p);
      record.bases.push_back({basis, sample_multinomial(p, per_basis, rng)});
    }
  };

  switch (plan.strategy) {
    case Strategy::bell: {
      Vec4 p = state.theta();
      check_probabilities(p);
      record.bases.push_back({bell_basis(), sample_multinomial(p, n, rng)});
      break;
    }
    case Strategy::parity_ordered: {
      for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        const double p_even =
            std::clamp(parity_check_probs(state, axis).even, 0.0, 1.0);
        std::binomial_distribution<std::int64_t> binom(n / 3, p_even);
        const std::int64_t even = binom(rng);
        record.parity.push_back({axis, even, n / 3 - even});
      }
      break;
    }
    case Strategy::parity_random: {
      std::uniform_int_distribution<int> pick_axis(0, 2);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      record.parity.reserve(static_cast<std::size_t>(n));
      for (std::int64_t s = 0; s < n; ++s) {
        const auto axis = static_cast<Axis>(pick_axis(rng));
        const bool even = unit(rng) < parity_check_probs(state, axis).even;
        record.parity.push_back({axis, even ? 1 : 0, even ? 0 : 1});
      }
      break;
    }
    case Strategy::mub:
      fixed_bases(mub_bases());
      break;
    case Strategy::pauli:
      fixed_bases(pauli_bases());
      break;
    case Strategy::haar:
    case Strategy::haar_separable: {
      const bool separable = plan.strategy == Strategy::haar_separable;
      record.bases.reserve(static_cast<std::size_t>(n));
      for (std::int64_t s = 0; s < n; ++s) {
        ProjectiveBasis basis = haar_basis(rng, separable);
        Vec4 p = basis_probs(state, basis);
        check_probabilities(p);
        BasisCounts entry{std::move(basis), {}};
        entry.counts[static_cast<std::size_t>(sample_categorical(p, rng))] = 1;
        record.bases.push_back(std::move(entry));
      }
      break;
    }
  }
  return record;
}

OutcomeRecord sample_outcomes(const BellDiagonalState& state,
                              const MeasurementPlan& plan, std::uint64_t seed) {
  Rng rng(seed);
  return sample_outcomes(state, plan, rng);
}

}  // namespace bds
