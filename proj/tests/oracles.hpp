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

// Brute-force reference computations shared by the unit and acceptance
// tests. Nothing in here calls into the library's analytic code: expected
// values come from enumeration, explicit matrices or plain sampling.

#ifndef BDS_TESTS_ORACLES_HPP
#define BDS_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using Mat4c = Eigen::Matrix4cd;

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

inline double binomial(int n, int k) {
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

inline double binomial_pmf(int n, int k, double p) {
  return binomial(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Every (x0..x3) with sum n, together with its multinomial probability.
inline void for_each_multinomial(int n, const Vec4& p,
                                 const std::function<void(const std::array<int, 4>&, double)>& fn) {
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      for (int c = 0; a + b + c <= n; ++c) {
        const std::array<int, 4> x{a, b, c, n - a - b - c};
        double prob = std::exp(log_factorial(n) - log_factorial(x[0]) - log_factorial(x[1]) -
                               log_factorial(x[2]) - log_factorial(x[3]));
        for (int i = 0; i < 4; ++i) prob *= std::pow(p(i), x[static_cast<std::size_t>(i)]);
        fn(x, prob);
      }
    }
  }
}

// Correlation vector from Bell weights, written out by hand.
inline Eigen::Vector3d t_of(const Vec4& th) {
  return {th(0) - th(1) + th(2) - th(3), -th(0) + th(1) + th(2) - th(3),
          th(0) + th(1) - th(2) - th(3)};
}

inline Vec4 dirichlet(std::mt19937_64& rng, double alpha = 1.0) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  Vec4 v;
  for (int i = 0; i < 4; ++i) v(i) = gamma(rng);
  return v / v.sum();
}

// Columns Phi+, Phi-, Psi+, Psi- in |00>,|01>,|10>,|11>.
inline Mat4c bell_columns() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4c b = Mat4c::Zero();
  b(0, 0) = r;  b(3, 0) = r;
  b(0, 1) = r;  b(3, 1) = -r;
  b(1, 2) = r;  b(2, 2) = r;
  b(1, 3) = r;  b(2, 3) = -r;
  return b;
}

inline Mat4c bell_mixture(const Vec4& th) {
  const Mat4c b = bell_columns();
  Mat4c rho = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) rho += th(i) * b.col(i) * b.col(i).adjoint();
  return rho;
}

inline Eigen::Matrix2cd sigma(int i) {
  Eigen::Matrix2cd s;
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, C(0, -1), C(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s.setIdentity();
  }
  return s;
}

inline Mat4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// Average over the four conjugations by sigma_i (x) sigma_i, i = 0..3.
inline Mat4c brute_twirl(const Mat4c& rho) {
  Mat4c out = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) {
    const Mat4c u = kron(sigma(i), sigma(i));
    out += u * rho * u.adjoint();
  }
  return out / 4.0;
}

// Ginibre-induced random density matrix.
inline Mat4c random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Mat4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = C(n01(rng), n01(rng));
  Mat4c rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Exhaustive expected HS losses. HS distance in theta is |dt|^2 / 4.

inline double bell_risk(const Vec4& th, int n, double pseudo) {
  double risk = 0.0;
  for_each_multinomial(n, th, [&](const std::array<int, 4>& x, double p) {
    double loss = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double est = (x[static_cast<std::size_t>(i)] + pseudo) / (n + 4.0 * pseudo);
      loss += (est - th(i)) * (est - th(i));
    }
    risk += p * loss;
  });
  return risk;
}

// Each shot: axis uniform in {x,y,z}, even with probability (1 + t_i)/2.
inline double random_parity_risk(const Vec4& th, int n) {
  const Eigen::Vector3d t = t_of(th);
  double risk = 0.0;
  long total = 1;
  for (int s = 0; s < n; ++s) total *= 6;
  for (long code = 0; code < total; ++code) {
    std::array<int, 3> even{}, seen{};
    double p = 1.0;
    long c = code;
    for (int s = 0; s < n; ++s) {
      const int axis = static_cast<int>(c % 3);
      const bool is_even = (c / 3) % 2 == 0;
      c /= 6;
      p *= (1.0 / 3.0) * (is_even ? (1 + t(axis)) / 2 : (1 - t(axis)) / 2);
      seen[static_cast<std::size_t>(axis)] += 1;
      even[static_cast<std::size_t>(axis)] += is_even;
    }
    double loss = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto y = seen[static_cast<std::size_t>(i)];
      const double est = y == 0 ? 0.0 : 2.0 * even[static_cast<std::size_t>(i)] / y - 1.0;
      loss += (est - t(i)) * (est - t(i));
    }
    risk += p * loss / 4.0;
  }
  return risk;
}

inline double ordered_parity_risk(const Vec4& th, int n) {
  const Eigen::Vector3d t = t_of(th);
  const int per_axis = n / 3;
  double risk = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k <= per_axis; ++k) {
      const double est = 2.0 * k / per_axis - 1.0;
      risk += binomial_pmf(per_axis, k, (1 + t(i)) / 2) * (est - t(i)) * (est - t(i)) / 4.0;
    }
  }
  return risk;
}

struct Stats {
  double mean;
  double se;
};

inline Stats mean_se(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double n = static_cast<double>(v.size());
  const double m = s / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace oracle

#endif  // BDS_TESTS_ORACLES_HPP
