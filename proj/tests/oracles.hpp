// Copyright 2026 The qprep Authors
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

// Reference implementations used only by tests. These deliberately take
// the slow, obviously-correct route (dense matrices, O(N^2) transforms,
// direct erf-based cumulatives) so they share no code with the library.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Mat = std::vector<std::vector<Complex>>;

inline double norm_cdf(double z) {
  return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2));
}

/** Mass of [lo, hi] under a normal(mean, sd) renormalized to [a, b]. */
inline double trunc_norm_mass(double mean, double sd, double a, double b,
                              double lo, double hi) {
  const double z = norm_cdf((b - mean) / sd) - norm_cdf((a - mean) / sd);
  return (norm_cdf((hi - mean) / sd) - norm_cdf((lo - mean) / sd)) / z;
}

/** Mass of [lo, hi] under exponential(rate) renormalized to [a, b]. */
inline double exp_mass(double rate, double a, double b, double lo, double hi) {
  const double z = std::exp(-rate * a) - std::exp(-rate * b);
  return (std::exp(-rate * lo) - std::exp(-rate * hi)) / z;
}

/** O(N^2) discrete Fourier transform,
 *  out[k] = (1/sqrt(N)) sum_j in[j] exp(sign * 2 pi i jk / N). */
inline std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
  const std::size_t n = in.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = static_cast<double>(sign) * 2.0 *
                           std::numbers::pi *
                           static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      acc += in[j] * Complex{std::cos(angle), std::sin(angle)};
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

/** Interference pattern by brute force:
 *  q_j = (1/N) (sum_i (-1)^{popcount(i & j)} sqrt(p_i))^2. */
inline std::vector<double> signed_sum_pattern(const std::vector<double>& p) {
  const std::size_t n = p.size();
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::sqrt(p[i]);
      s += (std::popcount(i & j) % 2 == 0) ? r : -r;
    }
    q[j] = s * s / static_cast<double>(n);
  }
  return q;
}

inline Mat identity(std::size_t n) {
  Mat m(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Complex{1.0, 0.0};
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t ra = a.size(), ca = a[0].size();
  const std::size_t rb = b.size(), cb = b[0].size();
  Mat m(ra * rb, std::vector<Complex>(ca * cb, Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l)
          m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return m;
}

inline std::vector<Complex> matvec(const Mat& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(m.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat out(n, std::vector<Complex>(m, Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][p] * b[p][j];
  return out;
}

inline Mat ry_matrix(double theta) {
  return Mat{{Complex{std::cos(theta), 0.0}, Complex{-std::sin(theta), 0.0}},
             {Complex{std::sin(theta), 0.0}, Complex{std::cos(theta), 0.0}}};
}

inline Mat h_matrix() {
  const double s = 1.0 / std::numbers::sqrt2;
  return Mat{{Complex{s, 0.0}, Complex{s, 0.0}},
             {Complex{s, 0.0}, Complex{-s, 0.0}}};
}

/** Single-qubit unitary embedded at qubit q of an n-qubit register,
 *  with qubit 0 as the most significant index bit (leftmost tensor
 *  factor). */
inline Mat embed_single(int num_qubits, int qubit, const Mat& u) {
  Mat m = (qubit == 0) ? u : identity(2);
  for (int q = 1; q < num_qubits; ++q) {
    m = kron(m, (q == qubit) ? u : identity(2));
  }
  return m;
}

/** Dense permutation matrix of a controlled-not. */
inline Mat cnot_matrix(int num_qubits, int control, int target) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::uint64_t cb = std::uint64_t{1} << (num_qubits - 1 - control);
  const std::uint64_t tb = std::uint64_t{1} << (num_qubits - 1 - target);
  Mat m(dim, std::vector<Complex>(dim, Complex{0.0, 0.0}));
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = (i & cb) ? (i ^ tb) : i;
    m[j][i] = Complex{1.0, 0.0};
  }
  return m;
}

/** Dense multiplexed rotation: rotation ry(angles[w]) on the target,
 *  where w is the controls' bit word read msb-first in list order. */
inline Mat multiplexed_ry_matrix(int num_qubits, const std::vector<int>& controls,
                                 int target, const std::vector<double>& angles) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::uint64_t tb = std::uint64_t{1} << (num_qubits - 1 - target);
  Mat m(dim, std::vector<Complex>(dim, Complex{0.0, 0.0}));
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tb) continue;
    std::uint64_t word = 0;
    for (int c : controls) {
      word = (word << 1) |
             ((i >> (num_qubits - 1 - c)) & std::uint64_t{1});
    }
    const double th = angles[word];
    const std::uint64_t j = i | tb;
    m[i][i] = Complex{std::cos(th), 0.0};
    m[j][i] = Complex{std::sin(th), 0.0};
    m[i][j] = Complex{-std::sin(th), 0.0};
    m[j][j] = Complex{std::cos(th), 0.0};
  }
  return m;
}

/** Haar-ish random normalized state for property tests. */
inline std::vector<Complex> random_state(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& a : v) {
    a = Complex{gauss(rng), gauss(rng)};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : v) a *= scale;
  return v;
}

}  // namespace oracle
