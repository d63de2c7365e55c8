/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace symplab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double a = 0.0;
  double b = 0.0;

  Vec2 operator+(Vec2 o) const { return {a + o.a, b + o.b}; }
  Vec2 operator-(Vec2 o) const { return {a - o.a, b - o.b}; }
  Vec2 operator*(double s) const { return {a * s, b * s}; }
  Vec2& operator+=(Vec2 o) { a += o.a; b += o.b; return *this; }
  double norm() const { return std::hypot(a, b); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
// Symplectic pairing dq1^dq2(u, v).
inline double cross(Vec2 u, Vec2 v) { return u.a * v.b - u.b * v.a; }

// Row-major 2x2 matrix.
struct Mat2 {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

  static Mat2 identity() { return {}; }
  static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Vec2 operator*(Vec2 v) const { return {m00 * v.a + m01 * v.b, m10 * v.a + m11 * v.b}; }
  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
  Mat2 transpose() const { return {m00, m10, m01, m11}; }
  double det() const { return m00 * m11 - m01 * m10; }
  Mat2 inverse() const {
    const double d = det();
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
  }
  double norm() const { return std::sqrt(m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11); }
};

// Moore-Penrose pseudo-inverse; singular values below rel_tol * sigma_max are dropped.
Mat2 pseudo_inverse(const Mat2& m, double rel_tol = 1e-9);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(Vec3 o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
  double norm() const { return std::sqrt(dot(*this)); }
};

// Spectral derivative of samples f(i*period/N), i = 0..N-1.
std::vector<double> periodic_derivative(const std::vector<double>& f, double period = 1.0);

// Antiderivative F with F(0) = 0 of periodic samples; a nonzero mean contributes mean * t.
// `mean_out` (optional) receives the sample mean.
std::vector<double> periodic_antiderivative(const std::vector<double>& f, double period = 1.0,
                                            double* mean_out = nullptr);

// Gauss-Legendre nodes and weights on [a, b], ascending.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Dense differentiation matrix of the polynomial interpolant through `nodes`.
std::vector<double> lagrange_diff_matrix(const std::vector<double>& nodes);

// Fourth-order cumulative integral on a uniform grid, F[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

// Fourth-order finite-difference derivative on a uniform grid (one-sided at the ends).
std::vector<double> fd_derivative(const std::vector<double>& f, double h);

// Composite Simpson weights for an odd number of uniform nodes.
std::vector<double> simpson_weights(int n, double h);

// Periodic cubic spline through uniform samples on [0, period).
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(std::vector<double> values, double period = 1.0);
  double operator()(double t) const;
  double derivative(double t) const;
  bool empty() const { return y_.empty(); }

 private:
  std::vector<double> y_, m_;
  double period_ = 1.0;
  double h_ = 1.0;
};

// Shortest round-trip decimal representation.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

// Deterministic generator; uniform() avoids implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace symplab
