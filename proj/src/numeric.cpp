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
#include "symplab/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "symplab/errors.hpp"

namespace symplab {

Mat2 pseudo_inverse(const Mat2& m, double rel_tol) {
  // SVD through the eigen-decomposition of M^T M.
  const Mat2 mtm = m.transpose() * m;
  const double tr = mtm.m00 + mtm.m11;
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - mtm.det()));
  const double l1 = 0.5 * tr + disc;
  const double l2 = std::max(0.0, 0.5 * tr - disc);
  if (l1 <= 0.0) return Mat2::zero();
  auto eigvec = [&](double l) -> Vec2 {
    Vec2 v{mtm.m01, l - mtm.m00};
    Vec2 w{l - mtm.m11, mtm.m10};
    Vec2 u = v.norm() > w.norm() ? v : w;
    if (u.norm() < 1e-300) return l == l1 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    return u * (1.0 / u.norm());
  };
  Vec2 v1 = eigvec(l1);
  Vec2 v2{-v1.b, v1.a};
  const double s1 = std::sqrt(l1);
  const double s2 = std::sqrt(l2);
  Mat2 out = Mat2::zero();
  auto add = [&](Vec2 v, double s) {
    if (s <= rel_tol * s1) return;
    Vec2 u = m * v * (1.0 / s);
    // pinv += v u^T / s
    out.m00 += v.a * u.a / s;
    out.m01 += v.a * u.b / s;
    out.m10 += v.b * u.a / s;
    out.m11 += v.b * u.b / s;
  };
  add(v1, s1);
  add(v2, s2);
  return out;
}

namespace {

struct TrigTable {
  std::vector<double> c, s;
};

const TrigTable& trig_table(std::size_t n) {
  thread_local std::map<std::size_t, TrigTable> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  TrigTable t;
  t.c.resize(n);
  t.s.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double a = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    t.c[m] = std::cos(a);
    t.s[m] = std::sin(a);
  }
  return cache.emplace(n, std::move(t)).first->second;
}

// Real DFT coefficients F_k = a_k + i b_k for k = 0..kmax.
void real_dft(const std::vector<double>& f, std::size_t kmax, std::vector<double>& a,
              std::vector<double>& b) {
  const std::size_t n = f.size();
  const TrigTable& tt = trig_table(n);
  a.assign(kmax + 1, 0.0);
  b.assign(kmax + 1, 0.0);
  for (std::size_t k = 0; k <= kmax; ++k) {
    double sa = 0.0, sb = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      sa += f[j] * tt.c[idx];
      sb -= f[j] * tt.s[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    a[k] = sa;
    b[k] = sb;
  }
}

}  // namespace

std::vector<double> periodic_derivative(const std::vector<double>& f, double period) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  const std::size_t kmax = (n - 1) / 2;  // Nyquist mode dropped for even n
  std::vector<double> a, b;
  real_dft(f, kmax, a, b);
  const TrigTable& tt = trig_table(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    std::size_t idx = j;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double kk = kTwoPi * static_cast<double>(k) / period;
      acc += kk * (-b[k] * tt.c[idx] - a[k] * tt.s[idx]);
      idx += j;
      if (idx >= n) idx -= n;
    }
    out[j] = 2.0 * acc / static_cast<double>(n);
  }
  return out;
}

std::vector<double> periodic_antiderivative(const std::vector<double>& f, double period,
                                            double* mean_out) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(n);
  if (mean_out) *mean_out = mean;
  const std::size_t kmax = n >= 3 ? (n - 1) / 2 : 0;
  std::vector<double> a, b;
  if (kmax > 0) real_dft(f, kmax, a, b);
  const TrigTable& tt = trig_table(n);
  std::vector<double> p(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    std::size_t idx = j;
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double kk = kTwoPi * static_cast<double>(k) / period;
      acc += (b[k] * tt.c[idx] + a[k] * tt.s[idx]) / kk;
      idx += j;
      if (idx >= n) idx -= n;
    }
    p[j] = 2.0 * acc / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double t = period * static_cast<double>(j) / static_cast<double>(n);
    out[j] = mean * t + p[j] - p[0];
  }
  return out;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "gauss_legendre: n must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    nodes[i] = a + half * (1.0 - z);
    nodes[n - 1 - i] = a + half * (1.0 + z);
    weights[i] = w * half;
    weights[n - 1 - i] = w * half;
  }
}

std::vector<double> lagrange_diff_matrix(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w[j] *= (x[j] - x[k]);
  for (auto& v : w) v = 1.0 / v;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = (w[j] / w[i]) / (x[i] - x[j]);
      d[i * n + j] = v;
      diag -= v;
    }
    d[i * n + i] = diag;
  }
  return d;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
  }
  const double c = h / 24.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double seg;
    if (i == 0) {
      seg = c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else if (i + 2 >= n) {
      seg = c * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    } else {
      seg = c * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    }
    out[i + 1] = out[i] + seg;
  }
  return out;
}

std::vector<double> fd_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) d[i] = (f[1] - f[0]) / h;
      else if (i + 1 == n) d[i] = (f[i] - f[i - 1]) / h;
      else d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    return d;
  }
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  const std::size_t m = n - 1;
  d[m] = c * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]);
  d[m - 1] = c * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]);
  return d;
}

std::vector<double> simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, "simpson_weights: need an odd count >= 3");
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0 || i == n - 1) w[i] = h / 3.0;
    else w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  return w;
}

PeriodicSpline::PeriodicSpline(std::vector<double> values, double period)
    : y_(std::move(values)), period_(period) {
  const std::size_t n = y_.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "PeriodicSpline: need >= 3 samples");
  h_ = period_ / static_cast<double>(n);
  // Cyclic system M[i-1] + 4 M[i] + M[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1]) / h^2,
  // solved densely; n stays small.
  std::vector<double> a(n * n, 0.0), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
    a[i * n + i] += 4.0;
    a[i * n + ip] += 1.0;
    a[i * n + im] += 1.0;
    rhs[i] = 6.0 * (y_[ip] - 2.0 * y_[i] + y_[im]) / (h_ * h_);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double fct = a[r * n + c] / a[c * n + c];
      if (fct == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= fct * a[c * n + k];
      rhs[r] -= fct * rhs[c];
    }
  }
  m_.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * m_[k];
    m_[i] = acc / a[i * n + i];
  }
}

double PeriodicSpline::operator()(double t) const {
  const std::size_t n = y_.size();
  double u = t / period_;
  u -= std::floor(u);
  const double x = u * static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(x);
  if (i >= n) i = n - 1;
  const double s = (x - static_cast<double>(i)) * h_;
  const std::size_t j = (i + 1) % n;
  const double A = (h_ - s) / h_, B = s / h_;
  return A * y_[i] + B * y_[j] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[j]) * h_ * h_ / 6.0;
}

double PeriodicSpline::derivative(double t) const {
  const std::size_t n = y_.size();
  double u = t / period_;
  u -= std::floor(u);
  const double x = u * static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(x);
  if (i >= n) i = n - 1;
  const double s = (x - static_cast<double>(i)) * h_;
  const std::size_t j = (i + 1) % n;
  const double A = (h_ - s) / h_, B = s / h_;
  return (y_[j] - y_[i]) / h_ +
         (-(3.0 * A * A - 1.0) * m_[i] + (3.0 * B * B - 1.0) * m_[j]) * h_ / 6.0;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace symplab
