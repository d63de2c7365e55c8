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
#include <cmath>

#include "symplab/errors.hpp"
#include "symplab/flow.hpp"

namespace symplab {

FieldGrid field_grid(const Manifold& m, int n) {
  FieldGrid g;
  g.m = m;
  switch (m.kind()) {
    case ManifoldKind::Torus2: {
      if (n < 4) fail(ErrorCode::InvalidArgument, "field_grid: n >= 4 required");
      g.n1 = g.n2 = n;
      g.period1 = g.period2 = 1.0;
      g.periodic2 = true;
      for (int i = 0; i < n; ++i) {
        g.ax1.push_back(static_cast<double>(i) / n);
        g.ax2.push_back(static_cast<double>(i) / n);
      }
      g.weights.assign(g.size(), 1.0 / (static_cast<double>(n) * n));
      break;
    }
    case ManifoldKind::Sphere2: {
      if (n < 4 || n % 2) fail(ErrorCode::InvalidArgument, "field_grid: sphere needs even n >= 4");
      g.n1 = n;
      g.n2 = n + 1;
      g.period1 = kTwoPi;
      g.periodic2 = false;
      g.h2 = 2.0 / n;
      for (int i = 0; i < n; ++i) g.ax1.push_back(kTwoPi * i / n);
      for (int j = 0; j <= n; ++j) g.ax2.push_back(-1.0 + g.h2 * j);
      const std::vector<double> wz = simpson_weights(n + 1, g.h2);
      g.weights.resize(g.size());
      for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) g.weights[g.index(i, j)] = (kTwoPi / n) * wz[j];
      break;
    }
    case ManifoldKind::PlaneR2: {
      if (n < 4) fail(ErrorCode::InvalidArgument, "field_grid: n >= 4 required");
      const double L = m.window_half_width();
      g.n1 = g.n2 = n;
      g.period1 = g.period2 = 2.0 * L;
      g.periodic2 = true;
      for (int i = 0; i < n; ++i) {
        g.ax1.push_back(-L + 2.0 * L * i / n);
        g.ax2.push_back(-L + 2.0 * L * i / n);
      }
      const double h = 2.0 * L / n;
      g.weights.assign(g.size(), h * h);
      break;
    }
  }
  return g;
}

std::vector<double> integrate_gradient(const FieldGrid& g, const std::vector<double>& g1,
                                       const std::vector<double>& g2, bool check_exact,
                                       double* max_period) {
  const bool torus = g.m.kind() == ManifoldKind::Torus2;
  double worst = 0.0;
  auto police = [&](double period) {
    worst = std::max(worst, std::abs(period));
    if (check_exact && torus && std::abs(period) > 1e-6)
      throw Error(ErrorCode::NonExactField,
                  "NonExactField: fundamental-cycle period " + format_double(period));
  };

  std::vector<double> K(g.size(), 0.0);
  // Base column along axis 2 at i = 0.
  std::vector<double> col(g.n2);
  for (int j = 0; j < g.n2; ++j) col[j] = g2[g.index(0, j)];
  std::vector<double> base;
  if (g.periodic2) {
    double mean = 0.0;
    base = periodic_antiderivative(col, g.period2, &mean);
    police(mean * g.period2);
  } else {
    // Pole samples of a field are theta-averages, not the meridian limit;
    // replace them by cubic extrapolation from the interior.
    if (g.m.kind() == ManifoldKind::Sphere2 && g.n2 >= 5) {
      const int e = g.n2 - 1;
      col[0] = 4 * col[1] - 6 * col[2] + 4 * col[3] - col[4];
      col[e] = 4 * col[e - 1] - 6 * col[e - 2] + 4 * col[e - 3] - col[e - 4];
    }
    base = cumulative_integral(col, g.h2);
  }
  std::vector<double> row(g.n1);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) row[i] = g1[g.index(i, j)];
    double mean = 0.0;
    const std::vector<double> a = periodic_antiderivative(row, g.period1, &mean);
    if (torus) police(mean * g.period1);
    for (int i = 0; i < g.n1; ++i) K[g.index(i, j)] = base[j] + a[i];
  }
  if (max_period) *max_period = worst;

  double shift = 0.0;
  if (g.m.closed()) {
    double sw = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < K.size(); ++k) {
      acc += g.weights[k] * K[k];
      sw += g.weights[k];
    }
    shift = acc / sw;
  } else {
    shift = K[0];
  }
  for (double& v : K) v -= shift;
  return K;
}

std::vector<double> reconstruct_normalized_generator(const FieldGrid& g, const std::vector<Vec2>& field) {
  if (field.size() != g.size()) fail(ErrorCode::GridMismatch, "field size does not match the grid");
  std::vector<double> g1(g.size()), g2(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    g1[k] = -field[k].b;
    g2[k] = field[k].a;
  }
  return integrate_gradient(g, g1, g2, true);
}

}  // namespace symplab
