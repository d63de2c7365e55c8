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
#include "symplab/pde.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/errors.hpp"

namespace symplab {

namespace {

// d/da of P along one base axis, for every base node.  P - q is periodic along periodic
// axes, so the spectral derivative applies there.
void base_derivatives(const FieldGrid& g, const std::vector<Point>& P, std::vector<Vec2>& d1,
                      std::vector<Vec2>& d2) {
  d1.assign(g.size(), {});
  d2.assign(g.size(), {});
  std::vector<double> a(g.n1), b(g.n1);
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      const Point q = g.node(i, j);
      const Point p = P[g.index(i, j)];
      a[i] = p.q1 - q.q1;
      b[i] = p.q2 - q.q2;
    }
    const auto da = periodic_derivative(a, g.period1);
    const auto db = periodic_derivative(b, g.period1);
    for (int i = 0; i < g.n1; ++i) d1[g.index(i, j)] = {1.0 + da[i], db[i]};
  }
  std::vector<double> u(g.n2), v(g.n2);
  for (int i = 0; i < g.n1; ++i) {
    for (int j = 0; j < g.n2; ++j) {
      const Point q = g.node(i, j);
      const Point p = P[g.index(i, j)];
      u[j] = p.q1 - q.q1;
      v[j] = p.q2 - q.q2;
    }
    std::vector<double> du, dv;
    if (g.periodic2) {
      du = periodic_derivative(u, g.period2);
      dv = periodic_derivative(v, g.period2);
    } else {
      du = fd_derivative(u, g.h2);
      dv = fd_derivative(v, g.h2);
    }
    for (int j = 0; j < g.n2; ++j) d2[g.index(i, j)] = {du[j], 1.0 + dv[j]};
  }
}

}  // namespace

Pde36Result pde36_residual(const IsotopyFamily& fam, const Pde36Options& opts) {
  if (opts.t_points < 5) fail(ErrorCode::InvalidArgument, "pde36: t_points >= 5 required");
  if (fam.s_points < 5) fail(ErrorCode::InvalidArgument, "pde36: s_points >= 5 required");
  const int S = fam.s_points, T = opts.t_points;
  const FieldGrid g = field_grid(fam.m, opts.base);
  const std::size_t N = g.size();
  const double ds = fam.ds(), dt = 1.0 / (T - 1);

  Pde36Result out;
  out.s_points = S;
  out.t_points = T;
  for (int j = 0; j < S; ++j) out.s_nodes.push_back(fam.s_node(j));
  for (int i = 0; i < T; ++i) out.t_nodes.push_back(i * dt);
  out.one_sided = true;

  // P[(j * T + i) * N + k]
  std::vector<Point> P(static_cast<std::size_t>(S) * T * N);
  std::vector<PathPtr> members(S);
  for (int j = 0; j < S; ++j) {
    members[j] = fam.at(out.s_nodes[j]);
    for (std::size_t k = 0; k < N; ++k) {
      const Point q = g.node(static_cast<int>(k / g.n2), static_cast<int>(k % g.n2));
      const std::vector<Point> traj = members[j]->samples(q, 0.0, 1.0, T - 1);
      for (int i = 0; i < T; ++i) P[(static_cast<std::size_t>(j) * T + i) * N + k] = traj[i];
    }
  }
  auto at = [&](int j, int i, std::size_t k) -> const Point& {
    return P[(static_cast<std::size_t>(j) * T + i) * N + k];
  };

  out.c.assign(static_cast<std::size_t>(S) * T, 0.0);
  out.max_residual.assign(static_cast<std::size_t>(S) * T, 0.0);

  // dP/ds by differences along the s-grid, for every (t, q).
  std::vector<Vec2> Ys(P.size());
  {
    std::vector<double> col1(S), col2(S);
    for (int i = 0; i < T; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        for (int j = 0; j < S; ++j) {
          col1[j] = at(j, i, k).q1;
          col2[j] = at(j, i, k).q2;
        }
        const auto y1 = fd_derivative(col1, ds);
        const auto y2 = fd_derivative(col2, ds);
        for (int j = 0; j < S; ++j) Ys[(static_cast<std::size_t>(j) * T + i) * N + k] = {y1[j], y2[j]};
      }
  }

  std::vector<Vec2> d1, d2;
  std::vector<Point> slice(N);
  std::vector<double> g1(N), g2(N);
  // K o P for one s, indexed [i * N + k].
  std::vector<double> KP(static_cast<std::size_t>(T) * N);
  std::vector<double> series(T);

  for (int j = 0; j < S; ++j) {
    for (int i = 0; i < T; ++i) {
      const Vec2* Y = &Ys[(static_cast<std::size_t>(j) * T + i) * N];
      for (std::size_t k = 0; k < N; ++k) slice[k] = at(j, i, k);
      base_derivatives(g, slice, d1, d2);
      for (std::size_t k = 0; k < N; ++k) {
        g1[k] = cross(Y[k], d1[k]);
        g2[k] = cross(Y[k], d2[k]);
      }
      const std::vector<double> K = integrate_gradient(g, g1, g2, false);
      std::copy(K.begin(), K.end(), KP.begin() + static_cast<std::ptrdiff_t>(i) * N);
    }

    std::vector<double> dK(static_cast<std::size_t>(T) * N);
    for (std::size_t k = 0; k < N; ++k) {
      for (int i = 0; i < T; ++i) series[i] = KP[i * N + k];
      const auto d = fd_derivative(series, dt);
      for (int i = 0; i < T; ++i) dK[i * N + k] = d[i];
    }
    for (std::size_t k = 0; k < N; ++k) {
      out.k_endpoint = std::max({out.k_endpoint, std::abs(KP[k]), std::abs(KP[(T - 1) * N + k])});
    }
    for (double v : KP) out.max_abs_K = std::max(out.max_abs_K, std::abs(v));

    const double s = out.s_nodes[j];
    std::vector<double> r(N);
    for (int i = 0; i < T; ++i) {
      const double t = out.t_nodes[i];
      double acc = 0.0, sw = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        r[k] = fam.dFds(at(j, i, k), t, s) - dK[i * N + k];
        acc += g.weights[k] * r[k];
        sw += g.weights[k];
      }
      const double c = g.m.closed() ? acc / sw : r[0];
      double worst = 0.0;
      for (std::size_t k = 0; k < N; ++k) worst = std::max(worst, std::abs(r[k] - c));
      out.c[static_cast<std::size_t>(j) * T + i] = c;
      out.max_residual[static_cast<std::size_t>(j) * T + i] = worst;
      out.residual = std::max(out.residual, worst);
      out.max_abs_c = std::max(out.max_abs_c, std::abs(c));
    }
  }
  return out;
}

}  // namespace symplab
