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

#include <functional>
#include <string>
#include <vector>

#include "symplab/hampath.hpp"

namespace symplab {

class FlowMap {
 public:
  explicit FlowMap(PathPtr h) : h_(std::move(h)) {}
  const HamPath& hamiltonian() const { return *h_; }
  double step() const { return h_->options().step; }
  Point flow(Point p, double t0, double t1) const;
  FlowResult flow_with_jacobian(Point p, double t0, double t1) const;

 private:
  PathPtr h_;
};

// Unwrapped chart result; |t1 - t0| <= 1.
Point flow(const FlowMap& fm, Point p, double t0, double t1);

// Two-parameter family s -> F^s on [0, 1] with a uniform s-grid.
struct IsotopyFamily {
  Manifold m;
  std::string name;
  std::function<PathPtr(double)> member;
  // Optional exact dF/ds; central differences in s are used otherwise.
  std::function<double(Point, double, double)> dF_ds;
  int s_points = 33;

  PathPtr at(double s) const { return member(s); }
  double ds() const { return 1.0 / (s_points - 1); }
  double s_node(int j) const { return static_cast<double>(j) / (s_points - 1); }
  double dFds(Point p, double t, double s) const;
};

// Family from an expression template whose parameter list contains `param`.
IsotopyFamily expression_family(const Hamiltonian& templ, const std::string& param,
                                const FlowOptions& opts, int s_points = 33);

// Maximum over probes and grid s of the distance between phi_{F^s}^1 and phi_{F^0}^1.
// Throws EndpointMismatch when it reaches `tol`.
double check_same_endpoints(const IsotopyFamily& fam, int probes, std::uint64_t seed,
                            double tol = 1e-4);

struct YSample {
  Vec2 y;
  bool one_sided = false;  // set at s = 0 or s = 1
};

// Y_{t,s}(p) = (d/ds f^s_t) at (f^s_t)^{-1}(p), differenced with the grid spacing.
YSample derive_Y_field(const IsotopyFamily& fam, double t, double s, Point p);

// Tensor grid in chart coordinates used for generator reconstruction.
struct FieldGrid {
  Manifold m;
  int n1 = 0, n2 = 0;
  std::vector<double> ax1, ax2;
  bool periodic2 = true;  // axis 1 is always periodic
  double period1 = 1.0, period2 = 1.0;
  double h2 = 0.0;  // spacing of a non-periodic axis 2
  std::vector<double> weights;

  Point node(int i, int j) const { return {ax1[i], ax2[j]}; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n2 + j; }
  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }
};

// Torus: n x n periodic.  Sphere: n theta nodes x (n + 1) z nodes including both poles
// (n even).  Plane: n x n nodes on the window, the first node at the corner.
FieldGrid field_grid(const Manifold& m, int n);

// Line-integrates dK = g1 dq1 + g2 dq2 and normalizes (mean zero when closed, zero at the
// window corner on the plane).  With check_exact on the torus, a fundamental-cycle period
// above 1e-6 throws NonExactField.  `max_period` receives the largest cycle period seen.
std::vector<double> integrate_gradient(const FieldGrid& g, const std::vector<double>& g1,
                                       const std::vector<double>& g2, bool check_exact,
                                       double* max_period = nullptr);

// Solves dK = omega(Y, .) for a field sampled on the grid.
std::vector<double> reconstruct_normalized_generator(const FieldGrid& g, const std::vector<Vec2>& field);

}  // namespace symplab
