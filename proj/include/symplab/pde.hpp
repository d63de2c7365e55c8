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

#include <vector>

#include "symplab/flow.hpp"

namespace symplab {

struct Pde36Options {
  int t_points = 129;  // uniform nodes on [0, 1]
  int base = 16;       // base grid size (see field_grid)
};

// Residual of dF/ds = dK/dt - {F, K} for a two-parameter family, evaluated along
// trajectories P(q, t, s) = f^s_t(q) from a base grid q.  Along a trajectory the right
// side is d/dt [K(P, t, s)], and d_q (K o P) = omega(dP/ds, d_q P), so K is recovered
// on the moving grid and normalized with the base weights (the flow preserves them).
struct Pde36Result {
  int s_points = 0, t_points = 0;
  std::vector<double> s_nodes, t_nodes;
  // Indexed [j * t_points + i] for s_j, t_i.
  std::vector<double> c;             // constant-in-x discrepancy before normalization
  std::vector<double> max_residual;  // max over the base grid of |r - c|
  double residual = 0.0;             // overall max of max_residual
  double max_abs_c = 0.0;
  double max_abs_K = 0.0;
  double k_endpoint = 0.0;  // max |K| on the t = 0 and t = 1 slices
  bool one_sided = false;   // s-derivatives used one-sided stencils at s = 0 and s = 1
};

Pde36Result pde36_residual(const IsotopyFamily& fam, const Pde36Options& opts = {});

}  // namespace symplab
