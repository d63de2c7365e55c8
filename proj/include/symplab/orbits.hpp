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

#include <string>
#include <vector>

#include "symplab/hampath.hpp"

namespace symplab {

struct FixedPointOptions {
  int seeds = 64;  // seeds per axis
  int max_newton = 40;
  double tolerance = 1e-10;
};

struct FixedPointReport {
  std::vector<Point> points;  // chart-wrapped, deduplicated, in seed order
  int seeds = 0;              // seeds considered (plane: inside the numerical support)
  int converged = 0;
  int dropped = 0;
  int prescreened = 0;      // skipped because the first Newton step was too long
  int noncontractible = 0;  // torus roots with nonzero winding
  int zero_iteration = 0;   // seeds already fixed to tolerance
  int stationary = 0;       // roots added from stationary points of H
  double spacing = 0.0;     // seed spacing
  bool degenerate_identity = false;
};

// Newton on R(p) = phi^1(p) - p from a uniform seed grid, plus stationary points of H
// (Newton on X_H at t = 0, confirmed by the flow) when Hessians are available.  Never
// throws on bad seeds; degenerate_identity is set when more than half the seeds start fixed.
FixedPointReport find_fixed_points(const HamPath& h, const FixedPointOptions& opts = {});

struct PeriodicOrbit {
  std::vector<Point> samples;  // z(t_i), t_i = i / N, i = 0..N (the last closes the loop)
  Point seed_fixed_point;
  bool contractible = true;
  double closure = 0.0;
  double ode_residual = 0.0;
  int size() const { return static_cast<int>(samples.size()) - 1; }
};

// z(t) = phi^t(p).  Throws NotALoop when the closure or ODE residual checks fail.
PeriodicOrbit build_orbit(const HamPath& h, Point p, int n = 256);

enum class CappingKind { ConstantAtPoint, ConeFill, SphericalCone };
const char* to_string(CappingKind k);

struct Capping {
  CappingKind kind = CappingKind::ConstantAtPoint;
  double signed_area = 0.0;
  long long sheet = 0;
};

// Signed area of the straight-line cone from loop[0] over a closed loop in the cover
// (samples i = 0..N, loop[N] == loop[0] up to winding).
double cone_fill_area(const std::vector<Point>& loop);
// Signed area of the geodesic cone from the south pole; the loop must avoid the north pole.
double spherical_cone_area(const std::vector<Point>& loop);
// Canonical capping per manifold (ConstantAtPoint for constant loops).
Capping canonical_capping(const Manifold& m, const std::vector<Point>& loop);
// signed_area + sheet * gamma_omega_generator.
double capping_area(const Manifold& m, const Capping& c);

// -(cap area) - integral of H along the samples (periodic trapezoid).
double loop_action(const HamPath& h, const std::vector<Point>& loop, double cap_area);
// Throws IncompatibleCapping for caps that do not fit the orbit or manifold.
double action(const HamPath& h, const PeriodicOrbit& orbit, const Capping& cap);

struct SpectrumEntry {
  std::string id;
  Point p;
  double base_action = 0.0;
  double generator = 0.0;
  bool family = false;
  int members = 1;
};

struct SpectrumTable {
  std::string manifold;
  std::string hamiltonian;
  std::vector<SpectrumEntry> entries;  // sorted by base action
  FixedPointReport fixed_points;
};

struct SpectrumOptions {
  FixedPointOptions search;
  int samples = 256;
  bool allow_unnormalized = false;
};

// Throws NotNormalized for unnormalized input (unless allowed) and DegenerateIdentity
// when the time-1 map is the identity.
SpectrumTable spectrum(const HamPath& h, const SpectrumOptions& opts = {});

// orbit_id,p_q1,p_q2,base_action,coset_generator
std::string spectrum_csv(const SpectrumTable& t);

}  // namespace symplab
