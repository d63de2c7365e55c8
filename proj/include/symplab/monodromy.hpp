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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symplab/flow.hpp"
#include "symplab/orbits.hpp"

namespace symplab {

// A loop gamma (samples at t_i = i / N, i = 0..N) with a capping disc.  The disc is the
// cone w(r, t) = apex + r (gamma(t) - apex) in the cover on the plane and torus, and the
// meridian cone to the south pole on the sphere.  Images under a lift carry only the area.
struct CappedLoop {
  std::vector<Point> loop;
  Point apex;
  double disc_area = 0.0;  // signed area of the disc itself
  long long sheet = 0;
  bool cone = true;  // false for images, whose disc is not a cone
};

CappedLoop cone_capped(const Manifold& m, std::vector<Point> loop, Point apex, long long sheet = 0);
double total_area(const Manifold& m, const CappedLoop& c);  // disc_area + sheet * Gamma
double capped_action(const HamPath& h, const CappedLoop& c);

struct HamLoop {
  std::string name;
  PathPtr generator;
  // h^s with h^0 the constant identity loop and h^1 = h.
  std::optional<IsotopyFamily> contraction;
};

// The identity loop with its constant contraction.
HamLoop identity_loop(const Manifold& m, const FlowOptions& opts = {});
// h2(t) o h1(t), generated by H2 # H1; the contraction is h2^s # h1^s when both exist.
HamLoop product_loop(const HamLoop& h1, const HamLoop& h2);

// Max chart distance between phi^1(p) and p on random probes; throws NotALoop at `tol`.
double check_loop(const HamLoop& h, int probes = 100, std::uint64_t seed = 0, double tol = 1e-5);

struct Lift {
  enum class Mode { CanonicalFromContraction, BasepointCapping };
  Mode mode = Mode::CanonicalFromContraction;
  // BasepointCapping: the capping of t -> h_t(basepoint) is declared by its area and sheet.
  Point basepoint;
  double base_area = 0.0;
  long long sheet = 0;
};

struct SweepOptions {
  int radial = 12;   // Gauss-Legendre nodes across the disc / path
  int angular = 64;  // uniform nodes in t
};

// (h . gamma)(t) = h_t(gamma(t)).  Throws GridMismatch for fewer than two samples.
std::vector<Point> loop_act(const HamLoop& h, const std::vector<Point>& gamma);

// h~ . [gamma, w].  Throws MissingContraction for a canonical lift without contraction.
// The loop is resampled on the angular grid.
CappedLoop capped_image(const HamLoop& h, const Lift& lift, const CappedLoop& c, const SweepOptions& o = {});

struct MonodromyResult {
  std::vector<Point> basepoints;
  std::vector<double> values;
  double mean = 0.0;
  double spread = 0.0;  // max - min
};

// I(h, h~) = -(capping area of h~ . [p, p^]) - int H(h_t p, t) dt over random basepoints.
MonodromyResult monodromy_analyze(const HamLoop& h, const Lift& lift, int basepoints = 10,
                                  std::uint64_t seed = 0, const SweepOptions& o = {});
// Mean of monodromy_analyze; throws BasepointDependent when the spread reaches 1e-4.
double monodromy_value(const HamLoop& h, const Lift& lift, int basepoints = 10, std::uint64_t seed = 0,
                       const SweepOptions& o = {});

// Lift of a product loop: contraction sweep, or a common basepoint fixed by both loops
// whose declared areas and sheets add.
Lift product_lift(const HamLoop& h1, const Lift& l1, const HamLoop& h2, const Lift& l2);

struct HomomorphismResult {
  double i1 = 0.0, i2 = 0.0, i12 = 0.0;
  double residual = 0.0;
  bool pass = false;
};

HomomorphismResult verify_homomorphism(const HamLoop& h1, const Lift& l1, const HamLoop& h2, const Lift& l2,
                                       double tol = 1e-4, int basepoints = 10, std::uint64_t seed = 0,
                                       const SweepOptions& o = {});

struct Lemma23Options {
  int probes = 10;
  int directions = 20;
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  SweepOptions sweep;
};

struct Lemma23Result {
  std::vector<double> shifts;
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> variational;  // |d(A_F o h~) - dA_G| per direction
  double variational_residual = 0.0;
};

// Family with F^0 = G and F^1 = F; h^r_t = f^r_t o g_t^{-1} is the contraction of
// h_t = f_t o g_t^{-1}.  Shifts A_F(h~ . [gamma, w]) - A_G([gamma, w]) on random capped probe
// loops, plus central-difference derivatives of both sides along random directions.
Lemma23Result lemma23_analyze(const IsotopyFamily& fam, const Lemma23Options& o = {});
// Mean shift; throws ShiftNotConstant when the standard deviation reaches 1e-4.
double lemma23_shift(const IsotopyFamily& fam, const Lemma23Options& o = {});

struct Theorem1Result {
  std::vector<double> s;
  std::vector<double> chi;
  double drift = 0.0;  // max |chi(s) - chi(0)|
};

// chi(s) = A_{F^s}(h~^s . [z, w]) along the s-grid for an orbit z of F^0, where the lift
// uses the contraction s' -> h^{s'} on [0, s].  The capping gains the cylinder swept by
// h^{s'}_t(z(t)), integrated in s' with fourth-order weights.
Theorem1Result verify_theorem1(const IsotopyFamily& fam, const PeriodicOrbit& orbit, const Capping& cap,
                               int t_points = 64);

}  // namespace symplab
