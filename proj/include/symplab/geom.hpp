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
#include <limits>
#include <string_view>
#include <vector>

#include "symplab/numeric.hpp"

namespace symplab {

enum class ManifoldKind { PlaneR2, Torus2, Sphere2 };

// A point in the Darboux chart: (x, y) on the plane and torus, (theta, z) on the sphere.
// Flows keep coordinates unwrapped (universal cover / unwrapped theta); chart_wrap
// returns the canonical representative.
struct Point {
  double q1 = 0.0;
  double q2 = 0.0;

  Point operator+(Vec2 v) const { return {q1 + v.a, q2 + v.b}; }
  Vec2 operator-(Point o) const { return {q1 - o.q1, q2 - o.q2}; }
};

class Manifold {
 public:
  static Manifold plane(double half_width = 4.0, int resolution = 256);
  static Manifold torus();
  static Manifold sphere();

  ManifoldKind kind() const { return kind_; }
  double total_area() const { return total_area_; }
  double gamma_omega_generator() const { return gamma_; }
  bool closed() const { return kind_ != ManifoldKind::PlaneR2; }
  // Plane only: the compact window is [-half_width, half_width]^2.
  double window_half_width() const { return window_half_; }
  int window_resolution() const { return window_res_; }

  std::string_view name() const;
  std::string_view coord_name(int axis) const;

  bool operator==(const Manifold& o) const {
    return kind_ == o.kind_ && window_half_ == o.window_half_ && window_res_ == o.window_res_;
  }
  bool operator!=(const Manifold& o) const { return !(*this == o); }

 private:
  ManifoldKind kind_ = ManifoldKind::PlaneR2;
  double total_area_ = std::numeric_limits<double>::infinity();
  double gamma_ = 0.0;
  double window_half_ = 4.0;
  int window_res_ = 256;
};

Point chart_wrap(const Manifold& m, double q1, double q2);
inline Point chart_wrap(const Manifold& m, Point p) { return chart_wrap(m, p.q1, p.q2); }

// Distance between the points the coordinates represent.  Sphere: chordal distance in R^3.
double chart_distance(const Manifold& m, Point a, Point b);

double gamma_shift(const Manifold& m, double a, long long k);

// Sphere embedding into the unit sphere of R^3.
Vec3 sphere_embed(Point p);
Point sphere_point(Vec3 x);

// Area form evaluated on two tangent vectors given in R^3 at the unit vector x.
inline double sphere_area_form(Vec3 x, Vec3 u, Vec3 v) { return x.dot(u.cross(v)); }

struct QuadNode {
  Point p;
  double w = 0.0;
};

struct QuadratureRule {
  std::vector<QuadNode> nodes;
  int resolution = 0;   // first axis
  int resolution2 = 0;  // second axis
};

// Defaults: torus 64x64 midpoint, sphere 64 (theta, midpoint) x 32 (z, Gauss-Legendre),
// plane the manifold's window at its declared resolution.
QuadratureRule default_quadrature(const Manifold& m, int n1 = 0, int n2 = 0);

using ScalarField = std::function<double(Point)>;

double integrate(const Manifold& m, const QuadratureRule& q, const ScalarField& f);

// Plane window nodes on the two outermost layers.
std::vector<Point> window_boundary_ring(const Manifold& m);

}  // namespace symplab
