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
#include "symplab/geom.hpp"

#include <cmath>
#include <string>

#include "symplab/errors.hpp"

namespace symplab {

Manifold Manifold::plane(double half_width, int resolution) {
  if (!(half_width > 0.0) || resolution < 8)
    fail(ErrorCode::InvalidArgument, "plane window needs half_width > 0 and resolution >= 8");
  Manifold m;
  m.kind_ = ManifoldKind::PlaneR2;
  m.total_area_ = std::numeric_limits<double>::infinity();
  m.gamma_ = 0.0;
  m.window_half_ = half_width;
  m.window_res_ = resolution;
  return m;
}

Manifold Manifold::torus() {
  Manifold m;
  m.kind_ = ManifoldKind::Torus2;
  m.total_area_ = 1.0;
  m.gamma_ = 0.0;
  m.window_half_ = 0.0;
  m.window_res_ = 0;
  return m;
}

Manifold Manifold::sphere() {
  Manifold m;
  m.kind_ = ManifoldKind::Sphere2;
  m.total_area_ = 4.0 * kPi;
  m.gamma_ = 4.0 * kPi;
  m.window_half_ = 0.0;
  m.window_res_ = 0;
  return m;
}

std::string_view Manifold::name() const {
  switch (kind_) {
    case ManifoldKind::PlaneR2: return "plane";
    case ManifoldKind::Torus2: return "torus";
    case ManifoldKind::Sphere2: return "sphere";
  }
  return "?";
}

std::string_view Manifold::coord_name(int axis) const {
  if (kind_ == ManifoldKind::Sphere2) return axis == 0 ? "theta" : "z";
  return axis == 0 ? "x" : "y";
}

namespace {

double wrap_unit(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;
  return r;
}

double wrap_angle(double v) {
  double r = v - kTwoPi * std::floor(v / kTwoPi);
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

Point chart_wrap(const Manifold& m, double q1, double q2) {
  switch (m.kind()) {
    case ManifoldKind::PlaneR2:
      return {q1, q2};
    case ManifoldKind::Torus2:
      return {wrap_unit(q1), wrap_unit(q2)};
    case ManifoldKind::Sphere2: {
      if (!(std::abs(q2) <= 1.0 + 1e-12))
        throw Error(ErrorCode::SphereDomain,
                    "SphereDomainError: z = " + format_double(q2) + " outside [-1, 1]");
      double z = q2;
      if (std::abs(z) > 1.0) z = z > 0 ? 1.0 : -1.0;
      if (std::abs(z) == 1.0) return {0.0, z};
      return {wrap_angle(q1), z};
    }
  }
  return {q1, q2};
}

double chart_distance(const Manifold& m, Point a, Point b) {
  switch (m.kind()) {
    case ManifoldKind::PlaneR2:
      return std::hypot(a.q1 - b.q1, a.q2 - b.q2);
    case ManifoldKind::Torus2: {
      double d1 = a.q1 - b.q1, d2 = a.q2 - b.q2;
      d1 -= std::round(d1);
      d2 -= std::round(d2);
      return std::hypot(d1, d2);
    }
    case ManifoldKind::Sphere2:
      return (sphere_embed(a) - sphere_embed(b)).norm();
  }
  return 0.0;
}

double gamma_shift(const Manifold& m, double a, long long k) {
  if (m.gamma_omega_generator() == 0.0) return a;
  return a + static_cast<double>(k) * m.gamma_omega_generator();
}

Vec3 sphere_embed(Point p) {
  const double z = std::max(-1.0, std::min(1.0, p.q2));
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(p.q1), r * std::sin(p.q1), z};
}

Point sphere_point(Vec3 x) {
  const double n = x.norm();
  const Vec3 u = x * (1.0 / n);
  const double z = std::max(-1.0, std::min(1.0, u.z));
  if (std::hypot(u.x, u.y) < 1e-15) return {0.0, z > 0 ? 1.0 : -1.0};
  return {wrap_angle(std::atan2(u.y, u.x)), z};
}

QuadratureRule default_quadrature(const Manifold& m, int n1, int n2) {
  QuadratureRule q;
  switch (m.kind()) {
    case ManifoldKind::Torus2: {
      const int a = n1 > 0 ? n1 : 64;
      const int b = n2 > 0 ? n2 : a;
      q.resolution = a;
      q.resolution2 = b;
      const double w = 1.0 / (static_cast<double>(a) * b);
      q.nodes.reserve(static_cast<std::size_t>(a) * b);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
          q.nodes.push_back({{(i + 0.5) / a, (j + 0.5) / b}, w});
      break;
    }
    case ManifoldKind::Sphere2: {
      const int a = n1 > 0 ? n1 : 64;
      const int b = n2 > 0 ? n2 : 32;
      q.resolution = a;
      q.resolution2 = b;
      std::vector<double> zn, zw;
      gauss_legendre(b, -1.0, 1.0, zn, zw);
      const double dth = kTwoPi / a;
      q.nodes.reserve(static_cast<std::size_t>(a) * b);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
          q.nodes.push_back({{(i + 0.5) * dth, zn[j]}, dth * zw[j]});
      break;
    }
    case ManifoldKind::PlaneR2: {
      const int a = n1 > 0 ? n1 : m.window_resolution();
      const double L = m.window_half_width();
      const double h = 2.0 * L / a;
      q.resolution = a;
      q.resolution2 = a;
      q.nodes.reserve(static_cast<std::size_t>(a) * a);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j)
          q.nodes.push_back({{-L + (i + 0.5) * h, -L + (j + 0.5) * h}, h * h});
      break;
    }
  }
  return q;
}

std::vector<Point> window_boundary_ring(const Manifold& m) {
  std::vector<Point> out;
  const int a = m.window_resolution();
  const double L = m.window_half_width();
  const double h = 2.0 * L / a;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) {
      const bool ring = i < 2 || j < 2 || i >= a - 2 || j >= a - 2;
      if (ring) out.push_back({-L + (i + 0.5) * h, -L + (j + 0.5) * h});
    }
  return out;
}

double integrate(const Manifold& m, const QuadratureRule& q, const ScalarField& f) {
  double acc = 0.0;
  if (m.kind() == ManifoldKind::PlaneR2) {
    const int a = q.resolution;
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) {
        const QuadNode& node = q.nodes[static_cast<std::size_t>(i) * a + j];
        const double v = f(node.p);
        const bool ring = i < 2 || j < 2 || i >= a - 2 || j >= a - 2;
        if (ring && std::abs(v) >= 1e-12)
          throw Error(ErrorCode::UnsupportedWindow,
                      "UnsupportedWindow: integrand nonzero on the window boundary ring");
        acc += node.w * v;
      }
    return acc;
  }
  for (const QuadNode& node : q.nodes) acc += node.w * f(node.p);
  return acc;
}

}  // namespace symplab
