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
#include <doctest.h>

#include <cmath>
#include <string>

#include "symplab/errors.hpp"
#include "symplab/flow.hpp"
#include "symplab/pde.hpp"

using namespace symplab;

namespace {

Point random_point(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Torus2: return {rng.uniform(), rng.uniform()};
    case ManifoldKind::Sphere2: return {rng.uniform(0.0, kTwoPi), rng.uniform(-0.9, 0.9)};
    case ManifoldKind::PlaneR2: break;
  }
  return {rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5)};
}

struct Case {
  Manifold m;
  const char* src;
};

std::vector<Case> corpus() {
  return {
      {Manifold::torus(), "0.3*sin(2*pi*x)*sin(2*pi*y) + 0.1*cos(2*pi*t)*cos(2*pi*(x - y))"},
      {Manifold::sphere(), "pi*z^2 + 0.2*(1 - z^2)*cos(theta)*sin(2*pi*t)"},
      {Manifold::plane(), "5*(1 - 0.25*(x^2 + y^2))*bump2(x^2 + y^2; 0.5, 2.5)"},
      {Manifold::plane(), "(1/2)*(x^2 + y^2)"},
  };
}

IsotopyFamily family(const Manifold& m, const char* src, int s_points = 33, FlowOptions o = {}) {
  return expression_family(Hamiltonian::parse(src, m, {"s"}), "s", o, s_points);
}

}  // namespace

TEST_CASE("flow examples") {
  const PathPtr zero = parse_path("0", Manifold::torus());
  const Point p{0.3, 0.6};
  const Point q = FlowMap(zero).flow(p, 0.0, 1.0);
  CHECK(q.q1 == p.q1);
  CHECK(q.q2 == p.q2);

  const FlowMap rot(parse_path("(1/2)*(x^2+y^2)", Manifold::plane()));
  const Point r = rot.flow({1.0, 0.0}, 0.0, 1.0);
  CHECK(std::abs(r.q1 - std::cos(1.0)) < 1e-8);
  CHECK(std::abs(r.q2 + std::sin(1.0)) < 1e-8);

  const FlowMap sph(parse_path("2*pi*z", Manifold::sphere()));
  const Point s = sph.flow({0.0, 0.5}, 0.0, 0.5);
  CHECK(std::abs(s.q1 - kPi) < 1e-8);
  CHECK(std::abs(s.q2 - 0.5) < 1e-12);

  // Backward time undoes forward time.
  const Point back = rot.flow(r, 1.0, 0.0);
  CHECK(std::abs(back.q1 - 1.0) < 1e-12);
  CHECK(std::abs(back.q2) < 1e-12);
  CHECK_THROWS_AS(rot.flow({1.0, 0.0}, 0.0, 1.5), Error);
}

TEST_CASE("flow: non-convergence is reported") {
  FlowOptions o;
  o.max_iterations = 1;
  const PathPtr h = parse_path("0.3*sin(2*pi*x)*sin(2*pi*y)", Manifold::torus(), o);
  try {
    h->forward({0.1, 0.2}, 1.0, false);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
}

TEST_CASE("property: the time-1 map is symplectic") {
  // Central differences of the whole time-1 map lose all accuracy where the
  // Jacobian entries reach ~1e3, so the determinant is chained over short
  // sub-interval maps, each differenced separately.
  Rng rng(21);
  const int pieces = 16;
  const double d = 1e-6;
  for (const Case& c : corpus()) {
    const PathPtr h = parse_path(c.src, c.m);
    double worst = 0.0, worst_var = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point p0 = random_point(c.m, rng);
      Point p = p0;
      double det = 1.0;
      for (int k = 0; k < pieces; ++k) {
        const double t0 = double(k) / pieces, t1 = double(k + 1) / pieces;
        auto f = [&](double a, double b) { return h->flow({a, b}, t0, t1, false).p; };
        const Point a1 = f(p.q1 + d, p.q2), b1 = f(p.q1 - d, p.q2);
        const Point a2 = f(p.q1, p.q2 + d), b2 = f(p.q1, p.q2 - d);
        const Mat2 J{(a1.q1 - b1.q1) / (2 * d), (a2.q1 - b2.q1) / (2 * d), (a1.q2 - b1.q2) / (2 * d),
                     (a2.q2 - b2.q2) / (2 * d)};
        det *= J.det();
        p = h->flow(p, t0, t1, false).p;
      }
      worst = std::max(worst, std::abs(det - 1.0));
      worst_var = std::max(worst_var, std::abs(h->forward(p0, 1.0, true).jac.det() - 1.0));
    }
    CHECK_MESSAGE(worst < 1e-6, std::string(c.src));
    CHECK_MESSAGE(worst_var < 1e-8, std::string(c.src));
  }
}

TEST_CASE("property: flow composition") {
  Rng rng(22);
  for (const Case& c : corpus()) {
    const FlowMap fm(parse_path(c.src, c.m));
    for (int i = 0; i < 20; ++i) {
      const Point p = random_point(c.m, rng);
      const double t1 = rng.uniform(0.05, 0.95), t2 = rng.uniform(t1, 1.0);
      const Point a = fm.flow(fm.flow(p, 0.0, t1), t1, t2);
      const Point b = fm.flow(p, 0.0, t2);
      CHECK_MESSAGE(chart_distance(c.m, a, b) < 1e-8, c.src);
    }
  }
}

TEST_CASE("property: autonomous energy is conserved") {
  Rng rng(23);
  for (const Case& c : corpus()) {
    const Hamiltonian H = Hamiltonian::parse(c.src, c.m);
    if (!H.time_independent()) continue;
    const PathPtr h = make_path(H);
    for (int i = 0; i < 10; ++i) {
      const Point p = random_point(c.m, rng);
      for (const Point& q : h->samples(p, 0.0, 1.0, 16)) CHECK(std::abs(H.eval(q, 0.0) - H.eval(p, 0.0)) < 1e-6);
    }
  }
}

TEST_CASE("derive_Y_field examples") {
  const Manifold s = Manifold::sphere();
  const IsotopyFamily still = family(s, "pi*z^2 + 0*s");
  const IsotopyFamily rot = family(s, "3*s*z");
  Rng rng(24);
  for (int i = 0; i < 10; ++i) {
    const Point p = random_point(s, rng);
    const double t = rng.uniform(0.1, 0.9);
    const YSample y0 = derive_Y_field(still, t, 0.5, p);
    CHECK(y0.y.norm() < 1e-6);
    // Rotation by angle 3 s t: Y = (3 t, 0).
    const YSample y1 = derive_Y_field(rot, t, 0.5, p);
    CHECK(std::abs(y1.y.a - 3.0 * t) < 1e-6);
    CHECK(std::abs(y1.y.b) < 1e-6);
    CHECK_FALSE(y1.one_sided);
    CHECK(derive_Y_field(rot, 0.0, 0.5, p).y.norm() < 1e-12);
    CHECK(derive_Y_field(rot, t, 0.0, p).one_sided);
  }
}

TEST_CASE("reconstruct_normalized_generator") {
  const Manifold s = Manifold::sphere(), t = Manifold::torus();
  {
    const FieldGrid g = field_grid(s, 32);
    const Hamiltonian H = Hamiltonian::parse("z^3 - 0.6*z + (1 - z^2)*cos(theta)", s);
    std::vector<Vec2> field(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
      field[k] = ham_vector_field(H, g.node(static_cast<int>(k / g.n2), static_cast<int>(k % g.n2)), 0.0);
    const std::vector<double> K = reconstruct_normalized_generator(g, field);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Point p = g.node(static_cast<int>(k / g.n2), static_cast<int>(k % g.n2));
      worst = std::max(worst, std::abs(K[k] - H.eval(p, 0.0)));
    }
    CHECK(worst < 1e-5);
  }
  {
    const FieldGrid g = field_grid(t, 16);
    const std::vector<double> K = reconstruct_normalized_generator(g, std::vector<Vec2>(g.size()));
    for (double v : K) CHECK(v == 0.0);
    try {
      reconstruct_normalized_generator(g, std::vector<Vec2>(g.size(), Vec2{1.0, 0.0}));
      FAIL("expected NonExactField");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonExactField);
    }
  }
}

TEST_CASE("pde36: s-independent and rotation families") {
  const Manifold s = Manifold::sphere();
  Pde36Options o;
  o.t_points = 65;
  o.base = 8;
  const Pde36Result still = pde36_residual(family(s, "pi*z^2 - pi/3 + 0*s", 9), o);
  CHECK(still.residual < 1e-8);
  CHECK(still.max_abs_K < 1e-8);

  const Pde36Result r = pde36_residual(family(s, "pi*(1 + s*cos(2*pi*t))*z", 9), o);
  CHECK(r.residual < 5e-4);
  CHECK(r.max_abs_c < 1e-5);
  CHECK(r.k_endpoint < 1e-5);

  const Pde36Result c = pde36_residual(family(s, "pi*(1 + s*cos(2*pi*t))*z + 0.25*s", 9), o);
  CHECK(c.residual < 5e-4);
  for (double v : c.c) CHECK(std::abs(v - 0.25) < 1e-5);
}

TEST_CASE("property: vector-field identity dX/ds = dY/dt + [X, Y]") {
  // [X, Y] = DY X - DX Y, the convention with [X_F, X_K] = -X_{F,K}.
  // Y is a central difference in s, so the residual must shrink like ds^2.
  const Manifold m = Manifold::torus();
  const char* src = "0.2*sin(2*pi*x)*cos(2*pi*y) + 0.15*s*cos(2*pi*t)*sin(2*pi*(x + y)) + 0.1*s^2*cos(2*pi*x)";
  auto residuals = [&](int s_points, double& worst, double& wrong_sign) {
    const IsotopyFamily fam = family(m, src, s_points);
    const double s = 0.5, hs = 1e-4, ht = 1e-4, hx = 1e-4;
    auto X = [&](double ss, Point p, double t) { return fam.at(ss)->vector_field(p, t); };
    auto Y = [&](double t, Point p) { return derive_Y_field(fam, t, s, p).y; };
    Rng rng(25);
    worst = wrong_sign = 0.0;
    for (int i = 0; i < 12; ++i) {
      const Point p{rng.uniform(), rng.uniform()};
      const double t = rng.uniform(0.1, 0.9);
      const Vec2 dXs = (X(s + hs, p, t) - X(s - hs, p, t)) * (0.5 / hs);
      const Vec2 dYt = (Y(t + ht, p) - Y(t - ht, p)) * (0.5 / ht);
      const Vec2 x = X(s, p, t), y = Y(t, p);
      const Vec2 y1 = (Y(t, {p.q1 + hx, p.q2}) - Y(t, {p.q1 - hx, p.q2})) * (0.5 / hx);
      const Vec2 y2 = (Y(t, {p.q1, p.q2 + hx}) - Y(t, {p.q1, p.q2 - hx})) * (0.5 / hx);
      const Mat2 DY{y1.a, y2.a, y1.b, y2.b};
      Vec2 xv;
      Mat2 DX;
      fam.at(s)->field_jacobian(p, t, xv, DX);
      const Vec2 bracket = DY * x - DX * y;
      worst = std::max(worst, (dXs - dYt - bracket).norm());
      wrong_sign = std::max(wrong_sign, (dXs - dYt + bracket).norm());
    }
  };
  double coarse = 0.0, fine = 0.0, wrong = 0.0;
  residuals(129, coarse, wrong);
  residuals(513, fine, wrong);
  CHECK(fine < 1e-3);
  CHECK(coarse / fine > 10.0);
  CHECK(wrong > 1e-2);
}

TEST_CASE("check_same_endpoints") {
  const Manifold t = Manifold::torus();
  CHECK(check_same_endpoints(family(t, "0.3*sin(2*pi*x) + 0*s", 9), 20, 0) < 1e-12);
  try {
    check_same_endpoints(family(t, "0.3*s*sin(2*pi*x)", 9), 20, 0);
    FAIL("expected EndpointMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointMismatch);
  }
}
