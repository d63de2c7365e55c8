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

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"

using namespace symplab;

namespace {

const char* kF = "0.2*sin(2*pi*x)*cos(2*pi*y)";
const char* kG = "0.15*cos(2*pi*(x + y)) + 0.1*sin(2*pi*t)*sin(2*pi*x)";

std::vector<Point> grid(const Manifold& m, int n) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = (i + 0.5) / n, v = (j + 0.5) / n;
      if (m.kind() == ManifoldKind::Sphere2) out.push_back({kTwoPi * u, -0.98 + 1.96 * v});
      else out.push_back({u, v});
    }
  return out;
}

}  // namespace

TEST_CASE("sharp unit laws") {
  const Manifold t = Manifold::torus();
  const PathPtr F = parse_path(kF, t), G = parse_path(kG, t), Z = parse_path("0", t);
  const PathPtr fz = sharp(F, Z), zg = sharp(Z, G);
  for (const Point& p : grid(t, 8))
    for (double s : {0.0, 0.3, 0.8}) {
      CHECK(fz->value(p, s) == F->value(p, s));
      CHECK(zg->value(p, s) == doctest::Approx(G->value(p, s)).epsilon(1e-14));
    }
}

TEST_CASE("sharp and bar of the sphere rotation") {
  const Manifold s = Manifold::sphere();
  const PathPtr R = parse_path("2*pi*z", s);
  const PathPtr RR = sharp(R, R), Rb = bar(R);
  for (const Point& p : grid(s, 32)) {
    const double t = 0.37;
    CHECK(std::abs(RR->value(p, t) - 4.0 * kPi * p.q2) < 1e-6);
    CHECK(std::abs(Rb->value(p, t) + kTwoPi * p.q2) < 1e-6);
  }
}

TEST_CASE("bar of a constant and bar involution") {
  const Manifold t = Manifold::torus();
  const PathPtr C = parse_path("1.25", t);
  CHECK(bar(C)->value({0.2, 0.3}, 0.4) == -1.25);
  const PathPtr G = parse_path(kG, t);
  const PathPtr GG = bar(bar(G));
  for (const Point& p : grid(t, 8))
    for (double s : {0.1, 0.5, 0.9}) CHECK(std::abs(GG->value(p, s) - G->value(p, s)) < 1e-6);
  // The flow of bar(G) inverts the flow of G.
  for (const Point& p : grid(t, 5)) {
    const Point q = bar(G)->forward(G->forward(p, 0.6, false).p, 0.6, false).p;
    CHECK(chart_distance(t, p, q) < 1e-10);
  }
}

TEST_CASE("poisson examples") {
  const Manifold pl = Manifold::plane(), s = Manifold::sphere();
  const Hamiltonian x = Hamiltonian::parse("x", pl), y = Hamiltonian::parse("y", pl);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) CHECK(poisson(x, y, {rng.uniform(-3, 3), rng.uniform(-3, 3)}, 0.2) == 1.0);
  const Hamiltonian F = Hamiltonian::parse("sin(2*pi*x)*y^2 + x*y", pl);
  for (int i = 0; i < 100; ++i) CHECK(poisson(F, F, {rng.uniform(-3, 3), rng.uniform(-3, 3)}, 0.0) == 0.0);
  const Hamiltonian f = Hamiltonian::parse("z^3 - z", s), g = Hamiltonian::parse("exp(z)", s);
  for (int i = 0; i < 20; ++i) CHECK(poisson(f, g, {rng.uniform(0, kTwoPi), rng.uniform(-1, 1)}, 0.0) == 0.0);
  CHECK_THROWS_AS(poisson(f, x, {0.0, 0.0}, 0.0), Error);
}

TEST_CASE("normalize_mean_zero examples") {
  const Manifold s = Manifold::sphere(), t = Manifold::torus();
  const QuadratureRule qs = default_quadrature(s), qt = default_quadrature(t);
  const PathPtr n1 = normalize_mean_zero(parse_path("z + 1", s), qs);
  for (const Point& p : grid(s, 6)) CHECK(std::abs(n1->value(p, 0.3) - p.q2) < 1e-10);
  const PathPtr z = parse_path("z", s);
  const PathPtr n2 = normalize_mean_zero(z, qs);
  for (const Point& p : grid(s, 6)) CHECK(std::abs(n2->value(p, 0.7) - p.q2) < 1e-8);
  const PathPtr n3 = normalize_mean_zero(parse_path("sin(2*pi*x)^2", t), qt);
  for (const Point& p : grid(t, 6)) {
    const double sx = std::sin(kTwoPi * p.q1);
    CHECK(std::abs(n3->value(p, 0.1) - (sx * sx - 0.5)) < 1e-10);
  }
  CHECK(n3->tag() == NormalizationTag::MeanZero);
  // Time-dependent mean: c(t) is interpolated, the flow is untouched.
  const PathPtr n4 = normalize_mean_zero(parse_path("sin(2*pi*x) + cos(2*pi*t)", t), qt);
  CHECK(max_abs_mean(*n4, qt, 64) < 1e-8);
  CHECK(chart_distance(t, n4->forward({0.2, 0.4}, 1.0, false).p, parse_path("sin(2*pi*x)", t)->forward({0.2, 0.4}, 1.0, false).p) < 1e-14);
  try {
    normalize_mean_zero(parse_path("x", Manifold::plane()), qt);
    FAIL("expected OpenManifold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OpenManifold);
  }
}

TEST_CASE("check_compact_support examples") {
  const Manifold p = Manifold::plane();
  CHECK(check_compact_support(*parse_path("bump2(x^2 + y^2; 1, 4)*cos(2*pi*t)", p)));
  CHECK_FALSE(check_compact_support(*parse_path("x", p)));
  CHECK(check_compact_support(*parse_path("0", p)));
  CHECK(certify_normalization(*parse_path("bump2(x^2 + y^2; 1, 4)", p)) == NormalizationTag::CompactSupport);
  CHECK(certify_normalization(*parse_path("z", Manifold::sphere())) == NormalizationTag::MeanZero);
  CHECK(certify_normalization(*parse_path("z^2", Manifold::sphere())) == NormalizationTag::Unchecked);
}

TEST_CASE("property: flow of F#G factors as phi_F o phi_G") {
  // The lazily evaluated Hamiltonian F#G is integrated directly and compared with the
  // composition of the two flows. The direct flow is fourth order in the step, so
  // the gap must fall by well over 2^3 when the step halves.
  // A mild F keeps the composite field non-stiff: its Lipschitz constant carries
  // the Jacobian of the F-flow, which grows fast near hyperbolic points of kF.
  const Manifold t = Manifold::torus();
  const char* mild = "0.05*sin(2*pi*x)*cos(2*pi*y)";
  const PathPtr Ff = parse_path(mild, t), Gf = parse_path(kG, t);
  auto gap = [&](double step) {
    FlowOptions o;
    o.step = step;
    const PathPtr H = sharp(parse_path(mild, t, o), parse_path(kG, t, o));
    Rng rng(17);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Point p{rng.uniform(), rng.uniform()};
      const std::vector<Point> direct = integrate_samples(*H, p, 0.0, 1.0, 4);
      for (int k : {1, 2, 4}) {
        const double s = 0.25 * k;
        const Point want = Ff->forward(Gf->forward(p, s, false).p, s, false).p;
        worst = std::max(worst, chart_distance(t, direct[k], want));
      }
    }
    return worst;
  };
  const double coarse = gap(1.0 / 32.0), fine = gap(1.0 / 64.0);
  CHECK(fine < 1e-3);
  CHECK(coarse / fine > 10.0);
  CHECK(gap(1.0 / 256.0) < 1e-5);
}

TEST_CASE("property: sharp of mean-zero paths is mean-zero") {
  const Manifold t = Manifold::torus();
  FlowOptions o;
  o.step = 1.0 / 128.0;
  const PathPtr F = parse_path(kF, t, o), G = parse_path(kG, t, o);
  CHECK(F->tag() == NormalizationTag::Unchecked);
  const QuadratureRule q = default_quadrature(t, 32, 32);
  CHECK(max_abs_mean(*sharp(F, G), q, 8) < 1e-8);
  CHECK(max_abs_mean(*bar(G), q, 8) < 1e-8);
}

TEST_CASE("reparam and shift") {
  const Manifold t = Manifold::torus();
  const PathPtr G = parse_path(kF, t);
  const PathPtr R = reparam(G, ReparamProfile::sine(0.5));
  // Same time-1 map, different intermediate times.
  CHECK(chart_distance(t, R->forward({0.1, 0.3}, 1.0, false).p, G->forward({0.1, 0.3}, 1.0, false).p) < 1e-8);
  const double lam = 0.25 + 0.5 * std::sin(kTwoPi * 0.25) / kTwoPi;
  CHECK(chart_distance(t, R->forward({0.1, 0.3}, 0.25, false).p, G->forward({0.1, 0.3}, lam, false).p) < 1e-8);
  // Reversed profile returns to the identity.
  const PathPtr B = reparam(G, ReparamProfile::reversed(0.8));
  CHECK(chart_distance(t, B->forward({0.1, 0.3}, 1.0, false).p, {0.1, 0.3}) < 1e-10);
  const PathPtr S = shift(G, 0.75);
  CHECK(S->value({0.2, 0.2}, 0.1) == doctest::Approx(G->value({0.2, 0.2}, 0.1) + 0.75));
  CHECK_THROWS_AS(sharp(G, parse_path("z", Manifold::sphere())), Error);
}
