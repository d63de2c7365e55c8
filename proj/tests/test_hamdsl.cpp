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
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/hamdsl.hpp"

using namespace symplab;

namespace {

// Quintic smoothstep cutoff written out independently of the library.
double cutoff(double u, double lo, double hi) {
  const double v = (u - lo) / (hi - lo);
  if (v <= 0.0) return 1.0;
  if (v >= 1.0) return 0.0;
  return 1.0 - v * v * v * (10.0 - 15.0 * v + 6.0 * v * v);
}

Point random_point(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Torus2: return {rng.uniform(), rng.uniform()};
    case ManifoldKind::Sphere2: return {rng.uniform(0.0, kTwoPi), rng.uniform(-0.95, 0.95)};
    case ManifoldKind::PlaneR2: break;
  }
  return {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
}

}  // namespace

TEST_CASE("parse: symbolic partials of the examples") {
  const Manifold s = Manifold::sphere(), t = Manifold::torus();
  const Hamiltonian h = Hamiltonian::parse("2*pi*z", s);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Point p = random_point(s, rng);
    const double tt = rng.uniform();
    CHECK(h.grad(p, tt).a == 0.0);
    CHECK(h.grad(p, tt).b == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(h.d_t(p, tt) == 0.0);
  }
  const Hamiltonian g = Hamiltonian::parse("sin(2*pi*t)*sin(2*pi*x)", t);
  for (int i = 0; i < 20; ++i) {
    const Point p = random_point(t, rng);
    const double tt = rng.uniform();
    const double want = kTwoPi * std::cos(kTwoPi * tt) * std::sin(kTwoPi * p.q1);
    CHECK(g.d_t(p, tt) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("parse: errors") {
  const Manifold t = Manifold::torus(), s = Manifold::sphere();
  try {
    Hamiltonian::parse("x + q", t);
    FAIL("expected BindError");
  } catch (const BindError& e) {
    CHECK(e.symbol() == "q");
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(Hamiltonian::parse("pi*x", s), BindError);
  CHECK_THROWS_AS(Hamiltonian::parse("bump(((x)^2+(y)^2)^(1/2); 1, 2)", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("x^1.5", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("1/x", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("1/(2-2)", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("bump2(x; 2, 1)", t), ParseError);
  CHECK_THROWS_AS(Hamiltonian::parse("t*x", t), PeriodicityError);
  CHECK_THROWS_AS(Hamiltonian::parse("sin(t)", t), PeriodicityError);
  CHECK_THROWS_AS(Hamiltonian::parse("sin(2*pi*t*x)", t), PeriodicityError);
  CHECK_NOTHROW(Hamiltonian::parse("sin(2*pi*t + x)", t));
  try {
    Hamiltonian::parse("pi*(z +", s);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("parse: precedence and time periodicity") {
  const Manifold t = Manifold::torus();
  const Point p{0.3, 0.7};
  CHECK(Hamiltonian::parse("-x^2", t).eval(p, 0.0) == doctest::Approx(-0.09).epsilon(1e-15));
  CHECK(Hamiltonian::parse("2*3^2", t).eval(p, 0.0) == 18.0);
  CHECK(Hamiltonian::parse("1 - 2 - 3", t).eval(p, 0.0) == -4.0);
  CHECK(Hamiltonian::parse("8/2/2", t).eval(p, 0.0) == 2.0);
  CHECK(Hamiltonian::parse(" ( x + y ) * 2 ", t).eval(p, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  const Hamiltonian h = Hamiltonian::parse("sin(2*pi*t)*x + cos(4*pi*t)*y^2 + exp(x)", t);
  for (double q : {0.1, 0.35, 0.8}) CHECK(h.eval({q, q}, 1.0) == doctest::Approx(h.eval({q, q}, 0.0)).epsilon(1e-12));
  CHECK(h.eval(p, 0.25) == doctest::Approx(h.eval(p, 1.25)).epsilon(1e-12));
}

TEST_CASE("eval examples") {
  const Hamiltonian h = Hamiltonian::parse("2*pi*z", Manifold::sphere());
  CHECK(h.eval({0.0, 1.0}, 0.5) == doctest::Approx(kTwoPi).epsilon(1e-15));
}

TEST_CASE("bump2 is the quintic smoothstep cutoff") {
  const Manifold p = Manifold::plane();
  const Hamiltonian h = Hamiltonian::parse("bump2(x^2 + y^2; 1, 4)", p);
  for (double r = 0.0; r < 3.0; r += 0.0625) CHECK(h.eval({r, 0.0}, 0.0) == doctest::Approx(cutoff(r * r, 1.0, 4.0)).epsilon(1e-14));
  CHECK(h.eval({0.5, 0.5}, 0.0) == 1.0);
  CHECK(h.eval({2.0, 0.1}, 0.0) == 0.0);
  // Value, slope and curvature are continuous at both thresholds.
  for (double u0 : {1.0, 4.0}) {
    const double d = 1e-6;
    const Point a{std::sqrt(u0 - d), 0.0}, b{std::sqrt(u0 + d), 0.0};
    CHECK(std::abs(h.eval(a, 0) - h.eval(b, 0)) < 1e-9);
    CHECK(std::abs(h.grad(a, 0).a - h.grad(b, 0).a) < 1e-6);
    CHECK(std::abs(h.hessian(a, 0).m00 - h.hessian(b, 0).m00) < 1e-3);
  }
}

TEST_CASE("ham_vector_field examples") {
  Vec2 x = ham_vector_field(Hamiltonian::parse("(1/2)*(x^2+y^2)", Manifold::plane()), {1.0, 0.0}, 0.0);
  CHECK(x.a == 0.0);
  CHECK(x.b == doctest::Approx(-1.0).epsilon(1e-15));
  x = ham_vector_field(Hamiltonian::parse("2*pi*z", Manifold::sphere()), {0.0, 0.5}, 0.0);
  CHECK(x.a == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(x.b == 0.0);
  x = ham_vector_field(Hamiltonian::parse("3.5", Manifold::torus()), {0.2, 0.1}, 0.3);
  CHECK(x.a == 0.0);
  CHECK(x.b == 0.0);
}

TEST_CASE("property: symbolic partials match central differences") {
  struct Case {
    Manifold m;
    const char* src;
  };
  const std::vector<Case> corpus = {
      {Manifold::torus(), "0.3*sin(2*pi*x)*sin(2*pi*y) + cos(2*pi*t)*cos(2*pi*(x - 2*y))"},
      {Manifold::torus(), "exp(sin(2*pi*x))*cos(2*pi*y)^3 - sin(4*pi*t)*sin(2*pi*y)"},
      {Manifold::sphere(), "pi*(1 + cos(2*pi*t))*z + (1 - z^2)*cos(theta)*sin(2*pi*t)"},
      {Manifold::sphere(), "z^3 - (1 - z^2)*(0.5 + z)*sin(2*theta)"},
      {Manifold::plane(), "5*(1 - 0.25*(x^2 + y^2))*bump2(x^2 + y^2; 0.5, 2.5)"},
      {Manifold::plane(), "(1 + 0.2*x - 0.3*y)*bump2((x - 0.5)^2 + y^2; 0, 3)^3*cos(2*pi*t)"},
  };
  const double d = 1e-5;
  Rng rng(11);
  for (const Case& c : corpus) {
    const Hamiltonian h = Hamiltonian::parse(c.src, c.m);
    for (int i = 0; i < 100; ++i) {
      const Point p = random_point(c.m, rng);
      const double t = rng.uniform();
      const Vec2 g = h.grad(p, t);
      const double f1 = (h.eval({p.q1 + d, p.q2}, t) - h.eval({p.q1 - d, p.q2}, t)) / (2 * d);
      const double f2 = (h.eval({p.q1, p.q2 + d}, t) - h.eval({p.q1, p.q2 - d}, t)) / (2 * d);
      const double ft = (h.eval(p, t + d) - h.eval(p, t - d)) / (2 * d);
      CHECK(std::abs(g.a - f1) < 1e-6);
      CHECK(std::abs(g.b - f2) < 1e-6);
      CHECK(std::abs(h.d_t(p, t) - ft) < 1e-6);
      const Mat2 H = h.hessian(p, t);
      const Vec2 gp = h.grad({p.q1 + d, p.q2}, t), gm = h.grad({p.q1 - d, p.q2}, t);
      CHECK(std::abs(H.m00 - (gp.a - gm.a) / (2 * d)) < 1e-4);
      CHECK(std::abs(H.m10 - (gp.b - gm.b) / (2 * d)) < 1e-4);
      const Jet2 j = h.jet(p, t);
      CHECK(j.v == doctest::Approx(h.eval(p, t)).epsilon(1e-13));
      CHECK(j.d1 == doctest::Approx(g.a).epsilon(1e-13));
      CHECK(j.d12 == doctest::Approx(H.m01).epsilon(1e-13));
    }
  }
}

TEST_CASE("property: the vector field is linear in H") {
  const Manifold t = Manifold::torus();
  const std::string f = "sin(2*pi*x)*cos(2*pi*y)", g = "cos(2*pi*t)*sin(2*pi*(x + y))^2";
  const double a = 1.7, b = -0.4;
  const Hamiltonian F = Hamiltonian::parse(f, t), G = Hamiltonian::parse(g, t);
  const Hamiltonian S = Hamiltonian::parse("1.7*(" + f + ") - 0.4*(" + g + ")", t);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Point p = random_point(t, rng);
    const double tt = rng.uniform();
    const Vec2 want = ham_vector_field(F, p, tt) * a + ham_vector_field(G, p, tt) * b;
    const Vec2 got = ham_vector_field(S, p, tt);
    CHECK(std::abs(got.a - want.a) < 1e-12);
    CHECK(std::abs(got.b - want.b) < 1e-12);
  }
}

TEST_CASE("eval_constant") {
  CHECK(eval_constant("1/512") == 1.0 / 512.0);
  CHECK(eval_constant("-2*pi") == doctest::Approx(-kTwoPi).epsilon(1e-15));
  CHECK_THROWS_AS(eval_constant("x"), Error);
}
