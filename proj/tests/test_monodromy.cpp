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
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"
#include "symplab/monodromy.hpp"

using namespace symplab;

namespace {

const char* kTorusF = "0.3*sin(2*pi*x)*sin(2*pi*y)";

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

HamLoop rotation_loop() {
  HamLoop h;
  h.name = "rot";
  h.generator = parse_path("2*pi*z", Manifold::sphere());
  return h;
}

Lift basepoint_lift(Point p, double area = 0.0) {
  Lift l;
  l.mode = Lift::Mode::BasepointCapping;
  l.basepoint = p;
  l.base_area = area;
  return l;
}

// Out-and-back reparametrization of a torus flow: a loop whose contraction is the
// same construction with the amplitude scaled by s.
HamLoop reversed_loop(double amplitude) {
  const PathPtr base = parse_path(kTorusF, Manifold::torus());
  IsotopyFamily fam;
  fam.m = Manifold::torus();
  fam.name = "reversed";
  fam.member = [base, amplitude](double s) { return reparam(base, ReparamProfile::reversed(s * amplitude)); };
  HamLoop h;
  h.name = "reversed";
  h.generator = fam.at(1.0);
  h.contraction = fam;
  return h;
}

}  // namespace

TEST_CASE("loop_act examples") {
  const Manifold s = Manifold::sphere();
  const HamLoop id = identity_loop(s);
  const std::vector<Point> gamma{{0.3, 0.2}, {1.0, -0.4}, {2.0, 0.1}, {0.3, 0.2}};
  const std::vector<Point> same = loop_act(id, gamma);
  for (std::size_t i = 0; i < gamma.size(); ++i) CHECK(chart_distance(s, same[i], gamma[i]) < 1e-14);

  const HamLoop rot = rotation_loop();
  const std::vector<Point> north(65, Point{0.0, 1.0});
  for (const Point& p : loop_act(rot, north)) CHECK(chart_distance(s, p, {0.0, 1.0}) < 1e-12);

  // X_H = (2 pi, 0) in (theta, z): the equator point runs once around.
  const std::vector<Point> eq(65, Point{0.0, 0.0});
  const std::vector<Point> img = loop_act(rot, eq);
  for (int i = 0; i <= 64; ++i) CHECK(chart_distance(s, img[i], {kTwoPi * i / 64.0, 0.0}) < 1e-10);

  CHECK(code_of([&] { loop_act(rot, {Point{0.0, 0.0}}); }) == ErrorCode::GridMismatch);
}

TEST_CASE("capped_image examples") {
  const Manifold t = Manifold::torus();
  std::vector<Point> loop(65);
  for (int i = 0; i <= 64; ++i)
    loop[i] = {0.4 + 0.1 * std::cos(kTwoPi * i / 64), 0.5 + 0.15 * std::sin(kTwoPi * i / 64)};
  const CappedLoop c = cone_capped(t, loop, {0.4, 0.5});
  CHECK(total_area(t, c) == doctest::Approx(kPi * 0.1 * 0.15).epsilon(1e-10));
  const CappedLoop same = capped_image(identity_loop(t), Lift{}, c);
  CHECK(std::abs(total_area(t, same) - total_area(t, c)) < 1e-10);

  // A null-homotopic out-and-back loop acting on a constant capped loop sweeps a
  // degenerate surface.
  const HamLoop back = reversed_loop(0.8);
  std::vector<Point> constant(65, Point{0.23, 0.61});
  const CappedLoop img = capped_image(back, Lift{}, cone_capped(t, constant, constant[0]));
  CHECK(std::abs(total_area(t, img)) < 1e-5);

  HamLoop bare = back;
  bare.contraction.reset();
  CHECK(code_of([&] { capped_image(bare, Lift{}, c); }) == ErrorCode::MissingContraction);

  // Rotation fixing the north pole: the constant loop keeps its zero-area cap.
  const Manifold s = Manifold::sphere();
  const std::vector<Point> north(65, Point{0.0, 1.0});
  const CappedLoop n = capped_image(rotation_loop(), basepoint_lift({0.0, 1.0}), cone_capped(s, north, north[0]));
  CHECK(std::abs(total_area(s, n)) < 1e-12);
}

TEST_CASE("check_loop") {
  CHECK(check_loop(rotation_loop()) < 1e-5);
  HamLoop notloop;
  notloop.name = "shear";
  notloop.generator = parse_path("0.3*sin(2*pi*x)", Manifold::torus());
  CHECK(code_of([&] { check_loop(notloop); }) == ErrorCode::NotALoop);
}

TEST_CASE("monodromy examples") {
  const Manifold s = Manifold::sphere();
  CHECK(std::abs(monodromy_value(identity_loop(s), Lift{})) < 1e-6);

  const MonodromyResult north = monodromy_analyze(rotation_loop(), basepoint_lift({0.0, 1.0}));
  CHECK(std::abs(north.mean + kTwoPi) < 1e-6);
  CHECK(north.spread < 1e-4);

  // Lift ambiguity: the south-pole lift differs by a multiple of 4 pi.
  const double south = monodromy_value(rotation_loop(), basepoint_lift({0.0, -1.0}));
  CHECK(std::abs(south - kTwoPi) < 1e-6);
  const double k = (south - north.mean) / (4.0 * kPi);
  CHECK(std::abs(k - std::round(k)) < 1e-4 / (4.0 * kPi));

  // Traversed twice: -4 pi, an element of 4 pi Z.
  const Lift l = basepoint_lift({0.0, 1.0});
  const HamLoop twice = product_loop(rotation_loop(), rotation_loop());
  const double i2 = monodromy_value(twice, product_lift(rotation_loop(), l, rotation_loop(), l));
  CHECK(std::abs(i2 + 4.0 * kPi) < 1e-4);
}

TEST_CASE("homomorphism laws") {
  const Manifold s = Manifold::sphere();
  const Lift l = basepoint_lift({0.0, 1.0});
  const HomomorphismResult rr = verify_homomorphism(rotation_loop(), l, rotation_loop(), l);
  CHECK(rr.pass);
  CHECK(std::abs(rr.i12 + 4.0 * kPi) < 1e-4);
  CHECK(std::abs(rr.i12 - 2.0 * rr.i1) < 1e-4);

  HamLoop id = identity_loop(s);
  const HomomorphismResult unit = verify_homomorphism(rotation_loop(), l, id, l);
  CHECK(unit.pass);
  CHECK(std::abs(unit.i2) < 1e-6);
  CHECK(std::abs(unit.i12 - unit.i1) < 1e-4);

  const HomomorphismResult ii = verify_homomorphism(id, Lift{}, id, Lift{});
  CHECK(ii.pass);
  CHECK(std::abs(ii.i12) < 1e-6);
}

TEST_CASE("property: lift independence on the torus") {
  // Gamma is trivial on the torus, so a canonical and a basepoint lift agree.
  const Manifold t = Manifold::torus();
  const HamLoop h = reversed_loop(0.8);
  const double canonical = monodromy_value(h, Lift{});
  const Point p{0.37, 0.14};
  const std::vector<Point> orbit = loop_act(h, std::vector<Point>(257, p));
  const double declared = monodromy_value(h, basepoint_lift(p, cone_fill_area(orbit)));
  CHECK(std::abs(canonical - declared) < 1e-4);
  CHECK(std::abs(canonical) < 1e-4);
}

TEST_CASE("lemma23 examples") {
  const Manifold t = Manifold::torus();
  const IsotopyFamily same = expression_family(Hamiltonian::parse("0.3*sin(2*pi*x)*sin(2*pi*y) + 0*s", t, {"s"}),
                                               "s", {}, 9);
  CHECK(std::abs(lemma23_shift(same)) < 1e-6);

  // F^0 = G = F + 1 and F^1 = F; h is the identity and A_G = A_F - 1.
  const IsotopyFamily plus = expression_family(
      Hamiltonian::parse("0.3*sin(2*pi*x)*sin(2*pi*y) + (1 - s)", t, {"s"}), "s", {}, 9);
  const Lemma23Result r = lemma23_analyze(plus);
  CHECK(std::abs(r.mean - 1.0) < 1e-5);
  CHECK(r.stddev < 1e-4);
  CHECK(r.variational_residual < 1e-4);
}

TEST_CASE("theorem1 on a constant family") {
  const Manifold t = Manifold::torus();
  const IsotopyFamily fam =
      expression_family(Hamiltonian::parse("0.3*sin(2*pi*x)*sin(2*pi*y) + 0*s", t, {"s"}), "s", {}, 9);
  const PeriodicOrbit o = build_orbit(*fam.at(0.0), {0.25, 0.25});
  const Theorem1Result r = verify_theorem1(fam, o, canonical_capping(t, o.samples));
  REQUIRE(r.chi.size() == 9);
  CHECK(r.drift < 1e-12);
  CHECK(r.chi[0] == doctest::Approx(-0.3).epsilon(1e-10));
}
