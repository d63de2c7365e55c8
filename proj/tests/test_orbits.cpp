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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"
#include "symplab/orbits.hpp"

using namespace symplab;

namespace {

PathPtr certified(const char* src, const Manifold& m) {
  auto p = std::const_pointer_cast<HamPath>(parse_path(src, m));
  p->set_tag(certify_normalization(*p));
  return p;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Independent radial oracle for H = rho(u), u = x^2 + y^2, with
// rho(u) = 5 (1 - u/4) b(u) and b = 1 - S((u - 0.5) / 2), S the quintic smoothstep.
// X_H = 2 rho'(u) (y, -x): circles with rho'(u) = -pi k close after k turns, and
// their cone-capped action is -pi k u - rho(u).
double smooth(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return v * v * v * (10.0 - 15.0 * v + 6.0 * v * v);
}
double rho(double u) { return 5.0 * (1.0 - 0.25 * u) * (1.0 - smooth((u - 0.5) / 2.0)); }
double rho_prime(double u) {
  const double h = 1e-6;
  return (rho(u + h) - rho(u - h)) / (2.0 * h);
}

std::vector<double> radial_oracle_actions() {
  std::vector<double> out{-rho(0.0), 0.0};
  const int n = 4000;
  for (int k = 1; k <= 3; ++k) {
    const double target = -kPi * k;
    for (int i = 0; i < n; ++i) {
      double a = 0.5 + 2.0 * i / n, b = 0.5 + 2.0 * (i + 1) / n;
      double fa = rho_prime(a) - target, fb = rho_prime(b) - target;
      if (fa * fb > 0.0) continue;
      for (int it = 0; it < 100; ++it) {
        const double c = 0.5 * (a + b), fc = rho_prime(c) - target;
        if (fa * fc <= 0.0) {
          b = c;
        } else {
          a = c;
          fa = fc;
        }
      }
      const double u = 0.5 * (a + b);
      out.push_back(-kPi * k * u - rho(u));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fixed points") {
  const Manifold s = Manifold::sphere();
  const FixedPointReport half = find_fixed_points(*parse_path("pi*z", s));
  REQUIRE(half.points.size() == 2);
  CHECK_FALSE(half.degenerate_identity);
  for (const Point& p : half.points) CHECK(std::abs(std::abs(p.q2) - 1.0) < 1e-10);
  CHECK(find_fixed_points(*parse_path("2*pi*z", s)).degenerate_identity);
  CHECK(find_fixed_points(*parse_path("0", Manifold::torus())).degenerate_identity);
}

TEST_CASE("action examples") {
  const Manifold s = Manifold::sphere();
  const PathPtr h = parse_path("pi*z", s);
  const PeriodicOrbit north = build_orbit(*h, {0.0, 1.0});
  Capping cap;
  CHECK(action(*h, north, cap) == doctest::Approx(-kPi).epsilon(1e-12));
  cap.sheet = 1;
  CHECK(action(*h, north, cap) == doctest::Approx(-kPi - 4.0 * kPi).epsilon(1e-12));

  // Constant orbit, constant capping, time-dependent H: minus the time average.
  const Manifold t = Manifold::torus();
  const PathPtr g = parse_path("0.3*sin(2*pi*x)*sin(2*pi*y) + 0.2*cos(2*pi*t)*sin(2*pi*x)^2 + 0.1*cos(2*pi*t)^2", t);
  const PeriodicOrbit still = build_orbit(*g, {0.0, 0.0});
  CHECK(action(*g, still, Capping{}) == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("incompatible cappings") {
  const Manifold s = Manifold::sphere();
  const PathPtr h = parse_path("pi*z", s);
  const PeriodicOrbit north = build_orbit(*h, {0.0, 1.0});
  Capping cone;
  cone.kind = CappingKind::ConeFill;
  CHECK(code_of([&] { action(*h, north, cone); }) == ErrorCode::IncompatibleCapping);
}

TEST_CASE("spectrum of the half rotation") {
  const SpectrumTable t = spectrum(*certified("pi*z", Manifold::sphere()));
  REQUIRE(t.entries.size() == 2);
  CHECK(std::abs(t.entries[0].base_action + kPi) < 1e-6);
  CHECK(std::abs(t.entries[1].base_action - kPi) < 1e-6);
  CHECK(t.entries[0].p.q2 == doctest::Approx(1.0));
  for (const auto& e : t.entries) CHECK(e.generator == doctest::Approx(4.0 * kPi));
  const std::string csv = spectrum_csv(t);
  CHECK(csv.rfind("orbit_id,p_q1,p_q2,base_action,coset_generator\n", 0) == 0);
}

TEST_CASE("spectrum errors") {
  const Manifold s = Manifold::sphere();
  CHECK(code_of([&] { spectrum(*certified("0", s)); }) == ErrorCode::DegenerateIdentity);
  CHECK(code_of([&] { spectrum(*certified("2*pi*z", s)); }) == ErrorCode::DegenerateIdentity);
  CHECK(code_of([&] { spectrum(*certified("z^2", s)); }) == ErrorCode::NotNormalized);
  CHECK(code_of([&] { spectrum(*parse_path("pi*z", s)); }) == ErrorCode::NotNormalized);
}

TEST_CASE("spectrum of a radial bump matches the radial oracle") {
  const SpectrumTable t =
      spectrum(*certified("5*(1 - 0.25*(x^2 + y^2))*bump2(x^2 + y^2; 0.5, 2.5)", Manifold::plane()));
  const std::vector<double> want = radial_oracle_actions();
  REQUIRE(t.entries.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(t.entries[i].base_action - want[i]) < 1e-6);
  int families = 0;
  for (const auto& e : t.entries) families += e.family ? 1 : 0;
  CHECK(families >= 2);
}

TEST_CASE("property: coset consistency") {
  const Manifold s = Manifold::sphere();
  const PathPtr h = parse_path("pi*z + 0.2*(1 - z^2)*cos(theta)*sin(2*pi*t)", s);
  const PeriodicOrbit o = build_orbit(*h, {0.0, -1.0});
  Capping cap = canonical_capping(s, o.samples);
  const double a0 = action(*h, o, cap);
  for (long long k : {-2LL, 1LL, 3LL}) {
    cap.sheet = k;
    CHECK(action(*h, o, cap) - a0 == doctest::Approx(-4.0 * kPi * double(k)).epsilon(1e-13));
  }
}

TEST_CASE("property: constant-shift sensitivity") {
  const Manifold s = Manifold::sphere();
  SpectrumOptions o;
  o.allow_unnormalized = true;
  const SpectrumTable base = spectrum(*certified("pi*z", s));
  const SpectrumTable shifted = spectrum(*parse_path("pi*z + 0.3 + 0.2*cos(2*pi*t)", s), o);
  REQUIRE(base.entries.size() == shifted.entries.size());
  for (std::size_t i = 0; i < base.entries.size(); ++i)
    CHECK(shifted.entries[i].base_action - base.entries[i].base_action == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("property: actions are invariant under orbit resampling") {
  const PathPtr h = certified("5*(1 - 0.25*(x^2 + y^2))*bump2(x^2 + y^2; 0.5, 2.5)", Manifold::plane());
  const SpectrumTable t = spectrum(*h);
  for (const auto& e : t.entries) {
    if (std::abs(e.p.q1) > 3.0) continue;  // exterior representative
    const PeriodicOrbit a = build_orbit(*h, e.p, 128), b = build_orbit(*h, e.p, 512);
    const double xa = action(*h, a, canonical_capping(h->manifold(), a.samples));
    const double xb = action(*h, b, canonical_capping(h->manifold(), b.samples));
    CHECK(std::abs(xa - xb) < 1e-7);
  }
}

TEST_CASE("property: orbits are critical points of the action") {
  // Along smooth loop variations of size eps the action changes by O(eps^2) at an
  // orbit and by O(eps) at a generic loop.
  const Manifold pl = Manifold::plane();
  const PathPtr h = certified("5*(1 - 0.25*(x^2 + y^2))*bump2(x^2 + y^2; 0.5, 2.5)", pl);
  const SpectrumTable t = spectrum(*h);
  const double eps = 1e-4;
  auto perturbed = [&](const std::vector<Point>& loop, Rng& rng) {
    const int n = static_cast<int>(loop.size()) - 1;
    const int j = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(-1, 1), d = rng.uniform(-1, 1);
    std::vector<Point> out(loop);
    for (int i = 0; i <= n; ++i) {
      const double ph = kTwoPi * j * i / n;
      out[i].q1 += eps * (a * std::cos(ph) + b * std::sin(ph) + 0.5 * c);
      out[i].q2 += eps * (c * std::cos(ph) + d * std::sin(ph) + 0.5 * a);
    }
    return out;
  };
  auto act = [&](const std::vector<Point>& loop) {
    return loop_action(*h, loop, cone_fill_area(loop));
  };
  Rng rng(31);
  for (const auto& e : t.entries) {
    if (std::abs(e.p.q1) > 3.0) continue;
    const PeriodicOrbit o = build_orbit(*h, e.p, 256);
    const double a0 = act(o.samples);
    for (int k = 0; k < 20; ++k) CHECK(std::abs(act(perturbed(o.samples, rng)) - a0) < 100.0 * eps * eps);
  }
  // A non-orbit: an off-centre ellipse, so no symmetry cancels the first variation.
  std::vector<Point> ellipse(257);
  for (int i = 0; i <= 256; ++i)
    ellipse[i] = {0.3 + std::cos(kTwoPi * i / 256), 0.2 + 0.6 * std::sin(kTwoPi * i / 256)};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) worst = std::max(worst, std::abs(act(perturbed(ellipse, rng)) - act(ellipse)));
  CHECK(worst > 1e3 * eps * eps);
}

TEST_CASE("build_orbit rejects non-closing seeds") {
  const PathPtr h = parse_path("pi*z", Manifold::sphere());
  CHECK(code_of([&] { build_orbit(*h, {0.0, 0.5}); }) == ErrorCode::NotALoop);
}

TEST_CASE("cone areas") {
  std::vector<Point> circle(129);
  for (int i = 0; i <= 128; ++i) circle[i] = {2.0 * std::cos(kTwoPi * i / 128), 2.0 * std::sin(kTwoPi * i / 128)};
  CHECK(cone_fill_area(circle) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  std::vector<Point> rev(circle.rbegin(), circle.rend());
  CHECK(cone_fill_area(rev) == doctest::Approx(-4.0 * kPi).epsilon(1e-12));

  // Latitude z0 with theta increasing: the meridian cone to the south pole is
  // w(r, t) = (theta(t), -1 + r (z0 + 1)), so w*omega = -(z0 + 1) theta' dr dt.
  const double z0 = 0.3;
  std::vector<Point> lat(129);
  for (int i = 0; i <= 128; ++i) lat[i] = {kTwoPi * i / 128, z0};
  CHECK(spherical_cone_area(lat) == doctest::Approx(-kTwoPi * (1.0 + z0)).epsilon(1e-12));
}
