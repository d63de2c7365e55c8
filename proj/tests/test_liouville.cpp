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
#include "symplab/hamalg.hpp"
#include "symplab/hamdsl.hpp"
#include "symplab/liouville.hpp"

using namespace symplab;

namespace {

double p_half_width(const Manifold& m) { return m.closed() ? 0.0 : m.window_half_width(); }

}  // namespace

TEST_CASE("property: brackets with mean-zero functions have zero integral") {
  for (const Manifold& m : {Manifold::torus(), Manifold::sphere(), Manifold::plane()}) {
    const LiouvilleResult r = liouville_check(m, 20, 0);
    CHECK(r.pairs.size() == 20);
    const double w = 2.0 * p_half_width(m);
    CHECK(r.tolerance == doctest::Approx(1e-6 * (m.closed() ? m.total_area() : w * w)));
    CHECK_MESSAGE(r.worst < r.tolerance, std::string(m.name()));
    CHECK(r.support_ok);
    CHECK(r.pass);
  }
}

TEST_CASE("random mean-zero expressions integrate to zero") {
  for (const Manifold& m : {Manifold::torus(), Manifold::sphere()}) {
    Rng rng(3);
    const QuadratureRule q = default_quadrature(m);
    for (int i = 0; i < 10; ++i) {
      const std::string src = random_mean_zero_expression(m, rng);
      const PathPtr f = parse_path(src, m);
      CHECK_MESSAGE(max_abs_mean(*f, q) < 1e-10, src);
    }
  }
}

TEST_CASE("plane integrals refuse integrands that reach the window boundary") {
  const Manifold p = Manifold::plane();
  const Hamiltonian f = Hamiltonian::parse("x*y^2", p), g = Hamiltonian::parse("x^2 + y", p);
  const QuadratureRule q = default_quadrature(p);
  try {
    integrate(p, q, [&](Point z) { return poisson(f, g, z, 0.0); });
    FAIL("expected UnsupportedWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedWindow);
  }
}

TEST_CASE("min-normalization is not a Lie ideal") {
  const MinNormalizationSearch r = search_min_normalization_counterexample(Manifold::torus(), 20, 0);
  CHECK(r.found);
  CHECK(r.min_bracket < -1e-6);
  CHECK_FALSE(r.f.empty());
}
