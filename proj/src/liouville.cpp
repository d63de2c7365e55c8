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
#include "symplab/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/hamalg.hpp"
#include "symplab/hamdsl.hpp"

namespace symplab {

namespace {

std::string num(double v) { return "(" + format_double(v) + ")"; }

std::string torus_modes(Rng& rng) {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    int a = 0, b = 0;
    while (a == 0 && b == 0) {
      a = static_cast<int>(std::floor(rng.uniform(-3.0, 4.0)));
      b = static_cast<int>(std::floor(rng.uniform(-3.0, 4.0)));
    }
    const std::string arg = "2*pi*(" + std::to_string(a) + "*x + " + std::to_string(b) + "*y)";
    out += (k ? " + " : "") + num(rng.uniform(-1.0, 1.0)) + "*cos(" + arg + ") + " + num(rng.uniform(-1.0, 1.0)) +
           "*sin(" + arg + ")";
  }
  return out;
}

std::string sphere_terms(Rng& rng) {
  const int k = 1 + static_cast<int>(std::floor(rng.uniform(0.0, 3.0)));
  const std::string mk = std::to_string(k);
  return num(rng.uniform(-1.0, 1.0)) + "*z + " + num(rng.uniform(-1.0, 1.0)) + "*(z^2 - 1/3) + " +
         num(rng.uniform(-1.0, 1.0)) + "*z^3 + (1 - z^2)*(" + num(rng.uniform(-1.0, 1.0)) + " + " +
         num(rng.uniform(-1.0, 1.0)) + "*z)*(" + num(rng.uniform(-1.0, 1.0)) + "*cos(" + mk + "*theta) + " +
         num(rng.uniform(-1.0, 1.0)) + "*sin(" + mk + "*theta))";
}

std::string plane_bump(Rng& rng) {
  const double c1 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-1.0, 1.0), r = rng.uniform(1.0, 2.0);
  const std::string u = "((x - " + num(c1) + ")^2 + (y - " + num(c2) + ")^2)";
  return num(rng.uniform(0.5, 2.0)) + "*(1 + " + num(rng.uniform(-0.5, 0.5)) + "*x + " +
         num(rng.uniform(-0.5, 0.5)) + "*y)*bump2(" + u + "; 0, " +
         format_double(r * r) + ")^3";
}

double reference_area(const Manifold& m) {
  if (m.closed()) return m.total_area();
  const double L = m.window_half_width();
  return 4.0 * L * L;
}

}  // namespace

std::string random_mean_zero_expression(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Torus2: return torus_modes(rng);
    case ManifoldKind::Sphere2: return sphere_terms(rng);
    case ManifoldKind::PlaneR2: return plane_bump(rng);
  }
  return "0";
}

std::string random_expression(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Torus2:
      return torus_modes(rng) + " + " + num(rng.uniform(-1.0, 1.0)) + "*sin(2*pi*x)^2 + " +
             num(rng.uniform(-1.0, 1.0));
    case ManifoldKind::Sphere2:
      return sphere_terms(rng) + " + " + num(rng.uniform(-1.0, 1.0)) + "*z^2 + " + num(rng.uniform(-1.0, 1.0));
    case ManifoldKind::PlaneR2: return plane_bump(rng);
  }
  return "0";
}

LiouvilleResult liouville_check(const Manifold& m, int pairs, std::uint64_t seed) {
  Rng rng(seed);
  const QuadratureRule q = default_quadrature(m);
  LiouvilleResult r;
  r.tolerance = 1e-6 * reference_area(m);
  for (int i = 0; i < pairs; ++i) {
    BracketPair bp;
    bp.f = random_mean_zero_expression(m, rng);
    bp.g = random_expression(m, rng);
    const Hamiltonian F = Hamiltonian::parse(bp.f, m), G = Hamiltonian::parse(bp.g, m);
    for (const QuadNode& n : q.nodes) {
      const double b = poisson(F, G, n.p, 0.0);
      bp.integral += n.w * b;
      if (b != 0.0 && (F.eval(n.p, 0.0) == 0.0 || G.eval(n.p, 0.0) == 0.0)) bp.support_ok = false;
    }
    r.worst = std::max(r.worst, std::abs(bp.integral));
    r.support_ok = r.support_ok && bp.support_ok;
    r.pairs.push_back(std::move(bp));
  }
  r.pass = r.worst < r.tolerance && r.support_ok;
  return r;
}

MinNormalizationSearch search_min_normalization_counterexample(const Manifold& m, int trials, std::uint64_t seed,
                                                                double tol) {
  Rng rng(seed);
  const QuadratureRule q = default_quadrature(m);
  MinNormalizationSearch out;
  for (int i = 0; i < trials && !out.found; ++i) {
    ++out.trials;
    const std::string f0 = random_expression(m, rng);
    const Hamiltonian F0 = Hamiltonian::parse(f0, m);
    double lo = INFINITY;
    for (const QuadNode& n : q.nodes) lo = std::min(lo, F0.eval(n.p, 0.0));
    const std::string f = "(" + f0 + ") - " + num(lo);
    const std::string g = random_expression(m, rng);
    const Hamiltonian F = Hamiltonian::parse(f, m), G = Hamiltonian::parse(g, m);
    double mb = INFINITY;
    for (const QuadNode& n : q.nodes) mb = std::min(mb, poisson(F, G, n.p, 0.0));
    if (mb < -tol) {
      out.found = true;
      out.f = f;
      out.g = g;
      out.min_bracket = mb;
    }
  }
  return out;
}

}  // namespace symplab
