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
#include "symplab/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"

namespace symplab {

namespace {

// phi^1(p) - p with the torus winding and the sphere angle removed.
Vec2 reduce(const Manifold& m, Vec2 d, long long* w1 = nullptr, long long* w2 = nullptr) {
  switch (m.kind()) {
    case ManifoldKind::Torus2: {
      const double r1 = std::round(d.a), r2 = std::round(d.b);
      if (w1) *w1 = static_cast<long long>(r1);
      if (w2) *w2 = static_cast<long long>(r2);
      return {d.a - r1, d.b - r2};
    }
    case ManifoldKind::Sphere2: return {std::remainder(d.a, kTwoPi), d.b};
    case ManifoldKind::PlaneR2: return d;
  }
  return d;
}

Vec3 unit(Vec3 v) { return v * (1.0 / v.norm()); }

void tangent_frame(Vec3 x, Vec3& e1, Vec3& e2) {
  const Vec3 a = std::abs(x.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  e1 = unit(a - x * a.dot(x));
  e2 = x.cross(e1);
}

bool gnomonic(Vec3 x, Vec3 e1, Vec3 e2, Vec3 y, Vec2& u) {
  const double d = x.dot(y);
  if (d <= 0.1) return false;
  u = {e1.dot(y) / d, e2.dot(y) / d};
  return true;
}

enum class Outcome { Converged, Dropped, Prescreened };

struct SeedResult {
  Outcome outcome = Outcome::Dropped;
  Point p;
  bool zero_iteration = false;
  long long w1 = 0, w2 = 0;
};

// Newton in a gnomonic chart centred at the current iterate; used near the sphere poles
// where the (theta, z) chart degenerates.
SeedResult newton_gnomonic(const HamPath& h, Point start, const FixedPointOptions& o, double spacing,
                           bool first) {
  SeedResult r;
  Vec3 x = sphere_embed(start);
  auto phi = [&](Vec3 v) { return sphere_embed(h.forward(sphere_point(v), 1.0, false).p); };
  for (int it = 0; it < o.max_newton; ++it) {
    const Vec3 y = phi(x);
    if ((y - x).norm() < o.tolerance) {
      r.outcome = Outcome::Converged;
      r.zero_iteration = first && it == 0;
      r.p = sphere_point(x);
      return r;
    }
    Vec3 e1, e2;
    tangent_frame(x, e1, e2);
    Vec2 g0;
    if (!gnomonic(x, e1, e2, y, g0)) return r;
    const double d = 1e-7;
    Vec2 col[2];
    for (int k = 0; k < 2; ++k) {
      const Vec3 dir = k == 0 ? e1 : e2;
      Vec2 gp, gm;
      const Vec3 xp = unit(x + dir * d), xm = unit(x - dir * d);
      if (!gnomonic(x, e1, e2, phi(xp), gp) || !gnomonic(x, e1, e2, phi(xm), gm)) return r;
      // G(u) = coords(phi(x(u))) - u
      col[k] = (gp - gm) * (0.5 / d);
      if (k == 0) col[k].a -= 1.0;
      else col[k].b -= 1.0;
    }
    const Mat2 J{col[0].a, col[1].a, col[0].b, col[1].b};
    const Vec2 step = pseudo_inverse(J) * g0 * -1.0;
    if (step.norm() == 0.0) return r;
    if (first && it == 0 && step.norm() > 3.0 * spacing) {
      r.outcome = Outcome::Prescreened;
      return r;
    }
    if (step.norm() > 0.5) return r;
    x = unit(x + e1 * step.a + e2 * step.b);
  }
  return r;
}

SeedResult newton_chart(const HamPath& h, Point p, const FixedPointOptions& o, double spacing) {
  const Manifold& m = h.manifold();
  const bool sphere = m.kind() == ManifoldKind::Sphere2;
  const double L = m.window_half_width();
  SeedResult r;
  for (int it = 0; it < o.max_newton; ++it) {
    if (sphere && std::abs(p.q2) > 0.9) return newton_gnomonic(h, p, o, spacing, it == 0);
    const FlowResult f = h.forward(p, 1.0, true);
    long long w1 = 0, w2 = 0;
    const Vec2 R = reduce(m, f.p - p, &w1, &w2);
    if (R.norm() < o.tolerance) {
      r.outcome = Outcome::Converged;
      r.zero_iteration = it == 0;
      r.p = p;
      r.w1 = w1;
      r.w2 = w2;
      return r;
    }
    const Vec2 step = pseudo_inverse(f.jac - Mat2::identity()) * R * -1.0;
    const double len = step.norm();
    if (len == 0.0) return r;
    if (it == 0 && len > 3.0 * spacing) {
      r.outcome = Outcome::Prescreened;
      return r;
    }
    if (len > 10.0 * spacing) return r;
    p = p + step;
    if (m.kind() == ManifoldKind::PlaneR2 && (std::abs(p.q1) > L || std::abs(p.q2) > L)) return r;
    if (sphere && std::abs(p.q2) > 1.0) p.q2 = std::copysign(1.0, p.q2);
  }
  return r;
}

bool in_support(const HamPath& h, Point p) {
  for (int k = 0; k < 8; ++k) {
    const double t = k / 8.0;
    if (std::abs(h.value(p, t)) > 1e-14 || h.gradient(p, t).norm() > 1e-14) return true;
  }
  return false;
}

// Time derivative of one periodic coordinate series with a linear drift removed.
std::vector<double> drift_derivative(std::vector<double> f, double drift) {
  const int n = static_cast<int>(f.size());
  for (int i = 0; i < n; ++i) f[i] -= drift * i / n;
  std::vector<double> d = periodic_derivative(f, 1.0);
  for (double& v : d) v += drift;
  return d;
}

}  // namespace

FixedPointReport find_fixed_points(const HamPath& h, const FixedPointOptions& opts) {
  const Manifold& m = h.manifold();
  const int n = opts.seeds;
  if (n < 2) fail(ErrorCode::InvalidArgument, "find_fixed_points: at least 2 seeds per axis");
  FixedPointReport rep;
  std::vector<Point> seeds;
  switch (m.kind()) {
    case ManifoldKind::Torus2:
      rep.spacing = 1.0 / n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) seeds.push_back({(i + 0.5) / n, (j + 0.5) / n});
      break;
    case ManifoldKind::Sphere2:
      rep.spacing = kTwoPi / n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) seeds.push_back({kTwoPi * (i + 0.5) / n, -1.0 + 2.0 * (j + 0.5) / n});
      break;
    case ManifoldKind::PlaneR2: {
      const double L = m.window_half_width();
      rep.spacing = 2.0 * L / n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Point p{-L + 2.0 * L * (i + 0.5) / n, -L + 2.0 * L * (j + 0.5) / n};
          if (in_support(h, p)) seeds.push_back(p);
        }
      break;
    }
  }
  rep.seeds = static_cast<int>(seeds.size());
  for (const Point& s : seeds) {
    const SeedResult r = newton_chart(h, s, opts, rep.spacing);
    switch (r.outcome) {
      case Outcome::Prescreened: ++rep.prescreened; continue;
      case Outcome::Dropped: ++rep.dropped; continue;
      case Outcome::Converged: break;
    }
    ++rep.converged;
    if (r.zero_iteration) ++rep.zero_iteration;
    if (r.w1 != 0 || r.w2 != 0) {
      ++rep.noncontractible;
      continue;
    }
    const Point w = chart_wrap(m, r.p);
    bool dup = false;
    for (const Point& q : rep.points)
      if (chart_distance(m, q, w) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) rep.points.push_back(w);
  }
  rep.degenerate_identity = rep.seeds > 0 && 2 * rep.zero_iteration > rep.seeds;
  if (rep.degenerate_identity || !h.has_hessian()) return rep;

  // Stationary points of H_0 that stay fixed are constant orbits; hyperbolic ones are
  // out of reach of Newton on the time-1 map, which amplifies seed errors by e^lambda.
  std::vector<Point> candidates;
  for (const Point& s : seeds) {
    Point p = s;
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      Vec2 X;
      Mat2 A;
      h.field_jacobian(p, 0.0, X, A);
      if (X.norm() < 1e-12) {
        ok = true;
        break;
      }
      const Vec2 step = pseudo_inverse(A) * X * -1.0;
      if (step.norm() == 0.0 || step.norm() > 3.0 * rep.spacing) break;
      p = p + step;
    }
    if (!ok) continue;
    if (m.kind() == ManifoldKind::Sphere2 && std::abs(p.q2) > 0.95) continue;
    if (m.kind() == ManifoldKind::PlaneR2 && !in_support(h, p)) continue;
    const Point w = chart_wrap(m, p);
    bool dup = false;
    for (const Point& q : rep.points) dup = dup || chart_distance(m, q, w) < 1e-6;
    for (const Point& q : candidates) dup = dup || chart_distance(m, q, w) < 1e-6;
    if (!dup) candidates.push_back(w);
  }
  for (const Point& c : candidates) {
    const Vec2 R = reduce(m, h.forward(c, 1.0, false).p - c);
    if (R.norm() < opts.tolerance) {
      rep.points.push_back(c);
      ++rep.stationary;
    }
  }
  return rep;
}

PeriodicOrbit build_orbit(const HamPath& h, Point p, int n) {
  if (n < 4) fail(ErrorCode::InvalidArgument, "build_orbit: at least 4 samples");
  const Manifold& m = h.manifold();
  PeriodicOrbit o;
  o.seed_fixed_point = p;
  o.samples = h.samples(p, 0.0, 1.0, n);
  const Point a = o.samples.front(), b = o.samples.back();
  o.closure = chart_distance(m, a, b);
  if (m.kind() == ManifoldKind::Torus2)
    o.contractible = std::round(b.q1 - a.q1) == 0.0 && std::round(b.q2 - a.q2) == 0.0;
  if (!(o.closure < 1e-8))
    fail(ErrorCode::NotALoop, "orbit through (" + format_double(p.q1) + ", " + format_double(p.q2) +
                                  ") does not close: gap " + format_double(o.closure));

  std::vector<double> u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = o.samples[i].q1;
    v[i] = o.samples[i].q2;
  }
  const double drift1 = m.kind() == ManifoldKind::PlaneR2 ? 0.0 : b.q1 - a.q1;
  const double drift2 = m.kind() == ManifoldKind::Torus2 ? b.q2 - a.q2 : 0.0;
  const std::vector<double> du = drift_derivative(u, drift1), dv = drift_derivative(v, drift2);
  for (int i = 0; i < n; ++i) {
    const Vec2 X = h.vector_field(o.samples[i], static_cast<double>(i) / n);
    o.ode_residual = std::max(o.ode_residual, Vec2{du[i] - X.a, dv[i] - X.b}.norm());
  }
  if (!(o.ode_residual < 1e-4))
    fail(ErrorCode::NotALoop, "orbit ODE residual " + format_double(o.ode_residual) + " exceeds 1e-4");
  return o;
}

const char* to_string(CappingKind k) {
  switch (k) {
    case CappingKind::ConstantAtPoint: return "ConstantAtPoint";
    case CappingKind::ConeFill: return "ConeFill";
    case CappingKind::SphericalCone: return "SphericalCone";
  }
  return "?";
}

double cone_fill_area(const std::vector<Point>& loop) {
  const int n = static_cast<int>(loop.size()) - 1;
  if (n < 2) return 0.0;
  std::vector<double> u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = loop[i].q1 - loop[0].q1;
    v[i] = loop[i].q2 - loop[0].q2;
  }
  const std::vector<double> du = periodic_derivative(u), dv = periodic_derivative(v);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += u[i] * dv[i] - v[i] * du[i];
  return 0.5 * acc / n;
}

double spherical_cone_area(const std::vector<Point>& loop) {
  const int n = static_cast<int>(loop.size()) - 1;
  if (n < 2) return 0.0;
  std::vector<double> x(n), y(n), z(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 e = sphere_embed(loop[i]);
    x[i] = e.x;
    y[i] = e.y;
    z[i] = e.z;
  }
  const std::vector<double> dx = periodic_derivative(x), dy = periodic_derivative(y);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += (x[i] * dy[i] - y[i] * dx[i]) / (1.0 - z[i]);
  return -acc / n;
}

namespace {

bool is_constant_loop(const Manifold& m, const std::vector<Point>& loop) {
  for (const Point& p : loop)
    if (chart_distance(m, p, loop.front()) >= 1e-9) return false;
  return true;
}

}  // namespace

Capping canonical_capping(const Manifold& m, const std::vector<Point>& loop) {
  Capping c;
  if (is_constant_loop(m, loop)) return c;
  if (m.kind() == ManifoldKind::Sphere2) {
    c.kind = CappingKind::SphericalCone;
    c.signed_area = spherical_cone_area(loop);
  } else {
    c.kind = CappingKind::ConeFill;
    c.signed_area = cone_fill_area(loop);
  }
  return c;
}

double capping_area(const Manifold& m, const Capping& c) { return gamma_shift(m, c.signed_area, c.sheet); }

double loop_action(const HamPath& h, const std::vector<Point>& loop, double cap_area) {
  const int n = static_cast<int>(loop.size()) - 1;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += h.value(loop[i], static_cast<double>(i) / n);
  return -cap_area - acc / n;
}

double action(const HamPath& h, const PeriodicOrbit& orbit, const Capping& cap) {
  const Manifold& m = h.manifold();
  if (!orbit.contractible) fail(ErrorCode::IncompatibleCapping, "orbit is not contractible");
  switch (cap.kind) {
    case CappingKind::ConstantAtPoint:
      if (!is_constant_loop(m, orbit.samples))
        fail(ErrorCode::IncompatibleCapping, "constant capping on a non-constant orbit");
      break;
    case CappingKind::ConeFill:
      if (m.kind() == ManifoldKind::Sphere2)
        fail(ErrorCode::IncompatibleCapping, "cone fill needs a flat cover");
      break;
    case CappingKind::SphericalCone:
      if (m.kind() != ManifoldKind::Sphere2)
        fail(ErrorCode::IncompatibleCapping, "spherical cone needs the sphere");
      break;
  }
  return loop_action(h, orbit.samples, capping_area(m, cap));
}

SpectrumTable spectrum(const HamPath& h, const SpectrumOptions& opts) {
  const Manifold& m = h.manifold();
  if (h.tag() == NormalizationTag::Unchecked && !opts.allow_unnormalized)
    fail(ErrorCode::NotNormalized, "spectrum of '" + h.describe() + "' needs a normalized Hamiltonian");
  if (h.is_zero()) fail(ErrorCode::DegenerateIdentity, "the zero Hamiltonian has the identity as time-1 map");

  SpectrumTable table;
  table.manifold = std::string(m.name());
  table.hamiltonian = h.describe();
  table.fixed_points = find_fixed_points(h, opts.search);
  const FixedPointReport& fp = table.fixed_points;
  if (fp.degenerate_identity)
    fail(ErrorCode::DegenerateIdentity, "time-1 map is the identity on " + std::to_string(fp.zero_iteration) +
                                            " of " + std::to_string(fp.seeds) + " seeds");

  const std::size_t k = fp.points.size();
  std::vector<double> act(k);
  for (std::size_t i = 0; i < k; ++i) {
    const PeriodicOrbit o = build_orbit(h, fp.points[i], opts.samples);
    act[i] = action(h, o, canonical_capping(m, o.samples));
  }

  // Single-linkage clusters of nearby roots with equal action: Morse-Bott families.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (chart_distance(m, fp.points[i], fp.points[j]) < 3.0 * fp.spacing &&
          std::abs(act[i] - act[j]) < 1e-6 * std::max(1.0, std::abs(act[i]))) {
        const std::size_t a = find(i), b = find(j);
        parent[std::max(a, b)] = std::min(a, b);
      }

  struct Raw {
    SpectrumEntry e;
    int kind;  // 0 orbit, 1 family, 2 exterior
  };
  std::vector<Raw> raw;
  std::vector<std::size_t> raw_of(k, 0);
  // Roots are the smallest index of their cluster, so they are visited first.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t root = find(i);
    if (root != i) {
      Raw& r = raw[raw_of[root]];
      ++r.e.members;
      r.e.family = true;
      r.kind = 1;
      continue;
    }
    raw_of[i] = raw.size();
    Raw r;
    r.e.p = fp.points[i];
    r.e.base_action = act[i];
    r.kind = 0;
    raw.push_back(r);
  }
  if (m.kind() == ManifoldKind::PlaneR2 && check_compact_support(h)) {
    Raw r;
    r.e.p = {-m.window_half_width(), -m.window_half_width()};
    r.e.base_action = 0.0;
    r.e.family = true;
    r.kind = 2;
    raw.push_back(r);
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& a, const Raw& b) { return a.e.base_action < b.e.base_action; });

  std::vector<Raw> merged;
  for (const Raw& r : raw) {
    if (!merged.empty() && std::abs(r.e.base_action - merged.back().e.base_action) < 1e-8) {
      Raw& last = merged.back();
      const int members = last.e.members + r.e.members;
      if (r.kind > last.kind) last = r;
      last.e.members = members;
      last.e.family = true;
      continue;
    }
    merged.push_back(r);
  }

  int orbit_no = 0, family_no = 0;
  for (Raw& r : merged) {
    SpectrumEntry e = r.e;
    e.generator = m.gamma_omega_generator();
    if (r.kind == 2) {
      e.id = "exterior";
    } else if (m.kind() == ManifoldKind::Sphere2 && std::abs(e.p.q2) > 1.0 - 1e-9) {
      e.id = e.p.q2 > 0 ? "north" : "south";
    } else if (e.family) {
      e.id = "family" + std::to_string(family_no++);
    } else {
      e.id = "orbit" + std::to_string(orbit_no++);
    }
    table.entries.push_back(e);
  }
  return table;
}

std::string spectrum_csv(const SpectrumTable& t) {
  std::ostringstream os;
  os << "orbit_id,p_q1,p_q2,base_action,coset_generator\n";
  for (const SpectrumEntry& e : t.entries)
    os << e.id << ',' << format_double(e.p.q1) << ',' << format_double(e.p.q2) << ','
       << format_double(e.base_action) << ',' << format_double(e.generator) << '\n';
  return os.str();
}

}  // namespace symplab
