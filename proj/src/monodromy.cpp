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
#include "symplab/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/errors.hpp"
#include "symplab/hamalg.hpp"

namespace symplab {

namespace {

struct Rule {
  std::vector<double> nodes, weights, D;
};

Rule gl01(int n) {
  Rule r;
  gauss_legendre(n, 0.0, 1.0, r.nodes, r.weights);
  r.D = lagrange_diff_matrix(r.nodes);
  return r;
}

// Integral of omega(dS/dx, dS/dt) over a surface sampled at S[k * nt + i] = S(x_k, i / nt),
// periodic in t; D differentiates along x and w integrates along x.
double sweep_area(const Manifold& m, const std::vector<Point>& S, int nx, int nt, const std::vector<double>& D,
                  const std::vector<double>& w) {
  double total = 0.0;
  if (m.kind() == ManifoldKind::Sphere2) {
    std::vector<Vec3> X(S.size());
    for (std::size_t k = 0; k < S.size(); ++k) X[k] = sphere_embed(S[k]);
    std::vector<double> a(nt), b(nt), c(nt);
    for (int k = 0; k < nx; ++k) {
      for (int i = 0; i < nt; ++i) {
        const Vec3& v = X[static_cast<std::size_t>(k) * nt + i];
        a[i] = v.x;
        b[i] = v.y;
        c[i] = v.z;
      }
      const auto da = periodic_derivative(a), db = periodic_derivative(b), dc = periodic_derivative(c);
      double row = 0.0;
      for (int i = 0; i < nt; ++i) {
        Vec3 dx;
        for (int l = 0; l < nx; ++l) dx = dx + X[static_cast<std::size_t>(l) * nt + i] * D[k * nx + l];
        row += sphere_area_form(X[static_cast<std::size_t>(k) * nt + i], dx, Vec3{da[i], db[i], dc[i]});
      }
      total += w[k] * row / nt;
    }
    return total;
  }
  std::vector<double> a(nt), b(nt);
  for (int k = 0; k < nx; ++k) {
    for (int i = 0; i < nt; ++i) {
      a[i] = S[static_cast<std::size_t>(k) * nt + i].q1;
      b[i] = S[static_cast<std::size_t>(k) * nt + i].q2;
    }
    const auto da = periodic_derivative(a), db = periodic_derivative(b);
    double row = 0.0;
    for (int i = 0; i < nt; ++i) {
      Vec2 dx;
      for (int l = 0; l < nx; ++l) {
        const Point& p = S[static_cast<std::size_t>(l) * nt + i];
        dx = dx + Vec2{p.q1, p.q2} * D[k * nx + l];
      }
      row += cross(dx, Vec2{da[i], db[i]});
    }
    total += w[k] * row / nt;
  }
  return total;
}

bool constant_loop(const std::vector<Point>& loop) {
  for (const Point& p : loop)
    if (p.q1 != loop.front().q1 || p.q2 != loop.front().q2) return false;
  return true;
}

// Point of the capping disc at radius r over sample i.
Point disc_point(const Manifold& m, const CappedLoop& c, double r, int i) {
  const Point g = c.loop[i];
  if (constant_loop(c.loop)) return g;
  if (m.kind() == ManifoldKind::Sphere2) {
    // Polar angle from the south pole scaled by r, smooth in the embedding.
    const double phi = std::acos(std::clamp(-g.q2, -1.0, 1.0));
    return {g.q1, -std::cos(r * phi)};
  }
  return {c.apex.q1 + r * (g.q1 - c.apex.q1), c.apex.q2 + r * (g.q2 - c.apex.q2)};
}

// Path from a to b: a straight chart segment, or a great-circle arc on the sphere (the
// great circle orthogonal to the polar plane when the ends are antipodal).
Point chart_path(const Manifold& m, Point a, Point b, double tau) {
  if (m.kind() != ManifoldKind::Sphere2) return {a.q1 + tau * (b.q1 - a.q1), a.q2 + tau * (b.q2 - a.q2)};
  const Vec3 x = sphere_embed(a), y = sphere_embed(b);
  const double c = std::clamp(x.dot(y), -1.0, 1.0);
  Vec3 u = y - x * c;
  double n = std::sqrt(u.dot(u));
  if (n < 1e-12) {
    if (c > 0.0) return a;
    u = x.cross(Vec3{0.0, 0.0, 1.0});
    if (u.norm() < 1e-6) u = Vec3{1.0, 0.0, 0.0};
    n = std::sqrt(u.dot(u));
  }
  const double ang = std::acos(c) * tau;
  return sphere_point(x * std::cos(ang) + u * (std::sin(ang) / n));
}

std::vector<Point> subsample(const std::vector<Point>& loop, int nt) {
  const int n = static_cast<int>(loop.size()) - 1;
  if (n < 1 || n % nt != 0)
    fail(ErrorCode::GridMismatch, "loop with " + std::to_string(n) + " samples is not on a " +
                                      std::to_string(nt) + "-point time grid");
  const int stride = n / nt;
  std::vector<Point> out(static_cast<std::size_t>(nt) + 1);
  for (int i = 0; i <= nt; ++i) out[i] = loop[static_cast<std::size_t>(i) * stride];
  return out;
}

Point random_point(const Manifold& m, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::Torus2: return {rng.uniform(), rng.uniform()};
    case ManifoldKind::Sphere2: return {rng.uniform(0.0, kTwoPi), rng.uniform(-0.9, 0.9)};
    case ManifoldKind::PlaneR2: {
      const double L = 0.25 * m.window_half_width();
      return {rng.uniform(-L, L), rng.uniform(-L, L)};
    }
  }
  return {};
}

}  // namespace

CappedLoop cone_capped(const Manifold& m, std::vector<Point> loop, Point apex, long long sheet) {
  CappedLoop c;
  c.loop = std::move(loop);
  c.sheet = sheet;
  if (m.kind() == ManifoldKind::Sphere2) {
    c.apex = {0.0, -1.0};
    c.disc_area = constant_loop(c.loop) ? 0.0 : spherical_cone_area(c.loop);
  } else {
    c.apex = apex;
    c.disc_area = cone_fill_area(c.loop);
  }
  return c;
}

double total_area(const Manifold& m, const CappedLoop& c) { return gamma_shift(m, c.disc_area, c.sheet); }

double capped_action(const HamPath& h, const CappedLoop& c) {
  return loop_action(h, c.loop, total_area(h.manifold(), c));
}

HamLoop identity_loop(const Manifold& m, const FlowOptions& opts) {
  HamLoop h;
  h.name = "identity";
  h.generator = parse_path("0", m, opts);
  IsotopyFamily fam;
  fam.m = m;
  fam.name = "identity";
  const PathPtr zero = h.generator;
  fam.member = [zero](double) { return zero; };
  fam.dF_ds = [](Point, double, double) { return 0.0; };
  h.contraction = fam;
  return h;
}

HamLoop product_loop(const HamLoop& h1, const HamLoop& h2) {
  HamLoop h;
  h.name = h2.name + "*" + h1.name;
  h.generator = sharp(h2.generator, h1.generator);
  if (h1.contraction && h2.contraction) {
    IsotopyFamily fam;
    fam.m = h1.contraction->m;
    fam.name = h.name;
    fam.s_points = h1.contraction->s_points;
    const IsotopyFamily a = *h1.contraction, b = *h2.contraction;
    fam.member = [a, b](double s) { return sharp(b.at(s), a.at(s)); };
    h.contraction = fam;
  }
  return h;
}

double check_loop(const HamLoop& h, int probes, std::uint64_t seed, double tol) {
  const Manifold& m = h.generator->manifold();
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const Point p = random_point(m, rng);
    worst = std::max(worst, chart_distance(m, h.generator->forward(p, 1.0, false).p, p));
  }
  if (!(worst < tol))
    fail(ErrorCode::NotALoop, "time-1 map of '" + h.generator->describe() + "' moves points by " +
                                  format_double(worst));
  return worst;
}

std::vector<Point> loop_act(const HamLoop& h, const std::vector<Point>& gamma) {
  const int n = static_cast<int>(gamma.size()) - 1;
  if (n < 1) fail(ErrorCode::GridMismatch, "loop_act needs at least two samples");
  std::vector<Point> out(gamma.size());
  for (int i = 0; i <= n; ++i) out[i] = h.generator->forward(gamma[i], static_cast<double>(i) / n, false).p;
  return out;
}

CappedLoop capped_image(const HamLoop& h, const Lift& lift, const CappedLoop& c, const SweepOptions& o) {
  const Manifold& m = h.generator->manifold();
  if (!c.cone) fail(ErrorCode::InvalidArgument, "capped_image needs a cone-capped loop");
  const int nt = o.angular, nr = o.radial;
  CappedLoop src = c;
  src.loop = subsample(c.loop, nt);
  const Rule rule = gl01(nr);

  CappedLoop out;
  out.cone = false;
  out.loop = loop_act(h, src.loop);
  out.sheet = c.sheet;

  std::vector<Point> S(static_cast<std::size_t>(nr) * nt);
  if (lift.mode == Lift::Mode::CanonicalFromContraction) {
    if (!h.contraction) fail(ErrorCode::MissingContraction, "loop '" + h.name + "' has no contraction");
    for (int k = 0; k < nr; ++k) {
      const PathPtr hk = h.contraction->at(rule.nodes[k]);
      if (constant_loop(src.loop)) {
        const std::vector<Point> traj = hk->samples(src.loop[0], 0.0, 1.0, nt);
        for (int i = 0; i < nt; ++i) S[static_cast<std::size_t>(k) * nt + i] = traj[i];
      } else {
        for (int i = 0; i < nt; ++i)
          S[static_cast<std::size_t>(k) * nt + i] =
              hk->forward(disc_point(m, src, rule.nodes[k], i), static_cast<double>(i) / nt, false).p;
      }
    }
    out.disc_area = sweep_area(m, S, nr, nt, rule.D, rule.weights);
    return out;
  }

  // Declared capping of h . basepoint, then the cylinder swept along a path from the
  // basepoint to the disc centre, then the image of the disc.
  const Point centre = constant_loop(src.loop) ? src.loop[0] : src.apex;
  for (int k = 0; k < nr; ++k) {
    const std::vector<Point> traj =
        h.generator->samples(chart_path(m, lift.basepoint, centre, rule.nodes[k]), 0.0, 1.0, nt);
    for (int i = 0; i < nt; ++i) S[static_cast<std::size_t>(k) * nt + i] = traj[i];
  }
  double area = lift.base_area + sweep_area(m, S, nr, nt, rule.D, rule.weights);
  if (!constant_loop(src.loop)) {
    for (int k = 0; k < nr; ++k)
      for (int i = 0; i < nt; ++i)
        S[static_cast<std::size_t>(k) * nt + i] =
            h.generator->forward(disc_point(m, src, rule.nodes[k], i), static_cast<double>(i) / nt, false).p;
    area += sweep_area(m, S, nr, nt, rule.D, rule.weights);
  }
  out.disc_area = area;
  out.sheet += lift.sheet;
  return out;
}

MonodromyResult monodromy_analyze(const HamLoop& h, const Lift& lift, int basepoints, std::uint64_t seed,
                                  const SweepOptions& o) {
  const Manifold& m = h.generator->manifold();
  Rng rng(seed);
  MonodromyResult r;
  for (int j = 0; j < basepoints; ++j) {
    const Point p = random_point(m, rng);
    CappedLoop c;
    c.loop.assign(static_cast<std::size_t>(o.angular) + 1, p);
    c.apex = p;
    const CappedLoop img = capped_image(h, lift, c, o);
    r.basepoints.push_back(p);
    r.values.push_back(capped_action(*h.generator, img));
  }
  if (!r.values.empty()) {
    double acc = 0.0;
    for (double v : r.values) acc += v;
    r.mean = acc / static_cast<double>(r.values.size());
    const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
    r.spread = *hi - *lo;
  }
  return r;
}

double monodromy_value(const HamLoop& h, const Lift& lift, int basepoints, std::uint64_t seed,
                       const SweepOptions& o) {
  const MonodromyResult r = monodromy_analyze(h, lift, basepoints, seed, o);
  if (!(r.spread < 1e-4))
    fail(ErrorCode::BasepointDependent, "monodromy of '" + h.name + "' varies by " + format_double(r.spread) +
                                            " across basepoints");
  return r.mean;
}

Lift product_lift(const HamLoop& h1, const Lift& l1, const HamLoop& h2, const Lift& l2) {
  using Mode = Lift::Mode;
  if (l1.mode == Mode::CanonicalFromContraction && l2.mode == Mode::CanonicalFromContraction) {
    if (!h1.contraction || !h2.contraction)
      fail(ErrorCode::MissingContraction, "product of canonical lifts needs both contractions");
    return l1;
  }
  if (l1.mode != Mode::BasepointCapping || l2.mode != Mode::BasepointCapping)
    fail(ErrorCode::InvalidArgument, "product lift: both lifts must use the same mode");
  const Manifold& m = h1.generator->manifold();
  if (chart_distance(m, l1.basepoint, l2.basepoint) > 1e-12)
    fail(ErrorCode::InvalidArgument, "product lift: basepoints differ");
  for (const HamLoop* h : {&h1, &h2}) {
    const std::vector<Point> orbit = h->generator->samples(l1.basepoint, 0.0, 1.0, 64);
    for (const Point& q : orbit)
      if (chart_distance(m, q, l1.basepoint) > 1e-9)
        fail(ErrorCode::InvalidArgument, "product lift: basepoint is not fixed by '" + h->name + "'");
  }
  Lift out = l1;
  out.base_area = l1.base_area + l2.base_area;
  out.sheet = l1.sheet + l2.sheet;
  return out;
}

HomomorphismResult verify_homomorphism(const HamLoop& h1, const Lift& l1, const HamLoop& h2, const Lift& l2,
                                       double tol, int basepoints, std::uint64_t seed, const SweepOptions& o) {
  HomomorphismResult r;
  const HamLoop h12 = product_loop(h1, h2);
  const Lift l12 = product_lift(h1, l1, h2, l2);
  r.i1 = monodromy_analyze(h1, l1, basepoints, seed, o).mean;
  r.i2 = monodromy_analyze(h2, l2, basepoints, seed, o).mean;
  r.i12 = monodromy_analyze(h12, l12, basepoints, seed, o).mean;
  r.residual = std::abs(r.i12 - r.i1 - r.i2);
  r.pass = r.residual < tol;
  return r;
}

Lemma23Result lemma23_analyze(const IsotopyFamily& fam, const Lemma23Options& o) {
  const Manifold& m = fam.m;
  const PathPtr G = fam.at(0.0), F = fam.at(1.0);
  const PathPtr Gbar = bar(G);
  HamLoop h;
  h.name = "h";
  h.generator = sharp(F, Gbar);
  IsotopyFamily con;
  con.m = m;
  con.name = "contraction";
  con.member = [fam, Gbar](double s) { return sharp(fam.at(s), Gbar); };
  h.contraction = con;
  Lift lift;

  const int nt = o.sweep.angular;
  Rng rng(o.seed);
  Lemma23Result r;
  std::vector<CappedLoop> probes;
  for (int j = 0; j < o.probes; ++j) {
    Point c = random_point(m, rng);
    if (m.kind() == ManifoldKind::Sphere2) c.q2 = rng.uniform(-0.6, 0.6);
    double a[3][2], b[3][2];
    for (int k = 0; k < 3; ++k)
      for (int d = 0; d < 2; ++d) {
        a[k][d] = rng.uniform(-0.1, 0.1);
        b[k][d] = rng.uniform(-0.1, 0.1);
      }
    std::vector<Point> loop(static_cast<std::size_t>(nt) + 1);
    for (int i = 0; i <= nt; ++i) {
      const double t = static_cast<double>(i % nt) / nt;
      Point p = c;
      for (int k = 0; k < 3; ++k) {
        const double cs = std::cos(kTwoPi * (k + 1) * t), sn = std::sin(kTwoPi * (k + 1) * t);
        p.q1 += a[k][0] * cs + b[k][0] * sn;
        p.q2 += a[k][1] * cs + b[k][1] * sn;
      }
      loop[i] = p;
    }
    probes.push_back(cone_capped(m, loop, c));
    const CappedLoop img = capped_image(h, lift, probes.back(), o.sweep);
    r.shifts.push_back(capped_action(*F, img) - capped_action(*G, probes.back()));
  }
  if (!r.shifts.empty()) {
    double acc = 0.0;
    for (double v : r.shifts) acc += v;
    r.mean = acc / static_cast<double>(r.shifts.size());
    double var = 0.0;
    for (double v : r.shifts) var += (v - r.mean) * (v - r.mean);
    r.stddev = std::sqrt(var / static_cast<double>(r.shifts.size()));
  }

  // Central differences at +-eps.  The two image cappings differ by the strip swept by
  // h_t(gamma + e xi), e in [-eps, eps], which is integrated on three nodes.
  const double eps = o.epsilon;
  const std::vector<double> enodes{-eps, 0.0, eps};
  const std::vector<double> D = lagrange_diff_matrix(enodes);
  const std::vector<double> W{eps / 3.0, 4.0 * eps / 3.0, eps / 3.0};
  for (int d = 0; d < o.directions && !probes.empty(); ++d) {
    const CappedLoop& base = probes[static_cast<std::size_t>(d) % probes.size()];
    double a[3][2], b[3][2];
    for (int k = 0; k < 3; ++k)
      for (int q = 0; q < 2; ++q) {
        a[k][q] = rng.uniform(-1.0, 1.0);
        b[k][q] = k == 0 ? 0.0 : rng.uniform(-1.0, 1.0);
      }
    std::vector<Vec2> xi(static_cast<std::size_t>(nt) + 1);
    for (int i = 0; i <= nt; ++i) {
      const double t = static_cast<double>(i % nt) / nt;
      for (int k = 0; k < 3; ++k) {
        const double cs = std::cos(kTwoPi * k * t), sn = std::sin(kTwoPi * k * t);
        xi[i].a += a[k][0] * cs + b[k][0] * sn;
        xi[i].b += a[k][1] * cs + b[k][1] * sn;
      }
    }
    auto moved = [&](double e) {
      std::vector<Point> l(base.loop.size());
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = base.loop[i] + xi[i] * e;
      return l;
    };
    const double dG = (capped_action(*G, cone_capped(m, moved(eps), base.apex)) -
                       capped_action(*G, cone_capped(m, moved(-eps), base.apex))) /
                      (2.0 * eps);
    std::vector<Point> S(3 * static_cast<std::size_t>(nt));
    for (int k = 0; k < 3; ++k) {
      const std::vector<Point> l = moved(enodes[k]);
      for (int i = 0; i < nt; ++i)
        S[static_cast<std::size_t>(k) * nt + i] = h.generator->forward(l[i], static_cast<double>(i) / nt, false).p;
    }
    const double strip = sweep_area(m, S, 3, nt, D, W);
    double fp = 0.0, fm = 0.0;
    for (int i = 0; i < nt; ++i) {
      const double t = static_cast<double>(i) / nt;
      fp += F->value(S[2 * static_cast<std::size_t>(nt) + i], t);
      fm += F->value(S[i], t);
    }
    const double dF = (-strip - (fp - fm) / nt) / (2.0 * eps);
    r.variational.push_back(std::abs(dF - dG));
    r.variational_residual = std::max(r.variational_residual, r.variational.back());
  }
  return r;
}

double lemma23_shift(const IsotopyFamily& fam, const Lemma23Options& o) {
  const Lemma23Result r = lemma23_analyze(fam, o);
  if (!(r.stddev < 1e-4))
    fail(ErrorCode::ShiftNotConstant, "shift standard deviation " + format_double(r.stddev) + " over " +
                                          std::to_string(r.shifts.size()) + " probes");
  return r.mean;
}

Theorem1Result verify_theorem1(const IsotopyFamily& fam, const PeriodicOrbit& orbit, const Capping& cap,
                               int t_points) {
  const Manifold& m = fam.m;
  const int S = fam.s_points, nt = t_points;
  // An orbit of F^0 is z(t) = g_t(p), so h^s_t(z(t)) = f^s_t(p).
  const Point p = orbit.seed_fixed_point;
  std::vector<std::vector<Point>> C(S);
  std::vector<PathPtr> members(S);
  for (int j = 0; j < S; ++j) {
    members[j] = fam.at(fam.s_node(j));
    C[j] = members[j]->samples(p, 0.0, 1.0, nt);
  }

  // Inner t-integral of omega(dC/ds, dC/dt) at each grid s.
  std::vector<double> g(S, 0.0);
  const bool sphere = m.kind() == ManifoldKind::Sphere2;
  std::vector<double> col(S);
  std::vector<std::vector<Vec3>> ds_(S, std::vector<Vec3>(nt));
  for (int i = 0; i < nt; ++i) {
    for (int comp = 0; comp < (sphere ? 3 : 2); ++comp) {
      for (int j = 0; j < S; ++j) {
        if (sphere) {
          const Vec3 x = sphere_embed(C[j][i]);
          col[j] = comp == 0 ? x.x : comp == 1 ? x.y : x.z;
        } else {
          col[j] = comp == 0 ? C[j][i].q1 : C[j][i].q2;
        }
      }
      const std::vector<double> d = fd_derivative(col, fam.ds());
      for (int j = 0; j < S; ++j) {
        if (comp == 0) ds_[j][i].x = d[j];
        else if (comp == 1) ds_[j][i].y = d[j];
        else ds_[j][i].z = d[j];
      }
    }
  }
  std::vector<double> a(nt), b(nt), c(nt);
  for (int j = 0; j < S; ++j) {
    double acc = 0.0;
    if (sphere) {
      std::vector<Vec3> X(nt);
      for (int i = 0; i < nt; ++i) {
        X[i] = sphere_embed(C[j][i]);
        a[i] = X[i].x;
        b[i] = X[i].y;
        c[i] = X[i].z;
      }
      const auto da = periodic_derivative(a), db = periodic_derivative(b), dc = periodic_derivative(c);
      for (int i = 0; i < nt; ++i) acc += sphere_area_form(X[i], ds_[j][i], Vec3{da[i], db[i], dc[i]});
    } else {
      for (int i = 0; i < nt; ++i) {
        a[i] = C[j][i].q1;
        b[i] = C[j][i].q2;
      }
      const auto da = periodic_derivative(a), db = periodic_derivative(b);
      for (int i = 0; i < nt; ++i) acc += cross(Vec2{ds_[j][i].x, ds_[j][i].y}, Vec2{da[i], db[i]});
    }
    g[j] = acc / nt;
  }
  const std::vector<double> swept = cumulative_integral(g, fam.ds());

  Theorem1Result r;
  const double base = capping_area(m, cap);
  for (int j = 0; j < S; ++j) {
    double h = 0.0;
    for (int i = 0; i < nt; ++i) h += members[j]->value(C[j][i], static_cast<double>(i) / nt);
    r.s.push_back(fam.s_node(j));
    r.chi.push_back(-(base + swept[j]) - h / nt);
  }
  for (double v : r.chi) r.drift = std::max(r.drift, std::abs(v - r.chi.front()));
  return r;
}

}  // namespace symplab
