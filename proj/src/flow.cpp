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
#include "symplab/flow.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/errors.hpp"

namespace symplab {

namespace {

const double kGamma1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kGamma2 = 1.0 - 2.0 * kGamma1;

class Stepper {
 public:
  Stepper(const HamPath& h)
      : h_(h),
        o_(h.options()),
        sphere_(h.manifold().kind() == ManifoldKind::Sphere2),
        hess_(h.has_hessian()) {}

  bool has_hessian() const { return hess_; }

  // One step of the selected scheme from t to t + dt.
  void step(Point& y, double t, double dt, Mat2* J) const {
    if (o_.scheme == Scheme::ImplicitMidpoint) {
      midpoint(y, t, dt, J);
      return;
    }
    midpoint(y, t, kGamma1 * dt, J);
    midpoint(y, t + kGamma1 * dt, kGamma2 * dt, J);
    midpoint(y, t + (kGamma1 + kGamma2) * dt, kGamma1 * dt, J);
  }

 private:
  const HamPath& h_;
  const FlowOptions& o_;
  bool sphere_;
  bool hess_;

  // y1 = y + dt X((y + y1) / 2, t + dt / 2).  Newton on the stage equation when the
  // Hessian is available, plain fixed-point iteration otherwise.
  void midpoint(Point& y, double t, double dt, Mat2* J) const {
    const double tm = t + 0.5 * dt;
    Point y1 = y + h_.vector_field(y, tm) * dt;
    bool converged = false;
    Mat2 A;  // DX at the last iterate, reused for the variational update
    for (int it = 0; it < o_.max_iterations; ++it) {
      const Point ym{0.5 * (y.q1 + y1.q1), 0.5 * (y.q2 + y1.q2)};
      Vec2 X;
      if (hess_) h_.field_jacobian(ym, tm, X, A);
      else X = h_.vector_field(ym, tm);
      Vec2 delta;
      if (hess_) {
        const Mat2 M = Mat2::identity() - A * (0.5 * dt);
        const Vec2 G = (y1 - y) - X * dt;
        delta = M.inverse() * G;
        y1 = y1 + delta * -1.0;
      } else {
        const Point ynew = y + X * dt;
        delta = ynew - y1;
        y1 = ynew;
      }
      const double scale = std::max(1.0, std::max(std::abs(y1.q1), std::abs(y1.q2)));
      if (delta.norm() <= o_.tolerance * scale) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error(ErrorCode::NonConvergence,
                  "NonConvergence: implicit midpoint stage did not converge in " +
                      std::to_string(o_.max_iterations) + " iterations at t = " + format_double(t));
    if (J) {
      const Mat2 B = A * (0.5 * dt);
      *J = (Mat2::identity() - B).inverse() * (Mat2::identity() + B) * (*J);
    }
    if (sphere_) y1.q2 = std::max(-1.0, std::min(1.0, y1.q2));
    y = y1;
  }
};

int step_count(double span, double step) {
  const double n = std::ceil(std::abs(span) / step - 1e-9);
  return std::max(1, static_cast<int>(n));
}

Point integrate_plain(const Stepper& st, const HamPath& h, Point x, double t0, double t1, Mat2* J) {
  const int n = step_count(t1 - t0, h.options().step);
  const double dt = (t1 - t0) / n;
  for (int k = 0; k < n; ++k) st.step(x, t0 + k * dt, dt, J);
  return x;
}

}  // namespace

FlowResult integrate(const HamPath& h, Point x, double t0, double t1, bool jac) {
  FlowResult r{x, Mat2::identity()};
  if (t0 == t1 || h.is_zero()) return r;
  const Stepper st(h);
  if (!jac) {
    r.p = integrate_plain(st, h, x, t0, t1, nullptr);
    return r;
  }
  if (st.has_hessian()) {
    r.p = integrate_plain(st, h, x, t0, t1, &r.jac);
    return r;
  }
  r.p = integrate_plain(st, h, x, t0, t1, nullptr);
  const double d = 1e-6;
  auto f = [&](double a, double b) { return integrate_plain(st, h, Point{a, b}, t0, t1, nullptr); };
  const Point a1 = f(x.q1 + d, x.q2), b1 = f(x.q1 - d, x.q2);
  const Point a2 = f(x.q1, x.q2 + d), b2 = f(x.q1, x.q2 - d);
  r.jac = {(a1.q1 - b1.q1) / (2 * d), (a2.q1 - b2.q1) / (2 * d), (a1.q2 - b1.q2) / (2 * d),
           (a2.q2 - b2.q2) / (2 * d)};
  return r;
}

std::vector<Point> integrate_samples(const HamPath& h, Point x, double t0, double t1, int n) {
  std::vector<Point> out(static_cast<std::size_t>(n) + 1, x);
  if (h.is_zero()) return out;
  const Stepper st(h);
  const double span = (t1 - t0) / n;
  const int m = step_count(span, h.options().step);
  const double dt = span / m;
  for (int i = 0; i < n; ++i) {
    const double ta = t0 + (t1 - t0) * i / n;
    for (int k = 0; k < m; ++k) st.step(x, ta + k * dt, dt, nullptr);
    out[i + 1] = x;
  }
  return out;
}

Point FlowMap::flow(Point p, double t0, double t1) const {
  if (std::abs(t1 - t0) > 1.0 + 1e-12)
    fail(ErrorCode::InvalidArgument, "flow: |t1 - t0| must not exceed 1");
  return h_->flow(p, t0, t1, false).p;
}

FlowResult FlowMap::flow_with_jacobian(Point p, double t0, double t1) const {
  if (std::abs(t1 - t0) > 1.0 + 1e-12)
    fail(ErrorCode::InvalidArgument, "flow: |t1 - t0| must not exceed 1");
  return h_->flow(p, t0, t1, true);
}

Point flow(const FlowMap& fm, Point p, double t0, double t1) { return fm.flow(p, t0, t1); }

double IsotopyFamily::dFds(Point p, double t, double s) const {
  if (dF_ds) return dF_ds(p, t, s);
  const double h = 1e-4;
  double a = s - h, b = s + h;
  if (a < 0.0) a = s;
  if (b > 1.0) b = s;
  return (at(b)->value(p, t) - at(a)->value(p, t)) / (b - a);
}

IsotopyFamily expression_family(const Hamiltonian& templ, const std::string& param,
                                const FlowOptions& opts, int s_points) {
  const auto& names = templ.param_names();
  const auto it = std::find(names.begin(), names.end(), param);
  if (it == names.end())
    fail(ErrorCode::InvalidArgument, "family template has no parameter '" + param + "'");
  const std::size_t k = static_cast<std::size_t>(it - names.begin());
  IsotopyFamily fam;
  fam.m = templ.manifold();
  fam.name = templ.source();
  fam.s_points = s_points;
  auto bind = [templ, k](double s) {
    std::vector<double> v = templ.param_values();
    v[k] = s;
    return templ.with_params(std::move(v));
  };
  fam.member = [bind, opts](double s) { return make_path(bind(s), opts); };
  fam.dF_ds = [bind, k](Point p, double t, double s) { return bind(s).d_param(k, p, t); };
  return fam;
}

double check_same_endpoints(const IsotopyFamily& fam, int probes, std::uint64_t seed, double tol) {
  Rng rng(seed);
  std::vector<Point> pts;
  const Manifold& m = fam.m;
  for (int i = 0; i < probes; ++i) {
    switch (m.kind()) {
      case ManifoldKind::Torus2: pts.push_back({rng.uniform(), rng.uniform()}); break;
      case ManifoldKind::Sphere2: pts.push_back({rng.uniform(0, kTwoPi), rng.uniform(-0.95, 0.95)}); break;
      case ManifoldKind::PlaneR2: {
        const double L = 0.9 * m.window_half_width();
        pts.push_back({rng.uniform(-L, L), rng.uniform(-L, L)});
        break;
      }
    }
  }
  const PathPtr f0 = fam.at(0.0);
  std::vector<Point> ref;
  for (const Point& p : pts) ref.push_back(f0->forward(p, 1.0, false).p);
  double worst = 0.0;
  for (int j = 1; j < fam.s_points; ++j) {
    const PathPtr fs = fam.at(fam.s_node(j));
    for (std::size_t i = 0; i < pts.size(); ++i)
      worst = std::max(worst, chart_distance(m, fs->forward(pts[i], 1.0, false).p, ref[i]));
  }
  if (worst >= tol)
    throw Error(ErrorCode::EndpointMismatch,
                "EndpointMismatch: time-1 maps of the family differ by " + format_double(worst));
  return worst;
}

YSample derive_Y_field(const IsotopyFamily& fam, double t, double s, Point p) {
  const double ds = fam.ds();
  const Point q = fam.at(s)->inverse(p, t, false).p;
  auto f = [&](double sv) { return fam.at(sv)->forward(q, t, false).p; };
  YSample out;
  if (s - ds < -1e-12) {
    out.y = (f(s + ds) - f(s)) * (1.0 / ds);
    out.one_sided = true;
  } else if (s + ds > 1.0 + 1e-12) {
    out.y = (f(s) - f(s - ds)) * (1.0 / ds);
    out.one_sided = true;
  } else {
    out.y = (f(s + ds) - f(s - ds)) * (0.5 / ds);
  }
  return out;
}

}  // namespace symplab
