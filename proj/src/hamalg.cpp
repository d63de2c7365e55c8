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
#include "symplab/hamalg.hpp"

#include <cmath>

#include "symplab/errors.hpp"

namespace symplab {

namespace {

void require_same(const HamPath& a, const HamPath& b) {
  if (a.manifold() != b.manifold())
    fail(ErrorCode::ManifoldMismatch, std::string(a.manifold().name()) + " vs " +
                                          std::string(b.manifold().name()));
}

NormalizationTag join(NormalizationTag a, NormalizationTag b) {
  return a == b ? a : NormalizationTag::Unchecked;
}

}  // namespace

// ---------------------------------------------------------------------------

SharpPath::SharpPath(PathPtr f, PathPtr g) : HamPath(f->manifold(), f->options()), f_(std::move(f)), g_(std::move(g)) {
  require_same(*f_, *g_);
  set_tag(join(f_->tag(), g_->tag()));
}

double SharpPath::value(Point p, double t) const {
  const double fv = f_->value(p, t);
  if (g_->is_zero()) return fv;
  return fv + g_->value(f_->inverse(p, t, false).p, t);
}

Vec2 SharpPath::gradient(Point p, double t) const {
  const Vec2 gf = f_->gradient(p, t);
  if (g_->is_zero()) return gf;
  const FlowResult psi = f_->inverse(p, t, true);
  const Vec2 gg = g_->gradient(psi.p, t);
  return gf + psi.jac.transpose() * gg;
}

FlowResult SharpPath::forward(Point x, double t, bool jac) const {
  const FlowResult a = g_->forward(x, t, jac);
  FlowResult b = f_->forward(a.p, t, jac);
  if (jac) b.jac = b.jac * a.jac;
  return b;
}

FlowResult SharpPath::inverse(Point x, double t, bool jac) const {
  const FlowResult a = f_->inverse(x, t, jac);
  FlowResult b = g_->inverse(a.p, t, jac);
  if (jac) b.jac = b.jac * a.jac;
  return b;
}

std::string SharpPath::describe() const { return "(" + f_->describe() + ")#(" + g_->describe() + ")"; }

BarPath::BarPath(PathPtr g) : HamPath(g->manifold(), g->options()), g_(std::move(g)) { set_tag(g_->tag()); }

double BarPath::value(Point p, double t) const {
  if (g_->is_zero()) return 0.0;
  return -g_->value(g_->forward(p, t, false).p, t);
}

Vec2 BarPath::gradient(Point p, double t) const {
  if (g_->is_zero()) return {};
  const FlowResult phi = g_->forward(p, t, true);
  return (phi.jac.transpose() * g_->gradient(phi.p, t)) * -1.0;
}

// ---------------------------------------------------------------------------

double ReparamProfile::lambda(double t) const {
  switch (kind) {
    case Kind::Identity: return t;
    case Kind::Sine: return t + amplitude * std::sin(kTwoPi * t) / kTwoPi;
    case Kind::Reversed: return 0.5 * amplitude * (1.0 - std::cos(kTwoPi * t));
  }
  return t;
}

double ReparamProfile::rate(double t) const {
  switch (kind) {
    case Kind::Identity: return 1.0;
    case Kind::Sine: return 1.0 + amplitude * std::cos(kTwoPi * t);
    case Kind::Reversed: return amplitude * kPi * std::sin(kTwoPi * t);
  }
  return 1.0;
}

std::string ReparamProfile::describe() const {
  switch (kind) {
    case Kind::Identity: return "id";
    case Kind::Sine: return "sine(" + format_double(amplitude) + ")";
    case Kind::Reversed: return "reversed(" + format_double(amplitude) + ")";
  }
  return "?";
}

ReparamPath::ReparamPath(PathPtr f, ReparamProfile profile)
    : HamPath(f->manifold(), f->options()), f_(std::move(f)), profile_(profile) {
  direct_ = dynamic_cast<const ExprPath*>(f_.get()) != nullptr;
  set_tag(f_->tag());
}

double ReparamPath::value(Point p, double t) const {
  return profile_.rate(t) * f_->value(p, profile_.lambda(t));
}

Vec2 ReparamPath::gradient(Point p, double t) const {
  return f_->gradient(p, profile_.lambda(t)) * profile_.rate(t);
}

Mat2 ReparamPath::hessian(Point p, double t) const {
  return f_->hessian(p, profile_.lambda(t)) * profile_.rate(t);
}

void ReparamPath::field_jacobian(Point p, double t, Vec2& X, Mat2& A) const {
  f_->field_jacobian(p, profile_.lambda(t), X, A);
  const double r = profile_.rate(t);
  X = X * r;
  A = A * r;
}

// Over a parsed base the reparametrised field is integrated directly, so one-shot and
// sampled flows share the uniform step grid in t.
FlowResult ReparamPath::forward(Point x, double t, bool jac) const {
  if (direct_) return integrate(*this, x, 0.0, t, jac);
  return f_->forward(x, profile_.lambda(t), jac);
}

FlowResult ReparamPath::inverse(Point x, double t, bool jac) const {
  if (direct_) return integrate(*this, x, t, 0.0, jac);
  return f_->inverse(x, profile_.lambda(t), jac);
}

FlowResult ReparamPath::flow(Point x, double t0, double t1, bool jac) const {
  if (direct_) return integrate(*this, x, t0, t1, jac);
  return f_->flow(x, profile_.lambda(t0), profile_.lambda(t1), jac);
}

std::vector<Point> ReparamPath::samples(Point x, double t0, double t1, int n) const {
  if (direct_) return integrate_samples(*this, x, t0, t1, n);
  std::vector<Point> out(static_cast<std::size_t>(n) + 1);
  out[0] = x;
  for (int i = 0; i < n; ++i) {
    const double a = profile_.lambda(t0 + (t1 - t0) * i / n);
    const double b = profile_.lambda(t0 + (t1 - t0) * (i + 1) / n);
    out[i + 1] = a == b ? out[i] : f_->flow(out[i], a, b, false).p;
  }
  return out;
}

std::string ReparamPath::describe() const {
  return "reparam(" + f_->describe() + ", " + profile_.describe() + ")";
}

ShiftPath::ShiftPath(PathPtr f, std::function<double(double)> c, std::string label)
    : HamPath(f->manifold(), f->options()), f_(std::move(f)), c_(std::move(c)), label_(std::move(label)) {}

PathPtr sharp(PathPtr f, PathPtr g) { return std::make_shared<SharpPath>(std::move(f), std::move(g)); }
PathPtr bar(PathPtr g) { return std::make_shared<BarPath>(std::move(g)); }
PathPtr reparam(PathPtr f, ReparamProfile profile) {
  return std::make_shared<ReparamPath>(std::move(f), profile);
}
PathPtr shift(PathPtr f, double c) {
  return std::make_shared<ShiftPath>(std::move(f), [c](double) { return c; }, " + " + format_double(c));
}

// ---------------------------------------------------------------------------

double poisson(const Hamiltonian& f, const Hamiltonian& g, Point p, double t) {
  if (f.manifold() != g.manifold()) fail(ErrorCode::ManifoldMismatch, "poisson: manifolds differ");
  const Vec2 df = f.grad(p, t), dg = g.grad(p, t);
  return df.a * dg.b - df.b * dg.a;
}

double poisson(const HamPath& f, const HamPath& g, Point p, double t) {
  require_same(f, g);
  const Vec2 df = f.gradient(p, t), dg = g.gradient(p, t);
  return df.a * dg.b - df.b * dg.a;
}

double max_abs_mean(const HamPath& f, const QuadratureRule& q, int time_samples) {
  double worst = 0.0;
  for (int k = 0; k < time_samples; ++k) {
    const double t = static_cast<double>(k) / time_samples;
    const double v = integrate(f.manifold(), q, [&](Point p) { return f.value(p, t); });
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

PathPtr normalize_mean_zero(PathPtr f, const QuadratureRule& q, int time_nodes) {
  const Manifold& m = f->manifold();
  if (!m.closed()) fail(ErrorCode::OpenManifold, "normalize_mean_zero needs a closed manifold");
  std::vector<double> c(time_nodes);
  for (int k = 0; k < time_nodes; ++k) {
    const double t = static_cast<double>(k) / time_nodes;
    c[k] = integrate(m, q, [&](Point p) { return f->value(p, t); }) / m.total_area();
  }
  PeriodicSpline spline(c, 1.0);
  auto out = std::make_shared<ShiftPath>(f, [spline](double t) { return -spline(t); }, " - mean(t)");
  const double residual = max_abs_mean(*out, q, time_nodes);
  if (residual >= 1e-8 * m.total_area())
    fail(ErrorCode::NotNormalized, "mean after normalization is " + format_double(residual));
  out->set_tag(NormalizationTag::MeanZero);
  return out;
}

bool check_compact_support(const HamPath& f) {
  const Manifold& m = f.manifold();
  if (m.kind() != ManifoldKind::PlaneR2) return false;
  int times = 64;
  if (dynamic_cast<const ExprPath*>(&f)) {
    const auto& h = static_cast<const ExprPath&>(f).hamiltonian();
    times = h.time_independent() ? 1 : std::max(1, static_cast<int>(std::lround(1.0 / f.options().step)));
  }
  const std::vector<Point> ring = window_boundary_ring(m);
  for (int k = 0; k < times; ++k) {
    const double t = static_cast<double>(k) / times;
    for (const Point& p : ring)
      if (!(std::abs(f.value(p, t)) < 1e-12)) return false;
  }
  return true;
}

NormalizationTag certify_normalization(const HamPath& f) {
  const Manifold& m = f.manifold();
  if (m.closed()) {
    const QuadratureRule q = default_quadrature(m);
    return max_abs_mean(f, q) < 1e-8 * m.total_area() ? NormalizationTag::MeanZero
                                                      : NormalizationTag::Unchecked;
  }
  return check_compact_support(f) ? NormalizationTag::CompactSupport : NormalizationTag::Unchecked;
}

}  // namespace symplab
