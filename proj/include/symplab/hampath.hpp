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
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symplab/geom.hpp"
#include "symplab/hamdsl.hpp"

namespace symplab {

enum class Scheme {
  ImplicitMidpoint,  // second order
  TripleJump,        // symmetric composition of three implicit-midpoint stages, fourth order
};

struct FlowOptions {
  double step = 1.0 / 512.0;
  Scheme scheme = Scheme::TripleJump;
  int max_iterations = 50;
  double tolerance = 1e-12;
};

struct FlowResult {
  Point p;
  Mat2 jac = Mat2::identity();
};

// A time-dependent Hamiltonian together with its isotopy phi^t.  Coordinates are
// unwrapped chart coordinates throughout.
class HamPath {
 public:
  HamPath(Manifold m, FlowOptions opts) : m_(std::move(m)), opts_(opts) {}
  virtual ~HamPath() = default;

  const Manifold& manifold() const { return m_; }
  const FlowOptions& options() const { return opts_; }
  NormalizationTag tag() const { return tag_; }
  void set_tag(NormalizationTag t) { tag_ = t; }

  virtual double value(Point p, double t) const = 0;
  virtual Vec2 gradient(Point p, double t) const = 0;
  virtual bool has_hessian() const { return false; }
  virtual Mat2 hessian(Point p, double t) const;
  Vec2 vector_field(Point p, double t) const {
    const Vec2 g = gradient(p, t);
    return {g.b, -g.a};
  }
  // X_H and its Jacobian DX; requires has_hessian().
  virtual void field_jacobian(Point p, double t, Vec2& X, Mat2& A) const;

  // phi^t(x) and (phi^t)^{-1}(x).
  virtual FlowResult forward(Point x, double t, bool jac) const = 0;
  virtual FlowResult inverse(Point x, double t, bool jac) const = 0;
  // phi^{t1} o (phi^{t0})^{-1}.
  virtual FlowResult flow(Point x, double t0, double t1, bool jac) const;
  // Points phi^{t_i} o (phi^{t0})^{-1}(x) at t_i = t0 + i (t1 - t0) / n, i = 0..n.
  virtual std::vector<Point> samples(Point x, double t0, double t1, int n) const;

  virtual bool is_zero() const { return false; }
  virtual std::string describe() const = 0;

 protected:
  // Central-difference Jacobian of x -> f(x) with step 1e-6.
  template <class F>
  static Mat2 fd_jacobian(Point x, F&& f) {
    const double d = 1e-6;
    const Point a1 = f(Point{x.q1 + d, x.q2}), b1 = f(Point{x.q1 - d, x.q2});
    const Point a2 = f(Point{x.q1, x.q2 + d}), b2 = f(Point{x.q1, x.q2 - d});
    return {(a1.q1 - b1.q1) / (2 * d), (a2.q1 - b2.q1) / (2 * d), (a1.q2 - b1.q2) / (2 * d),
            (a2.q2 - b2.q2) / (2 * d)};
  }

 private:
  Manifold m_;
  FlowOptions opts_;
  NormalizationTag tag_ = NormalizationTag::Unchecked;
};

using PathPtr = std::shared_ptr<const HamPath>;

// Integrates X_h from t0 to t1 with the path's scheme.  The Jacobian comes from the
// variational equation when Hessians exist, otherwise from central differences.
// Throws NonConvergence when an implicit stage does not converge.
FlowResult integrate(const HamPath& h, Point x, double t0, double t1, bool jac);
std::vector<Point> integrate_samples(const HamPath& h, Point x, double t0, double t1, int n);

// Leaf: a parsed Hamiltonian.
class ExprPath final : public HamPath {
 public:
  ExprPath(Hamiltonian h, FlowOptions opts);

  const Hamiltonian& hamiltonian() const { return h_; }
  double value(Point p, double t) const override { return h_.eval(p, t); }
  Vec2 gradient(Point p, double t) const override { return h_.grad(p, t); }
  bool has_hessian() const override { return true; }
  Mat2 hessian(Point p, double t) const override { return h_.hessian(p, t); }
  void field_jacobian(Point p, double t, Vec2& X, Mat2& A) const override;
  FlowResult forward(Point x, double t, bool jac) const override;
  FlowResult inverse(Point x, double t, bool jac) const override;
  FlowResult flow(Point x, double t0, double t1, bool jac) const override;
  std::vector<Point> samples(Point x, double t0, double t1, int n) const override;
  bool is_zero() const override { return h_.is_zero(); }
  std::string describe() const override { return h_.source(); }

 private:
  Hamiltonian h_;
};

PathPtr make_path(const Hamiltonian& h, const FlowOptions& opts = {});
PathPtr parse_path(std::string_view src, const Manifold& m, const FlowOptions& opts = {});

}  // namespace symplab
