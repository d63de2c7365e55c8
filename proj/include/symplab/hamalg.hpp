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

#include <functional>
#include <string>

#include "symplab/hampath.hpp"

namespace symplab {

// F#G(x, t) = F(x, t) + G((phi_F^t)^{-1} x, t); generates phi_F^t o phi_G^t.
class SharpPath final : public HamPath {
 public:
  SharpPath(PathPtr f, PathPtr g);
  double value(Point p, double t) const override;
  Vec2 gradient(Point p, double t) const override;
  FlowResult forward(Point x, double t, bool jac) const override;
  FlowResult inverse(Point x, double t, bool jac) const override;
  bool is_zero() const override { return f_->is_zero() && g_->is_zero(); }
  std::string describe() const override;

 private:
  PathPtr f_, g_;
};

// bar(G)(x, t) = -G(phi_G^t x, t); generates (phi_G^t)^{-1}.
class BarPath final : public HamPath {
 public:
  explicit BarPath(PathPtr g);
  double value(Point p, double t) const override;
  Vec2 gradient(Point p, double t) const override;
  FlowResult forward(Point x, double t, bool jac) const override { return g_->inverse(x, t, jac); }
  FlowResult inverse(Point x, double t, bool jac) const override { return g_->forward(x, t, jac); }
  bool is_zero() const override { return g_->is_zero(); }
  std::string describe() const override { return "bar(" + g_->describe() + ")"; }

 private:
  PathPtr g_;
};

struct ReparamProfile {
  enum class Kind { Identity, Sine, Reversed };
  Kind kind = Kind::Identity;
  double amplitude = 0.0;

  // Sine: lambda(t) = t + a sin(2 pi t) / (2 pi), a bijection of [0, 1] for |a| < 1.
  static ReparamProfile sine(double a) { return {Kind::Sine, a}; }
  // Reversed: lambda(t) = A (1 - cos(2 pi t)) / 2, out and back, so the path is a loop.
  static ReparamProfile reversed(double a) { return {Kind::Reversed, a}; }

  double lambda(double t) const;
  double rate(double t) const;
  std::string describe() const;
};

// lambda'(t) F(x, lambda(t)); generates phi_F^{lambda(t)}.
class ReparamPath final : public HamPath {
 public:
  ReparamPath(PathPtr f, ReparamProfile profile);
  double value(Point p, double t) const override;
  Vec2 gradient(Point p, double t) const override;
  bool has_hessian() const override { return f_->has_hessian(); }
  Mat2 hessian(Point p, double t) const override;
  void field_jacobian(Point p, double t, Vec2& X, Mat2& A) const override;
  FlowResult forward(Point x, double t, bool jac) const override;
  FlowResult inverse(Point x, double t, bool jac) const override;
  FlowResult flow(Point x, double t0, double t1, bool jac) const override;
  std::vector<Point> samples(Point x, double t0, double t1, int n) const override;
  bool is_zero() const override { return f_->is_zero(); }
  std::string describe() const override;

 private:
  PathPtr f_;
  ReparamProfile profile_;
  bool direct_ = false;
};

// F(x, t) + c(t); the isotopy is that of F.
class ShiftPath final : public HamPath {
 public:
  ShiftPath(PathPtr f, std::function<double(double)> c, std::string label);
  double value(Point p, double t) const override { return f_->value(p, t) + c_(t); }
  Vec2 gradient(Point p, double t) const override { return f_->gradient(p, t); }
  bool has_hessian() const override { return f_->has_hessian(); }
  Mat2 hessian(Point p, double t) const override { return f_->hessian(p, t); }
  void field_jacobian(Point p, double t, Vec2& X, Mat2& A) const override { f_->field_jacobian(p, t, X, A); }
  FlowResult forward(Point x, double t, bool jac) const override { return f_->forward(x, t, jac); }
  FlowResult inverse(Point x, double t, bool jac) const override { return f_->inverse(x, t, jac); }
  FlowResult flow(Point x, double t0, double t1, bool jac) const override { return f_->flow(x, t0, t1, jac); }
  std::vector<Point> samples(Point x, double t0, double t1, int n) const override {
    return f_->samples(x, t0, t1, n);
  }
  std::string describe() const override { return "(" + f_->describe() + ")" + label_; }
  double shift(double t) const { return c_(t); }

 private:
  PathPtr f_;
  std::function<double(double)> c_;
  std::string label_;
};

PathPtr sharp(PathPtr f, PathPtr g);
PathPtr bar(PathPtr g);
PathPtr reparam(PathPtr f, ReparamProfile profile);
PathPtr shift(PathPtr f, double c);

// Poisson bracket {F, G} = dF(X_G).
double poisson(const Hamiltonian& f, const Hamiltonian& g, Point p, double t);
double poisson(const HamPath& f, const HamPath& g, Point p, double t);

// F - c(t) with c(t) the mean of F_t on 64 time nodes, interpolated by a periodic cubic
// spline.  Throws OpenManifold on the plane and NotNormalized if the result fails the
// 1e-8 * area check on the time nodes.
PathPtr normalize_mean_zero(PathPtr f, const QuadratureRule& q, int time_nodes = 64);

// max over t_k = k / time_samples of |integral of F_t|.
double max_abs_mean(const HamPath& f, const QuadratureRule& q, int time_samples = 16);

// True iff |F| < 1e-12 on the two outermost window node layers at every probed time:
// the flow grid for parsed Hamiltonians, 64 uniform times for composites.
bool check_compact_support(const HamPath& f);

// MeanZero (closed, mean below 1e-8 * area), CompactSupport (plane) or Unchecked.
NormalizationTag certify_normalization(const HamPath& f);

}  // namespace symplab
