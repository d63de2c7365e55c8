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
#include "symplab/hampath.hpp"

#include "symplab/errors.hpp"

namespace symplab {

Mat2 HamPath::hessian(Point, double) const {
  fail(ErrorCode::InvalidArgument, "hessian not available for " + describe());
}

FlowResult HamPath::flow(Point x, double t0, double t1, bool jac) const {
  if (t0 == 0.0) return forward(x, t1, jac);
  const FlowResult a = inverse(x, t0, jac);
  FlowResult b = forward(a.p, t1, jac);
  if (jac) b.jac = b.jac * a.jac;
  return b;
}

std::vector<Point> HamPath::samples(Point x, double t0, double t1, int n) const {
  std::vector<Point> out(static_cast<std::size_t>(n) + 1);
  out[0] = x;
  for (int i = 0; i < n; ++i) {
    const double a = t0 + (t1 - t0) * i / n;
    const double b = t0 + (t1 - t0) * (i + 1) / n;
    out[i + 1] = flow(out[i], a, b, false).p;
  }
  return out;
}

void HamPath::field_jacobian(Point p, double t, Vec2& X, Mat2& A) const {
  const Vec2 g = gradient(p, t);
  const Mat2 H = hessian(p, t);
  X = {g.b, -g.a};
  A = {H.m10, H.m11, -H.m00, -H.m01};
}

void ExprPath::field_jacobian(Point p, double t, Vec2& X, Mat2& A) const {
  const Jet2 j = h_.jet(p, t);
  X = {j.d2, -j.d1};
  A = {j.d12, j.d22, -j.d11, -j.d12};
}

ExprPath::ExprPath(Hamiltonian h, FlowOptions opts) : HamPath(h.manifold(), opts), h_(std::move(h)) {
  set_tag(h_.tag);
}

FlowResult ExprPath::forward(Point x, double t, bool jac) const { return integrate(*this, x, 0.0, t, jac); }
FlowResult ExprPath::inverse(Point x, double t, bool jac) const { return integrate(*this, x, t, 0.0, jac); }
FlowResult ExprPath::flow(Point x, double t0, double t1, bool jac) const {
  return integrate(*this, x, t0, t1, jac);
}
std::vector<Point> ExprPath::samples(Point x, double t0, double t1, int n) const {
  return integrate_samples(*this, x, t0, t1, n);
}

PathPtr make_path(const Hamiltonian& h, const FlowOptions& opts) {
  return std::make_shared<ExprPath>(h, opts);
}

PathPtr parse_path(std::string_view src, const Manifold& m, const FlowOptions& opts) {
  return make_path(Hamiltonian::parse(src, m), opts);
}

}  // namespace symplab
