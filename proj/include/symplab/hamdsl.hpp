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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "symplab/geom.hpp"

namespace symplab {

enum class NormalizationTag { Unchecked, MeanZero, CompactSupport };
std::string_view to_string(NormalizationTag tag);

// Variable slots: 0 and 1 are the chart coordinates, 2 is time, 3.. are named parameters.
inline constexpr int kVarQ1 = 0;
inline constexpr int kVarQ2 = 1;
inline constexpr int kVarT = 2;
inline constexpr int kVarParam0 = 3;

enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Neg, Pow, Sin, Cos, Exp, Bump };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;      // Const
  int var = -1;            // Var
  int exponent = 0;        // Pow
  double lo = 0.0, hi = 1.0;  // Bump thresholds
  int order = 0;           // Bump derivative order
  ExprPtr a, b;
  std::size_t offset = 0;  // byte offset in the source, for diagnostics
};

// Immutable expression with simplifying constructors.
class Expr {
 public:
  Expr() : node_(constant(0.0).node_) {}
  explicit Expr(ExprPtr n) : node_(std::move(n)) {}

  static Expr constant(double v, std::size_t offset = 0);
  static Expr variable(int slot, std::size_t offset = 0);

  const ExprPtr& node() const { return node_; }
  bool is_constant() const { return node_->op == Op::Const; }
  double constant_value() const { return node_->value; }
  bool depends_on(int slot) const;
  Expr derivative(int slot) const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  ExprPtr node_;
};

Expr make_pow(const Expr& a, int n, std::size_t offset = 0);
Expr make_sin(const Expr& a, std::size_t offset = 0);
Expr make_cos(const Expr& a, std::size_t offset = 0);
Expr make_exp(const Expr& a, std::size_t offset = 0);
// 1 for u <= lo, 0 for u >= hi, quintic smoothstep in between; `order` > 0 gives the
// order-th derivative with respect to u.
Expr make_bump(const Expr& u, double lo, double hi, int order = 0, std::size_t offset = 0);
double bump_value(double u, double lo, double hi, int order);

// Postfix program compiled from an Expr.
// Value, gradient and Hessian in (q1, q2) from one pass.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0, d2 = 0.0;
  double d11 = 0.0, d12 = 0.0, d22 = 0.0;

  Jet2 operator+(const Jet2& o) const { return {v + o.v, d1 + o.d1, d2 + o.d2, d11 + o.d11, d12 + o.d12, d22 + o.d22}; }
  Jet2 operator*(double s) const { return {v * s, d1 * s, d2 * s, d11 * s, d12 * s, d22 * s}; }
};

class Program {
 public:
  Program() = default;
  explicit Program(const Expr& e);
  double eval(const double* vars) const;
  Jet2 eval_jet(const double* vars) const;

 private:
  struct Instr {
    Op op;
    int iarg;
    double v, lo, hi;
  };
  std::vector<Instr> code_;
  int depth_ = 0;
};

// Parse an expression over the symbols of `m`, time `t`, the constant `pi` and the
// optional named parameters.  Throws ParseError, BindError or PeriodicityError.
Expr parse_expression(std::string_view src, const Manifold& m,
                      const std::vector<std::string>& params = {},
                      bool check_periodicity = true);

// Evaluate a symbol-free expression ("1/512", "-pi").
double eval_constant(std::string_view src);

class Hamiltonian {
 public:
  static Hamiltonian parse(std::string_view src, const Manifold& m,
                           std::vector<std::string> params = {});
  static Hamiltonian from_expr(const Expr& e, const Manifold& m,
                               std::vector<std::string> params = {}, std::string source = {});

  const Manifold& manifold() const;
  const std::string& source() const;
  const std::vector<std::string>& param_names() const;
  const std::vector<double>& param_values() const { return params_; }
  Hamiltonian with_params(std::vector<double> values) const;

  double eval(Point p, double t) const;
  Vec2 grad(Point p, double t) const;
  Mat2 hessian(Point p, double t) const;
  Jet2 jet(Point p, double t) const;
  double d_t(Point p, double t) const;
  double d_param(std::size_t k, Point p, double t) const;

  const Expr& expr() const;
  const Expr& d_coord1() const;
  const Expr& d_coord2() const;
  const Expr& d_time() const;

  bool is_zero() const;
  bool time_independent() const;

  NormalizationTag tag = NormalizationTag::Unchecked;

 private:
  struct Compiled;
  std::shared_ptr<const Compiled> c_;
  std::vector<double> params_;

  template <class F>
  auto at_point(Point p, double t, F&& f) const;
};

double eval(const Hamiltonian& h, Point p, double t);
// X_H = (dH/dq2, -dH/dq1), from dH = omega(X_H, .) with omega = dq1^dq2.
Vec2 ham_vector_field(const Hamiltonian& h, Point p, double t);

}  // namespace symplab
