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
#include "symplab/hamdsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "symplab/errors.hpp"

namespace symplab {

std::string_view to_string(NormalizationTag tag) {
  switch (tag) {
    case NormalizationTag::Unchecked: return "Unchecked";
    case NormalizationTag::MeanZero: return "MeanZero";
    case NormalizationTag::CompactSupport: return "CompactSupport";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expression construction

namespace {

ExprPtr node(Op op, std::size_t offset, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->offset = offset;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_const(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

}  // namespace

Expr Expr::constant(double v, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Const;
  n->value = v;
  n->offset = offset;
  return Expr(n);
}

Expr Expr::variable(int slot, std::size_t offset) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->var = slot;
  n->offset = offset;
  return Expr(n);
}

namespace {

Expr add_at(const Expr& a, const Expr& b, std::size_t off) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value(), off);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return Expr(node(Op::Add, off, a.node(), b.node()));
}

Expr neg_at(const Expr& a, std::size_t off) {
  if (a.is_constant()) return Expr::constant(-a.constant_value(), off);
  if (a.node()->op == Op::Neg) return Expr(a.node()->a);
  return Expr(node(Op::Neg, off, a.node()));
}

Expr sub_at(const Expr& a, const Expr& b, std::size_t off) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value(), off);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg_at(b, off);
  return Expr(node(Op::Sub, off, a.node(), b.node()));
}

Expr mul_at(const Expr& a, const Expr& b, std::size_t off) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value(), off);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0, off);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg_at(b, off);
  if (is_const(b, -1.0)) return neg_at(a, off);
  // c1 * (c2 * x) -> (c1 c2) * x keeps linear time arguments foldable.
  if (a.is_constant() && b.node()->op == Op::Mul && b.node()->a->op == Op::Const)
    return mul_at(Expr::constant(a.constant_value() * b.node()->a->value, off), Expr(b.node()->b), off);
  if (b.is_constant() && !a.is_constant()) return mul_at(b, a, off);
  return Expr(node(Op::Mul, off, a.node(), b.node()));
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) { return add_at(a, b, a.node()->offset); }
Expr operator-(const Expr& a, const Expr& b) { return sub_at(a, b, a.node()->offset); }
Expr operator*(const Expr& a, const Expr& b) { return mul_at(a, b, a.node()->offset); }
Expr operator-(const Expr& a) { return neg_at(a, a.node()->offset); }

Expr make_pow(const Expr& a, int n, std::size_t offset) {
  if (n == 0) return Expr::constant(1.0, offset);
  if (n == 1) return a;
  if (a.is_constant()) return Expr::constant(std::pow(a.constant_value(), n), offset);
  auto p = node(Op::Pow, offset, a.node());
  std::const_pointer_cast<ExprNode>(p)->exponent = n;
  return Expr(p);
}

Expr make_sin(const Expr& a, std::size_t offset) {
  if (a.is_constant()) return Expr::constant(std::sin(a.constant_value()), offset);
  return Expr(node(Op::Sin, offset, a.node()));
}

Expr make_cos(const Expr& a, std::size_t offset) {
  if (a.is_constant()) return Expr::constant(std::cos(a.constant_value()), offset);
  return Expr(node(Op::Cos, offset, a.node()));
}

Expr make_exp(const Expr& a, std::size_t offset) {
  if (a.is_constant()) return Expr::constant(std::exp(a.constant_value()), offset);
  return Expr(node(Op::Exp, offset, a.node()));
}

namespace {

double smoothstep_derivative(double v, int k) {
  switch (k) {
    case 0: return v * v * v * (10.0 - 15.0 * v + 6.0 * v * v);
    case 1: return 30.0 * v * v * (1.0 - v) * (1.0 - v);
    case 2: return 60.0 * v - 180.0 * v * v + 120.0 * v * v * v;
    case 3: return 60.0 - 360.0 * v + 360.0 * v * v;
    case 4: return -360.0 + 720.0 * v;
    case 5: return 720.0;
    default: return 0.0;
  }
}

}  // namespace

double bump_value(double u, double lo, double hi, int order) {
  const double w = hi - lo;
  const double v = (u - lo) / w;
  if (order == 0) {
    if (v <= 0.0) return 1.0;
    if (v >= 1.0) return 0.0;
    return 1.0 - smoothstep_derivative(v, 0);
  }
  if (v <= 0.0 || v >= 1.0) return 0.0;
  return -smoothstep_derivative(v, order) / std::pow(w, order);
}

Expr make_bump(const Expr& u, double lo, double hi, int order, std::size_t offset) {
  if (u.is_constant()) return Expr::constant(bump_value(u.constant_value(), lo, hi, order), offset);
  if (order > 5) return Expr::constant(0.0, offset);
  auto p = node(Op::Bump, offset, u.node());
  auto* m = std::const_pointer_cast<ExprNode>(p).get();
  m->lo = lo;
  m->hi = hi;
  m->order = order;
  return Expr(p);
}

bool Expr::depends_on(int slot) const {
  const ExprNode& n = *node_;
  switch (n.op) {
    case Op::Const: return false;
    case Op::Var: return n.var == slot;
    default:
      return (n.a && Expr(n.a).depends_on(slot)) || (n.b && Expr(n.b).depends_on(slot));
  }
}

Expr Expr::derivative(int slot) const {
  const ExprNode& n = *node_;
  const std::size_t off = n.offset;
  switch (n.op) {
    case Op::Const: return constant(0.0, off);
    case Op::Var: return constant(n.var == slot ? 1.0 : 0.0, off);
    default: break;
  }
  if (!depends_on(slot)) return constant(0.0, off);
  const Expr a(n.a);
  const Expr da = a.derivative(slot);
  switch (n.op) {
    case Op::Add: return add_at(da, Expr(n.b).derivative(slot), off);
    case Op::Sub: return sub_at(da, Expr(n.b).derivative(slot), off);
    case Op::Mul: {
      const Expr b(n.b);
      return add_at(mul_at(da, b, off), mul_at(a, b.derivative(slot), off), off);
    }
    case Op::Neg: return neg_at(da, off);
    case Op::Pow:
      return mul_at(mul_at(constant(n.exponent, off), make_pow(a, n.exponent - 1, off), off), da, off);
    case Op::Sin: return mul_at(make_cos(a, off), da, off);
    case Op::Cos: return neg_at(mul_at(make_sin(a, off), da, off), off);
    case Op::Exp: return mul_at(make_exp(a, off), da, off);
    case Op::Bump: return mul_at(make_bump(a, n.lo, n.hi, n.order + 1, off), da, off);
    default: break;
  }
  return constant(0.0, off);
}

std::string Expr::to_string(const std::vector<std::string>& names) const {
  const ExprNode& n = *node_;
  auto sub = [&](const ExprPtr& p) { return Expr(p).to_string(names); };
  switch (n.op) {
    case Op::Const: return format_double(n.value);
    case Op::Var:
      return n.var >= 0 && static_cast<std::size_t>(n.var) < names.size() ? names[n.var]
                                                                        : "v" + std::to_string(n.var);
    case Op::Add: return "(" + sub(n.a) + " + " + sub(n.b) + ")";
    case Op::Sub: return "(" + sub(n.a) + " - " + sub(n.b) + ")";
    case Op::Mul: return "(" + sub(n.a) + " * " + sub(n.b) + ")";
    case Op::Neg: return "(-" + sub(n.a) + ")";
    case Op::Pow: return "(" + sub(n.a) + ")^" + std::to_string(n.exponent);
    case Op::Sin: return "sin(" + sub(n.a) + ")";
    case Op::Cos: return "cos(" + sub(n.a) + ")";
    case Op::Exp: return "exp(" + sub(n.a) + ")";
    case Op::Bump:
      return "bump" + (n.order ? "_d" + std::to_string(n.order) : std::string()) + "(" + sub(n.a) +
             "; " + format_double(n.lo) + ", " + format_double(n.hi) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Compilation

Program::Program(const Expr& e) {
  int depth = 0;
  auto emit = [&](auto&& self, const ExprNode& n) -> void {
    switch (n.op) {
      case Op::Const:
        code_.push_back({Op::Const, 0, n.value, 0, 0});
        ++depth;
        break;
      case Op::Var:
        code_.push_back({Op::Var, n.var, 0, 0, 0});
        ++depth;
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
        self(self, *n.a);
        self(self, *n.b);
        code_.push_back({n.op, 0, 0, 0, 0});
        --depth;
        break;
      case Op::Pow:
        self(self, *n.a);
        code_.push_back({Op::Pow, n.exponent, 0, 0, 0});
        break;
      case Op::Bump:
        self(self, *n.a);
        code_.push_back({Op::Bump, n.order, 0, n.lo, n.hi});
        break;
      default:
        self(self, *n.a);
        code_.push_back({n.op, 0, 0, 0, 0});
        break;
    }
    depth_ = std::max(depth_, depth);
  };
  emit(emit, *e.node());
}

double Program::eval(const double* vars) const {
  double small[64];
  std::vector<double> big;
  double* st = small;
  if (depth_ > 64) {
    big.resize(depth_);
    st = big.data();
  }
  int sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const: st[sp++] = in.v; break;
      case Op::Var: st[sp++] = vars[in.iarg]; break;
      case Op::Add: --sp; st[sp - 1] += st[sp]; break;
      case Op::Sub: --sp; st[sp - 1] -= st[sp]; break;
      case Op::Mul: --sp; st[sp - 1] *= st[sp]; break;
      case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::Pow: {
        const double x = st[sp - 1];
        double r = 1.0;
        for (int k = 0; k < in.iarg; ++k) r *= x;
        st[sp - 1] = r;
        break;
      }
      case Op::Sin: st[sp - 1] = std::sin(st[sp - 1]); break;
      case Op::Cos: st[sp - 1] = std::cos(st[sp - 1]); break;
      case Op::Exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::Bump: st[sp - 1] = bump_value(st[sp - 1], in.lo, in.hi, in.iarg); break;
    }
  }
  return sp > 0 ? st[0] : 0.0;
}

Jet2 Program::eval_jet(const double* vars) const {
  Jet2 small[32];
  std::vector<Jet2> big;
  Jet2* st = small;
  if (depth_ > 32) {
    big.resize(depth_);
    st = big.data();
  }
  // Chain rule for a scalar function with derivatives f0, f1, f2 at u.
  auto apply = [](Jet2& u, double f0, double f1, double f2) {
    Jet2 r;
    r.v = f0;
    r.d1 = f1 * u.d1;
    r.d2 = f1 * u.d2;
    r.d11 = f2 * u.d1 * u.d1 + f1 * u.d11;
    r.d12 = f2 * u.d1 * u.d2 + f1 * u.d12;
    r.d22 = f2 * u.d2 * u.d2 + f1 * u.d22;
    u = r;
  };
  int sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const: st[sp++] = Jet2{in.v}; break;
      case Op::Var: {
        Jet2 j{vars[in.iarg]};
        if (in.iarg == kVarQ1) j.d1 = 1.0;
        if (in.iarg == kVarQ2) j.d2 = 1.0;
        st[sp++] = j;
        break;
      }
      case Op::Add: --sp; st[sp - 1] = st[sp - 1] + st[sp]; break;
      case Op::Sub: --sp; st[sp - 1] = st[sp - 1] + st[sp] * -1.0; break;
      case Op::Mul: {
        --sp;
        const Jet2 a = st[sp - 1], b = st[sp];
        st[sp - 1] = {a.v * b.v,
                      a.d1 * b.v + a.v * b.d1,
                      a.d2 * b.v + a.v * b.d2,
                      a.d11 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d11,
                      a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12,
                      a.d22 * b.v + 2.0 * a.d2 * b.d2 + a.v * b.d22};
        break;
      }
      case Op::Neg: st[sp - 1] = st[sp - 1] * -1.0; break;
      case Op::Pow: {
        const int n = in.iarg;
        const double x = st[sp - 1].v;
        double p2 = 1.0;  // x^(n-2)
        for (int k = 0; k < n - 2; ++k) p2 *= x;
        double f0, f1, f2;
        if (n == 0) {
          f0 = 1.0; f1 = 0.0; f2 = 0.0;
        } else if (n == 1) {
          f0 = x; f1 = 1.0; f2 = 0.0;
        } else {
          f2 = n * (n - 1) * p2;
          f1 = n * p2 * x;
          f0 = p2 * x * x;
        }
        apply(st[sp - 1], f0, f1, f2);
        break;
      }
      case Op::Sin: {
        const double u = st[sp - 1].v, s = std::sin(u), c = std::cos(u);
        apply(st[sp - 1], s, c, -s);
        break;
      }
      case Op::Cos: {
        const double u = st[sp - 1].v, s = std::sin(u), c = std::cos(u);
        apply(st[sp - 1], c, -s, -c);
        break;
      }
      case Op::Exp: {
        const double e = std::exp(st[sp - 1].v);
        apply(st[sp - 1], e, e, e);
        break;
      }
      case Op::Bump: {
        const double u = st[sp - 1].v;
        apply(st[sp - 1], bump_value(u, in.lo, in.hi, in.iarg), bump_value(u, in.lo, in.hi, in.iarg + 1),
              bump_value(u, in.lo, in.hi, in.iarg + 2));
        break;
      }
    }
  }
  return sp > 0 ? st[0] : Jet2{};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Semi, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

const std::vector<std::string> kPrimaryExpected = {"number", "identifier", "(", "-"};

class Parser {
 public:
  Parser(std::string_view src, const Manifold* m, const std::vector<std::string>& params)
      : src_(src), m_(m), params_(params) {
    advance();
  }

  Expr parse_all() {
    if (cur_.kind == Tok::End) throw_parse(cur_.offset, kPrimaryExpected, "empty expression");
    Expr e = parse_expr();
    if (cur_.kind != Tok::End)
      throw_parse(cur_.offset, {"+", "-", "*", "/", "^", "end of input"}, "unexpected token");
    return e;
  }

 private:
  std::string_view src_;
  const Manifold* m_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, 0, {}};

  [[noreturn]] void throw_parse(std::size_t off, std::vector<std::string> expected,
                                const std::string& what) {
    std::string msg = "ParseError at offset " + std::to_string(off) + ": " + what + "; expected one of [";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    msg += "]";
    throw ParseError(off, std::move(expected), msg);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, src_.size(), {}};
      return;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = {k, start, src_.substr(start, 1)};
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t p = pos_ + 1;
        if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
        if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
          pos_ = p;
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
      }
      const std::string_view text = src_.substr(start, pos_ - start);
      double v = 0.0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw_parse(start, {"number"}, "malformed number '" + std::string(text) + "'");
      cur_ = {Tok::Number, start, text, v};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    throw_parse(start, kPrimaryExpected, std::string("unexpected character '") + c + "'");
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) throw_parse(cur_.offset, {what}, std::string("expected '") + what + "'");
    advance();
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool plus = cur_.kind == Tok::Plus;
      const std::size_t off = cur_.offset;
      advance();
      Expr rhs = parse_term();
      lhs = plus ? add_at(lhs, rhs, off) : sub_at(lhs, rhs, off);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool mul = cur_.kind == Tok::Star;
      const std::size_t off = cur_.offset;
      advance();
      const std::size_t rhs_off = cur_.offset;
      Expr rhs = parse_unary();
      if (mul) {
        lhs = mul_at(lhs, rhs, off);
      } else {
        if (!rhs.is_constant() || rhs.constant_value() == 0.0)
          throw_parse(rhs_off, {"nonzero constant"},
                      "division requires a nonzero constant denominator");
        lhs = mul_at(lhs, Expr::constant(1.0 / rhs.constant_value(), rhs_off), off);
      }
    }
    return lhs;
  }

  Expr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      const std::size_t off = cur_.offset;
      advance();
      return neg_at(parse_unary(), off);
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (cur_.kind == Tok::Caret) {
      const std::size_t off = cur_.offset;
      advance();
      if (cur_.kind != Tok::Number ||
          !std::all_of(cur_.text.begin(), cur_.text.end(),
                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw_parse(cur_.offset, {"nonnegative integer literal"},
                    "exponent must be a nonnegative integer literal");
      const double n = cur_.number;
      if (n > 64) throw_parse(cur_.offset, {"nonnegative integer literal"}, "exponent too large");
      advance();
      return make_pow(base, static_cast<int>(n), off);
    }
    return base;
  }

  Expr constant_arg(const char* role) {
    const std::size_t off = cur_.offset;
    Expr e = parse_expr();
    if (!e.is_constant()) throw_parse(off, {"constant"}, std::string(role) + " must be a constant");
    return e;
  }

  Expr parse_primary() {
    const Token tok = cur_;
    switch (tok.kind) {
      case Tok::Number:
        advance();
        return Expr::constant(tok.number, tok.offset);
      case Tok::LParen: {
        advance();
        Expr e = parse_expr();
        if (cur_.kind != Tok::RParen)
          throw_parse(cur_.offset, {")", "+", "-", "*", "/", "^"}, "expected ')'");
        advance();
        return e;
      }
      case Tok::Ident:
        break;
      default:
        throw_parse(tok.offset, kPrimaryExpected, "expected an operand");
    }
    advance();
    const std::string name(tok.text);
    if (cur_.kind == Tok::LParen) {
      if (name == "sin" || name == "cos" || name == "exp") {
        advance();
        Expr arg = parse_expr();
        expect(Tok::RParen, ")");
        if (name == "sin") return make_sin(arg, tok.offset);
        if (name == "cos") return make_cos(arg, tok.offset);
        return make_exp(arg, tok.offset);
      }
      if (name == "bump" || name == "bump2") {
        advance();
        Expr arg = parse_expr();
        expect(Tok::Semi, ";");
        const std::size_t lo_off = cur_.offset;
        Expr lo = constant_arg("bump lower threshold");
        expect(Tok::Comma, ",");
        Expr hi = constant_arg("bump upper threshold");
        expect(Tok::RParen, ")");
        if (!(lo.constant_value() < hi.constant_value()))
          throw_parse(lo_off, {"lower threshold < upper threshold"}, "bump thresholds out of order");
        return make_bump(arg, lo.constant_value(), hi.constant_value(), 0, tok.offset);
      }
      throw BindError(name, tok.offset,
                      "BindError: unknown function '" + name + "' at offset " + std::to_string(tok.offset));
    }
    return resolve(name, tok.offset);
  }

  Expr resolve(const std::string& name, std::size_t off) {
    if (name == "pi") return Expr::constant(kPi, off);
    if (m_) {
      if (name == m_->coord_name(0)) return Expr::variable(kVarQ1, off);
      if (name == m_->coord_name(1)) return Expr::variable(kVarQ2, off);
      if (name == "t") return Expr::variable(kVarT, off);
    }
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return Expr::variable(kVarParam0 + static_cast<int>(i), off);
    std::string msg = "BindError: symbol '" + name + "' at offset " + std::to_string(off);
    if (m_) {
      msg += " is not defined on the " + std::string(m_->name()) + " (coordinates " +
             std::string(m_->coord_name(0)) + ", " + std::string(m_->coord_name(1)) + ")";
    } else {
      msg += " is not allowed in a constant";
    }
    throw BindError(name, off, msg);
  }
};

void check_periodicity(const Expr& e) {
  const ExprNode& n = *e.node();
  switch (n.op) {
    case Op::Const:
      return;
    case Op::Var:
      if (n.var == kVarT)
        throw PeriodicityError(n.offset, "PeriodicityError at offset " + std::to_string(n.offset) +
                                             ": t may only appear inside sin/cos(2*pi*k*t + ...)");
      return;
    case Op::Sin:
    case Op::Cos: {
      const Expr arg(n.a);
      if (!arg.depends_on(kVarT)) {
        check_periodicity(arg);
        return;
      }
      const Expr d = arg.derivative(kVarT);
      bool ok = d.is_constant();
      if (ok) {
        const double k = d.constant_value() / kTwoPi;
        ok = std::abs(k - std::round(k)) < 1e-9;
      }
      if (!ok)
        throw PeriodicityError(n.offset, "PeriodicityError at offset " + std::to_string(n.offset) +
                                             ": argument must be 2*pi*k*t plus a time-free term");
      return;
    }
    default:
      if (n.a) check_periodicity(Expr(n.a));
      if (n.b) check_periodicity(Expr(n.b));
      return;
  }
}

}  // namespace

Expr parse_expression(std::string_view src, const Manifold& m,
                      const std::vector<std::string>& params, bool periodicity) {
  for (const auto& p : params)
    if (p == "pi" || p == "t" || p == m.coord_name(0) || p == m.coord_name(1))
      fail(ErrorCode::InvalidArgument, "parameter name '" + p + "' shadows a reserved symbol");
  Parser parser(src, &m, params);
  Expr e = parser.parse_all();
  if (periodicity) check_periodicity(e);
  return e;
}

double eval_constant(std::string_view src) {
  static const std::vector<std::string> none;
  Parser parser(src, nullptr, none);
  Expr e = parser.parse_all();
  return e.constant_value();
}

// ---------------------------------------------------------------------------
// Hamiltonian

struct Hamiltonian::Compiled {
  Manifold m;
  std::string source;
  std::vector<std::string> params;
  Expr h, d1, d2, dt, d11, d12, d22;
  std::vector<Expr> dp;
  Program ph, p1, p2, pt, p11, p12, p22;
  std::vector<Program> pdp;
  bool zero = false;
  bool time_free = false;
};

Hamiltonian Hamiltonian::from_expr(const Expr& e, const Manifold& m, std::vector<std::string> params,
                                   std::string source) {
  auto c = std::make_shared<Compiled>();
  c->m = m;
  c->source = std::move(source);
  c->params = std::move(params);
  c->h = e;
  c->d1 = e.derivative(kVarQ1);
  c->d2 = e.derivative(kVarQ2);
  c->dt = e.derivative(kVarT);
  c->d11 = c->d1.derivative(kVarQ1);
  c->d12 = c->d1.derivative(kVarQ2);
  c->d22 = c->d2.derivative(kVarQ2);
  for (std::size_t k = 0; k < c->params.size(); ++k) {
    c->dp.push_back(e.derivative(kVarParam0 + static_cast<int>(k)));
    c->pdp.emplace_back(c->dp.back());
  }
  c->ph = Program(c->h);
  c->p1 = Program(c->d1);
  c->p2 = Program(c->d2);
  c->pt = Program(c->dt);
  c->p11 = Program(c->d11);
  c->p12 = Program(c->d12);
  c->p22 = Program(c->d22);
  c->zero = e.is_constant() && e.constant_value() == 0.0;
  c->time_free = !e.depends_on(kVarT);
  Hamiltonian h;
  h.params_.assign(c->params.size(), 0.0);
  h.c_ = std::move(c);
  return h;
}

Hamiltonian Hamiltonian::parse(std::string_view src, const Manifold& m, std::vector<std::string> params) {
  Expr e = parse_expression(src, m, params);
  return from_expr(e, m, std::move(params), std::string(src));
}

const Manifold& Hamiltonian::manifold() const { return c_->m; }
const std::string& Hamiltonian::source() const { return c_->source; }
const std::vector<std::string>& Hamiltonian::param_names() const { return c_->params; }
const Expr& Hamiltonian::expr() const { return c_->h; }
const Expr& Hamiltonian::d_coord1() const { return c_->d1; }
const Expr& Hamiltonian::d_coord2() const { return c_->d2; }
const Expr& Hamiltonian::d_time() const { return c_->dt; }
bool Hamiltonian::is_zero() const { return c_->zero; }
bool Hamiltonian::time_independent() const { return c_->time_free; }

Hamiltonian Hamiltonian::with_params(std::vector<double> values) const {
  if (values.size() != c_->params.size())
    fail(ErrorCode::InvalidArgument, "with_params: expected " + std::to_string(c_->params.size()) + " values");
  Hamiltonian h = *this;
  h.params_ = std::move(values);
  return h;
}

// Evaluates f(vars) at a point; at the sphere poles the chart angle is degenerate and
// the value is the average over 8 probe angles.
template <class F>
auto Hamiltonian::at_point(Point p, double t, F&& f) const {
  double vars[kVarParam0 + 8];
  std::vector<double> big;
  double* v = vars;
  const std::size_t nv = kVarParam0 + params_.size();
  if (params_.size() > 8) {
    big.resize(nv);
    v = big.data();
  }
  v[kVarQ1] = p.q1;
  v[kVarQ2] = p.q2;
  v[kVarT] = t - std::floor(t);
  for (std::size_t k = 0; k < params_.size(); ++k) v[kVarParam0 + k] = params_[k];
  if (c_->m.kind() == ManifoldKind::Sphere2 && std::abs(p.q2) >= 1.0) {
    v[kVarQ1] = 0.0;
    auto acc = f(v);
    for (int k = 1; k < 8; ++k) {
      v[kVarQ1] = kTwoPi * k / 8.0;
      acc = acc + f(v);
    }
    return acc * (1.0 / 8.0);
  }
  return f(v);
}

double Hamiltonian::eval(Point p, double t) const {
  return at_point(p, t, [&](const double* v) { return c_->ph.eval(v); });
}

Vec2 Hamiltonian::grad(Point p, double t) const {
  return at_point(p, t, [&](const double* v) { return Vec2{c_->p1.eval(v), c_->p2.eval(v)}; });
}

Mat2 Hamiltonian::hessian(Point p, double t) const {
  return at_point(p, t, [&](const double* v) {
    const double h12 = c_->p12.eval(v);
    return Mat2{c_->p11.eval(v), h12, h12, c_->p22.eval(v)};
  });
}

Jet2 Hamiltonian::jet(Point p, double t) const {
  return at_point(p, t, [&](const double* v) { return c_->ph.eval_jet(v); });
}

double Hamiltonian::d_t(Point p, double t) const {
  return at_point(p, t, [&](const double* v) { return c_->pt.eval(v); });
}

double Hamiltonian::d_param(std::size_t k, Point p, double t) const {
  if (k >= c_->pdp.size()) fail(ErrorCode::InvalidArgument, "d_param: no such parameter");
  return at_point(p, t, [&](const double* v) { return c_->pdp[k].eval(v); });
}

double eval(const Hamiltonian& h, Point p, double t) { return h.eval(p, t); }

Vec2 ham_vector_field(const Hamiltonian& h, Point p, double t) {
  const Vec2 g = h.grad(p, t);
  return {g.b, -g.a};
}

}  // namespace symplab
