// Copyright 2026 The coarse-double Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coarse/expr.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace coarse {

struct Expression::Node {
  enum class Kind { kNumber, kVariable, kUnary, kBinary, kCall };
  Kind kind;
  Rational value;
  std::string name;
  char op = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression '" + std::string(text_) +
                                "': " + msg + " at offset " +
                                std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::kBinary;
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = binary('+', lhs, term());
      } else if (eat('-')) {
        lhs = binary('-', lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = binary('*', lhs, unary());
      } else if (eat('/')) {
        lhs = binary('/', lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::kUnary;
      n->op = '-';
      n->args = {unary()};
      return n;
    }
    NodePtr base = atom();
    if (eat('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto n = std::make_shared<Expression::Node>();
      n->name = name;
      if (eat('(')) {
        n->kind = Kind::kCall;
        if (!eat(')')) {
          do {
            n->args.push_back(expr());
          } while (eat(','));
          if (!eat(')')) fail("expected ')' after arguments of " + name);
        }
        check_arity(*n);
      } else {
        n->kind = Kind::kVariable;
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Rational v = Rational::parse(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      Rational scale = 1;
      std::size_t fstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        scale *= 10;
      }
      if (pos_ == fstart) fail("digits expected after '.'");
      v += Rational::parse(text_.substr(fstart, pos_ - fstart)) / scale;
    }
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::kNumber;
    n->value = v;
    return n;
  }

  void check_arity(const Expression::Node& n) const {
    std::size_t k = n.args.size();
    const std::string& f = n.name;
    bool ok = false;
    if (f == "min" || f == "max") ok = k >= 1;
    else if (f == "abs" || f == "floor" || f == "ceil" || f == "v2") ok = k == 1;
    else if (f == "root" || f == "mod") ok = k == 2;
    else fail("unknown function '" + f + "'");
    if (!ok) fail("wrong number of arguments to " + f);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational eval_node(const Expression::Node& n, const ExprEnv& env) {
  switch (n.kind) {
    case Kind::kNumber:
      return n.value;
    case Kind::kVariable: {
      auto it = env.find(n.name);
      if (it == env.end()) {
        throw std::invalid_argument("unbound variable '" + n.name + "'");
      }
      return it->second;
    }
    case Kind::kUnary:
      return -eval_node(*n.args[0], env);
    case Kind::kBinary: {
      Rational a = eval_node(*n.args[0], env);
      Rational b = eval_node(*n.args[1], env);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': {
          if (!b.fits_int64()) throw std::domain_error("non-integer exponent");
          std::int64_t e = b.to_int64();
          Rational base = e < 0 ? Rational(1) / a : a;
          Rational r = 1;
          for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
          return r;
        }
      }
      break;
    }
    case Kind::kCall: {
      std::vector<Rational> v;
      v.reserve(n.args.size());
      for (const auto& a : n.args) v.push_back(eval_node(*a, env));
      const std::string& f = n.name;
      if (f == "min" || f == "max") {
        Rational r = v[0];
        for (const auto& x : v) r = f == "min" ? min(r, x) : max(r, x);
        return r;
      }
      if (f == "abs") return v[0].abs();
      if (f == "floor") return v[0].floor();
      if (f == "ceil") return v[0].ceil();
      if (f == "v2") return Rational(two_adic_valuation(v[0]));
      if (f == "root") {
        if (!v[1].fits_int64() || v[1].to_int64() < 1) {
          throw std::domain_error("root degree must be a positive integer");
        }
        return ceil_root(v[0], static_cast<unsigned>(v[1].to_int64()));
      }
      if (f == "mod") {
        if (v[1].sign() <= 0) throw std::domain_error("mod by nonpositive");
        Rational q = (v[0] / v[1]).floor();
        return v[0] - q * v[1];
      }
      break;
    }
  }
  throw std::logic_error("malformed expression node");
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.source_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

Rational Expression::eval(const ExprEnv& env) const {
  if (!root_) throw std::logic_error("evaluating an empty expression");
  return eval_node(*root_, env);
}

}  // namespace coarse
