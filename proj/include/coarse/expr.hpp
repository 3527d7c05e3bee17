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

#ifndef COARSE_EXPR_HPP_
#define COARSE_EXPR_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "coarse/rational.hpp"

namespace coarse {

// Variable bindings for Expression::eval.
using ExprEnv = std::map<std::string, Rational, std::less<>>;

// A small exact arithmetic language used wherever a function is supplied as
// text (delta functions, level tails, weights, closed-form kernels).
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          integer exponents only
//   atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: min, max, abs, floor, ceil, root(v, k) = ceil(v^(1/k)),
// v2(n) = 2-adic valuation, mod(a, m).
class Expression {
 public:
  struct Node;

  Expression() = default;
  static Expression parse(std::string_view text);

  Rational eval(const ExprEnv& env) const;
  const std::string& source() const { return source_; }
  bool empty() const { return root_ == nullptr; }

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace coarse

#endif  // COARSE_EXPR_HPP_
