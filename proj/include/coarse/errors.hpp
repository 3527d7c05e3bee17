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

#ifndef COARSE_ERRORS_HPP_
#define COARSE_ERRORS_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "coarse/rational.hpp"

namespace coarse {

// Precondition violated: point outside its space, mismatched spaces, a
// kernel that is not a projection where one is required, and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A custom space cannot list every point of the requested ball.
class IncompleteEnumeration : public std::runtime_error {
 public:
  IncompleteEnumeration(const std::string& what, Rational radius)
      : std::runtime_error(what), radius_(std::move(radius)) {}
  const Rational& radius() const { return radius_; }

 private:
  Rational radius_;
};

// The finite window is too small to certify an answer. Carries the window
// radius that was tried and, when known, the radius that would suffice.
class InconclusiveError : public std::runtime_error {
 public:
  InconclusiveError(const std::string& what, Rational window_radius,
                    std::optional<Rational> required = std::nullopt)
      : std::runtime_error(what),
        window_radius_(std::move(window_radius)),
        required_(std::move(required)) {}
  const Rational& window_radius() const { return window_radius_; }
  const std::optional<Rational>& required_radius() const { return required_; }

 private:
  Rational window_radius_;
  std::optional<Rational> required_;
};

}  // namespace coarse

#endif  // COARSE_ERRORS_HPP_
