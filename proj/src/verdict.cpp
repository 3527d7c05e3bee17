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

#include "coarse/verdict.hpp"

#include <stdexcept>

namespace coarse {

std::string to_string(Status s) {
  switch (s) {
    case Status::kCertifiedOnWindow: return "CertifiedOnWindow";
    case Status::kFalsified: return "Falsified";
    case Status::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Status status_from_string(const std::string& s) {
  if (s == "CertifiedOnWindow") return Status::kCertifiedOnWindow;
  if (s == "Falsified") return Status::kFalsified;
  if (s == "Inconclusive") return Status::kInconclusive;
  throw std::invalid_argument("unknown verdict status '" + s + "'");
}

Witness affine_witness(std::int64_t alpha, std::int64_t beta) {
  Witness w;
  w.kind = "affine";
  w.params["alpha"] = Rational(alpha);
  w.params["beta"] = Rational(beta);
  return w;
}

}  // namespace coarse
