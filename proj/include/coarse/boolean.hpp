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

#ifndef COARSE_BOOLEAN_HPP_
#define COARSE_BOOLEAN_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "coarse/asymptotics.hpp"
#include "coarse/projection.hpp"
#include "coarse/verdict.hpp"

namespace coarse {

// Meet of the generators in S with the complements of the others. The
// string form lists one bit per generator, generator 1 first.
struct AtomPattern {
  std::vector<bool> bits;

  std::string str() const;
  static AtomPattern parse(const std::string& s);
  bool operator==(const AtomPattern&) const = default;
};

// Certified with label "zero" or "nonzero", else Inconclusive. A zero atom
// carries the equivalence witness of M and M ^ J; a nonzero atom carries an
// escape witness (points of M whose M ^ J level grows with the radius).
Verdict atom_nonzero(const AtomPattern& s, const std::vector<LevelFunction>& gens,
                     const Window& w, const EquivalenceOptions& opts = {});

// The two level functions compared by atom_nonzero: M and M ^ J.
std::pair<LevelFunction, LevelFunction> atom_pair(
    const AtomPattern& s, const std::vector<LevelFunction>& gens);

struct AtomResult {
  AtomPattern pattern;
  Verdict verdict;
  bool nonzero() const { return verdict.certified() && verdict.label == "nonzero"; }
  bool zero() const { return verdict.certified() && verdict.label == "zero"; }
};

struct TwoValuedHom {
  std::vector<int> assignment;
  std::string str() const;
};

// All 2^k patterns in binary order, k <= 16.
std::vector<AtomResult> enumerate_atoms(const std::vector<LevelFunction>& gens,
                                        const Window& w,
                                        const EquivalenceOptions& opts = {});
std::vector<TwoValuedHom> homs(const std::vector<AtomResult>& atoms);

// A word in the generators: e<k> (1-based), 1, 0, meets (^) and joins (v).
struct LatticeTerm {
  char op = 'g';  // 'g', '1', '0', '^', 'v'
  int gen = 0;
  std::vector<LatticeTerm> kids;
};

// Sum modulo 2 of lattice words, written "e1+e2+(e1^e2)+(e1ve2)".
struct FormalSum {
  std::vector<LatticeTerm> terms;
  static FormalSum parse(const std::string& text);
  std::string str() const;
};

std::string to_string(const LatticeTerm& t);
LevelFunction term_levels(const LatticeTerm& t, const std::vector<LevelFunction>& gens);

int eval_hom(const TwoValuedHom& phi, const LatticeTerm& t);
// Sum modulo 2 of the term values; foreign generators throw DomainError.
int extend_hom(const TwoValuedHom& phi, const FormalSum& s);

struct HomReport {
  bool pass = true;
  std::vector<std::string> violations;
  std::vector<std::string> inconclusive;
};

// Unitality and the meet/join laws on the given generator pairs, with the
// value on a lattice element x read off the atom of phi meeting x.
HomReport check_hom(const TwoValuedHom& phi, const std::vector<LevelFunction>& gens,
                    const std::vector<std::pair<int, int>>& pairs, const Window& w,
                    const EquivalenceOptions& opts = {});

// Decreasing chain F_1 > F_2 > ... of infinite sets.
struct FilterBase {
  std::string name;
  std::vector<PointSet> sets;
};

// F_k = A minus its first k-1 points by distance from the basepoint.
FilterBase tail_filter_base(const MetricSpace& space, const PointSet& a, int count);

struct FilterReport {
  bool pass = true;
  std::string first_violation;
};
FilterReport check_filter_base(const MetricSpace& space, const FilterBase& f,
                               const Window& w);

struct TauResult {
  int value = -1;  // 1, 0, or -1 for undetermined
  std::string evidence;
  // |F_k ^ A_n ^ W| at the largest radius, rows k, columns n.
  std::vector<std::vector<std::int64_t>> matrix;
};

struct TauOptions {
  std::int64_t n_max = 8;
  std::vector<Rational> factors = default_sweep_factors();
};

TauResult tau(const FilterBase& f, const LevelFunction& e, const Window& w,
              const TauOptions& opts = {});

// The base's own decision on a subset: 1 if some F_k lies in A, 0 if some
// F_k meets A in a stable finite set, -1 otherwise.
int filter_decides(const MetricSpace& space, const FilterBase& f, const PointSet& a,
                   const Window& w, const std::vector<Rational>& factors);

struct Separation {
  std::vector<PointId> points;
  std::vector<std::pair<std::int64_t, Rational>> margins;  // n, d(x_n, A_n ^ W)
  PointSet set;
};

// Greedy x_n with d(x_n, A_n) > n, farther out for each n.
Separation separating_set(const LevelFunction& e, const Window& w);

// N_m(B) ^ A_m ^ W is the same finite set at every sweep radius, m <= m_max.
bool check_separating(const Separation& b, const LevelFunction& e, const Window& w,
                      std::int64_t m_max, const std::vector<Rational>& factors);

}  // namespace coarse

#endif  // COARSE_BOOLEAN_HPP_
