// Copyright 2026 The lapdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lapdp/core.hpp"

namespace lapdp {

struct PointGuarantee {
  double eps = 0.0;    // >= 0
  double delta = 0.0;  // in [0, 1]

  void validate() const;
};

// Memoized expansion of the per-step +/- eps_l shifts of the point-guarantee
// recursion: a list of (shift, weight) atoms plus the accumulated mass that
// escaped to +inf. Exact up to atom coalescing at the merge tolerance.
class SignedAtomBook {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t(1) << 20;

  explicit SignedAtomBook(std::span<const PointGuarantee> guarantees,
                          std::size_t atom_cap = kDefaultCap);

  // inf_mass + sum_j w_j * max(0, 1 - e^{t - shift_j}).
  double evaluate(double t) const;

  const std::vector<std::pair<double, double>>& atoms() const {
    return atoms_;
  }
  double inf_mass() const { return inf_mass_; }

 private:
  std::vector<std::pair<double, double>> atoms_;  // (shift, weight), sorted
  double inf_mass_ = 0.0;
};

// The PLD whose generalized density is the second-minus-first derivative of
// the profile: Dirac atoms at the knots (jumps of the first derivative,
// fourth-order one-sided stencils), a finite-difference sampled continuous
// part between and beyond the knots, and the profile's limit at +inf. The
// extraction validates itself by reproducing the profile through
// profile_from_pld.
Pld pld_kernel_from_profile(const PrivacyProfile& prof,
                            double grid_step = 1e-3);

// eps -> sum_j w_j prof1(eps - z_j) + grid quadrature + kernel mass at +inf.
// The returned curve evaluates the convolution on demand.
PrivacyProfile compose_profile_with_kernel(const PrivacyProfile& prof1,
                                           const Pld& kernel2);

// Point-guarantee recursion evaluated through the atom book.
double compose_point_guarantees(std::span<const PointGuarantee> guarantees,
                                double t,
                                std::size_t atom_cap = SignedAtomBook::kDefaultCap);

// Closed form for k identical guarantees: binomial expansion in log space.
double compose_homogeneous(double eps0, double delta0, std::int64_t k,
                           double t);

// Smallest eps with delta(eps) <= delta_budget, bisected to 1e-9 interval
// width. The evaluator must be non-increasing and the bracket must straddle
// the crossing; delta(bracket.second) > budget raises NoCrossingError.
double eps_for_delta(const std::function<double(double)>& evaluator,
                     double delta_budget, std::pair<double, double> bracket);

}  // namespace lapdp
