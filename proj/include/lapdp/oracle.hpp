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
#include <random>
#include <span>
#include <vector>

#include "lapdp/core.hpp"

namespace lapdp {

// Outer product of probability vectors; the ground-truth substrate for
// composition checks. Capped at 1e6 outcomes.
DiscretePair product_pair(std::span<const DiscretePair> pairs);

// Convolution of privacy-loss distributions. Atom-only inputs convolve
// exactly (pairwise sums, merged); grid inputs need a common step and go
// through the FFT, with the mass renormalization error reported.
struct ConvolveResult {
  Pld pld;
  double renorm_error = 0.0;
};
ConvolveResult convolve_plds(const Pld& a, const Pld& b);

// k-fold self-convolution followed by profile evaluation on eps_grid.
// grid_step = 0 keeps atom kernels exact; grid_step > 0 snaps atoms onto a
// step-aligned grid first (the independent numerical-accountant route).
// error_bound is a surfaced discretization heuristic, not a certificate.
struct GridAccountantResult {
  std::vector<double> delta;
  double error_bound = 0.0;
};
GridAccountantResult grid_accountant(const Pld& kernel, std::int64_t k,
                                     std::span<const double> eps_grid,
                                     double grid_step = 0.0);

enum class Dominance {
  kDominates,  // first curve >= second everywhere on the grid
  kDominated,  // first curve <= second everywhere on the grid
  kCrossing,
};
struct DominanceResult {
  Dominance order = Dominance::kDominates;
  double witness = 0.0;  // an eps where the ordering flips, for kCrossing
};
DominanceResult check_dominance(const PrivacyProfile& delta1,
                                const PrivacyProfile& delta2,
                                std::span<const double> eps_grid);

// True iff rho1(q) <= rho2(q) + 1e-12 at every grid order.
bool check_renyi_dominance(const RenyiCurve& c1, const RenyiCurve& c2,
                           std::span<const double> q_grid);

// Seeded Dirichlet-style sampler for small discrete pairs; zero_prob > 0
// zeroes coordinates (independently per side) to exercise one-sided
// absolute continuity.
class PairSampler {
 public:
  explicit PairSampler(std::uint64_t seed) : rng_(seed) {}

  DiscretePair sample(std::size_t n, double zero_prob = 0.0);
  double uniform();

 private:
  std::vector<double> sample_simplex(std::size_t n, double zero_prob);
  std::mt19937_64 rng_;
};

}  // namespace lapdp
