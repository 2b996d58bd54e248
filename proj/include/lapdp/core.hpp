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

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lapdp/errors.hpp"

namespace lapdp {

inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kAtomMergeTolerance = 1e-12;

// The universal floor curve: delta(eps) of a pair with P = Q.
double floor_delta(double eps);

// A single (epsilon, delta) point guarantee. Epsilon is in nats and may be
// negative (the curve convention extends to the whole real line).
struct EpsDelta {
  double epsilon = 0.0;
  double delta = 0.0;

  void validate() const;
};

// Two finite probability vectors over a shared support. Outcomes with
// p_i = q_i = 0 are dropped at construction; they carry no information.
class DiscretePair {
 public:
  DiscretePair(std::vector<double> p, std::vector<double> q);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& q() const { return q_; }
  DiscretePair swapped() const { return DiscretePair(q_, p_); }

 private:
  std::vector<double> p_;
  std::vector<double> q_;
};

struct PldAtom {
  double z = 0.0;     // privacy-loss value, nats
  double mass = 0.0;  // > 0
};

// Uniform grid for continuous PLD parts. densities[i] is the density at
// z_min + i*step; cell mass is densities[i]*step.
struct PldGrid {
  double z_min = 0.0;
  double step = 0.0;
  std::vector<double> densities;

  double z_at(std::size_t i) const { return z_min + step * double(i); }
  double total_mass() const;
};

// Distribution of the privacy loss random variable Z = log(P/Q) under P.
// Mass at z = +inf (outcomes with Q = 0) is kept as an explicit field and
// never enters arithmetic as an IEEE infinity.
struct Pld {
  std::vector<PldAtom> atoms;  // sorted by z, distinct within merge tolerance
  std::optional<PldGrid> grid;
  double mass_pos_inf = 0.0;

  double total_mass() const;
  void validate() const;
};

// Merges unsorted atoms: sorts by z and coalesces atoms closer than the
// merge tolerance (mass-weighted location).
std::vector<PldAtom> merge_atoms(std::vector<PldAtom> atoms,
                                 double tol = kAtomMergeTolerance);

// Tail metadata carried by every profile. Left tail: delta(t) = 1 - c*e^t
// as t -> -inf, exactly so for t <= knots.front() when `exact`. Right tail:
// delta(t) -> limit, exactly constant for t >= knots.back() when `exact`.
struct LeftTail {
  double coeff = 1.0;
  bool exact = false;
};
struct RightTail {
  double limit = 0.0;
  bool exact = false;
};

// A curve eps -> delta(eps) on the extended real line. Analytic profiles
// wrap a closed-form evaluator; tabulated profiles interpolate monotone
// piecewise-linearly between knots. Evaluation clamps to [floor, 1].
// Immutable after construction; evaluation is const and thread-safe.
class PrivacyProfile {
 public:
  enum class Kind { kAnalytic, kTabulated };

  static PrivacyProfile analytic(std::function<double(double)> eval,
                                 std::vector<double> knots, LeftTail left,
                                 RightTail right);
  // eps strictly increasing; delta clamped into [floor, 1] and made
  // non-increasing. Left of the table extrapolates with the 1 - c*e^eps
  // blend, right of the table clamps to the last value.
  static PrivacyProfile tabulated(std::vector<double> eps,
                                  std::vector<double> delta);
  static PrivacyProfile floor_profile();

  double operator()(double eps) const;
  Kind kind() const { return kind_; }
  const std::vector<double>& knots() const { return knots_; }
  const LeftTail& left_tail() const { return left_; }
  const RightTail& right_tail() const { return right_; }
  // delta(+inf); the exact constant when right_tail().exact.
  double infinity_delta() const { return right_.limit; }

 private:
  PrivacyProfile() = default;

  Kind kind_ = Kind::kAnalytic;
  std::function<double(double)> eval_;
  std::vector<double> knots_;
  LeftTail left_;
  RightTail right_;
};

// Evaluates a profile over a grid; the hot loop behind CSV emission and the
// acceptance sweeps. Parallel over grid rows, output in grid order.
std::vector<double> eval_profile_grid(const PrivacyProfile& prof,
                                      std::span<const double> grid);
std::vector<double> eval_profile_grid_serial(const PrivacyProfile& prof,
                                             std::span<const double> grid);

// Complex-order Renyi curve: q -> E_q = e^{(q-1) rho(q)} with an admissible
// strip on Re(q). The strip excludes the singular orders {0, 1} for rho;
// E_q itself is finite there.
struct RenyiCurve {
  std::function<std::complex<double>(std::complex<double>)> eval_E;
  double roc_lo = -std::numeric_limits<double>::infinity();
  double roc_hi = std::numeric_limits<double>::infinity();

  bool roc_empty() const { return !(roc_lo < roc_hi); }
  bool admits(std::complex<double> q) const {
    return q.real() > roc_lo && q.real() < roc_hi;
  }
  std::complex<double> rho(std::complex<double> q) const;
};

// --- Core operations -------------------------------------------------------

// Hockey-stick divergence sum_i max(0, p_i - e^eps * q_i).
double profile_from_discrete(const DiscretePair& pair, double eps);

// The full curve of a discrete pair, with knots at the finite log ratios.
PrivacyProfile discrete_profile(const DiscretePair& pair);

// eps -> 1 - e^eps + e^eps * prof(-eps); the curve with P and Q reversed.
PrivacyProfile reverse_profile(const PrivacyProfile& prof);

// Atoms at log(p_i/q_i) with mass p_i; mass_pos_inf collects p_i over
// outcomes with q_i = 0. Outcomes with p_i = 0 contribute nothing.
Pld pld_from_discrete(const DiscretePair& pair);

// Atomwise reversal (z, m) -> (-z, m e^{-z}); the output mass at +inf is
// whatever the mapped finite masses leave short of 1.
Pld reverse_pld(const Pld& pld);

// E_Z[max(0, 1 - e^{eps - Z})] + mass_pos_inf.
double profile_from_pld(const Pld& pld, double eps);

// E_q as the PLD moment sum: sum_j m_j e^{(q-1) z_j} plus the grid
// integral. Mass at +inf contributes zero for Re(q) < 1 and diverges
// otherwise.
std::complex<double> renyi_E_from_pld(const Pld& pld, std::complex<double> q);

// rho = log(E_q)/(q-1) on the principal branch; singular at q in {0, 1}.
std::complex<double> renyi_rho_from_pld(const Pld& pld,
                                        std::complex<double> q);

RenyiCurve renyi_curve_from_pld(Pld pld);

// Exact Neyman-Pearson trade-off: minimal Type-II error at Type-I level
// alpha over randomized tests.
double tradeoff_from_discrete(const DiscretePair& pair, double alpha);

// Left-continuous inverse of the trade-off curve at beta.
double tradeoff_inverse_from_discrete(const DiscretePair& pair, double beta);

// True iff f_{P|Q}^{-1}(beta) = f_{Q|P}(beta) within 1e-9 at all grid points.
bool check_tradeoff_reversal(const DiscretePair& pair,
                             std::span<const double> grid);

}  // namespace lapdp
