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
#include "lapdp/composition.hpp"

#include <algorithm>
#include <cmath>

namespace lapdp {

void PointGuarantee::validate() const {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw InvalidArgumentError("point guarantee eps must be finite and >= 0");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidArgumentError("point guarantee delta must lie in [0, 1]");
  }
}

SignedAtomBook::SignedAtomBook(std::span<const PointGuarantee> guarantees,
                               std::size_t atom_cap) {
  atoms_.emplace_back(0.0, 1.0);
  for (const PointGuarantee& g : guarantees) {
    g.validate();
    const double up = (1.0 - g.delta) * std::exp(g.eps) / (std::exp(g.eps) + 1.0);
    const double down = (1.0 - g.delta) / (std::exp(g.eps) + 1.0);
    inf_mass_ += (1.0 - inf_mass_) * g.delta;

    std::vector<std::pair<double, double>> next;
    next.reserve(2 * atoms_.size());
    for (const auto& [shift, weight] : atoms_) {
      next.emplace_back(shift + g.eps, weight * up);
      next.emplace_back(shift - g.eps, weight * down);
    }
    std::sort(next.begin(), next.end());
    atoms_.clear();
    for (const auto& [shift, weight] : next) {
      if (!atoms_.empty() &&
          shift - atoms_.back().first < kAtomMergeTolerance) {
        auto& [z, w] = atoms_.back();
        z = (z * w + shift * weight) / (w + weight);
        w += weight;
      } else {
        atoms_.emplace_back(shift, weight);
      }
    }
    if (atoms_.size() > atom_cap) {
      throw BookOverflowError("atom book exceeded its size cap");
    }
  }
}

double SignedAtomBook::evaluate(double t) const {
  double acc = inf_mass_;
  for (const auto& [shift, weight] : atoms_) {
    const double v = -std::expm1(t - shift);
    if (v > 0.0) acc += weight * v;
  }
  return std::clamp(acc, 0.0, 1.0);
}

double compose_point_guarantees(std::span<const PointGuarantee> guarantees,
                                double t, std::size_t atom_cap) {
  return SignedAtomBook(guarantees, atom_cap).evaluate(t);
}

double compose_homogeneous(double eps0, double delta0, std::int64_t k,
                           double t) {
  PointGuarantee{eps0, delta0}.validate();
  if (k < 0) {
    throw InvalidArgumentError("k must be >= 0");
  }
  if (k == 0) {
    return floor_delta(t);
  }
  // log Binomial(k, y) pmf with success weight e^{eps0}/(1+e^{eps0}).
  const double log_p = eps0 - std::log1p(std::exp(eps0));
  const double log_1mp = -std::log1p(std::exp(eps0));
  double expect = 0.0;
  for (std::int64_t y = 0; y <= k; ++y) {
    const double shift = eps0 * double(2 * y - k);
    const double v = -std::expm1(t - shift);
    if (v <= 0.0) continue;
    const double log_pmf = std::lgamma(double(k) + 1.0) -
                           std::lgamma(double(y) + 1.0) -
                           std::lgamma(double(k - y) + 1.0) +
                           double(y) * log_p + double(k - y) * log_1mp;
    expect += std::exp(log_pmf) * v;
  }
  // 1 - (1-delta0)^k (1 - E), assembled through log1p/expm1 so the
  // 1-(1-d)^k floor keeps its low-order bits; budget checks near k*delta0
  // hinge on them.
  const double log_keep = double(k) * std::log1p(-delta0);
  if (expect >= 1.0) return 1.0;
  const double v = -std::expm1(log_keep + std::log1p(-expect));
  return std::clamp(v, 0.0, 1.0);
}

double eps_for_delta(const std::function<double(double)>& evaluator,
                     double delta_budget, std::pair<double, double> bracket) {
  auto [lo, hi] = bracket;
  if (!(lo < hi)) {
    throw InvalidArgumentError("bracket must satisfy lo < hi");
  }
  if (evaluator(hi) > delta_budget) {
    throw NoCrossingError("delta budget unattainable on this bracket");
  }
  if (evaluator(lo) <= delta_budget) {
    return lo;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (evaluator(mid) <= delta_budget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

// First-derivative jump at a knot via fourth-order one-sided stencils.
double derivative_jump(const PrivacyProfile& prof, double knot, double h) {
  auto one_sided = [&](double sign) {
    const double f0 = prof(knot);
    const double f1 = prof(knot + sign * h);
    const double f2 = prof(knot + sign * 2.0 * h);
    const double f3 = prof(knot + sign * 3.0 * h);
    return sign * (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h);
  };
  return one_sided(+1.0) - one_sided(-1.0);
}

// Fourth-order centered stencils: the O(h^2) bias of the three-point rule
// (h^2/12 * (f'''' - 2 f''')) does not vanish on the a + b e^t pieces and
// would smear spurious density under the dust threshold.
double second_minus_first(const PrivacyProfile& prof, double t, double h) {
  const double fm2 = prof(t - 2.0 * h);
  const double fm1 = prof(t - h);
  const double f0 = prof(t);
  const double fp1 = prof(t + h);
  const double fp2 = prof(t + 2.0 * h);
  const double dd =
      (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  const double d = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  return dd - d;
}

}  // namespace

Pld pld_kernel_from_profile(const PrivacyProfile& prof, double grid_step) {
  if (!(grid_step > 0.0)) {
    throw InvalidArgumentError("grid_step must be > 0");
  }
  const std::vector<double>& knots = prof.knots();
  Pld kernel;
  kernel.mass_pos_inf = prof.infinity_delta();

  // Dirac atoms at the knots.
  std::vector<PldAtom> atoms;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    min_gap = std::min(min_gap, knots[i + 1] - knots[i]);
  }
  const double h_jump = std::min(1e-4, min_gap / 8.0);
  for (double knot : knots) {
    const double mass = derivative_jump(prof, knot, h_jump);
    if (mass < -1e-9) {
      throw ReconstructionError(
          "negative derivative jump; profile is not hockey-stick convex");
    }
    if (mass > 1e-13) {
      atoms.push_back({knot, mass});
    }
  }
  kernel.atoms = merge_atoms(std::move(atoms));

  // Continuous part, sampled away from the knots. The density threshold
  // sits well above both the rounding dust and the fourth-order truncation
  // of the stencil, so piecewise-exponential profiles come out purely
  // atomic.
  const double h_fd = 2.0 * std::max(grid_step, 1e-3);
  const double dust = 3e-9;
  double lo = (knots.empty() ? 0.0 : knots.front()) - 1.0;
  double hi = (knots.empty() ? 0.0 : knots.back()) + 1.0;
  // Expand until the density is negligible on both sides.
  while (std::abs(second_minus_first(prof, lo, h_fd)) > dust &&
         hi - lo < 400.0) {
    lo -= 1.0;
  }
  while (std::abs(second_minus_first(prof, hi, h_fd)) > dust &&
         hi - lo < 400.0) {
    hi += 1.0;
  }
  lo -= 2.0;
  hi += 2.0;

  const std::size_t n = std::size_t((hi - lo) / grid_step) + 1;
  PldGrid grid;
  grid.z_min = lo;
  grid.step = grid_step;
  grid.densities.assign(n, 0.0);
  // Cells whose stencil would straddle a knot hold the Dirac part, not the
  // density; mark them and fill from the nearest clean cell in the same
  // inter-knot piece afterwards.
  std::vector<bool> skipped(n, false);
  auto piece_of = [&](double t) {
    std::size_t p = 0;
    while (p < knots.size() && t > knots[p]) ++p;
    return p;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.z_at(i);
    bool near_knot = false;
    for (double knot : knots) {
      if (std::abs(t - knot) < 2.5 * h_fd) {
        near_knot = true;
        break;
      }
    }
    if (near_knot) {
      skipped[i] = true;
      continue;
    }
    const double g = second_minus_first(prof, t, h_fd);
    if (g > dust) {
      grid.densities[i] = g;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!skipped[i]) continue;
    const std::size_t piece = piece_of(grid.z_at(i));
    double fill = 0.0;
    for (std::size_t d = 1; d < n; ++d) {
      if (i >= d && !skipped[i - d] &&
          piece_of(grid.z_at(i - d)) == piece) {
        fill = grid.densities[i - d];
        break;
      }
      if (i + d < n && !skipped[i + d] &&
          piece_of(grid.z_at(i + d)) == piece) {
        fill = grid.densities[i + d];
        break;
      }
      if (d > 40) break;
    }
    grid.densities[i] = fill;
  }
  bool any = false;
  for (double g : grid.densities) {
    if (g != 0.0) any = true;
  }
  if (any) {
    kernel.grid = std::move(grid);
  }

  // Mild renormalization absorbs finite-difference and truncation residue;
  // anything larger signals a bad extraction.
  const double total = kernel.total_mass();
  if (std::abs(total - 1.0) > 1e-4) {
    throw ReconstructionError("kernel mass deviates from 1 beyond tolerance");
  }
  if (kernel.grid && std::abs(total - 1.0) > 1e-12) {
    double atom_and_inf = kernel.mass_pos_inf;
    for (const PldAtom& a : kernel.atoms) atom_and_inf += a.mass;
    const double target = 1.0 - atom_and_inf;
    const double current = kernel.grid->total_mass();
    if (current > 0.0 && target > 0.0) {
      const double scale = target / current;
      for (double& d : kernel.grid->densities) d *= scale;
    }
  }

  // The kernel must reproduce its source profile.
  const double span_lo = lo - 2.0;
  const double span_hi = hi + 2.0;
  for (int i = 0; i <= 200; ++i) {
    const double eps = span_lo + (span_hi - span_lo) * double(i) / 200.0;
    const double rebuilt = profile_from_pld(kernel, eps);
    if (std::abs(rebuilt - prof(eps)) > 1e-6) {
      throw ReconstructionError(
          "kernel fails to reproduce its source profile at 1e-6");
    }
  }
  return kernel;
}

PrivacyProfile compose_profile_with_kernel(const PrivacyProfile& prof1,
                                           const Pld& kernel2) {
  const double kernel_inf = kernel2.mass_pos_inf;

  // Composed knots: prof1 knots shifted by each atom location.
  std::vector<double> knots;
  for (double k : prof1.knots()) {
    for (const PldAtom& a : kernel2.atoms) {
      knots.push_back(k + a.z);
    }
    if (kernel2.atoms.empty()) knots.push_back(k);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < kAtomMergeTolerance;
                          }),
              knots.end());

  const PrivacyProfile base = prof1;
  const Pld kernel = kernel2;
  auto eval = [base, kernel, kernel_inf](double eps) {
    double acc = kernel_inf;  // prof1(-inf) = 1 under the escaped mass
    for (const PldAtom& a : kernel.atoms) {
      acc += a.mass * base(eps - a.z);
    }
    if (kernel.grid) {
      const PldGrid& g = *kernel.grid;
      double s = 0.0;
      for (std::size_t i = 0; i < g.densities.size(); ++i) {
        if (g.densities[i] != 0.0) {
          s += g.densities[i] * base(eps - g.z_at(i));
        }
      }
      acc += s * g.step;
    }
    return acc;
  };

  // Tail metadata: delta(t) = 1 - c1 e^t * sum_j w_j e^{-z_j} far left;
  // the limit at +inf stacks the kernel's escaped mass on prof1's.
  double weight_exp = 0.0;
  for (const PldAtom& a : kernel2.atoms) {
    weight_exp += a.mass * std::exp(-a.z);
  }
  if (kernel2.grid) {
    const PldGrid& g = *kernel2.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.densities.size(); ++i) {
      s += g.densities[i] * std::exp(-g.z_at(i));
    }
    weight_exp += s * g.step;
  }
  const LeftTail left{prof1.left_tail().coeff * weight_exp,
                      prof1.left_tail().exact && !kernel2.grid.has_value()};
  const double inf_delta =
      kernel_inf + (1.0 - kernel_inf) * prof1.infinity_delta();
  const RightTail right{inf_delta, prof1.right_tail().exact &&
                                       !kernel2.grid.has_value()};
  return PrivacyProfile::analytic(std::move(eval), std::move(knots), left,
                                  right);
}

}  // namespace lapdp
