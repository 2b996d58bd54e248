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
#include "lapdp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "lapdp/fft.hpp"
#include "lapdp/parallel.hpp"

namespace lapdp {

DiscretePair product_pair(std::span<const DiscretePair> pairs) {
  if (pairs.empty()) {
    throw InvalidArgumentError("product of zero pairs is undefined");
  }
  std::vector<double> p{1.0}, q{1.0};
  for (const DiscretePair& pair : pairs) {
    if (p.size() * pair.size() > 1000000) {
      throw SupportOverflowError("product support exceeds 1e6 outcomes");
    }
    std::vector<double> np, nq;
    np.reserve(p.size() * pair.size());
    nq.reserve(q.size() * pair.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < pair.size(); ++j) {
        np.push_back(p[i] * pair.p()[j]);
        nq.push_back(q[i] * pair.q()[j]);
      }
    }
    p = std::move(np);
    q = std::move(nq);
  }
  return DiscretePair(std::move(p), std::move(q));
}

namespace {

Pld convolve_atom_plds(const Pld& a, const Pld& b) {
  std::vector<PldAtom> atoms;
  atoms.reserve(a.atoms.size() * b.atoms.size());
  for (const PldAtom& x : a.atoms) {
    for (const PldAtom& y : b.atoms) {
      atoms.push_back({x.z + y.z, x.mass * y.mass});
    }
  }
  Pld out;
  out.atoms = merge_atoms(std::move(atoms));
  out.mass_pos_inf = 1.0 - (1.0 - a.mass_pos_inf) * (1.0 - b.mass_pos_inf);
  return out;
}

}  // namespace

ConvolveResult convolve_plds(const Pld& a, const Pld& b) {
  const bool a_grid = a.grid.has_value() && !a.grid->densities.empty();
  const bool b_grid = b.grid.has_value() && !b.grid->densities.empty();
  if (!a_grid && !b_grid) {
    return {convolve_atom_plds(a, b), 0.0};
  }
  if (!a_grid || !b_grid || !a.atoms.empty() || !b.atoms.empty()) {
    throw GridMismatchError(
        "convolution needs atom-only or pure-grid operands");
  }
  const PldGrid& ga = *a.grid;
  const PldGrid& gb = *b.grid;
  if (std::abs(ga.step - gb.step) > 1e-15 * std::max(ga.step, gb.step)) {
    throw GridMismatchError("grid steps differ");
  }

  // Cell masses convolve; offsets add.
  std::vector<double> ma(ga.densities.size()), mb(gb.densities.size());
  for (std::size_t i = 0; i < ma.size(); ++i) ma[i] = ga.densities[i] * ga.step;
  for (std::size_t i = 0; i < mb.size(); ++i) mb[i] = gb.densities[i] * gb.step;
  std::vector<double> mc = fft::convolve(ma, mb);

  Pld out;
  PldGrid gc;
  gc.step = ga.step;
  gc.z_min = ga.z_min + gb.z_min;
  gc.densities.resize(mc.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    const double m = std::max(0.0, mc[i]);  // FFT dust
    gc.densities[i] = m / gc.step;
    mass += m;
  }
  out.mass_pos_inf = 1.0 - (1.0 - a.mass_pos_inf) * (1.0 - b.mass_pos_inf);
  const double target = 1.0 - out.mass_pos_inf;
  double renorm_error = 0.0;
  if (mass > 0.0 && target > 0.0) {
    renorm_error = std::abs(mass - target);
    const double scale = target / mass;
    for (double& d : gc.densities) d *= scale;
  }
  out.grid = std::move(gc);
  return {std::move(out), renorm_error};
}

GridAccountantResult grid_accountant(const Pld& kernel, std::int64_t k,
                                     std::span<const double> eps_grid,
                                     double grid_step) {
  if (k < 1) {
    throw InvalidArgumentError("k must be >= 1");
  }
  kernel.validate();
  GridAccountantResult result;

  const bool kernel_has_grid =
      kernel.grid.has_value() && !kernel.grid->densities.empty();

  Pld composed;
  if (!kernel_has_grid && grid_step <= 0.0) {
    // Exact atom route: k-fold pairwise-sum convolution by repeated
    // squaring; the merge keeps homogeneous books at k+1 atoms.
    Pld acc;
    acc.atoms = {{0.0, 1.0}};
    Pld base = kernel;
    std::int64_t e = k;
    while (e > 0) {
      if (e & 1) acc = convolve_atom_plds(acc, base);
      if (e >>= 1) base = convolve_atom_plds(base, base);
    }
    composed = std::move(acc);
    result.error_bound = 0.0;
  } else {
    // Numerical route: everything on one step-aligned grid (z = index *
    // step), then a k-th power in the frequency domain.
    const double step = grid_step > 0.0
                            ? grid_step
                            : (kernel_has_grid ? kernel.grid->step : 1e-4);
    long idx_lo = 0, idx_hi = 0;
    auto widen = [&](double z) {
      const long i = std::lround(z / step);
      idx_lo = std::min(idx_lo, i);
      idx_hi = std::max(idx_hi, i);
    };
    for (const PldAtom& a : kernel.atoms) widen(a.z);
    if (kernel_has_grid) {
      widen(kernel.grid->z_min);
      widen(kernel.grid->z_min +
            kernel.grid->step * double(kernel.grid->densities.size() - 1));
    }
    std::vector<double> cells(std::size_t(idx_hi - idx_lo) + 1, 0.0);
    for (const PldAtom& a : kernel.atoms) {
      cells[std::size_t(std::lround(a.z / step) - idx_lo)] += a.mass;
    }
    if (kernel_has_grid) {
      const PldGrid& g = *kernel.grid;
      for (std::size_t i = 0; i < g.densities.size(); ++i) {
        const long j = std::lround(g.z_at(i) / step);
        cells[std::size_t(j - idx_lo)] += g.densities[i] * g.step;
      }
    }
    std::vector<double> powk = fft::self_convolve_power(cells, k);

    PldGrid gc;
    gc.step = step;
    gc.z_min = double(idx_lo) * step * double(k);
    gc.densities.resize(powk.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < powk.size(); ++i) {
      const double m = std::max(0.0, powk[i]);
      gc.densities[i] = m / step;
      mass += m;
    }
    composed.mass_pos_inf = 1.0 - std::pow(1.0 - kernel.mass_pos_inf, double(k));
    const double target = 1.0 - composed.mass_pos_inf;
    if (mass > 0.0 && target > 0.0) {
      const double scale = target / mass;
      for (double& d : gc.densities) d *= scale;
    }
    composed.grid = std::move(gc);
    // Step-times-mass shift heuristic: each convolution can move mass by at
    // most half a cell.
    result.error_bound = 0.5 * step * double(k);
  }

  result.delta.resize(eps_grid.size());
  parallel::for_each_index(std::ptrdiff_t(eps_grid.size()),
                           [&](std::ptrdiff_t i) {
                             result.delta[i] =
                                 profile_from_pld(composed, eps_grid[i]);
                           });
  return result;
}

DominanceResult check_dominance(const PrivacyProfile& delta1,
                                const PrivacyProfile& delta2,
                                std::span<const double> eps_grid) {
  bool ge_everywhere = true;  // delta1 >= delta2
  bool le_everywhere = true;
  double first_above = 0.0, first_below = 0.0;
  bool has_above = false, has_below = false;
  for (double eps : eps_grid) {
    const double d1 = delta1(eps);
    const double d2 = delta2(eps);
    if (d1 > d2 + 1e-12) {
      le_everywhere = false;
      if (!has_above) {
        first_above = eps;
        has_above = true;
      }
    }
    if (d1 < d2 - 1e-12) {
      ge_everywhere = false;
      if (!has_below) {
        first_below = eps;
        has_below = true;
      }
    }
  }
  if (ge_everywhere) return {Dominance::kDominates, 0.0};
  if (le_everywhere) return {Dominance::kDominated, 0.0};
  return {Dominance::kCrossing, has_above ? first_above : first_below};
}

bool check_renyi_dominance(const RenyiCurve& c1, const RenyiCurve& c2,
                           std::span<const double> q_grid) {
  for (double q : q_grid) {
    const double r1 = c1.rho(std::complex<double>(q, 0.0)).real();
    const double r2 = c2.rho(std::complex<double>(q, 0.0)).real();
    if (r1 > r2 + 1e-12) return false;
  }
  return true;
}

double PairSampler::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
}

std::vector<double> PairSampler::sample_simplex(std::size_t n,
                                                double zero_prob) {
  std::vector<double> v(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Exp(1) draws normalized to the simplex = Dirichlet(1,...,1).
    const double u = std::max(uniform(), 1e-300);
    v[i] = -std::log(u);
    if (zero_prob > 0.0 && uniform() < zero_prob) {
      v[i] = 0.0;
    }
    total += v[i];
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  for (double& x : v) x /= total;
  // Exact renormalization of the rounding residue onto the largest entry.
  double sum = 0.0;
  for (double x : v) sum += x;
  auto it = std::max_element(v.begin(), v.end());
  *it += 1.0 - sum;
  return v;
}

DiscretePair PairSampler::sample(std::size_t n, double zero_prob) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> p = sample_simplex(n, zero_prob);
    std::vector<double> q = sample_simplex(n, zero_prob);
    // A valid pair needs some common support and no all-zero coordinate
    // pair hiding a degenerate vector.
    bool common = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] > 0.0 && q[i] > 0.0) common = true;
    }
    if (!common) continue;
    try {
      return DiscretePair(std::move(p), std::move(q));
    } catch (const InvalidArgumentError&) {
      continue;
    }
  }
  throw InvalidArgumentError("sampler failed to draw a valid pair");
}

}  // namespace lapdp
