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
#include "lapdp/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numeric>

#include "lapdp/parallel.hpp"

namespace lapdp {

namespace parallel {
namespace {
std::atomic<bool> g_parallel_enabled{true};
}
void set_enabled(bool enabled) { g_parallel_enabled.store(enabled); }
bool enabled() { return g_parallel_enabled.load(); }
}  // namespace parallel

double floor_delta(double eps) {
  return eps >= 0.0 ? 0.0 : -std::expm1(eps);
}

void EpsDelta::validate() const {
  if (!std::isfinite(epsilon)) {
    throw InvalidArgumentError("epsilon must be finite");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidArgumentError("delta must lie in [0, 1]");
  }
}

DiscretePair::DiscretePair(std::vector<double> p, std::vector<double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw InvalidArgumentError("p and q must be non-empty and equal-length");
  }
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0)) {
      throw InvalidArgumentError("probabilities must be non-negative");
    }
    sp += p[i];
    sq += q[i];
    if (p[i] == 0.0 && q[i] == 0.0) {
      continue;  // dropped: carries no information
    }
    p_.push_back(p[i]);
    q_.push_back(q[i]);
  }
  if (std::abs(sp - 1.0) > kMassTolerance || std::abs(sq - 1.0) > kMassTolerance) {
    throw InvalidArgumentError("each probability vector must sum to 1");
  }
  if (p_.empty()) {
    throw InvalidArgumentError("support is empty after dropping null outcomes");
  }
}

double PldGrid::total_mass() const {
  double m = 0.0;
  for (double d : densities) m += d;
  return m * step;
}

double Pld::total_mass() const {
  double m = mass_pos_inf;
  for (const PldAtom& a : atoms) m += a.mass;
  if (grid) m += grid->total_mass();
  return m;
}

void Pld::validate() const {
  if (std::abs(total_mass() - 1.0) > 1e-9) {
    throw InvalidArgumentError("PLD mass must sum to 1");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].mass > 0.0) || !std::isfinite(atoms[i].z)) {
      throw InvalidArgumentError("PLD atoms must have finite z and positive mass");
    }
    if (i > 0 && atoms[i].z - atoms[i - 1].z < kAtomMergeTolerance) {
      throw InvalidArgumentError("PLD atoms must be sorted and distinct");
    }
  }
  if (mass_pos_inf < 0.0) {
    throw InvalidArgumentError("mass_pos_inf must be non-negative");
  }
}

std::vector<PldAtom> merge_atoms(std::vector<PldAtom> atoms, double tol) {
  std::sort(atoms.begin(), atoms.end(),
            [](const PldAtom& a, const PldAtom& b) { return a.z < b.z; });
  std::vector<PldAtom> out;
  for (const PldAtom& a : atoms) {
    if (a.mass <= 0.0) continue;
    if (!out.empty() && a.z - out.back().z < tol) {
      PldAtom& last = out.back();
      const double m = last.mass + a.mass;
      last.z = (last.z * last.mass + a.z * a.mass) / m;
      last.mass = m;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

// --- PrivacyProfile ---------------------------------------------------------

PrivacyProfile PrivacyProfile::analytic(std::function<double(double)> eval,
                                        std::vector<double> knots,
                                        LeftTail left, RightTail right) {
  PrivacyProfile prof;
  prof.kind_ = Kind::kAnalytic;
  prof.eval_ = std::move(eval);
  prof.knots_ = std::move(knots);
  std::sort(prof.knots_.begin(), prof.knots_.end());
  prof.left_ = left;
  prof.right_ = right;
  return prof;
}

PrivacyProfile PrivacyProfile::tabulated(std::vector<double> eps,
                                         std::vector<double> delta) {
  if (eps.size() != delta.size() || eps.size() < 2) {
    throw InvalidArgumentError("tabulated profile needs >= 2 rows");
  }
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] > eps[i - 1])) {
      throw InvalidArgumentError("tabulated eps must be strictly increasing");
    }
  }
  // Enforce the curve invariants on the table itself.
  for (std::size_t i = 0; i < delta.size(); ++i) {
    delta[i] = std::clamp(delta[i], floor_delta(eps[i]), 1.0);
    if (i > 0) delta[i] = std::min(delta[i], delta[i - 1]);
  }

  PrivacyProfile prof;
  prof.kind_ = Kind::kTabulated;
  prof.knots_ = eps;
  prof.left_ = LeftTail{(1.0 - delta.front()) * std::exp(-eps.front()), true};
  prof.right_ = RightTail{delta.back(), true};
  auto xs = std::make_shared<std::vector<double>>(std::move(eps));
  auto ys = std::make_shared<std::vector<double>>(std::move(delta));
  prof.eval_ = [xs, ys](double e) {
    const std::vector<double>& x = *xs;
    const std::vector<double>& y = *ys;
    if (e <= x.front()) {
      return 1.0 - (1.0 - y.front()) * std::exp(e - x.front());
    }
    if (e >= x.back()) {
      return y.back();
    }
    const auto it = std::upper_bound(x.begin(), x.end(), e);
    const std::size_t hi = std::size_t(it - x.begin());
    const std::size_t lo = hi - 1;
    const double w = (e - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + w * (y[hi] - y[lo]);
  };
  return prof;
}

PrivacyProfile PrivacyProfile::floor_profile() {
  return analytic([](double e) { return floor_delta(e); }, {0.0},
                  LeftTail{1.0, true}, RightTail{0.0, true});
}

double PrivacyProfile::operator()(double eps) const {
  const double raw = eval_(eps);
  return std::clamp(raw, floor_delta(eps), 1.0);
}

std::vector<double> eval_profile_grid_serial(const PrivacyProfile& prof,
                                             std::span<const double> grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = prof(grid[i]);
  return out;
}

std::vector<double> eval_profile_grid(const PrivacyProfile& prof,
                                      std::span<const double> grid) {
  std::vector<double> out(grid.size());
  parallel::for_each_index(std::ptrdiff_t(grid.size()),
                           [&](std::ptrdiff_t i) { out[i] = prof(grid[i]); });
  return out;
}

std::complex<double> RenyiCurve::rho(std::complex<double> q) const {
  if (q == std::complex<double>(0.0) || q == std::complex<double>(1.0)) {
    throw SingularOrderError("rho is singular at q in {0, 1}");
  }
  return std::log(eval_E(q)) / (q - 1.0);
}

// --- Discrete-pair operations -----------------------------------------------

double profile_from_discrete(const DiscretePair& pair, double eps) {
  const double scale = std::exp(eps);
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double d = pair.p()[i] - scale * pair.q()[i];
    if (d > 0.0) acc += d;
  }
  return std::min(acc, 1.0);
}

PrivacyProfile discrete_profile(const DiscretePair& pair) {
  std::vector<double> knots;
  double c = 0.0;        // Q-mass on the support of P
  double inf_mass = 0.0; // P-mass where Q vanishes
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p()[i], q = pair.q()[i];
    if (p > 0.0 && q > 0.0) knots.push_back(std::log(p / q));
    if (p > 0.0) c += q;
    if (q == 0.0) inf_mass += p;
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < kAtomMergeTolerance;
                          }),
              knots.end());
  if (knots.empty()) knots.push_back(0.0);
  auto p = pair;  // value copy keeps the curve self-contained
  return PrivacyProfile::analytic(
      [p](double e) { return profile_from_discrete(p, e); }, std::move(knots),
      LeftTail{c, true}, RightTail{inf_mass, true});
}

PrivacyProfile reverse_profile(const PrivacyProfile& prof) {
  std::vector<double> knots(prof.knots());
  for (double& k : knots) k = -k;
  std::sort(knots.begin(), knots.end());

  const LeftTail in_left = prof.left_tail();
  const RightTail in_right = prof.right_tail();
  const double lo_knot = prof.knots().empty() ? 0.0 : prof.knots().front();
  const double hi_knot = prof.knots().empty() ? 0.0 : prof.knots().back();
  auto eval = [prof, in_left, in_right, lo_knot, hi_knot](double e) {
    // Large |e| hits the exact tail branches directly; the raw identity
    // 1 - e^e (1 - prof(-e)) would amplify rounding of prof near 1 by e^e.
    if (in_left.exact && -e <= lo_knot) {
      return 1.0 - in_left.coeff;  // reversed right tail
    }
    if (in_right.exact && -e >= hi_knot) {
      return 1.0 - std::exp(e) * (1.0 - in_right.limit);
    }
    return 1.0 - std::exp(e) * (1.0 - prof(-e));
  };
  return PrivacyProfile::analytic(std::move(eval), std::move(knots),
                                  LeftTail{1.0 - in_right.limit, in_right.exact},
                                  RightTail{1.0 - in_left.coeff, in_left.exact});
}

Pld pld_from_discrete(const DiscretePair& pair) {
  Pld pld;
  std::vector<PldAtom> atoms;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p()[i], q = pair.q()[i];
    if (p == 0.0) continue;  // Z is drawn under P
    if (q == 0.0) {
      pld.mass_pos_inf += p;
    } else {
      atoms.push_back({std::log(p / q), p});
    }
  }
  pld.atoms = merge_atoms(std::move(atoms));
  return pld;
}

Pld reverse_pld(const Pld& pld) {
  if (pld.grid && !pld.grid->densities.empty()) {
    // f_Z(z) = e^z f_{Z'}(-z) applied cellwise on the mirrored grid.
    const PldGrid& g = *pld.grid;
    PldGrid out;
    out.step = g.step;
    out.z_min = -(g.z_min + g.step * double(g.densities.size() - 1));
    out.densities.resize(g.densities.size());
    for (std::size_t i = 0; i < g.densities.size(); ++i) {
      const std::size_t j = g.densities.size() - 1 - i;
      out.densities[i] = g.densities[j] * std::exp(-g.z_at(j));
    }
    Pld rev;
    rev.grid = std::move(out);
    double mapped = rev.grid->total_mass();
    std::vector<PldAtom> atoms;
    for (const PldAtom& a : pld.atoms) {
      const double m = a.mass * std::exp(-a.z);
      atoms.push_back({-a.z, m});
      mapped += m;
    }
    rev.atoms = merge_atoms(std::move(atoms));
    if (mapped > 1.0 + 1e-9) {
      throw InvalidArgumentError("reversed PLD mass exceeds 1");
    }
    rev.mass_pos_inf = std::max(0.0, 1.0 - mapped);
    return rev;
  }

  Pld rev;
  std::vector<PldAtom> atoms;
  double mapped = 0.0;
  for (const PldAtom& a : pld.atoms) {
    const double m = a.mass * std::exp(-a.z);
    atoms.push_back({-a.z, m});
    mapped += m;
  }
  if (mapped > 1.0 + 1e-9) {
    throw InvalidArgumentError("reversed PLD mass exceeds 1");
  }
  rev.atoms = merge_atoms(std::move(atoms));
  rev.mass_pos_inf = std::max(0.0, 1.0 - mapped);
  return rev;
}

double profile_from_pld(const Pld& pld, double eps) {
  double acc = pld.mass_pos_inf;  // lim_{z -> inf} 1 - e^{eps - z} = 1
  for (const PldAtom& a : pld.atoms) {
    const double v = -std::expm1(eps - a.z);
    if (v > 0.0) acc += a.mass * v;
  }
  if (pld.grid) {
    const PldGrid& g = *pld.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.densities.size(); ++i) {
      const double v = -std::expm1(eps - g.z_at(i));
      if (v > 0.0) s += g.densities[i] * v;
    }
    acc += s * g.step;
  }
  return std::clamp(acc, 0.0, 1.0);
}

std::complex<double> renyi_E_from_pld(const Pld& pld, std::complex<double> q) {
  if (pld.mass_pos_inf > kMassTolerance && q.real() >= 1.0) {
    throw DivergenceError(
        "E_q diverges: PLD has mass at +inf and Re(q) >= 1");
  }
  std::complex<double> acc{0.0, 0.0};
  const std::complex<double> qm1 = q - 1.0;
  for (const PldAtom& a : pld.atoms) {
    acc += a.mass * std::exp(qm1 * a.z);
  }
  if (pld.grid) {
    const PldGrid& g = *pld.grid;
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < g.densities.size(); ++i) {
      s += g.densities[i] * std::exp(qm1 * g.z_at(i));
    }
    acc += s * g.step;
  }
  // Mass at +inf contributes e^{(q-1)*inf} = 0 for Re(q) < 1.
  return acc;
}

std::complex<double> renyi_rho_from_pld(const Pld& pld,
                                        std::complex<double> q) {
  if (q == std::complex<double>(0.0) || q == std::complex<double>(1.0)) {
    throw SingularOrderError("rho is singular at q in {0, 1}");
  }
  return std::log(renyi_E_from_pld(pld, q)) / (q - 1.0);
}

RenyiCurve renyi_curve_from_pld(Pld pld) {
  RenyiCurve curve;
  if (pld.mass_pos_inf > kMassTolerance) {
    curve.roc_hi = 1.0;
  }
  curve.eval_E = [pld = std::move(pld)](std::complex<double> q) {
    return renyi_E_from_pld(pld, q);
  };
  return curve;
}

// --- Trade-off curves -------------------------------------------------------

namespace {

// Vertices of the piecewise-linear Neyman-Pearson curve: cumulative
// (alpha, 1 - coverage) walking outcomes by decreasing likelihood ratio
// q_i/p_i (rejection ordering; p_i = 0 outcomes come first).
std::vector<std::pair<double, double>> np_vertices(const DiscretePair& pair) {
  std::vector<std::size_t> idx(pair.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double pa = pair.p()[a], qa = pair.q()[a];
    const double pb = pair.p()[b], qb = pair.q()[b];
    // Compare q/p descending without dividing: qa/pa > qb/pb.
    const bool ia = pa == 0.0, ib = pb == 0.0;
    if (ia != ib) return ia;
    if (ia && ib) return false;
    return qa * pb > qb * pa;
  });
  std::vector<std::pair<double, double>> v;
  double ca = 0.0, cq = 0.0;
  v.emplace_back(0.0, 1.0);
  for (std::size_t i : idx) {
    ca += pair.p()[i];
    cq += pair.q()[i];
    v.emplace_back(std::min(ca, 1.0), std::max(0.0, 1.0 - cq));
  }
  if (v.back().first < 1.0) v.emplace_back(1.0, v.back().second);
  return v;
}

}  // namespace

double tradeoff_from_discrete(const DiscretePair& pair, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgumentError("alpha must lie in [0, 1]");
  }
  const auto v = np_vertices(pair);
  // Last vertex at or left of alpha; vertical runs (free rejections of
  // zero-probability outcomes) make "last" matter.
  std::size_t j = 0;
  while (j + 1 < v.size() && v[j + 1].first <= alpha) ++j;
  if (j + 1 == v.size()) return v.back().second;
  const double a0 = v[j].first, a1 = v[j + 1].first;
  const double w = (alpha - a0) / (a1 - a0);
  return v[j].second + w * (v[j + 1].second - v[j].second);
}

double tradeoff_inverse_from_discrete(const DiscretePair& pair, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidArgumentError("beta must lie in [0, 1]");
  }
  // inf { alpha : f(alpha) <= beta } on the convex piecewise-linear curve.
  // Vertex heights are cumulative-probability sums and carry ~1e-16 dust,
  // so the comparison needs slack.
  constexpr double kDust = 1e-12;
  const auto v = np_vertices(pair);
  if (v.front().second <= beta + kDust) return 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].second <= beta + kDust) {
      const double b0 = v[i - 1].second, b1 = v[i].second;
      if (b0 - b1 < kDust) return v[i].first;
      const double w = std::clamp((b0 - beta) / (b0 - b1), 0.0, 1.0);
      return v[i - 1].first + w * (v[i].first - v[i - 1].first);
    }
  }
  return 1.0;
}

bool check_tradeoff_reversal(const DiscretePair& pair,
                             std::span<const double> grid) {
  const DiscretePair sw = pair.swapped();
  for (double beta : grid) {
    const double lhs = tradeoff_inverse_from_discrete(pair, beta);
    const double rhs = tradeoff_from_discrete(sw, beta);
    if (std::abs(lhs - rhs) > 1e-9) return false;
  }
  return true;
}

}  // namespace lapdp
