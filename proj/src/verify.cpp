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
#include "lapdp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "lapdp/composition.hpp"
#include "lapdp/core.hpp"
#include "lapdp/laplace.hpp"
#include "lapdp/mechanisms.hpp"
#include "lapdp/oracle.hpp"
#include "lapdp/subsampling.hpp"

namespace lapdp {

namespace {

// Off-knot epsilon grid: irrational-ish offsets avoid branch boundaries.
std::vector<double> eps_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * (double(i) + 0.5 - 0.01 * std::sin(1.0 + i)) /
                    double(n);
  }
  return g;
}

struct Checker {
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& fn) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = fn();  // empty string = pass
      r.pass = r.detail.empty();
      if (r.pass) r.detail = "ok";
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string check_max(double seen, double tol, const std::string& what) {
  if (seen <= tol) return "";
  std::ostringstream os;
  os << what << ": max deviation " << seen << " > " << tol;
  return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, bool full) {
  Checker ck;
  const int n_pairs = full ? 200 : 40;
  const auto grid = eps_grid(-4.0, 4.0, 21);

  ck.run("pld-profile-agreement", [&] {
    PairSampler sampler(seed);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(3 + i % 3, i % 4 == 0 ? 0.25 : 0.0);
      const Pld pld = pld_from_discrete(pair);
      for (double e : grid) {
        worst = std::max(worst, std::abs(profile_from_pld(pld, e) -
                                         profile_from_discrete(pair, e)));
      }
    }
    return check_max(worst, 1e-12, "PLD route vs hockey-stick sum");
  });

  ck.run("profile-reversal", [&] {
    PairSampler sampler(seed + 1);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(3 + i % 3, i % 4 == 0 ? 0.25 : 0.0);
      const auto rev = reverse_profile(discrete_profile(pair));
      const auto sw = pair.swapped();
      for (double e : grid) {
        worst =
            std::max(worst, std::abs(rev(e) - profile_from_discrete(sw, e)));
      }
    }
    return check_max(worst, 1e-12, "reversed profile vs swapped pair");
  });

  ck.run("pld-reversal-swap", [&] {
    PairSampler sampler(seed + 2);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(4, i % 3 == 0 ? 0.3 : 0.0);
      const Pld lhs = reverse_pld(pld_from_discrete(pair));
      const Pld rhs = pld_from_discrete(pair.swapped());
      if (lhs.atoms.size() != rhs.atoms.size()) {
        return std::string("atom counts differ after reversal");
      }
      for (std::size_t j = 0; j < lhs.atoms.size(); ++j) {
        worst = std::max(worst, std::abs(lhs.atoms[j].z - rhs.atoms[j].z));
        worst =
            std::max(worst, std::abs(lhs.atoms[j].mass - rhs.atoms[j].mass));
      }
      worst = std::max(worst, std::abs(lhs.mass_pos_inf - rhs.mass_pos_inf));
    }
    return check_max(worst, 1e-9, "reverse_pld vs PLD of swapped pair");
  });

  ck.run("pld-reversal-involution", [&] {
    PairSampler sampler(seed + 3);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(4);  // no zeros: mass_pos_inf = 0
      const Pld x = pld_from_discrete(pair);
      const Pld back = reverse_pld(reverse_pld(x));
      if (back.atoms.size() != x.atoms.size()) {
        return std::string("atom count changed through double reversal");
      }
      for (std::size_t j = 0; j < x.atoms.size(); ++j) {
        worst = std::max(worst, std::abs(back.atoms[j].z - x.atoms[j].z));
        worst = std::max(worst, std::abs(back.atoms[j].mass - x.atoms[j].mass));
      }
    }
    return check_max(worst, 1e-12, "double reversal");
  });

  ck.run("tail-form-equivalence", [&] {
    PairSampler sampler(seed + 4);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(4, i % 3 == 0 ? 0.3 : 0.0);
      const Pld pld = pld_from_discrete(pair);
      const Pld rev = reverse_pld(pld);
      for (double e : grid) {
        // Tail form Pr[Z > eps] - e^eps Pr[Z' < -eps]; valid off atoms.
        bool on_atom = false;
        for (const PldAtom& a : pld.atoms) {
          if (std::abs(a.z - e) < 1e-9) on_atom = true;
        }
        if (on_atom) continue;
        double tail_z = pld.mass_pos_inf;
        for (const PldAtom& a : pld.atoms) {
          if (a.z > e) tail_z += a.mass;
        }
        double tail_rev = 0.0;  // Z' < -eps never includes the +inf mass
        for (const PldAtom& a : rev.atoms) {
          if (a.z < -e) tail_rev += a.mass;
        }
        const double tail_form = tail_z - std::exp(e) * tail_rev;
        worst = std::max(worst, std::abs(tail_form - profile_from_pld(pld, e)));
      }
    }
    return check_max(worst, 1e-12, "expectation form vs tail form");
  });

  ck.run("monotonicity-and-floor", [&] {
    PairSampler sampler(seed + 5);
    std::vector<PrivacyProfile> profs;
    profs.push_back(gaussian_profile_curve(GaussianParams{0.5}));
    profs.push_back(rr_profile_curve(RRParams{1.0, 0.05}));
    profs.push_back(discrete_profile(sampler.sample(4, 0.25)));
    profs.push_back(poisson_subsample_profile(rr_profile_curve(RRParams{0.7, 0.0}),
                                              SubsampleParams{0.4}));
    for (const auto& prof : profs) {
      double prev = 2.0;
      for (int i = 0; i <= 1000; ++i) {
        const double e = -8.0 + 16.0 * double(i) / 1000.0;
        const double d = prof(e);
        if (d > prev + 1e-12) return std::string("profile not non-increasing");
        if (d < floor_delta(e) - 1e-12) return std::string("profile below floor");
        prev = d;
      }
    }
    return std::string();
  });

  ck.run("renyi-conjugate-symmetry", [&] {
    PairSampler sampler(seed + 6);
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(4);
      const Pld pld = pld_from_discrete(pair);
      for (double re : {-1.5, 0.5, 2.0, 3.0}) {
        for (double im : {0.5, 1.0, 4.0}) {
          const std::complex<double> q{re, im};
          const auto a = renyi_E_from_pld(pld, std::conj(q));
          const auto b = std::conj(renyi_E_from_pld(pld, q));
          worst = std::max(worst, std::abs(a - b));
        }
      }
    }
    return check_max(worst, 1e-12, "E at conj(q) vs conj(E at q)");
  });

  ck.run("tradeoff-reversal", [&] {
    PairSampler sampler(seed + 7);
    std::vector<double> beta_grid;
    for (int i = 0; i <= 10; ++i) beta_grid.push_back(double(i) / 10.0);
    for (int i = 0; i < n_pairs; ++i) {
      const auto pair = sampler.sample(3 + i % 3, i % 4 == 0 ? 0.25 : 0.0);
      if (!check_tradeoff_reversal(pair, beta_grid)) {
        return std::string("trade-off inverse mismatch on a sampled pair");
      }
    }
    return std::string();
  });

  ck.run("recursion-vs-closed-form", [&] {
    PairSampler sampler(seed + 8);
    double worst = 0.0;
    for (std::int64_t k : {1, 2, 5, 20}) {
      const std::vector<PointGuarantee> gs(std::size_t(k),
                                           PointGuarantee{0.1, 1e-8});
      const SignedAtomBook book(gs);
      for (int i = 0; i < 50; ++i) {
        const double t = -5.0 + sampler.uniform() * (3.0 * double(k) * 0.1 + 5.0);
        worst = std::max(worst, std::abs(book.evaluate(t) -
                                         compose_homogeneous(0.1, 1e-8, k, t)));
      }
    }
    return check_max(worst, 1e-12, "recursion vs binomial closed form");
  });

  ck.run("composition-brute-force", [&] {
    const int kmax = full ? 3 : 2;
    const RRParams options[2] = {RRParams{std::log(2.0), 0.0},
                                 RRParams{1.0, 0.1}};
    double worst = 0.0;
    const auto tgrid = eps_grid(-4.0, 4.0, 25);
    for (int k = 1; k <= kmax; ++k) {
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<PointGuarantee> gs;
        std::vector<DiscretePair> pairs;
        for (int j = 0; j < k; ++j) {
          const RRParams& rr = options[(mask >> j) & 1];
          gs.push_back(PointGuarantee{rr.eps0, rr.delta0});
          pairs.push_back(rr_discrete_pair(rr));
        }
        const auto product = product_pair(pairs);
        const SignedAtomBook book(gs);
        for (double t : tgrid) {
          worst = std::max(worst, std::abs(book.evaluate(t) -
                                           profile_from_discrete(product, t)));
        }
      }
    }
    return check_max(worst, 1e-12, "recursion vs product brute force");
  });

  ck.run("kernel-route-vs-recursion", [&] {
    const RRParams a{std::log(2.0), 0.0};
    const RRParams b{1.0, 0.05};
    const Pld kernel_b = pld_kernel_from_profile(rr_profile_curve(b));
    const auto composed =
        compose_profile_with_kernel(rr_profile_curve(a), kernel_b);
    const std::vector<PointGuarantee> gs{{a.eps0, a.delta0},
                                         {b.eps0, b.delta0}};
    const SignedAtomBook book(gs);
    double worst = 0.0;
    for (double t : eps_grid(-4.0, 4.0, 40)) {
      worst = std::max(worst, std::abs(composed(t) - book.evaluate(t)));
    }
    return check_max(worst, 1e-10, "kernel convolution vs recursion");
  });

  ck.run("composition-order-invariance", [&] {
    const std::vector<PointGuarantee> base{{0.3, 0.01}, {0.9, 0.0}, {0.1, 0.05}};
    std::vector<PointGuarantee> perm = base;
    double worst = 0.0;
    const auto tg = eps_grid(-3.0, 4.0, 15);
    std::sort(perm.begin(), perm.end(),
              [](const PointGuarantee& x, const PointGuarantee& y) {
                return x.eps < y.eps;
              });
    for (double t : tg) {
      worst = std::max(worst, std::abs(compose_point_guarantees(base, t) -
                                       compose_point_guarantees(perm, t)));
    }
    return check_max(worst, 1e-12, "permutation invariance");
  });

  ck.run("composition-monotonic-in-k", [&] {
    for (double t : eps_grid(-2.0, 3.0, 9)) {
      double prev = -1.0;
      for (std::int64_t k = 0; k <= 12; ++k) {
        const double d = compose_homogeneous(0.2, 1e-4, k, t);
        if (d < prev - 1e-12) {
          return std::string("delta not non-decreasing in k");
        }
        prev = d;
      }
    }
    return std::string();
  });

  ck.run("renyi-additivity-on-composed", [&] {
    const auto prof1 = gaussian_profile_curve(GaussianParams{0.25});
    const Pld kernel2 =
        pld_kernel_from_profile(gaussian_profile_curve(GaussianParams{0.5}));
    const auto composed = compose_profile_with_kernel(prof1, kernel2);
    double worst = 0.0;
    for (double q : {1.5, 2.0}) {
      const auto rho =
          renyi_rho_from_profile(composed, std::complex<double>(q, 0.0));
      worst = std::max(worst, std::abs(rho.real() - 0.75 * q));
      worst = std::max(worst, std::abs(rho.imag()));
    }
    return check_max(worst, 1e-5, "composed Gaussian Renyi vs sum of kappa*q");
  });

  ck.run("subsample-exactness", [&] {
    PairSampler sampler(seed + 9);
    const int n = full ? 100 : 25;
    double worst = 0.0;
    const auto eg = eps_grid(-3.0, 3.0, full ? 100 : 25);
    for (int i = 0; i < n; ++i) {
      const auto pair = sampler.sample(3 + i % 3, i % 5 == 0 ? 0.2 : 0.0);
      for (double lambda : {0.1, 0.3, 0.5, 0.9}) {
        const auto sub = poisson_subsample_profile(discrete_profile(pair),
                                                   SubsampleParams{lambda});
        // Mixture oracle: P = lambda*P_IN + (1-lambda)*Q vs Q.
        std::vector<double> mix(pair.size());
        for (std::size_t j = 0; j < pair.size(); ++j) {
          mix[j] = lambda * pair.p()[j] + (1.0 - lambda) * pair.q()[j];
        }
        const DiscretePair mixed(mix, pair.q());
        for (double e : eg) {
          worst = std::max(worst,
                           std::abs(sub(e) - profile_from_discrete(mixed, e)));
        }
      }
    }
    return check_max(worst, 1e-12, "subsampled curve vs mixture brute force");
  });

  ck.run("subsample-breakpoint-continuity", [&] {
    double worst = 0.0;
    for (double lambda : {0.1, 0.5, 0.9}) {
      const auto sub = poisson_subsample_profile(
          rr_profile_curve(RRParams{std::log(2.0), 0.0}),
          SubsampleParams{lambda});
      const double bp = std::log1p(-lambda);
      worst = std::max(worst, std::abs(sub(bp - 1e-11) - sub(bp + 1e-11)));
    }
    return check_max(worst, 1e-10, "seam at log(1-lambda)");
  });

  ck.run("subsample-amplification", [&] {
    const auto base = rr_profile_curve(RRParams{1.0, 0.01});
    for (double lambda : {0.1, 0.5, 0.9}) {
      const auto sub =
          poisson_subsample_profile(base, SubsampleParams{lambda});
      for (double e : eps_grid(0.0, 4.0, 40)) {
        if (sub(e) > base(e) + 1e-12) {
          return std::string("subsampling failed to amplify");
        }
      }
    }
    return std::string();
  });

  ck.run("subsample-reversal-fidelity", [&] {
    PairSampler sampler(seed + 10);
    double worst = 0.0;
    for (int i = 0; i < (full ? 50 : 15); ++i) {
      const auto pair = sampler.sample(3);
      for (double lambda : {0.3, 0.7}) {
        const auto rev = subsampled_reverse_profile(discrete_profile(pair),
                                                    SubsampleParams{lambda});
        std::vector<double> mix(pair.size());
        for (std::size_t j = 0; j < pair.size(); ++j) {
          mix[j] = lambda * pair.p()[j] + (1.0 - lambda) * pair.q()[j];
        }
        const DiscretePair swapped_mix(pair.q(), mix);
        for (double e : eps_grid(-2.0, 2.0, 21)) {
          worst = std::max(
              worst, std::abs(rev(e) - profile_from_discrete(swapped_mix, e)));
        }
      }
    }
    return check_max(worst, 1e-12, "reversal vs swapped-mixture oracle");
  });

  ck.run("laplace-floor-closed-form", [&] {
    const auto floor_prof = PrivacyProfile::floor_profile();
    double worst = 0.0;
    for (const std::complex<double> s :
         {std::complex<double>(-0.5, 0.0), std::complex<double>(-2.0, 1.5),
          std::complex<double>(-0.25, -3.0)}) {
      const auto b = bilateral_laplace_of_profile(floor_prof, s);
      worst = std::max(worst, std::abs(b - 1.0 / (s * (s - 1.0))));
    }
    return check_max(worst, 1e-12, "floor transform vs 1/(s(s-1))");
  });

  ck.run("laplace-rr-vs-analytic", [&] {
    const double e0 = std::log(2.0);
    const auto prof = rr_profile_curve(RRParams{e0, 0.0});
    double worst = 0.0;
    for (double q : {-2.0, -0.5, 1.5, 2.0, 5.0}) {
      const auto viaB =
          renyi_rho_from_profile(prof, std::complex<double>(q, 0.0));
      const auto direct = rr_renyi(e0, std::complex<double>(q, 0.0));
      worst = std::max(worst, std::abs(viaB - direct));
    }
    return check_max(worst, 1e-8, "numeric transform vs analytic RR curve");
  });

  ck.run("laplace-gaussian-linearity", [&] {
    double worst = 0.0;
    for (double kappa : {0.125, 0.5, 2.0}) {
      const auto prof = gaussian_profile_curve(GaussianParams{kappa});
      for (double q : {1.5, 2.0, 5.0}) {
        const auto rho =
            renyi_rho_from_profile(prof, std::complex<double>(q, 0.0));
        worst = std::max(worst, std::abs(rho.real() - kappa * q));
        worst = std::max(worst, std::abs(rho.imag()));
      }
    }
    return check_max(worst, 1e-6, "numeric rho vs kappa*q");
  });

  ck.run("bromwich-gamma-independence", [&] {
    const auto curve = gaussian_renyi_curve(GaussianParams{0.5});
    double worst = 0.0;
    for (double e : {-1.0, 0.0, 1.0, 3.0}) {
      BromwichConfig c1;
      c1.gamma = -0.5;
      BromwichConfig c2;
      c2.gamma = -2.0;
      worst = std::max(worst, std::abs(profile_from_renyi(curve, e, c1) -
                                       profile_from_renyi(curve, e, c2)));
    }
    return check_max(worst, 1e-7, "two admissible contours");
  });

  if (full) {
    ck.run("bromwich-roundtrip", [&] {
      double worst = 0.0;
      for (double kappa : {0.25, 0.5, 2.0}) {
        const auto curve =
            renyi_curve_from_profile(gaussian_profile_curve(GaussianParams{kappa}));
        for (double e : {-2.0, -1.0, 0.0, 1.0, 3.0, 6.0}) {
          const double inv = profile_from_renyi(curve, e);
          worst = std::max(
              worst, std::abs(inv - gaussian_profile(GaussianParams{kappa}, e)));
        }
      }
      return check_max(worst, 1e-5, "invert(transform(profile)) vs profile");
    });
  }

  ck.run("dominance-one-way", [&] {
    PairSampler sampler(seed + 11);
    const int n = full ? 1000 : 100;
    const auto eg = eps_grid(-6.0, 6.0, 101);
    const std::vector<double> qg{1.1, 2.0, 5.0, 10.0};
    int ordered = 0;
    for (int i = 0; i < n; ++i) {
      const auto a = sampler.sample(3);
      const auto b = sampler.sample(3);
      const auto rel =
          check_dominance(discrete_profile(a), discrete_profile(b), eg);
      if (rel.order == Dominance::kCrossing) continue;
      ++ordered;
      const auto ca = renyi_curve_from_pld(pld_from_discrete(a));
      const auto cb = renyi_curve_from_pld(pld_from_discrete(b));
      const bool renyi_ok = rel.order == Dominance::kDominated
                                ? check_renyi_dominance(ca, cb, qg)
                                : check_renyi_dominance(cb, ca, qg);
      if (!renyi_ok) {
        return std::string("profile dominance without Renyi dominance");
      }
    }
    if (ordered == 0) return std::string("no ordered instances sampled");
    return std::string();
  });

  ck.run("grid-accountant-exact-atoms", [&] {
    const RRParams rr{0.4, 0.002};
    const Pld kernel = pld_from_discrete(rr_discrete_pair(rr));
    const auto eg = eps_grid(-2.0, 4.0, 30);
    const auto res = grid_accountant(kernel, 7, eg, 0.0);
    const std::vector<PointGuarantee> gs(7, PointGuarantee{rr.eps0, rr.delta0});
    const SignedAtomBook book(gs);
    double worst = 0.0;
    for (std::size_t i = 0; i < eg.size(); ++i) {
      worst = std::max(worst, std::abs(res.delta[i] - book.evaluate(eg[i])));
    }
    return check_max(worst, 1e-12, "atom accountant vs recursion");
  });

  if (full) {
    ck.run("grid-accountant-gaussian", [&] {
      double worst = 0.0;
      for (std::int64_t k : {2, 10}) {
        const Pld kernel = gaussian_pld(GaussianParams{0.5}, 1e-3, 40.0);
        const auto eg = eps_grid(-2.0, 6.0, 33);
        const auto res = grid_accountant(kernel, k, eg, 0.0);
        for (std::size_t i = 0; i < eg.size(); ++i) {
          const double exact =
              gaussian_profile(GaussianParams{0.5 * double(k)}, eg[i]);
          worst = std::max(worst, std::abs(res.delta[i] - exact));
        }
      }
      return check_max(worst, 1e-4, "grid accountant vs analytic k*kappa");
    });
  }

  return ck.results;
}

}  // namespace lapdp
