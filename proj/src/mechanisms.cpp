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
#include "lapdp/mechanisms.hpp"

#include <algorithm>
#include <cmath>

namespace lapdp {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

void RRParams::validate() const {
  if (!(eps0 >= 0.0) || !std::isfinite(eps0)) {
    throw InvalidArgumentError("eps0 must be finite and >= 0");
  }
  if (!(delta0 >= 0.0 && delta0 <= 1.0)) {
    throw InvalidArgumentError("delta0 must lie in [0, 1]");
  }
}

double norm_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double log_norm_sf(double x) {
  if (x < 8.0) {
    return std::log(norm_sf(x));
  }
  // Mills ratio R(x) = Phi_bar(x)/phi(x) via the Laplace continued fraction
  // 1/(x + 1/(x + 2/(x + 3/(...)))); 48 levels reach machine precision for
  // x >= 8.
  double cf = 0.0;
  for (int k = 48; k >= 1; --k) {
    cf = double(k) / (x + cf);
  }
  const double mills = 1.0 / (x + cf);
  return -0.5 * x * x - kHalfLog2Pi + std::log(mills);
}

double gaussian_profile(const GaussianParams& params, double eps) {
  if (!(params.kappa > 0.0)) {
    throw InvalidArgumentError("kappa must be > 0");
  }
  const double spread = std::sqrt(2.0 * params.kappa);
  const double la = log_norm_sf((eps - params.kappa) / spread);
  const double lb = eps + log_norm_sf((eps + params.kappa) / spread);
  // delta = e^la - e^lb with lb < la; log-space keeps the difference
  // positive down past 1e-300 in the far-eps regime.
  const double r = lb - la;
  if (r >= 0.0) return 0.0;
  const double v = std::exp(la + std::log1p(-std::exp(r)));
  return std::clamp(v, 0.0, 1.0);
}

PrivacyProfile gaussian_profile_curve(const GaussianParams& params) {
  if (params.kappa == 0.0) {
    return PrivacyProfile::floor_profile();  // identity element
  }
  if (!(params.kappa > 0.0)) {
    throw InvalidArgumentError("kappa must be >= 0");
  }
  const GaussianParams p = params;
  return PrivacyProfile::analytic(
      [p](double eps) { return gaussian_profile(p, eps); }, {},
      LeftTail{1.0, false}, RightTail{0.0, false});
}

std::complex<double> gaussian_renyi(const GaussianParams& params,
                                    std::complex<double> q) {
  if (q == std::complex<double>(0.0) || q == std::complex<double>(1.0)) {
    throw SingularOrderError("rho is singular at q in {0, 1}");
  }
  return params.kappa * q;
}

RenyiCurve gaussian_renyi_curve(const GaussianParams& params) {
  RenyiCurve curve;
  const double kappa = params.kappa;
  curve.eval_E = [kappa](std::complex<double> q) {
    return std::exp((q - 1.0) * kappa * q);
  };
  return curve;
}

Pld gaussian_pld(const GaussianParams& params, double step, double n_std) {
  if (!(params.kappa > 0.0)) {
    throw InvalidArgumentError("kappa must be > 0");
  }
  if (!(step > 0.0) || !(n_std > 0.0)) {
    throw InvalidArgumentError("step and n_std must be > 0");
  }
  const double mean = params.kappa;
  const double sigma = std::sqrt(2.0 * params.kappa);
  // Step-aligned grid origin so downstream accountants re-bin losslessly.
  const double lo = std::round((mean - n_std * sigma) / step) * step;
  const std::size_t n = std::size_t((2.0 * n_std * sigma) / step) + 1;
  PldGrid grid;
  grid.z_min = lo;
  grid.step = step;
  grid.densities.resize(n);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (grid.z_at(i) - mean) / sigma;
    grid.densities[i] = norm * std::exp(-0.5 * x * x);
    mass += grid.densities[i];
  }
  mass *= step;
  Pld pld;
  if (mass > 1.0) {
    for (double& d : grid.densities) d /= mass;
  } else {
    pld.mass_pos_inf = 1.0 - mass;  // pessimistic: truncation escapes upward
  }
  pld.grid = std::move(grid);
  return pld;
}

double rr_profile(const RRParams& params, double t) {
  params.validate();
  const double e0 = params.eps0, d0 = params.delta0;
  if (t > e0) return d0;
  if (t > -e0) return 1.0 - (std::exp(t) + 1.0) * (1.0 - d0) / (std::exp(e0) + 1.0);
  return 1.0 - std::exp(t) * (1.0 - d0);
}

PrivacyProfile rr_profile_curve(const RRParams& params) {
  params.validate();
  const RRParams p = params;
  std::vector<double> knots =
      p.eps0 > 0.0 ? std::vector<double>{-p.eps0, p.eps0} : std::vector<double>{0.0};
  return PrivacyProfile::analytic([p](double t) { return rr_profile(p, t); },
                                  std::move(knots),
                                  LeftTail{1.0 - p.delta0, true},
                                  RightTail{p.delta0, true});
}

DiscretePair rr_discrete_pair(const RRParams& params) {
  params.validate();
  const double d = params.delta0;
  const double hi = (1.0 - d) * std::exp(params.eps0) / (std::exp(params.eps0) + 1.0);
  const double lo = (1.0 - d) / (std::exp(params.eps0) + 1.0);
  return DiscretePair({d, hi, lo, 0.0}, {0.0, lo, hi, d});
}

std::complex<double> rr_renyi(double eps0, std::complex<double> q) {
  if (!(eps0 >= 0.0)) {
    throw InvalidArgumentError("eps0 must be >= 0");
  }
  if (q.real() == 0.0 || q.real() == 1.0) {
    throw SingularOrderError("rr_renyi is singular on Re(q) in {0, 1}");
  }
  const double w = std::exp(eps0) / (1.0 + std::exp(eps0));
  const std::complex<double> E =
      w * std::exp(-q * eps0) + (1.0 - w) * std::exp(q * eps0);
  return std::log(E) / (q - 1.0);
}

RenyiCurve rr_renyi_curve(double eps0) {
  RenyiCurve curve;
  curve.eval_E = [eps0](std::complex<double> q) {
    const double w = std::exp(eps0) / (1.0 + std::exp(eps0));
    return w * std::exp(-q * eps0) + (1.0 - w) * std::exp(q * eps0);
  };
  return curve;
}

PrivacyProfile dominating_profile_for_point_dp(double eps0, double delta0) {
  return rr_profile_curve(RRParams{eps0, delta0});
}

}  // namespace lapdp
