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

#include "lapdp/core.hpp"

namespace lapdp {

// kappa = ||mu - mu'||^2 / (2 sigma^2), in nats.
struct GaussianParams {
  double kappa = 0.0;
};

struct RRParams {
  double eps0 = 0.0;
  double delta0 = 0.0;

  void validate() const;
};

// Standard normal survival function and its logarithm. The log form stays
// finite far past the erfc underflow point (Mills-ratio continued fraction
// for large arguments), which the far-tail profile regime needs.
double norm_sf(double x);
double log_norm_sf(double x);

// Phi_bar((eps-k)/sqrt(2k)) - e^eps Phi_bar((eps+k)/sqrt(2k)), clamped to
// [0,1]. Valid for all real eps; the expression is its own reversal.
double gaussian_profile(const GaussianParams& params, double eps);
// kappa = 0 degenerates to the floor profile instead of an error.
PrivacyProfile gaussian_profile_curve(const GaussianParams& params);

// rho = kappa * q; E_q = e^{(q-1) kappa q}.
std::complex<double> gaussian_renyi(const GaussianParams& params,
                                    std::complex<double> q);
RenyiCurve gaussian_renyi_curve(const GaussianParams& params);

// The Gaussian PLD N(kappa, 2 kappa) sampled on a uniform grid spanning
// n_std standard deviations. Truncation mass goes to mass_pos_inf, so the
// gridded object upper-bounds delta.
Pld gaussian_pld(const GaussianParams& params, double step = 1e-3,
                 double n_std = 40.0);

// Three-branch randomized-response profile; left-continuous at the knots.
double rr_profile(const RRParams& params, double t);
PrivacyProfile rr_profile_curve(const RRParams& params);

// The explicit four-outcome output pair of the randomized response
// mechanism (delta, (1-delta)e^eps0/(e^eps0+1), (1-delta)/(e^eps0+1), 0)
// versus its mirror image.
DiscretePair rr_discrete_pair(const RRParams& params);

// rho(q) of (eps0, 0)-randomized response, principal log branch; valid for
// complex q with Re(q) outside {0, 1}.
std::complex<double> rr_renyi(double eps0, std::complex<double> q);
RenyiCurve rr_renyi_curve(double eps0);

// Worst-case profile over all (eps0, delta0)-DP pairs, in both directions:
// the randomized-response curve itself.
PrivacyProfile dominating_profile_for_point_dp(double eps0, double delta0);

}  // namespace lapdp
