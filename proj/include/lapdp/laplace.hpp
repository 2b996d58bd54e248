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
#include <utility>

#include "lapdp/core.hpp"

namespace lapdp {

// Contour and truncation parameters for the Bromwich inversion. gamma is
// the contour abscissa on the s-plane (s = 1 - q); omega_max is the initial
// truncation of the imaginary range, doubled until the result stabilizes.
struct BromwichConfig {
  double gamma = -1.0;
  double omega_max = 64.0;
  double quad_tol = 1e-8;

  void validate() const;
};

struct BromwichResult {
  double delta = 0.0;          // clamped to [0, 1]
  double raw = 0.0;            // unclamped real part
  double tail_estimate = 0.0;  // last doubling increment
  double imag_residue = 0.0;   // conjugate-symmetry defect estimate
  bool imag_warning = false;   // residue exceeded 100 * quad_tol
};

// Open strip of Re(s) where both tails of int e^{-st} delta(t) dt decay,
// probed numerically. Empty (lo >= hi) when no s converges.
struct RocStrip {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

// int_{-inf}^{inf} e^{-st} delta(t) dt. The left tail, where every profile
// is 1 - c e^t, is evaluated in closed form (this is what extends the
// usable orders past the plain convergence strip); interior pieces are
// integrated adaptively between knots; the right tail is the exact
// constant-branch term when the profile has one, and panel-marched until
// the contribution falls below tolerance otherwise.
std::complex<double> bilateral_laplace_of_profile(const PrivacyProfile& prof,
                                                  std::complex<double> s);

// E_q = q(q-1) B{delta}(1-q). Orders are admitted per the one-sided mass
// structure of the profile: Re(q) >= 1 needs no mass at +inf, Re(q) <= 0
// needs none on the reversed side, and a profile with both masses positive
// has no admissible order at all.
std::complex<double> renyi_E_from_profile(const PrivacyProfile& prof,
                                          std::complex<double> q);

// rho = log(E_q)/(q-1), principal branch.
std::complex<double> renyi_rho_from_profile(const PrivacyProfile& prof,
                                            std::complex<double> q);

RenyiCurve renyi_curve_from_profile(PrivacyProfile prof);

// Bromwich inversion of a Renyi curve back to delta(eps).
BromwichResult profile_from_renyi_detailed(const RenyiCurve& curve, double eps,
                                           const BromwichConfig& cfg);
double profile_from_renyi(const RenyiCurve& curve, double eps,
                          const BromwichConfig& cfg = BromwichConfig{});

RocStrip estimate_roc(const PrivacyProfile& prof);

}  // namespace lapdp
