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

#include <cmath>
#include <complex>
#include <functional>

namespace lapdp::quad {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (standard tabulated
// values; the embedded 7-point Gauss rule supplies the error estimate).
inline constexpr double kKronrodNodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};

// Gauss-7 weights aligned to the odd Kronrod node indices 1,3,...,13.
inline constexpr double kGaussWeights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct PanelResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
};

template <typename Fn>
PanelResult gk15(const Fn& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::complex<double> kronrod{0.0, 0.0};
  std::complex<double> gauss{0.0, 0.0};
  for (int i = 0; i < 15; ++i) {
    const std::complex<double> v = f(mid + half * kKronrodNodes[i]);
    kronrod += kKronrodWeights[i] * v;
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * v;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

// Adaptive bisection driven by the GK15 error estimate. abs_tol is an
// absolute target for this interval; depth caps runaway refinement on
// kinked integrands.
template <typename Fn>
std::complex<double> integrate(const Fn& f, double a, double b, double abs_tol,
                               int max_depth = 48) {
  const PanelResult whole = gk15(f, a, b);
  if (whole.error <= abs_tol || max_depth <= 0 ||
      !(b - a > 1e-14 * (std::abs(a) + std::abs(b) + 1.0))) {
    return whole.value;
  }
  const double mid = 0.5 * (a + b);
  return integrate(f, a, mid, 0.5 * abs_tol, max_depth - 1) +
         integrate(f, mid, b, 0.5 * abs_tol, max_depth - 1);
}

}  // namespace lapdp::quad
