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
#include "lapdp/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "lapdp/parallel.hpp"
#include "lapdp/quadrature.hpp"

namespace lapdp {

namespace {

using cplx = std::complex<double>;

constexpr double kTailMassTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

// Finds a point where the left asymptote delta(t) = 1 - c e^t has
// stabilized, for profiles whose left branch is not exact (Gaussian-like
// smooth curves). Returns {t, c}. Fitting c through (1 - delta(t)) e^{-t}
// carries e^{|t|}-amplified rounding, so the match tolerance is modest;
// the c term of the closed form is scaled by e^{(1 - Re s) t} at the
// accepted point, which makes that precision immaterial.
std::pair<double, double> probe_left_asymptote(const PrivacyProfile& prof) {
  const double anchor = prof.knots().empty() ? 0.0 : prof.knots().front();
  double prev_c = 0.0;
  bool have_prev = false;
  for (double off = 4.0; off <= 64.0; off += 4.0) {
    const double t = anchor - off;
    const double c = (1.0 - prof(t)) * std::exp(-t);
    if (have_prev && std::abs(c - prev_c) <= 1e-6 * std::max(1.0, std::abs(c))) {
      return {t, c};
    }
    prev_c = c;
    have_prev = true;
  }
  throw DivergenceError("left tail does not reach its 1 - c e^t asymptote");
}

// Closed form of int_{-inf}^{T} e^{-st} (1 - c e^t) dt. For Re(s) < 0 this
// is the convergent integral; elsewhere it is the unique analytic
// continuation, which is what carries the transform to orders the plain
// strip excludes.
cplx left_tail_closed_form(double T, double c, cplx s) {
  if (std::abs(s.real() * T) > 690.0 || std::abs((1.0 - s.real()) * T) > 690.0) {
    throw DivergenceError("left-tail closed form overflows at this order");
  }
  return std::exp(-s * T) / (-s) - c * std::exp((1.0 - s) * T) / (1.0 - s);
}

cplx integrate_piece(const PrivacyProfile& prof, cplx s, double a, double b) {
  auto f = [&](double t) { return std::exp(-s * t) * prof(t); };
  const double scale =
      (std::abs(f(a)) + std::abs(f(0.5 * (a + b))) + std::abs(f(b))) *
      (b - a);
  const double tol = 1e-13 * std::max(scale, 1e-30);
  return quad::integrate(f, a, b, tol);
}

// Profiles of discrete pairs (and everything assembled from them,
// subsampling included) are a + b e^t between knots; their transform has a
// closed form per piece. Returns the per-piece (a, b) or nullopt if the
// profile is not of this shape.
struct ExpPiece {
  double a = 0.0;
  double b = 0.0;
};

std::optional<std::vector<ExpPiece>> fit_piecewise_exponential(
    const PrivacyProfile& prof) {
  const std::vector<double>& knots = prof.knots();
  if (knots.empty() || !prof.left_tail().exact || !prof.right_tail().exact) {
    return std::nullopt;
  }
  std::vector<ExpPiece> pieces;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double g = knots[i + 1] - knots[i];
    if (g <= 0.0) {
      pieces.push_back({0.0, 0.0});
      continue;
    }
    const double t1 = knots[i] + 0.25 * g;
    const double t2 = knots[i] + 0.50 * g;
    const double t3 = knots[i] + 0.75 * g;
    const double e1 = std::exp(t1), e2 = std::exp(t2), e3 = std::exp(t3);
    const double d1 = prof(t1), d2 = prof(t2), d3 = prof(t3);
    const double b = (d1 - d2) / (e1 - e2);
    const double a = d1 - b * e1;
    if (std::abs(a + b * e3 - d3) > 1e-11 * std::max(1.0, std::abs(d3))) {
      return std::nullopt;
    }
    pieces.push_back({a, b});
  }
  return pieces;
}

// int_{t0}^{t1} e^{-st} (a + b e^t) dt.
cplx exp_piece_transform(const ExpPiece& piece, double t0, double t1, cplx s) {
  const cplx lo = std::exp(-s * t0), hi = std::exp(-s * t1);
  const cplx lo1 = std::exp((1.0 - s) * t0), hi1 = std::exp((1.0 - s) * t1);
  return piece.a * (lo - hi) / s + piece.b * (hi1 - lo1) / (1.0 - s);
}

}  // namespace

void BromwichConfig::validate() const {
  if (gamma == 0.0 || gamma == 1.0) {
    throw InvalidArgumentError("gamma must avoid the singularities {0, 1}");
  }
  if (!(omega_max >= 10.0)) {
    throw InvalidArgumentError("omega_max must be >= 10");
  }
  if (!(quad_tol > 0.0)) {
    throw InvalidArgumentError("quad_tol must be > 0");
  }
}

std::complex<double> bilateral_laplace_of_profile(const PrivacyProfile& prof,
                                                  std::complex<double> s) {
  if (s == cplx(0.0) || s == cplx(1.0)) {
    throw SingularOrderError("transform has poles at s in {0, 1}");
  }

  std::vector<double> pts = prof.knots();
  cplx acc{0.0, 0.0};

  // Left tail.
  if (prof.left_tail().exact && !pts.empty()) {
    acc += left_tail_closed_form(pts.front(), prof.left_tail().coeff, s);
  } else {
    const auto [t_left, c] = probe_left_asymptote(prof);
    if (s.real() > -1e-12) {
      // Without an exact exponential branch the continuation would rest on
      // a fitted c against terms of size e^{|Re s| |t|}; refuse.
      throw DivergenceError("Re(s) >= 0 needs an exact left branch");
    }
    acc += left_tail_closed_form(t_left, c, s);
    pts.insert(pts.begin(), t_left);
  }

  // Interior pieces between knots: closed form where the profile is
  // piecewise a + b e^t, adaptive quadrature otherwise.
  const auto exp_pieces = fit_piecewise_exponential(prof);
  if (exp_pieces && pts.size() == prof.knots().size()) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (pts[i + 1] > pts[i]) {
        acc += exp_piece_transform((*exp_pieces)[i], pts[i], pts[i + 1], s);
      }
    }
  } else {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (pts[i + 1] > pts[i]) {
        acc += integrate_piece(prof, s, pts[i], pts[i + 1]);
      }
    }
  }

  // Right tail.
  const double K = pts.back();
  if (prof.right_tail().exact) {
    const double m_inf = prof.right_tail().limit;
    if (m_inf > 1e-300) {
      if (s.real() < 1e-12) {
        throw DivergenceError(
            "right tail is constant > 0; transform diverges for Re(s) <= 0");
      }
      if (std::abs(s.real() * K) > 690.0) {
        throw DivergenceError("right-tail term overflows at this order");
      }
      acc += m_inf * std::exp(-s * K) / s;
    }
    return acc;
  }

  // Decaying right tail: march until the panels stop mattering.
  cplx tail{0.0, 0.0};
  double prev_mag = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (int j = 0; j < 2000; ++j) {
    const double a = K + double(j);
    const cplx panel = integrate_piece(prof, s, a, a + 1.0);
    tail += panel;
    const double mag = std::abs(panel);
    if (!std::isfinite(mag) || mag > 1e250) {
      throw DivergenceError("right tail fails to decay");
    }
    if (mag > prev_mag) {
      // Only sustained growth signals divergence; oscillatory phases dip
      // and recover.
      if (++growing > 120) {
        throw DivergenceError("right tail fails to decay");
      }
    } else {
      growing = 0;
      if (mag <= 1e-14 * (std::abs(acc + tail) + 1e-300)) {
        return acc + tail;
      }
    }
    prev_mag = mag;
  }
  throw DivergenceError("right tail did not converge within the march cap");
}

namespace {

// Admissibility of an order against the profile's one-sided masses.
void check_order(const PrivacyProfile& prof, cplx q) {
  if (q == cplx(0.0) || q == cplx(1.0)) {
    throw SingularOrderError("rho is singular at q in {0, 1}");
  }
  const double m_inf = prof.right_tail().limit;
  const double m_rev = 1.0 - prof.left_tail().coeff;
  if (m_inf > kTailMassTol && m_rev > kTailMassTol) {
    throw EmptyRocError(
        "profile has mass escaping in both directions; no admissible order");
  }
  if (m_inf > kTailMassTol && q.real() >= 1.0) {
    throw DivergenceError("E_q diverges for Re(q) >= 1 with mass at +inf");
  }
  if (m_rev > kTailMassTol && q.real() <= 0.0) {
    throw DivergenceError(
        "E_q diverges for Re(q) <= 0 with reversed-side mass");
  }
}

}  // namespace

std::complex<double> renyi_E_from_profile(const PrivacyProfile& prof,
                                          std::complex<double> q) {
  check_order(prof, q);
  return q * (q - 1.0) * bilateral_laplace_of_profile(prof, 1.0 - q);
}

std::complex<double> renyi_rho_from_profile(const PrivacyProfile& prof,
                                            std::complex<double> q) {
  return std::log(renyi_E_from_profile(prof, q)) / (q - 1.0);
}

namespace {

// Memo for numerically transformed curves: once |E| has collapsed to the
// rounding floor and stayed there out to several times the frequency where
// that first happened, further-out orders are reported as zero. This
// assumes |E| keeps decaying past the cutoff, which holds for the smooth
// profiles this path computes (the piecewise-exponential ones never reach
// it: their transform is closed-form cheap).
struct DecayCache {
  std::mutex mu;
  double scale = 0.0;
  double first_tiny = std::numeric_limits<double>::infinity();
  double dead_omega = std::numeric_limits<double>::infinity();
};

}  // namespace

RenyiCurve renyi_curve_from_profile(PrivacyProfile prof) {
  RenyiCurve curve;
  const double m_inf = prof.right_tail().limit;
  const double m_rev = 1.0 - prof.left_tail().coeff;
  if (m_inf > kTailMassTol && m_rev > kTailMassTol) {
    curve.roc_lo = curve.roc_hi = 0.0;  // empty
  } else if (m_inf > kTailMassTol) {
    curve.roc_hi = 1.0;
  } else if (m_rev > kTailMassTol) {
    curve.roc_lo = 0.0;
  }
  auto cache = std::make_shared<DecayCache>();
  curve.eval_E = [prof = std::move(prof), cache](cplx q) {
    const double omega = std::abs(q.imag());
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      if (omega >= cache->dead_omega) {
        return cplx{0.0, 0.0};
      }
    }
    const cplx E = renyi_E_from_profile(prof, q);
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      if (omega <= 4.0) {
        cache->scale = std::max(cache->scale, std::abs(E));
      } else if (cache->scale > 0.0 &&
                 std::abs(E) <= 1e-14 * std::max(cache->scale, 1e-300)) {
        cache->first_tiny = std::min(cache->first_tiny, omega);
        if (omega >= 32.0 && omega >= 4.0 * cache->first_tiny) {
          cache->dead_omega = omega;
        }
      } else if (std::abs(E) > 1e-12 * cache->scale) {
        cache->first_tiny = std::numeric_limits<double>::infinity();
      }
    }
    return E;
  };
  return curve;
}

namespace {

// Integrates the Bromwich integrand over [a, b] with fixed-width panels
// evaluated in parallel and summed in index order (deterministic under any
// thread count).
cplx bromwich_block(const RenyiCurve& curve, double eps, double gamma,
                    double a, double b, double panel_width, double tol) {
  const int n = std::max(1, int(std::ceil((b - a) / panel_width)));
  const double h = (b - a) / n;
  std::vector<cplx> panels(n);
  std::exception_ptr failure;
  std::mutex failure_mu;
  parallel::for_each_index(n, [&](std::ptrdiff_t i) {
    try {
      auto f = [&](double omega) {
        const cplx s{gamma, omega};
        return std::exp(s * eps) * curve.eval_E(1.0 - s) / (s * (s - 1.0));
      };
      panels[i] =
          quad::integrate(f, a + h * double(i), a + h * double(i + 1),
                          std::max(1e-17, tol * 1e-4), 12);
    } catch (...) {
      // Exceptions must not unwind out of a parallel region; surface the
      // first one after the loop.
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  cplx sum{0.0, 0.0};
  for (const cplx& p : panels) sum += p;
  return sum;
}

}  // namespace

BromwichResult profile_from_renyi_detailed(const RenyiCurve& curve, double eps,
                                           const BromwichConfig& cfg) {
  cfg.validate();
  if (curve.roc_empty()) {
    throw EmptyRocError("Renyi curve has an empty admissible strip");
  }
  const double q_re = 1.0 - cfg.gamma;
  if (!(q_re > curve.roc_lo && q_re < curve.roc_hi)) {
    throw DivergenceError("contour abscissa outside the admissible strip");
  }

  const double width = kPi / (4.0 * std::max(1.0, std::abs(eps)));
  double omega = std::max(cfg.omega_max, 16.0);
  cplx total = bromwich_block(curve, eps, cfg.gamma, 0.0, omega, width,
                              cfg.quad_tol);
  double increment = std::numeric_limits<double>::infinity();
  for (int doubling = 0; doubling < 22; ++doubling) {
    const cplx block = bromwich_block(curve, eps, cfg.gamma, omega,
                                      2.0 * omega, width, cfg.quad_tol);
    total += block;
    omega *= 2.0;
    increment = std::abs(block) / kPi;
    if (increment < 0.25 * cfg.quad_tol) break;
  }
  if (!(increment < 0.25 * cfg.quad_tol)) {
    throw NonConvergenceError("Bromwich truncation did not stabilize");
  }

  // Conjugate-symmetry spot check across the real axis; a defect means the
  // negative-omega half would not cancel the imaginary part.
  double residue = 0.0;
  for (double frac : {0.125, 0.375, 0.625, 0.875}) {
    const cplx s{cfg.gamma, frac * omega};
    const cplx e_pos = curve.eval_E(1.0 - s);
    const cplx e_neg = curve.eval_E(1.0 - std::conj(s));
    residue = std::max(residue, std::abs(e_neg - std::conj(e_pos)) /
                                    (std::abs(s * (s - 1.0))));
  }
  residue *= omega / (2.0 * kPi);

  BromwichResult result;
  result.raw = total.real() / kPi;
  result.delta = std::clamp(result.raw, 0.0, 1.0);
  result.tail_estimate = increment;
  result.imag_residue = residue;
  result.imag_warning = residue > 100.0 * cfg.quad_tol;
  return result;
}

double profile_from_renyi(const RenyiCurve& curve, double eps,
                          const BromwichConfig& cfg) {
  return profile_from_renyi_detailed(curve, eps, cfg).delta;
}

RocStrip estimate_roc(const PrivacyProfile& prof) {
  const double K = prof.knots().empty() ? 0.0 : prof.knots().back();
  const double m_inf = prof.right_tail().limit;

  // Left tail: delta(t) -> 1, so e^{-st} must vanish as t -> -inf; that
  // pins the upper edge at 0 for every profile.
  const double hi = 0.0;

  double lo = 0.0;
  if (m_inf > kTailMassTol) {
    // Constant right tail needs Re(s) > 0: incompatible with the left
    // constraint, the strip is empty.
    return RocStrip{0.0, 0.0};
  }
  // Logarithmic sweep for the most negative Re(s) whose right tail still
  // decays. Log-space comparison, with probe points pushed out with |s| so
  // a superexponentially decaying profile gets past the e^{-st} growth.
  for (double s_re = -1.0 / 32.0; s_re >= -32.0; s_re *= 2.0) {
    const double t0 = K + std::max(5.0, 4.0 * std::abs(s_re));
    auto log_integrand = [&](double t) {
      const double d = prof(t);
      return d > 0.0 ? -s_re * t + std::log(d)
                     : -std::numeric_limits<double>::infinity();
    };
    const double v1 = log_integrand(t0);
    const double v2 = log_integrand(2.0 * t0 - K);
    const double v3 = log_integrand(4.0 * t0 - K);
    const bool decays = v3 <= v2 && v2 <= v1;
    if (!decays) {
      return RocStrip{lo, hi};
    }
    lo = s_re;
  }
  return RocStrip{-std::numeric_limits<double>::infinity(), hi};
}

}  // namespace lapdp
