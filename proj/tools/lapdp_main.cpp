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
//
// lapdp: privacy-accounting CLI.
//
// Subcommands: profile, compose, calibrate, convert, subsample, verify.
// All curves are emitted as CSV (UTF-8, LF, '#' metadata lines, header
// row, 17-significant-digit floats). Exit codes: 0 success, 1 verification
// failure, 2 invalid spec, 3 inapplicable method, 4 resource cap, 5 empty
// ROC.

#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lapdp/composition.hpp"
#include "lapdp/core.hpp"
#include "lapdp/csv.hpp"
#include "lapdp/laplace.hpp"
#include "lapdp/mechanism_spec.hpp"
#include "lapdp/mechanisms.hpp"
#include "lapdp/oracle.hpp"
#include "lapdp/parallel.hpp"
#include "lapdp/subsampling.hpp"
#include "lapdp/verify.hpp"

namespace {

using lapdp::csv::fmt;

struct MethodInapplicableError : lapdp::Error {
  using Error::Error;
};

std::string read_spec_text(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) {
    throw lapdp::InvalidArgumentError("cannot open spec file: " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw lapdp::InvalidArgumentError("cannot open output file: " +
                                      output_path);
  }
  out << text;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (!(lo < hi) || steps < 2) {
    throw lapdp::InvalidArgumentError(
        "grid needs eps-min < eps-max and steps >= 2");
  }
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) {
    g[i] = lo + (hi - lo) * double(i) / double(steps - 1);
  }
  return g;
}

std::pair<long, long> parse_k_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    const long k = std::stol(text);
    return {k, k};
  }
  const long lo = std::stol(text.substr(0, pos));
  const long hi = std::stol(text.substr(pos + 2));
  if (lo < 1 || hi < lo) {
    throw lapdp::InvalidArgumentError("bad k-range: " + text);
  }
  return {lo, hi};
}

std::string spec_summary(const lapdp::CompositionSpec& spec) {
  std::string s;
  for (const auto& m : spec.mechanisms) {
    if (!s.empty()) s += "; ";
    s += m.summary();
  }
  return s;
}

// Shared grid/contour options.
struct CurveOptions {
  double eps_min = -2.0;
  double eps_max = 6.0;
  int steps = 81;
  double gamma = -1.0;
  double omega_max = 64.0;
  double quad_tol = 1e-8;
  std::string output;
  std::string spec_path;
};

void add_common(CLI::App* cmd, CurveOptions* opt, bool with_bromwich) {
  cmd->add_option("spec", opt->spec_path,
                  "composition spec file (JSON); '-' or absent reads stdin");
  cmd->add_option("--eps-min", opt->eps_min, "grid lower bound (nats)");
  cmd->add_option("--eps-max", opt->eps_max, "grid upper bound (nats)");
  cmd->add_option("--steps", opt->steps, "number of grid rows");
  cmd->add_option("--output", opt->output, "output path (default stdout)");
  if (with_bromwich) {
    cmd->add_option("--gamma", opt->gamma, "Bromwich contour abscissa on s");
    cmd->add_option("--omega-max", opt->omega_max,
                    "initial imaginary-range truncation");
    cmd->add_option("--quad-tol", opt->quad_tol, "quadrature tolerance");
  }
}

int run_profile(const CurveOptions& opt) {
  const auto spec = lapdp::parse_composition_spec(read_spec_text(opt.spec_path));
  const auto mechanisms = spec.expanded();
  if (mechanisms.size() != 1) {
    throw lapdp::InvalidArgumentError("profile takes a single descriptor");
  }
  const auto prof = lapdp::profile_curve_for(mechanisms[0]);
  const auto grid = linspace(opt.eps_min, opt.eps_max, opt.steps);
  const auto delta = lapdp::eval_profile_grid(prof, grid);
  std::ostringstream os;
  os << "# lapdp profile\n# spec: " << spec_summary(spec) << "\n";
  os << "epsilon,delta\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << fmt(grid[i]) << "," << fmt(delta[i]) << "\n";
  }
  emit(opt.output, os.str());
  return 0;
}

lapdp::Pld pld_kernel_for_descriptor(const lapdp::MechanismDescriptor& desc) {
  using lapdp::MechanismKind;
  switch (desc.kind) {
    case MechanismKind::kRandomizedResponse:
    case MechanismKind::kPointGuarantee:
      return lapdp::pld_from_discrete(
          lapdp::rr_discrete_pair(lapdp::RRParams{desc.eps0, desc.delta0}));
    case MechanismKind::kGaussian:
      return lapdp::gaussian_pld(lapdp::GaussianParams{desc.kappa}, 1e-3);
    case MechanismKind::kSubsampled:
      throw MethodInapplicableError(
          "oracle method does not cover subsampled descriptors");
  }
  throw lapdp::InvalidArgumentError("unknown mechanism kind");
}

int run_compose(const CurveOptions& opt, const std::string& method) {
  const auto spec = lapdp::parse_composition_spec(read_spec_text(opt.spec_path));
  const auto mechanisms = spec.expanded();
  const auto grid = linspace(opt.eps_min, opt.eps_max, opt.steps);
  std::vector<double> delta;

  if (method == "recursion" || method == "closed-form") {
    std::vector<lapdp::PointGuarantee> gs;
    gs.reserve(mechanisms.size());
    for (const auto& m : mechanisms) {
      try {
        gs.push_back(lapdp::point_guarantee_for(m));
      } catch (const lapdp::InvalidArgumentError&) {
        throw MethodInapplicableError(
            "method needs point-guarantee descriptors");
      }
    }
    if (method == "closed-form") {
      for (const auto& g : gs) {
        if (g.eps != gs[0].eps || g.delta != gs[0].delta) {
          throw MethodInapplicableError(
              "closed-form needs homogeneous point guarantees");
        }
      }
      delta.resize(grid.size());
      const auto k = std::int64_t(gs.size());
      lapdp::parallel::for_each_index(
          std::ptrdiff_t(grid.size()), [&](std::ptrdiff_t i) {
            delta[i] =
                lapdp::compose_homogeneous(gs[0].eps, gs[0].delta, k, grid[i]);
          });
    } else {
      const lapdp::SignedAtomBook book(gs);
      delta.resize(grid.size());
      lapdp::parallel::for_each_index(
          std::ptrdiff_t(grid.size()),
          [&](std::ptrdiff_t i) { delta[i] = book.evaluate(grid[i]); });
    }
  } else if (method == "kernel") {
    auto prof = lapdp::profile_curve_for(mechanisms[0]);
    for (std::size_t i = 1; i < mechanisms.size(); ++i) {
      const auto kernel = lapdp::pld_kernel_from_profile(
          lapdp::profile_curve_for(mechanisms[i]));
      prof = lapdp::compose_profile_with_kernel(prof, kernel);
    }
    delta = lapdp::eval_profile_grid(prof, grid);
  } else if (method == "oracle") {
    try {
      lapdp::Pld acc = pld_kernel_for_descriptor(mechanisms[0]);
      for (std::size_t i = 1; i < mechanisms.size(); ++i) {
        acc = lapdp::convolve_plds(acc, pld_kernel_for_descriptor(mechanisms[i]))
                  .pld;
      }
      delta.resize(grid.size());
      lapdp::parallel::for_each_index(
          std::ptrdiff_t(grid.size()), [&](std::ptrdiff_t i) {
            delta[i] = lapdp::profile_from_pld(acc, grid[i]);
          });
    } catch (const lapdp::GridMismatchError& e) {
      throw MethodInapplicableError(e.what());
    }
  } else {
    throw lapdp::InvalidArgumentError("unknown method: " + method);
  }

  std::ostringstream os;
  os << "# lapdp compose\n# spec: " << spec_summary(spec) << "\n";
  os << "# method: " << method << "\n";
  os << "epsilon,delta\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << fmt(grid[i]) << "," << fmt(delta[i]) << "\n";
  }
  emit(opt.output, os.str());
  return 0;
}

int run_calibrate(const CurveOptions& opt, double budget,
                  const std::string& k_range, bool eps_bounds_set) {
  if (!(budget > 0.0 && budget < 1.0)) {
    throw lapdp::InvalidArgumentError("delta budget must lie in (0, 1)");
  }
  const auto spec = lapdp::parse_composition_spec(read_spec_text(opt.spec_path));
  const auto mechanisms = spec.expanded();
  lapdp::PointGuarantee base;
  try {
    base = lapdp::point_guarantee_for(mechanisms[0]);
  } catch (const lapdp::InvalidArgumentError&) {
    throw MethodInapplicableError(
        "calibrate needs a point-guarantee base mechanism");
  }
  const auto [k_lo, k_hi] = parse_k_range(k_range);

  std::ostringstream os;
  os << "# lapdp calibrate\n# spec: " << spec_summary(spec) << "\n";
  os << "# delta-budget: " << fmt(budget) << "\n";
  os << "k,epsilon\n";
  for (long k = k_lo; k <= k_hi; ++k) {
    auto evaluator = [&](double t) {
      return lapdp::compose_homogeneous(base.eps, base.delta, k, t);
    };
    // Past sum(eps_i) the composed curve is provably flat, so the default
    // bracket covers every attainable crossing.
    const double lo = eps_bounds_set ? opt.eps_min : -2.0;
    const double hi =
        eps_bounds_set ? opt.eps_max : double(k) * base.eps + 2.0;
    try {
      const double eps = lapdp::eps_for_delta(evaluator, budget, {lo, hi});
      os << k << "," << fmt(eps) << "\n";
    } catch (const lapdp::NoCrossingError&) {
      os << k << ",inf\n";
    }
  }
  emit(opt.output, os.str());
  return 0;
}

lapdp::RenyiCurve analytic_renyi_curve_for(
    const lapdp::MechanismDescriptor& desc) {
  using lapdp::MechanismKind;
  switch (desc.kind) {
    case MechanismKind::kGaussian:
      return lapdp::gaussian_renyi_curve(lapdp::GaussianParams{desc.kappa});
    case MechanismKind::kRandomizedResponse:
    case MechanismKind::kPointGuarantee:
      if (desc.delta0 > 0.0) {
        throw lapdp::EmptyRocError(
            "randomized response with delta0 > 0 admits no order");
      }
      return lapdp::rr_renyi_curve(desc.eps0);
    case MechanismKind::kSubsampled:
      throw lapdp::InvalidArgumentError(
          "no analytic Renyi curve for subsampled descriptors");
  }
  throw lapdp::InvalidArgumentError("unknown mechanism kind");
}

int run_convert(const CurveOptions& opt, const std::string& from,
                const std::string& to, bool complex_line_set,
                double complex_line_re_q) {
  const auto spec = lapdp::parse_composition_spec(read_spec_text(opt.spec_path));
  const auto mechanisms = spec.expanded();
  if (mechanisms.size() != 1) {
    throw lapdp::InvalidArgumentError("convert takes a single descriptor");
  }
  const auto& desc = mechanisms[0];
  std::ostringstream os;
  os << "# lapdp convert " << from << " -> " << to << "\n";
  os << "# spec: " << spec_summary(spec) << "\n";

  if (from == "profile" && to == "renyi") {
    const auto curve =
        lapdp::renyi_curve_from_profile(lapdp::profile_curve_for(desc));
    if (curve.roc_empty()) {
      throw lapdp::EmptyRocError("profile admits no Renyi order");
    }
    if (complex_line_set) {
      // E along the complex order line Re(q) = const.
      os << "# complex-line: Re(q) = " << fmt(complex_line_re_q) << "\n";
      os << "omega,re_E,im_E\n";
      const auto omegas = linspace(0.0, opt.omega_max, opt.steps);
      for (double w : omegas) {
        const auto E = curve.eval_E({complex_line_re_q, w});
        os << fmt(w) << "," << fmt(E.real()) << "," << fmt(E.imag()) << "\n";
      }
    } else {
      os << "q,rho\n";
      for (double q : linspace(opt.eps_min, opt.eps_max, opt.steps)) {
        if (!curve.admits({q, 0.0}) || q == 0.0 || q == 1.0) continue;
        const auto rho = curve.rho({q, 0.0});
        os << fmt(q) << "," << fmt(rho.real()) << "\n";
      }
    }
  } else if (from == "renyi" && to == "profile") {
    const auto curve = analytic_renyi_curve_for(desc);
    lapdp::BromwichConfig cfg;
    cfg.gamma = opt.gamma;
    cfg.omega_max = opt.omega_max;
    cfg.quad_tol = opt.quad_tol;
    os << "# gamma: " << fmt(cfg.gamma) << "\n";
    os << "epsilon,delta\n";
    for (double e : linspace(opt.eps_min, opt.eps_max, opt.steps)) {
      os << fmt(e) << "," << fmt(lapdp::profile_from_renyi(curve, e, cfg))
         << "\n";
    }
  } else {
    throw lapdp::InvalidArgumentError("unsupported conversion direction");
  }
  emit(opt.output, os.str());
  return 0;
}

int run_subsample(const CurveOptions& opt, double lambda, bool lambda_set,
                  const std::string& direction) {
  const auto spec = lapdp::parse_composition_spec(read_spec_text(opt.spec_path));
  const auto mechanisms = spec.expanded();
  if (mechanisms.size() != 1) {
    throw lapdp::InvalidArgumentError("subsample takes a single descriptor");
  }
  lapdp::PrivacyProfile inner = lapdp::PrivacyProfile::floor_profile();
  lapdp::SubsampleParams params{lambda};
  if (mechanisms[0].kind == lapdp::MechanismKind::kSubsampled) {
    if (lambda_set) params.lambda = lambda;
    else params.lambda = mechanisms[0].lambda;
    inner = lapdp::profile_curve_for(*mechanisms[0].inner);
  } else {
    if (!lambda_set) {
      throw lapdp::InvalidArgumentError(
          "--lambda is required unless the descriptor is subsampled");
    }
    inner = lapdp::profile_curve_for(mechanisms[0]);
  }
  params.validate();

  const auto grid = linspace(opt.eps_min, opt.eps_max, opt.steps);
  std::vector<double> delta(grid.size());
  if (direction == "remove") {
    const auto prof = lapdp::poisson_subsample_profile(inner, params);
    delta = lapdp::eval_profile_grid(prof, grid);
  } else if (direction == "add") {
    const auto prof = lapdp::subsampled_reverse_profile(inner, params);
    delta = lapdp::eval_profile_grid(prof, grid);
  } else if (direction == "max") {
    const auto fwd = lapdp::poisson_subsample_profile(inner, params);
    const auto rev = lapdp::reverse_profile(fwd);
    lapdp::parallel::for_each_index(
        std::ptrdiff_t(grid.size()), [&](std::ptrdiff_t i) {
          delta[i] = std::max(fwd(grid[i]), rev(grid[i]));
        });
  } else {
    throw lapdp::InvalidArgumentError("direction must be remove, add or max");
  }

  std::ostringstream os;
  os << "# lapdp subsample\n# spec: " << spec_summary(spec) << "\n";
  os << "# lambda: " << fmt(params.lambda) << "\n# direction: " << direction
     << "\n";
  os << "epsilon,delta\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << fmt(grid[i]) << "," << fmt(delta[i]) << "\n";
  }
  emit(opt.output, os.str());
  return 0;
}

int run_verify(std::uint64_t seed, const std::string& level,
               const std::string& output) {
  if (level != "quick" && level != "full") {
    throw lapdp::InvalidArgumentError("level must be quick or full");
  }
  const auto results = lapdp::run_verification(seed, level == "full");
  std::ostringstream os;
  bool all_pass = true;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
       << std::string(width - r.name.size() + 2, ' ') << r.detail << "\n";
  }
  os << (all_pass ? "verification passed" : "verification FAILED") << " ("
     << results.size() << " checks, level " << level << ", seed " << seed
     << ")\n";
  emit(output, os.str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lapdp: exact differential-privacy accounting curves"};
  app.require_subcommand(1);

  CurveOptions popt;
  CLI::App* profile = app.add_subcommand(
      "profile", "privacy profile delta(eps) of one mechanism");
  add_common(profile, &popt, false);

  CurveOptions copt;
  std::string method = "recursion";
  CLI::App* compose =
      app.add_subcommand("compose", "compose mechanisms into one curve");
  add_common(compose, &copt, false);
  compose->add_option("--method", method,
                      "recursion | kernel | closed-form | oracle");

  CurveOptions kopt;
  double budget = 1e-6;
  std::string k_range = "1..10";
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "smallest eps meeting a delta budget per k");
  add_common(calibrate, &kopt, false);
  calibrate->add_option("--delta-budget", budget, "delta budget in (0,1)")
      ->required();
  calibrate->add_option("--k-range", k_range, "composition counts, e.g. 1..40");

  CurveOptions vopt;
  std::string conv_from = "profile", conv_to = "renyi";
  double complex_line_re_q = 2.0;
  CLI::App* convert = app.add_subcommand(
      "convert", "convert between profile and Renyi curves; for --to renyi "
                 "the --eps-min/--eps-max/--steps flags bound the q grid");
  add_common(convert, &vopt, true);
  convert->add_option("--from", conv_from, "profile | renyi");
  convert->add_option("--to", conv_to, "renyi | profile");
  CLI::Option* cl_opt = convert->add_option(
      "--complex-line", complex_line_re_q,
      "emit E_q along the complex line Re(q)=VALUE as omega,re_E,im_E");

  CurveOptions sopt;
  double lambda = 0.5;
  std::string direction = "remove";
  CLI::App* subsample = app.add_subcommand(
      "subsample", "Poisson-subsampled curve with direction handling");
  add_common(subsample, &sopt, false);
  CLI::Option* lam_opt =
      subsample->add_option("--lambda", lambda, "selection probability");
  subsample->add_option("--direction", direction, "remove | add | max");

  std::uint64_t seed = 1;
  std::string level = "quick";
  std::string verify_output;
  CLI::App* verify =
      app.add_subcommand("verify", "run the oracle-backed invariant suites");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--level", level, "quick | full");
  verify->add_option("--output", verify_output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (profile->parsed()) return run_profile(popt);
    if (compose->parsed()) return run_compose(copt, method);
    if (calibrate->parsed()) {
      const bool bounds_set = calibrate->count("--eps-min") > 0 ||
                              calibrate->count("--eps-max") > 0;
      return run_calibrate(kopt, budget, k_range, bounds_set);
    }
    if (convert->parsed()) {
      return run_convert(vopt, conv_from, conv_to, cl_opt->count() > 0,
                         complex_line_re_q);
    }
    if (subsample->parsed()) {
      return run_subsample(sopt, lambda, lam_opt->count() > 0, direction);
    }
    if (verify->parsed()) return run_verify(seed, level, verify_output);
  } catch (const MethodInapplicableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lapdp::BookOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const lapdp::SupportOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const lapdp::EmptyRocError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const lapdp::InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
