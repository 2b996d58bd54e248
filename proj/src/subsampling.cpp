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
#include "lapdp/subsampling.hpp"

#include <algorithm>
#include <cmath>

namespace lapdp {

void SubsampleParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InvalidArgumentError("lambda must lie in (0, 1]");
  }
}

PrivacyProfile poisson_subsample_profile(const PrivacyProfile& prof_in,
                                         const SubsampleParams& params) {
  params.validate();
  const double lambda = params.lambda;
  if (lambda == 1.0) {
    return prof_in;
  }
  const double breakpoint = std::log1p(-lambda);

  // Knots: image of the inner ones under t -> log(1 + lambda(e^t - 1)),
  // plus the breakpoint itself.
  std::vector<double> knots{breakpoint};
  for (double t : prof_in.knots()) {
    knots.push_back(std::log1p(lambda * std::expm1(t)));
  }

  const PrivacyProfile inner = prof_in;
  auto eval = [inner, lambda, breakpoint](double eps) {
    if (eps <= breakpoint) {
      return -std::expm1(eps);  // 1 - e^eps
    }
    const double mapped = std::log1p(std::expm1(eps) / lambda);
    return lambda * inner(mapped);
  };

  // Below the breakpoint the curve is exactly the floor; above +inf it
  // inherits the scaled inner limit.
  const LeftTail left{1.0, true};
  const RightTail right{lambda * prof_in.infinity_delta(),
                        prof_in.right_tail().exact};
  return PrivacyProfile::analytic(std::move(eval), std::move(knots), left,
                                  right);
}

PrivacyProfile subsampled_reverse_profile(const PrivacyProfile& prof_in,
                                          const SubsampleParams& params) {
  return reverse_profile(poisson_subsample_profile(prof_in, params));
}

double pointwise_two_sided_guarantee(const PrivacyProfile& prof_in,
                                     const SubsampleParams& params,
                                     double eps) {
  const PrivacyProfile forward = poisson_subsample_profile(prof_in, params);
  const PrivacyProfile reversed = reverse_profile(forward);
  return std::max(forward(eps), reversed(eps));
}

}  // namespace lapdp
