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

#include "lapdp/core.hpp"

namespace lapdp {

struct SubsampleParams {
  double lambda = 1.0;  // selection probability, in (0, 1]

  void validate() const;
};

// Remove-direction amplification: eps -> lambda * prof_in(log(1 +
// (e^eps - 1)/lambda)) above the breakpoint log(1 - lambda), and the floor
// 1 - e^eps below it. This is the library's only subsampling formula; the
// add direction is always derived by reversal, never by a second formula.
PrivacyProfile poisson_subsample_profile(const PrivacyProfile& prof_in,
                                         const SubsampleParams& params);

// reverse_profile of the subsampled curve: the add-direction guarantee
// obtained from the single remove-direction curve, with no symmetrization.
PrivacyProfile subsampled_reverse_profile(const PrivacyProfile& prof_in,
                                          const SubsampleParams& params);

// max(forward(eps), reverse(eps)): the exactly-tight two-sided point
// guarantee at one eps.
double pointwise_two_sided_guarantee(const PrivacyProfile& prof_in,
                                     const SubsampleParams& params,
                                     double eps);

}  // namespace lapdp
