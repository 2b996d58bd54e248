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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lapdp/composition.hpp"
#include "lapdp/core.hpp"

namespace lapdp {

enum class MechanismKind {
  kGaussian,
  kRandomizedResponse,
  kPointGuarantee,
  kSubsampled,
};

// One entry of a composition spec document. Exactly one of the parameter
// groups is active, selected by `kind`; subsampled mechanisms carry their
// inner descriptor.
struct MechanismDescriptor {
  MechanismKind kind = MechanismKind::kPointGuarantee;
  double kappa = 0.0;              // gaussian
  double eps0 = 0.0;               // randomized_response / point_guarantee
  double delta0 = 0.0;
  double lambda = 1.0;             // subsampled
  std::shared_ptr<const MechanismDescriptor> inner;
  std::int64_t repeat = 1;

  std::string summary() const;
};

struct CompositionSpec {
  std::vector<MechanismDescriptor> mechanisms;

  // Descriptors with `repeat` unrolled.
  std::vector<MechanismDescriptor> expanded() const;
};

// Parses the JSON spec document: {"mechanisms": [...]} with descriptors
// keyed by kind, e.g. {"gaussian": {"kappa": 0.5}, "repeat": 2} or
// {"subsampled": {"lambda": 0.5, "inner": {"randomized_response":
// {"eps0": 0.7, "delta0": 0}}}}. A bare descriptor object is accepted as a
// one-mechanism spec. Throws InvalidArgumentError on malformed input.
CompositionSpec parse_composition_spec(const std::string& text);

// The curve of one mechanism (point guarantees map to their dominating
// randomized-response profile; subsampled descriptors wrap their inner
// curve in the remove direction).
PrivacyProfile profile_curve_for(const MechanismDescriptor& desc);

// A point guarantee view where the descriptor admits one (randomized
// response and point guarantees); throws otherwise.
PointGuarantee point_guarantee_for(const MechanismDescriptor& desc);

}  // namespace lapdp
