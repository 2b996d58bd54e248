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
#include "lapdp/mechanism_spec.hpp"

#include <sstream>

#include "json.hpp"
#include "lapdp/mechanisms.hpp"
#include "lapdp/subsampling.hpp"

namespace lapdp {

namespace {

using nlohmann::json;

MechanismDescriptor parse_descriptor(const json& node) {
  if (!node.is_object()) {
    throw InvalidArgumentError("mechanism descriptor must be an object");
  }
  MechanismDescriptor desc;
  int kinds = 0;
  if (node.contains("gaussian")) {
    ++kinds;
    desc.kind = MechanismKind::kGaussian;
    const json& g = node.at("gaussian");
    if (!g.contains("kappa")) {
      throw InvalidArgumentError("gaussian descriptor needs kappa");
    }
    desc.kappa = g.at("kappa").get<double>();
    if (!(desc.kappa >= 0.0)) {
      throw InvalidArgumentError("kappa must be >= 0");
    }
  }
  if (node.contains("randomized_response")) {
    ++kinds;
    desc.kind = MechanismKind::kRandomizedResponse;
    const json& r = node.at("randomized_response");
    desc.eps0 = r.at("eps0").get<double>();
    desc.delta0 = r.value("delta0", 0.0);
    RRParams{desc.eps0, desc.delta0}.validate();
  }
  if (node.contains("point_guarantee")) {
    ++kinds;
    desc.kind = MechanismKind::kPointGuarantee;
    const json& r = node.at("point_guarantee");
    desc.eps0 = r.at("eps0").get<double>();
    desc.delta0 = r.value("delta0", 0.0);
    PointGuarantee{desc.eps0, desc.delta0}.validate();
  }
  if (node.contains("subsampled")) {
    ++kinds;
    desc.kind = MechanismKind::kSubsampled;
    const json& s = node.at("subsampled");
    desc.lambda = s.at("lambda").get<double>();
    SubsampleParams{desc.lambda}.validate();
    if (!s.contains("inner")) {
      throw InvalidArgumentError("subsampled descriptor needs inner");
    }
    desc.inner = std::make_shared<const MechanismDescriptor>(
        parse_descriptor(s.at("inner")));
    if (desc.inner->repeat != 1) {
      throw InvalidArgumentError("inner descriptor cannot carry repeat");
    }
  }
  if (kinds != 1) {
    throw InvalidArgumentError(
        "descriptor must name exactly one of gaussian, randomized_response, "
        "point_guarantee, subsampled");
  }
  desc.repeat = node.value("repeat", std::int64_t{1});
  if (desc.repeat < 1) {
    throw InvalidArgumentError("repeat must be >= 1");
  }
  return desc;
}

}  // namespace

std::string MechanismDescriptor::summary() const {
  std::ostringstream os;
  switch (kind) {
    case MechanismKind::kGaussian:
      os << "gaussian(kappa=" << kappa << ")";
      break;
    case MechanismKind::kRandomizedResponse:
      os << "randomized_response(eps0=" << eps0 << ",delta0=" << delta0 << ")";
      break;
    case MechanismKind::kPointGuarantee:
      os << "point_guarantee(eps0=" << eps0 << ",delta0=" << delta0 << ")";
      break;
    case MechanismKind::kSubsampled:
      os << "subsampled(lambda=" << lambda << ",inner=" << inner->summary()
         << ")";
      break;
  }
  if (repeat != 1) {
    os << "x" << repeat;
  }
  return os.str();
}

std::vector<MechanismDescriptor> CompositionSpec::expanded() const {
  std::vector<MechanismDescriptor> out;
  for (const MechanismDescriptor& d : mechanisms) {
    MechanismDescriptor one = d;
    const std::int64_t n = one.repeat;
    one.repeat = 1;
    for (std::int64_t i = 0; i < n; ++i) out.push_back(one);
  }
  if (out.empty()) {
    throw InvalidArgumentError("composition spec is empty");
  }
  return out;
}

CompositionSpec parse_composition_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("spec is not valid JSON: ") +
                               e.what());
  }
  CompositionSpec spec;
  try {
    if (doc.is_object() && doc.contains("mechanisms")) {
      for (const json& node : doc.at("mechanisms")) {
        spec.mechanisms.push_back(parse_descriptor(node));
      }
    } else {
      spec.mechanisms.push_back(parse_descriptor(doc));
    }
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("malformed spec: ") + e.what());
  }
  if (spec.mechanisms.empty()) {
    throw InvalidArgumentError("composition spec is empty");
  }
  return spec;
}

PrivacyProfile profile_curve_for(const MechanismDescriptor& desc) {
  switch (desc.kind) {
    case MechanismKind::kGaussian:
      return gaussian_profile_curve(GaussianParams{desc.kappa});
    case MechanismKind::kRandomizedResponse:
      return rr_profile_curve(RRParams{desc.eps0, desc.delta0});
    case MechanismKind::kPointGuarantee:
      return dominating_profile_for_point_dp(desc.eps0, desc.delta0);
    case MechanismKind::kSubsampled:
      return poisson_subsample_profile(profile_curve_for(*desc.inner),
                                       SubsampleParams{desc.lambda});
  }
  throw InvalidArgumentError("unknown mechanism kind");
}

PointGuarantee point_guarantee_for(const MechanismDescriptor& desc) {
  if (desc.kind != MechanismKind::kRandomizedResponse &&
      desc.kind != MechanismKind::kPointGuarantee) {
    throw InvalidArgumentError(
        "descriptor does not reduce to an (eps, delta) point guarantee");
  }
  return PointGuarantee{desc.eps0, desc.delta0};
}

}  // namespace lapdp
