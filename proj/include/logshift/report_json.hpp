// Copyright 2026 The logshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOGSHIFT_REPORT_JSON_HPP_
#define LOGSHIFT_REPORT_JSON_HPP_

#include <nlohmann/json.hpp>

#include "logshift/characterization.hpp"
#include "logshift/identity.hpp"
#include "logshift/verify.hpp"

namespace logshift {

inline nlohmann::json to_json(const IdentitySpec& id) {
  return {
      {"label", id.label},
      {"family", to_string(id.family)},
      {"family_params",
       {{"n", id.params.n}, {"k", id.params.k}, {"m", id.params.m}, {"r", id.params.r}}},
      {"parent", id.parent().to_string()},
      {"lhs", id.lhs.to_string()},
      {"rhs", id.rhs.to_string()},
  };
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j = {
      {"identity", to_json(r.identity)},
      {"cf_max_abs_diff", nullptr},
      {"cf_threshold", r.cf_threshold},
      {"ks_statistic", r.ks_statistic},
      {"ks_p_value", r.ks_p_value},
      {"sample_size", r.sample_size},
      {"seed", r.seed},
      {"verdict", to_string(r.verdict)},
      {"alpha", r.alpha},
      {"test", to_string(r.test)},
  };
  if (r.cf_max_abs_diff) j["cf_max_abs_diff"] = *r.cf_max_abs_diff;
  return j;
}

inline nlohmann::json to_json(const FamilyVerdict& f) {
  return {
      {"tests", f.tests},
      {"alpha", f.alpha},
      {"bonferroni_alpha", f.bonferroni_alpha},
      {"min_p_value", f.min_p_value},
      {"raw_rejections", f.raw_rejections},
      {"all_cf_passed", f.all_cf_passed},
      {"verdict", to_string(f.verdict)},
  };
}

inline nlohmann::json to_json(const GofResult& g) {
  return {
      {"statistic", g.statistic},
      {"p_value", g.p_value},
      {"null_replicates", g.null_replicates},
      {"identity_used", g.identity_used},
      {"sample_size", g.sample_size},
      {"seed", g.seed},
  };
}

}  // namespace logshift

#endif  // LOGSHIFT_REPORT_JSON_HPP_
