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

#include "logshift/report_json.hpp"

#include <gtest/gtest.h>

namespace logshift {
namespace {

TEST(ReportJson, IdentitySpec) {
  const auto j = to_json(theorem1(2, 1, 5));
  EXPECT_EQ(j["label"], "theorem1:r=2,k1=1,n=5");
  EXPECT_EQ(j["family"], "theorem1");
  EXPECT_EQ(j["family_params"]["r"], 2);
  EXPECT_EQ(j["family_params"]["m"], 3);
  EXPECT_EQ(j["parent"], "logistic,mu=0");
  EXPECT_EQ(j["lhs"], theorem1(2, 1, 5).lhs.to_string());
}

TEST(ReportJson, VerificationReportFields) {
  VerificationReport r{lemma1i(2, 4, 5)};
  r.cf_max_abs_diff = 2e-16;
  r.cf_threshold = 1e-12;
  r.ks_statistic = 0.001;
  r.ks_p_value = 0.4;
  r.sample_size = 1'000'000;
  r.seed = 42;
  r.verdict = Verdict::consistent;
  r.alpha = 0.01;
  auto j = to_json(r);
  for (const char* key : {"identity", "cf_max_abs_diff", "cf_threshold", "ks_statistic",
                          "ks_p_value", "sample_size", "seed", "verdict"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "consistent");
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(j["cf_max_abs_diff"].get<double>(), 2e-16);
  EXPECT_EQ(j["test"], "ks");

  r.cf_max_abs_diff.reset();
  r.seed = 0xffffffffffffffffULL;
  j = to_json(r);
  EXPECT_TRUE(j["cf_max_abs_diff"].is_null());
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 0xffffffffffffffffULL);
}

TEST(ReportJson, RoundTripsThroughText) {
  VerificationReport r{maxexp(3)};
  r.ks_p_value = 0.123456789012345678;
  const auto text = to_json(r).dump();
  const auto back = nlohmann::json::parse(text);
  EXPECT_EQ(back["ks_p_value"].get<double>(), r.ks_p_value);
  EXPECT_EQ(back.dump(), text);
}

TEST(ReportJson, GofAndFamily) {
  GofResult g;
  g.statistic = 0.01;
  g.p_value = 0.5;
  g.null_replicates = 199;
  g.identity_used = "lemma1ii:k=2,n=3";
  g.sample_size = 10'000;
  g.seed = 3;
  const auto j = to_json(g);
  EXPECT_EQ(j["identity_used"], "lemma1ii:k=2,n=3");
  EXPECT_EQ(j["null_replicates"], 199);

  FamilyVerdict f;
  f.tests = 5;
  f.verdict = Verdict::rejected;
  EXPECT_EQ(to_json(f)["verdict"], "rejected");
  EXPECT_EQ(to_json(f)["tests"], 5);
}

}  // namespace
}  // namespace logshift
