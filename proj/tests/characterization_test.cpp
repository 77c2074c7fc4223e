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

#include "logshift/characterization.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace logshift {
namespace {

std::vector<double> draws(const Distribution& d, std::uint64_t seed, std::size_t n) {
  RngStream rng(seed);
  return sample(d, rng, n);
}

GofConfig quick(std::uint64_t seed) {
  GofConfig c;
  c.seed = seed;
  c.workers = 1;
  return c;
}

TEST(WFunctional, IdenticallyOneForLogistic) {
  const Distribution logistic = Logistic{};
  double worst = 0.0;
  for (int i = 0; i <= 1600; ++i) {
    const double x = -8.0 + 0.01 * i;
    worst = std::max(worst, std::abs(w_functional(logistic, x) - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
  for (double x : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
    EXPECT_NEAR(w_functional(logistic, x), 1.0, 1e-12);
  }
}

TEST(WFunctional, OtherParents) {
  EXPECT_NEAR(w_functional(Normal{}, 0.0), 1.59576912160573071175978423974, 1e-12);
  EXPECT_NEAR(w_functional(Uniform01{}, 0.5), 4.0, 1e-14);
  // Exponential: w = 1 / F.
  EXPECT_NEAR(w_functional(Exponential{}, 1.0), 1.0 / (1.0 - std::exp(-1.0)), 1e-13);
}

TEST(WFunctional, RejectsDegenerateTails) {
  EXPECT_THROW(w_functional(Uniform01{}, 0.0), DomainError);
  EXPECT_THROW(w_functional(Uniform01{}, 1.5), DomainError);
  EXPECT_THROW(w_functional(Exponential{}, -1.0), DomainError);
  EXPECT_THROW(w_functional(Logistic{}, 40.0), DomainError);
}

TEST(AdjacentResidual, VanishesForLogistic) {
  const Distribution logistic = Logistic{};
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      double worst = 0.0;
      for (int i = 0; i <= 120; ++i) {
        const double x = -6.0 + 0.1 * i;
        worst = std::max(worst, std::abs(adjacent_functional_residual(logistic, n, k, x)));
      }
      EXPECT_LE(worst, 1e-12) << "n=" << n << " k=" << k;
    }
  }
  for (double x : {-3.0, 0.0, 2.0}) {
    EXPECT_NEAR(adjacent_functional_residual(logistic, 4, 2, x), 0.0, 1e-12);
  }
}

TEST(AdjacentResidual, NonzeroOffLogistic) {
  const Distribution normal = Normal{0.0, std::numbers::pi / std::sqrt(3.0)};
  const double r = adjacent_functional_residual(normal, 4, 2, 0.0);
  EXPECT_NEAR(std::abs(r), 0.0450773898138409247508541070794, 1e-12);
  EXPECT_EQ(adjacent_functional_residual(Exponential{}, 4, 2, -1.0), 0.0);
  EXPECT_EQ(adjacent_functional_residual(Uniform01{}, 3, 1, -0.5), 0.0);
  EXPECT_THROW(adjacent_functional_residual(normal, 4, 4, 0.0), DomainError);
  EXPECT_THROW(adjacent_functional_residual(normal, 1, 1, 0.0), DomainError);
}

TEST(GofTest, InputValidation) {
  const auto data = draws(Logistic{}, 1, 1000);
  const std::span<const double> all(data);
  EXPECT_THROW(gof_test(all.first(99), 3, 2, quick(0)), InsufficientData);
  EXPECT_THROW(gof_test(all, 3, 0, quick(0)), DomainError);
  EXPECT_THROW(gof_test(all, 3, 4, quick(0)), DomainError);
  EXPECT_THROW(gof_test(all.first(100), 101, 1, quick(0)), DomainError);
  auto few = quick(0);
  few.null_replicates = 100;
  EXPECT_THROW(gof_test(all, 3, 2, few), DomainError);
  auto bad = data;
  bad[5] = std::nan("");
  EXPECT_THROW(gof_test(bad, 3, 2, quick(0)), DomainError);
}

TEST(GofTest, DeterministicAndWorkerIndependent) {
  const auto data = draws(Logistic{}, 2, 2000);
  auto c = quick(9);
  const auto a = gof_test(data, 3, 2, c);
  c.workers = 4;
  const auto b = gof_test(data, 3, 2, c);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_EQ(a.identity_used, "lemma1ii:k=2,n=3");
  EXPECT_EQ(a.null_replicates, 199u);
  EXPECT_EQ(a.sample_size, 2000u);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_GT(a.p_value, 0.0);
  EXPECT_LE(a.p_value, 1.0);
  // p-values live on the (1 + j) / 200 lattice.
  const double scaled = a.p_value * 200.0;
  EXPECT_NEAR(scaled, std::round(scaled), 1e-9);
}

TEST(GofTest, QuantileDataLooksLogistic) {
  std::vector<double> data(10'000);
  const Distribution logistic = Logistic{};
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = quantile(logistic, (i + 1.0) / (data.size() + 1.0));
  }
  int passing = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = gof_test(data, 3, 2, quick(seed));
    EXPECT_LT(r.statistic, 0.03);
    passing += r.p_value >= 0.05;
  }
  EXPECT_GE(passing, 4);
}

TEST(GofTest, SmallCalibrationAndPower) {
  const Distribution normal = Normal{0.0, std::numbers::pi / std::sqrt(3.0)};
  int null_rejections = 0;
  int normal_rejections = 0;
  constexpr int kRuns = 10;
  for (int s = 0; s < kRuns; ++s) {
    const auto seed = static_cast<std::uint64_t>(1000 + s);
    null_rejections += gof_test(draws(Logistic{}, seed, 10'000), 3, 2, quick(seed))
                           .rejected(0.05);
    normal_rejections += gof_test(draws(normal, seed, 10'000), 3, 2, quick(seed))
                             .rejected(0.05);
  }
  // P(Binomial(10, 0.05) >= 4) is about 1e-3.
  EXPECT_LE(null_rejections, 3);
  EXPECT_GE(normal_rejections, 8);
}

TEST(GofTest, LocationInvariantScaleSensitive) {
  // The identity commutes with translation, so only the scale is visible.
  auto data = draws(Logistic{}, 5, 5000);
  auto c = quick(5);
  c.center_median = true;
  for (auto& x : data) x += 3.0;
  EXPECT_GE(gof_test(data, 3, 2, c).p_value, 0.01);
  for (auto& x : data) x *= 2.0;
  EXPECT_LT(gof_test(data, 3, 2, c).p_value, 0.01);
}

}  // namespace
}  // namespace logshift
