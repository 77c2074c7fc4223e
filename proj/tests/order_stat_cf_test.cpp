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

#include "logshift/order_stat_cf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace logshift {
namespace {

const double kTs[] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TEST(LogisticOrderStatCf, Examples) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(logistic_order_stat_cf(n, k, 0.0), Complex(1.0, 0.0));
    }
  }
  for (double t : kTs) EXPECT_EQ(logistic_order_stat_cf(1, 1, t), logistic_cf(t));
  const Complex v = logistic_order_stat_cf(3, 2, 1.0);
  EXPECT_NEAR(v.real(), 0.544058109964266325900473167344, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-16);
}

TEST(LogisticOrderStatCf, RejectsBadRanks) {
  EXPECT_THROW(logistic_order_stat_cf(3, 0, 1.0), DomainError);
  EXPECT_THROW(logistic_order_stat_cf(3, 4, 1.0), DomainError);
  EXPECT_THROW(logistic_order_stat_cf(0, 1, 1.0), DomainError);
}

TEST(LogisticOrderStatCf, MatchesGammaRatio) {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (double t = -8.0; t <= 8.0; t += 0.25) {
        const Complex ratio = complex_gamma({double(k), t}) *
                              complex_gamma({double(n - k + 1), -t}) /
                              (factorial(k - 1) * factorial(n - k));
        const Complex product = logistic_order_stat_cf(n, k, t);
        ASSERT_LE(std::abs(product - ratio), 1e-12 * std::max(1.0, std::abs(ratio)))
            << "n=" << n << " k=" << k << " t=" << t;
        ASSERT_LE(std::abs(product), 1.0 + 1e-15);
      }
    }
  }
}

TEST(LogisticOrderStatCf, HermitianSymmetry) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (double t : kTs) {
        EXPECT_EQ(logistic_order_stat_cf(n, k, -t),
                  std::conj(logistic_order_stat_cf(n, k, t)));
      }
    }
  }
}

TEST(LogisticOrderStatCf, ShiftIdentityOnGrid) {
  // phi_m(t) prod phi_E(-t/j) == phi_k(t) prod phi_E(t/(n-j)), j = k..m-1.
  const auto grid = uniform_grid(-5.0, 5.0, 41);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int m = k + 1; m <= n; ++m) {
        for (double t : grid) {
          Complex left = logistic_order_stat_cf(n, m, t);
          Complex right = logistic_order_stat_cf(n, k, t);
          for (int j = k; j < m; ++j) {
            left *= exponential_cf(-t / j);
            right *= exponential_cf(t / (n - j));
          }
          worst = std::max(worst, std::abs(left - right));
        }
      }
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(OrderStatCf, ExponentialParentAndLocation) {
  const OrderStatistic emax(Exponential{1.0}, 4, 4);
  for (double t : kTs) {
    Complex sum = 1.0;
    for (int j = 1; j <= 4; ++j) sum *= exponential_cf(t / j);
    EXPECT_LE(std::abs(order_stat_cf(emax, t) - sum), 1e-15);
  }
  const OrderStatistic shifted(Logistic{1.5}, 3, 2);
  EXPECT_LE(std::abs(order_stat_cf(shifted, 2.0) -
                     std::polar(1.0, 3.0) * logistic_order_stat_cf(3, 2, 2.0)),
            1e-15);
  EXPECT_THROW(order_stat_cf({Normal{}, 3, 2}, 1.0), UnsupportedParent);
  EXPECT_FALSE(has_closed_form_cf(Laplace{1}));
}

TEST(NumericalCf, Examples) {
  EXPECT_LE(std::abs(numerical_cf({Logistic{}, 1, 1}, 1.0, 1e-11) - logistic_cf(1.0)),
            1e-10);
  for (const Distribution& d : {Distribution(Logistic{}), Distribution(Normal{0.0, 2.0}),
                                Distribution(Exponential{3.0}), Distribution(Laplace{2}),
                                Distribution(Uniform01{})}) {
    EXPECT_LE(std::abs(numerical_cf({d, 4, 3}, 0.0, 1e-10) - 1.0), 1e-10) << d.to_string();
  }
  EXPECT_LE(std::abs(numerical_cf({Logistic{}, 5, 2}, 2.0, 1e-11) -
                     logistic_order_stat_cf(5, 2, 2.0)),
            1e-9);
  EXPECT_THROW(numerical_cf({Logistic{}, 1, 1}, 1.0, 1e-13), DomainError);
}

TEST(NumericalCf, AgreesWithClosedForms) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (double t : kTs) {
        const Complex q = numerical_cf({Logistic{}, n, k}, t, 1e-11);
        ASSERT_LE(std::abs(q - logistic_order_stat_cf(n, k, t)), 1e-9)
            << "n=" << n << " k=" << k << " t=" << t;
      }
    }
  }
  const OrderStatistic emin(Exponential{2.0}, 5, 1);
  for (double t : kTs) {
    EXPECT_LE(std::abs(numerical_cf(emin, t, 1e-11) - order_stat_cf(emin, t)), 1e-9);
  }
}

TEST(NumericalCf, HermitianAndKnownNormalCf) {
  const OrderStatistic normal(Normal{0.5, 1.5}, 1, 1);
  for (double t : {0.3, 1.0, 2.5}) {
    const Complex plus = numerical_cf(normal, t, 1e-11);
    const Complex minus = numerical_cf(normal, -t, 1e-11);
    EXPECT_LE(std::abs(minus - std::conj(plus)), 2e-11);
    const Complex exact = std::polar(std::exp(-0.5 * 2.25 * t * t), 0.5 * t);
    EXPECT_LE(std::abs(plus - exact), 1e-10);
  }
}

TEST(CFGrid, ValidateCatchesBadGrids) {
  CFGrid grid{{-1.0, 0.0, 1.0}, {0.5, 1.0, 0.5}, {0.0, 0.0, 0.0}};
  EXPECT_NO_THROW(grid.validate());
  CFGrid unsorted{{0.0, -1.0}, {1.0, 0.5}, {0.0, 0.0}};
  EXPECT_THROW(unsorted.validate(), DomainError);
  CFGrid too_big{{1.0}, {Complex(1.5, 0.0)}, {0.1}};
  EXPECT_THROW(too_big.validate(), DomainError);
  CFGrid bad_zero{{0.0}, {Complex(0.9, 0.0)}, {0.01}};
  EXPECT_THROW(bad_zero.validate(), DomainError);
  CFGrid ragged{{0.0}, {}, {0.0}};
  EXPECT_THROW(ragged.validate(), DomainError);
}

TEST(CFGrid, CsvLayout) {
  const auto grid = exact_cf_grid({Logistic{}, 3, 2}, uniform_grid(-1.0, 1.0, 3));
  std::ostringstream os;
  write_csv(os, grid);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,re,im,err");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
  }
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(grid.t_values[1], 0.0);
}

TEST(CfInvertDerivative, DensityExamples) {
  const auto g11 = logistic_inversion_grid(1, 1);
  EXPECT_NEAR(cf_invert_derivative(g11, 1, 0.0).value, 0.25, 1e-6);
  EXPECT_NEAR(cf_invert_derivative(g11, 2, 0.0).value, 0.0, 1e-6);
  const auto g32 = logistic_inversion_grid(3, 2);
  EXPECT_NEAR(cf_invert_derivative(g32, 1, 0.0).value, 0.375, 1e-6);
  EXPECT_LE(cf_invert_derivative(g32, 1, 0.7).imag_residual, 1e-8);
}

TEST(CfInvertDerivative, ReproducesDensityAndDerivatives) {
  const double h = 1e-4;
  for (auto [n, k] : {std::pair{1, 1}, {3, 2}, {5, 2}, {6, 6}}) {
    const OrderStatistic s(Logistic{}, n, k);
    const auto grid = logistic_inversion_grid(n, k);
    for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      EXPECT_NEAR(cf_invert_derivative(grid, 1, x).value, order_stat_pdf(s, x), 1e-6);
      const double d1 = (order_stat_pdf(s, x + h) - order_stat_pdf(s, x - h)) / (2 * h);
      EXPECT_NEAR(cf_invert_derivative(grid, 2, x).value, d1, 1e-6);
      const double d2 = (order_stat_pdf(s, x + h) - 2 * order_stat_pdf(s, x) +
                         order_stat_pdf(s, x - h)) / (h * h);
      EXPECT_NEAR(cf_invert_derivative(grid, 3, x).value, d2, 1e-5);
      for (int m = 1; m <= 4; ++m) {
        EXPECT_LE(cf_invert_derivative(grid, m, x).imag_residual, 1e-8);
      }
    }
  }
}

TEST(CfInvertDerivative, DetectsTruncationAndBadOrder) {
  const auto narrow = exact_cf_grid({Logistic{}, 3, 2}, uniform_grid(-3.0, 3.0, 121));
  EXPECT_THROW(cf_invert_derivative(narrow, 1, 0.0), TruncationError);
  const auto wide = logistic_inversion_grid(3, 2);
  EXPECT_THROW(cf_invert_derivative(wide, 0, 0.0), DomainError);
  EXPECT_THROW(cf_invert_derivative(wide, 5, 0.0), DomainError);
}

}  // namespace
}  // namespace logshift
