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

#ifndef LOGSHIFT_TWO_SAMPLE_HPP_
#define LOGSHIFT_TWO_SAMPLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "logshift/errors.hpp"

namespace logshift {

enum class TwoSampleTest { kolmogorov_smirnov, cramer_von_mises };

inline std::string to_string(TwoSampleTest test) {
  return test == TwoSampleTest::kolmogorov_smirnov ? "ks" : "cvm";
}

struct TwoSampleResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi-theta form, converges fast for small lambda.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int j = 1; j <= 20; ++j) {
      sum += std::exp(-(2.0 * j - 1.0) * (2.0 * j - 1.0) * c);
    }
    return std::clamp(
        1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// sup |F_a - F_b| over two sorted samples; ties are stepped together.
inline double ks_statistic_sorted(std::span<const double> a,
                                  std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

/// Two-sample KS on sorted inputs with the asymptotic p-value, using the
/// small-sample correction lambda = (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) D.
inline TwoSampleResult ks_two_sample_sorted(std::span<const double> a,
                                            std::span<const double> b) {
  const double d = ks_statistic_sorted(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double en = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_survival((en + 0.12 + 0.11 / en) * d)};
}

inline TwoSampleResult ks_two_sample(std::vector<double> a,
                                     std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return ks_two_sample_sorted(a, b);
}

/// Limiting CDF of the one-sample Cramer-von Mises statistic (Anderson and
/// Darling, 1952), summed until a term drops below 1e-10.
inline double cramer_von_mises_limit_cdf(double x) {
  if (x <= 0.0) return 0.0;
  double total = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) /
                     (std::pow(std::numbers::pi, 1.5) * std::sqrt(x));
    const double y = 4.0 * k + 1.0;
    const double q = y * y / (16.0 * x);
    if (q > 700.0) break;
    const double term = u * std::sqrt(y) * std::exp(-q) *
                        boost::math::cyl_bessel_k(0.25, q);
    total += term;
    if (std::abs(term) < 1e-10) break;
  }
  return std::min(total, 1.0);
}

/// Two-sample Cramer-von Mises T (Anderson, 1962) on sorted inputs, with the
/// p-value from the mean/variance-standardised limiting distribution.
inline TwoSampleResult cvm_two_sample_sorted(std::span<const double> a,
                                             std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("cvm: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double total = na + nb;
  // Pooled ranks by merging.
  double ua = 0.0;
  double ub = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t rank = 0;
  while (i < a.size() || j < b.size()) {
    ++rank;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      const double diff = static_cast<double>(rank) - static_cast<double>(++i);
      ua += diff * diff;
    } else {
      const double diff = static_cast<double>(rank) - static_cast<double>(++j);
      ub += diff * diff;
    }
  }
  const double u = na * ua + nb * ub;
  const double k = na * nb;
  const double t = u / (k * total) - (4.0 * k - 1.0) / (6.0 * total);
  const double mean = (1.0 + 1.0 / total) / 6.0;
  const double var = (total + 1.0) *
                     (4.0 * k * total - 3.0 * (na * na + nb * nb) - 2.0 * k) /
                     (45.0 * total * total * 4.0 * k);
  const double tn = 1.0 / 6.0 + (t - mean) / std::sqrt(45.0 * var);
  const double p = tn < 0.003 ? 1.0
                              : std::max(0.0, 1.0 - cramer_von_mises_limit_cdf(tn));
  return {t, p};
}

inline TwoSampleResult two_sample_sorted(TwoSampleTest test,
                                         std::span<const double> a,
                                         std::span<const double> b) {
  return test == TwoSampleTest::kolmogorov_smirnov ? ks_two_sample_sorted(a, b)
                                                   : cvm_two_sample_sorted(a, b);
}

}  // namespace logshift

#endif  // LOGSHIFT_TWO_SAMPLE_HPP_
