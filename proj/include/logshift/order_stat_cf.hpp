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

#ifndef LOGSHIFT_ORDER_STAT_CF_HPP_
#define LOGSHIFT_ORDER_STAT_CF_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "logshift/distributions.hpp"
#include "logshift/errors.hpp"
#include "logshift/quadrature.hpp"
#include "logshift/special_functions.hpp"

namespace logshift {

/// CF of the k-th order statistic of n standard logistic draws,
///   Gamma(k+it) Gamma(n-k+1-it) / (Gamma(k) Gamma(n-k+1))
///     = prod_{j<k} (1 + it/j) * prod_{j<=n-k} (1 - it/j) * phi(t),
/// evaluated through the linear factors and phi(t) = pi t / sinh(pi t).
inline Complex logistic_order_stat_cf(int n, int k, double t) {
  if (n < 1 || k < 1 || k > n) {
    throw DomainError("logistic_order_stat_cf: need 1 <= k <= n, got n=" +
                      std::to_string(n) + ", k=" + std::to_string(k));
  }
  Complex product = logistic_cf(t);
  for (int j = 1; j < k; ++j) product *= Complex(1.0, t / j);
  for (int j = 1; j <= n - k; ++j) product *= Complex(1.0, -t / j);
  return product;
}

/// True when order_stat_cf() has a closed form for this parent.
inline bool has_closed_form_cf(const Distribution& parent) {
  return parent.is<Logistic>() || parent.is<Exponential>();
}

/// Closed-form CF of X_{k,n}. Logistic parents use the gamma-product form
/// (times exp(it mu)); exponential parents use the Renyi representation
/// X_{k,n} = sum_{j=n-k+1}^{n} E_j / (j rate). Other parents throw
/// UnsupportedParent.
inline Complex order_stat_cf(const OrderStatistic& s, double t) {
  const auto& parent = s.parent();
  if (parent.is<Logistic>()) {
    const double mu = parent.as<Logistic>().location;
    const Complex base = logistic_order_stat_cf(s.n(), s.k(), t);
    return mu == 0.0 ? base : base * std::polar(1.0, t * mu);
  }
  if (parent.is<Exponential>()) {
    const double rate = parent.as<Exponential>().rate;
    Complex product = 1.0;
    for (int j = s.n() - s.k() + 1; j <= s.n(); ++j) {
      product *= exponential_cf(t, j * rate);
    }
    return product;
  }
  throw UnsupportedParent("no closed-form order-statistic CF for parent '" +
                          parent.name() + "'");
}

/// E[exp(itX_{k,n})] by adaptive quadrature of exp(itx) f_{k,n}(x). The
/// domain is truncated where each omitted tail holds less than tol / 20 of
/// the mass (union bound n F(x) on the order-statistic tail), and the
/// remaining integral is computed to 0.8 tol.
inline Complex numerical_cf(const OrderStatistic& s, double t,
                            double tol = 1e-10) {
  if (!(tol >= 1e-12)) throw DomainError("numerical_cf: tol must be >= 1e-12");
  const auto& parent = s.parent();
  const double tail = tol / (20.0 * s.n());
  auto [lo, hi] = support(parent);
  if (!std::isfinite(lo)) lo = quantile(parent, tail, 1.0 - tail);
  if (!std::isfinite(hi)) hi = quantile(parent, 1.0 - tail, tail);
  auto integrand = [&s, t](double x) {
    return std::polar(order_stat_pdf(s, x), t * x);
  };
  // Split at the parent's kinks so each panel is smooth.
  std::vector<double> breaks = {lo};
  if (parent.is<Laplace>() && lo < 0.0 && hi > 0.0) breaks.push_back(0.0);
  breaks.push_back(hi);
  Complex total = 0.0;
  const double panel_tol = 0.8 * tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += integrate_adaptive<Complex>(integrand, breaks[i], breaks[i + 1],
                                         panel_tol, 0.0, 20000)
                 .value;
  }
  return total;
}

/// Sampled characteristic function: cf_values[i] = phi(t_values[i]) known to
/// within abs_error_bound[i].
struct CFGrid {
  std::vector<double> t_values;
  std::vector<Complex> cf_values;
  std::vector<double> abs_error_bound;

  std::size_t size() const { return t_values.size(); }

  /// Throws DomainError unless sizes agree, t is strictly increasing,
  /// |phi| <= 1 + err and phi(0) is within err of 1.
  void validate() const {
    if (cf_values.size() != t_values.size() ||
        abs_error_bound.size() != t_values.size()) {
      throw DomainError("CFGrid: column lengths differ");
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (i > 0 && !(t_values[i] > t_values[i - 1])) {
        throw DomainError("CFGrid: t values must be strictly increasing");
      }
      if (std::abs(cf_values[i]) > 1.0 + abs_error_bound[i]) {
        throw DomainError("CFGrid: |cf| exceeds 1 at t=" +
                          std::to_string(t_values[i]));
      }
      if (t_values[i] == 0.0 &&
          std::abs(cf_values[i] - 1.0) > abs_error_bound[i]) {
        throw DomainError("CFGrid: cf(0) differs from 1");
      }
    }
  }
};

/// Uniform grid of `points` values spanning [t_min, t_max].
inline std::vector<double> uniform_grid(double t_min, double t_max,
                                        std::size_t points) {
  if (!(t_min < t_max) || points < 2) {
    throw DomainError("uniform_grid: need t_min < t_max and points >= 2");
  }
  std::vector<double> t(points);
  const double step = (t_max - t_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    t[i] = t_min + step * static_cast<double>(i);
  }
  // Keep an exact zero where the grid is symmetric.
  for (auto& v : t) {
    if (std::abs(v) < 1e-3 * step) v = 0.0;
  }
  return t;
}

/// Exact CF grid for a parent with a closed-form order-statistic CF.
inline CFGrid exact_cf_grid(const OrderStatistic& s,
                            const std::vector<double>& t_values) {
  CFGrid grid;
  grid.t_values = t_values;
  grid.cf_values.reserve(t_values.size());
  grid.abs_error_bound.reserve(t_values.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (double t : t_values) {
    const Complex v = order_stat_cf(s, t);
    grid.cf_values.push_back(v);
    grid.abs_error_bound.push_back((4.0 * s.n() + 16.0) * eps *
                                   std::max(std::abs(v), 1e-3));
  }
  grid.validate();
  return grid;
}

/// Quadrature CF grid; every point carries the requested tolerance.
inline CFGrid numerical_cf_grid(const OrderStatistic& s,
                                const std::vector<double>& t_values,
                                double tol = 1e-10) {
  CFGrid grid;
  grid.t_values = t_values;
  for (double t : t_values) {
    grid.cf_values.push_back(numerical_cf(s, t, tol));
    grid.abs_error_bound.push_back(tol);
  }
  grid.validate();
  return grid;
}

/// Default grid for inverting the logistic X_{k,n}: uniform spacing
/// (0.05 resolves exp(-itx) for |x| <= 10) out to the first integer T at
/// which |t^3 phi_{k,n}(t)| < decay, which covers every m <= 4.
inline CFGrid logistic_inversion_grid(int n, int k, double spacing = 0.05,
                                      double decay = 1e-13) {
  if (!(spacing > 0.0)) throw DomainError("inversion grid: spacing must be > 0");
  double limit = 1.0;
  while (std::pow(limit, 3) * std::abs(logistic_order_stat_cf(n, k, limit)) >=
         decay) {
    limit += 1.0;
  }
  const auto points =
      static_cast<std::size_t>(std::llround(2.0 * limit / spacing)) + 1;
  return exact_cf_grid(OrderStatistic(Logistic{}, n, k),
                       uniform_grid(-limit, limit, points));
}

struct InversionResult {
  double value = 0.0;
  // |Im| of the inversion integral; a real density leaves only rounding here.
  double imag_residual = 0.0;
};

/// m-th derivative of the CDF at x (m = 1 is the density) from a CF grid:
///   F^{(m)}(x) = (-i)^{m-1} / (2 pi) * integral exp(-itx) t^{m-1} phi(t) dt,
/// integrated with the trapezoid rule over the grid. Throws TruncationError
/// if |t^{m-1} phi(t)| at either grid edge exceeds 1e-10.
inline InversionResult cf_invert_derivative(const CFGrid& grid, int m,
                                            double x) {
  if (m < 1 || m > 4) throw DomainError("cf_invert_derivative: m must be in [1, 4]");
  if (grid.size() < 2) throw DomainError("cf_invert_derivative: grid too small");
  auto weighted = [&grid, m](std::size_t i) {
    return std::pow(grid.t_values[i], m - 1) * grid.cf_values[i];
  };
  constexpr double kEdgeLimit = 1e-10;
  const double left = std::abs(weighted(0));
  const double right = std::abs(weighted(grid.size() - 1));
  if (left > kEdgeLimit || right > kEdgeLimit) {
    throw TruncationError(
        "cf_invert_derivative: |t^(m-1) phi(t)| at grid edge is " +
        std::to_string(std::max(left, right)) + " (> 1e-10)");
  }
  Complex integral = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = grid.t_values[i + 1] - grid.t_values[i];
    const Complex a = std::polar(1.0, -grid.t_values[i] * x) * weighted(i);
    const Complex b =
        std::polar(1.0, -grid.t_values[i + 1] * x) * weighted(i + 1);
    integral += 0.5 * h * (a + b);
  }
  Complex factor = 1.0;
  for (int i = 1; i < m; ++i) factor *= Complex(0.0, -1.0);
  const Complex result = factor * integral / (2.0 * std::numbers::pi);
  return {result.real(), std::abs(result.imag())};
}

/// CSV with header "t,re,im,err".
inline void write_csv(std::ostream& out, const CFGrid& grid) {
  out << "t,re,im,err\n";
  out.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << grid.t_values[i] << ',' << grid.cf_values[i].real() << ','
        << grid.cf_values[i].imag() << ',' << grid.abs_error_bound[i] << '\n';
  }
}

}  // namespace logshift

#endif  // LOGSHIFT_ORDER_STAT_CF_HPP_
