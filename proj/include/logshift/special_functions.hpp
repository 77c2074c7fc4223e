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

#ifndef LOGSHIFT_SPECIAL_FUNCTIONS_HPP_
#define LOGSHIFT_SPECIAL_FUNCTIONS_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "logshift/errors.hpp"

namespace logshift {

using Complex = std::complex<double>;

namespace detail {

// Lanczos approximation with g = 671/128 and 14 terms (Numerical Recipes,
// 3rd ed., section 6.1). Relative error below 1e-15 for real arguments in the
// right half plane; the same series is used unchanged for complex arguments.
inline constexpr double kLanczosG = 671.0 / 128.0;
inline constexpr double kLanczosSeries0 = 0.999999999999997092;
inline constexpr std::array<double, 14> kLanczosCoefficients = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

inline constexpr double kPoleTolerance = 1e-14;

// log Gamma(z) for Re z >= 0.5, principal branch of each factor.
inline Complex lanczos_log_gamma(Complex z) {
  Complex y = z;
  Complex series = kLanczosSeries0;
  for (double c : kLanczosCoefficients) {
    y += 1.0;
    series += c / y;
  }
  const Complex tmp = z + kLanczosG;
  constexpr double kSqrtTwoPi = 2.5066282746310005;
  return (z + 0.5) * std::log(tmp) - tmp + std::log(kSqrtTwoPi * series / z);
}

// sin(pi z) with the real part reduced to [-1, 1] before multiplying by pi.
inline Complex sin_pi(Complex z) {
  const double r = z.real() - 2.0 * std::round(z.real() / 2.0);
  const double y = std::numbers::pi * z.imag();
  const double a = std::numbers::pi * r;
  return {std::sin(a) * std::cosh(y), std::cos(a) * std::sinh(y)};
}

inline void check_pole(Complex z) {
  if (z.real() <= 0.5) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 &&
        std::abs(z - Complex(nearest, 0.0)) <= kPoleTolerance) {
      throw PoleError("complex_gamma: argument within 1e-14 of pole at " +
                      std::to_string(nearest));
    }
  }
}

}  // namespace detail

/// A logarithm of Gamma(z). The imaginary part is not reduced to the principal
/// branch, so only exp() of the result is meaningful across branch cuts.
inline Complex complex_log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("complex_log_gamma: non-finite argument");
  }
  detail::check_pole(z);
  if (z.real() >= 0.5) return detail::lanczos_log_gamma(z);
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  return std::log(std::numbers::pi) - std::log(detail::sin_pi(z)) -
         detail::lanczos_log_gamma(1.0 - z);
}

/// Gamma(z) for complex z. Throws PoleError near non-positive integers and
/// OverflowError when |Gamma(z)| is not representable as a double.
inline Complex complex_gamma(Complex z) {
  const Complex lg = complex_log_gamma(z);
  if (lg.real() > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("complex_gamma: result exceeds double range");
  }
  return std::exp(lg);
}

/// Characteristic function of the standard logistic distribution,
/// Gamma(1+it) Gamma(1-it) = pi t / sinh(pi t).
inline Complex logistic_cf(double t) {
  const double x = std::numbers::pi * std::abs(t);
  if (x < std::numbers::pi * 1e-4) {
    const double x2 = x * x;
    return {1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0, 0.0};
  }
  if (x > 700.0) return {2.0 * x * std::exp(-x), 0.0};
  return {x / std::sinh(x), 0.0};
}

/// (1 - it/rate)^{-1}: characteristic function of Exponential(rate).
inline Complex exponential_cf(double t, double rate = 1.0) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("exponential_cf: rate must be positive and finite");
  }
  return 1.0 / Complex(1.0, -t / rate);
}

}  // namespace logshift

#endif  // LOGSHIFT_SPECIAL_FUNCTIONS_HPP_
