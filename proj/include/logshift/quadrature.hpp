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

#ifndef LOGSHIFT_QUADRATURE_HPP_
#define LOGSHIFT_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "logshift/errors.hpp"

namespace logshift {

template <class T>
struct QuadratureResult {
  T value{};
  double abs_error = 0.0;
  std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Weights of the Gauss nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Segment {
  double lo;
  double hi;
  T value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class T, class F>
Segment<T> gauss_kronrod_15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
/// The interval with the largest error estimate is bisected until the summed
/// |K15 - G7| estimate falls below max(abs_tol, rel_tol * |I|). Works for real
/// and complex-valued integrands. Throws ConvergenceError when more than
/// max_intervals would be needed.
template <class T, class F>
QuadratureResult<T> integrate_adaptive(F&& f, double lo, double hi,
                                       double abs_tol, double rel_tol = 0.0,
                                       std::size_t max_intervals = 4000) {
  if (!(lo < hi)) {
    if (lo == hi) return {};
    throw DomainError("integrate_adaptive: empty interval");
  }
  std::vector<detail::Segment<T>> heap;
  heap.push_back(detail::gauss_kronrod_15<T>(f, lo, hi));
  T total = heap.front().value;
  double error = heap.front().error;
  auto resum = [&heap, &total, &error] {
    total = T{};
    error = 0.0;
    for (const auto& s : heap) {
      total += s.value;
      error += s.error;
    }
  };
  for (;;) {
    if (error <= std::max(abs_tol, rel_tol * detail::magnitude(total))) {
      // The running updates can cancel catastrophically; confirm exactly.
      resum();
      if (error <= std::max(abs_tol, rel_tol * detail::magnitude(total))) break;
    }
    if (heap.size() >= max_intervals) {
      throw ConvergenceError(
          "integrate_adaptive: error estimate " + std::to_string(error) +
          " above tolerance after " + std::to_string(heap.size()) +
          " intervals");
    }
    std::pop_heap(heap.begin(), heap.end());
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::gauss_kronrod_15<T>(f, worst.lo, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }
  return {total, error, heap.size()};
}

}  // namespace logshift

#endif  // LOGSHIFT_QUADRATURE_HPP_
