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

#ifndef LOGSHIFT_DISTRIBUTIONS_HPP_
#define LOGSHIFT_DISTRIBUTIONS_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "logshift/errors.hpp"
#include "logshift/rng.hpp"

namespace logshift {

// Parent families. Parameters are validated by Distribution's constructor.

/// F(x) = 1 / (1 + exp(-(x - location))).
struct Logistic {
  double location = 0.0;
  bool operator==(const Logistic&) const = default;
};

struct Exponential {
  double rate = 1.0;
  bool operator==(const Exponential&) const = default;
};

/// Density j exp(-j |x|) / 2, i.e. the difference of two Exponential(j).
struct Laplace {
  int index = 1;
  bool operator==(const Laplace&) const = default;
};

struct Uniform01 {
  bool operator==(const Uniform01&) const = default;
};

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
  bool operator==(const Normal&) const = default;
};

class Distribution {
 public:
  using Family = std::variant<Logistic, Exponential, Laplace, Uniform01, Normal>;

  Distribution() = default;  // standard logistic

  Distribution(Family family) : family_(family) {  // NOLINT(implicit)
    std::visit([](const auto& f) { validate(f); }, family_);
  }

  template <class F>
    requires std::is_constructible_v<Family, F> &&
             (!std::is_same_v<std::remove_cvref_t<F>, Family>) &&
             (!std::is_same_v<std::remove_cvref_t<F>, Distribution>)
  Distribution(F family)  // NOLINT(implicit)
      : Distribution(Family(std::move(family))) {}

  const Family& family() const { return family_; }

  template <class F>
  bool is() const {
    return std::holds_alternative<F>(family_);
  }

  template <class F>
  const F& as() const {
    return std::get<F>(family_);
  }

  /// Family name as used on the command line.
  std::string name() const {
    return std::visit(
        [](const auto& f) -> std::string { return family_name(f); }, family_);
  }

  /// Selector form, e.g. "normal,mu=0,sigma=1.8138".
  std::string to_string() const;

  bool operator==(const Distribution&) const = default;

 private:
  static void validate(const Logistic& f) {
    if (!std::isfinite(f.location)) throw DomainError("logistic: mu must be finite");
  }
  static void validate(const Exponential& f) {
    if (!(f.rate > 0.0) || !std::isfinite(f.rate)) {
      throw DomainError("exponential: rate must be positive");
    }
  }
  static void validate(const Laplace& f) {
    if (f.index < 1) throw DomainError("laplace: j must be a positive integer");
  }
  static void validate(const Uniform01&) {}
  static void validate(const Normal& f) {
    if (!std::isfinite(f.mean)) throw DomainError("normal: mu must be finite");
    if (!(f.sd > 0.0) || !std::isfinite(f.sd)) {
      throw DomainError("normal: sigma must be positive");
    }
  }

  static std::string family_name(const Logistic&) { return "logistic"; }
  static std::string family_name(const Exponential&) { return "exponential"; }
  static std::string family_name(const Laplace&) { return "laplace"; }
  static std::string family_name(const Uniform01&) { return "uniform01"; }
  static std::string family_name(const Normal&) { return "normal"; }

  Family family_ = Logistic{};
};

namespace detail {

// Shortest text that parses back to the same double.
inline std::string format_real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse " + std::string(what) + " value '" +
                      std::string(text) + "'");
  }
  return v;
}

inline int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse " + std::string(what) + " value '" +
                      std::string(text) + "'");
  }
  return v;
}

// "a=1,b=2" -> {a: "1", b: "2"}; rejects duplicates and missing '='.
inline std::map<std::string, std::string> parse_key_values(
    std::string_view text) {
  std::map<std::string, std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw DomainError("expected key=value, got '" + std::string(item) + "'");
    }
    auto [it, inserted] = out.emplace(std::string(item.substr(0, eq)),
                                      std::string(item.substr(eq + 1)));
    if (!inserted) throw DomainError("duplicate key '" + it->first + "'");
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

inline void reject_unknown_keys(const std::map<std::string, std::string>& kv,
                                std::initializer_list<std::string_view> known,
                                std::string_view context) {
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw DomainError("unknown parameter '" + key + "' for " +
                        std::string(context));
    }
  }
}

// Standard normal helpers.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

inline double normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace detail

inline std::string Distribution::to_string() const {
  using detail::format_real;
  struct Visitor {
    std::string operator()(const Logistic& f) const {
      return "logistic,mu=" + format_real(f.location);
    }
    std::string operator()(const Exponential& f) const {
      return "exponential,rate=" + format_real(f.rate);
    }
    std::string operator()(const Laplace& f) const {
      return "laplace,j=" + std::to_string(f.index);
    }
    std::string operator()(const Uniform01&) const { return "uniform01"; }
    std::string operator()(const Normal& f) const {
      return "normal,mu=" + format_real(f.mean) +
             ",sigma=" + format_real(f.sd);
    }
  };
  return std::visit(Visitor{}, family_);
}

/// Parses "logistic", "logistic,mu=0.5", "exponential,rate=2", "laplace,j=3",
/// "uniform01", "normal,mu=0,sigma=1.8138". Throws DomainError.
inline Distribution parse_distribution(std::string_view text) {
  const auto comma = text.find(',');
  const std::string name(text.substr(0, comma));
  const auto kv = detail::parse_key_values(
      comma == std::string_view::npos ? std::string_view{}
                                      : text.substr(comma + 1));
  auto real_or = [&kv](const char* key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : detail::parse_real(it->second, key);
  };
  if (name == "logistic") {
    detail::reject_unknown_keys(kv, {"mu"}, name);
    return Logistic{real_or("mu", 0.0)};
  }
  if (name == "exponential") {
    detail::reject_unknown_keys(kv, {"rate"}, name);
    return Exponential{real_or("rate", 1.0)};
  }
  if (name == "laplace") {
    detail::reject_unknown_keys(kv, {"j"}, name);
    auto it = kv.find("j");
    return Laplace{it == kv.end() ? 1 : detail::parse_int(it->second, "j")};
  }
  if (name == "uniform01") {
    detail::reject_unknown_keys(kv, {}, name);
    return Uniform01{};
  }
  if (name == "normal") {
    detail::reject_unknown_keys(kv, {"mu", "sigma"}, name);
    return Normal{real_or("mu", 0.0), real_or("sigma", 1.0)};
  }
  throw DomainError("unknown distribution family '" + name + "'");
}

/// Closure of the support, possibly infinite.
inline std::pair<double, double> support(const Distribution& d) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (d.is<Exponential>()) return {0.0, inf};
  if (d.is<Uniform01>()) return {0.0, 1.0};
  return {-inf, inf};
}

inline double cdf(const Distribution& d, double x) {
  struct Visitor {
    double x;
    double operator()(const Logistic& f) const {
      const double z = x - f.location;
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      const double e = std::exp(z);
      return e / (1.0 + e);
    }
    double operator()(const Exponential& f) const {
      return x <= 0.0 ? 0.0 : -std::expm1(-f.rate * x);
    }
    double operator()(const Laplace& f) const {
      return x < 0.0 ? 0.5 * std::exp(f.index * x)
                     : 1.0 - 0.5 * std::exp(-f.index * x);
    }
    double operator()(const Uniform01&) const { return std::clamp(x, 0.0, 1.0); }
    double operator()(const Normal& f) const {
      return detail::normal_cdf((x - f.mean) / f.sd);
    }
  };
  return std::visit(Visitor{x}, d.family());
}

/// 1 - F(x), accurate in the upper tail.
inline double ccdf(const Distribution& d, double x) {
  struct Visitor {
    double x;
    double operator()(const Logistic& f) const {
      return cdf(Logistic{-f.location}, -x);
    }
    double operator()(const Exponential& f) const {
      return x <= 0.0 ? 1.0 : std::exp(-f.rate * x);
    }
    double operator()(const Laplace& f) const {
      return x > 0.0 ? 0.5 * std::exp(-f.index * x)
                     : 1.0 - 0.5 * std::exp(f.index * x);
    }
    double operator()(const Uniform01&) const {
      return 1.0 - std::clamp(x, 0.0, 1.0);
    }
    double operator()(const Normal& f) const {
      return detail::normal_cdf(-(x - f.mean) / f.sd);
    }
  };
  return std::visit(Visitor{x}, d.family());
}

inline double pdf(const Distribution& d, double x) {
  struct Visitor {
    double x;
    double operator()(const Logistic& f) const {
      const double e = std::exp(-std::abs(x - f.location));
      return e / ((1.0 + e) * (1.0 + e));
    }
    double operator()(const Exponential& f) const {
      return x < 0.0 ? 0.0 : f.rate * std::exp(-f.rate * x);
    }
    double operator()(const Laplace& f) const {
      return 0.5 * f.index * std::exp(-f.index * std::abs(x));
    }
    double operator()(const Uniform01&) const {
      return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    }
    double operator()(const Normal& f) const {
      const double z = (x - f.mean) / f.sd;
      return std::exp(-0.5 * z * z) /
             (f.sd * std::numbers::sqrt2 * std::sqrt(std::numbers::pi));
    }
  };
  return std::visit(Visitor{x}, d.family());
}

/// Quantile at probability p given both p and q = 1 - p, so that callers
/// holding an accurate upper-tail probability do not lose it to rounding.
inline double quantile(const Distribution& d, double p, double q) {
  // p may round to 1 while q still carries the tail; either must be positive.
  if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0)) {
    throw DomainError("quantile: probability must lie in (0, 1)");
  }
  struct Visitor {
    double p;
    double q;
    double operator()(const Logistic& f) const {
      return f.location + std::log(p) - std::log(q);
    }
    double operator()(const Exponential& f) const {
      return (p < 0.5 ? -std::log1p(-p) : -std::log(q)) / f.rate;
    }
    double operator()(const Laplace& f) const {
      return p < 0.5 ? std::log(2.0 * p) / f.index
                     : -std::log(2.0 * q) / f.index;
    }
    double operator()(const Uniform01&) const { return p; }
    double operator()(const Normal& f) const {
      const double z = p < 0.5 ? detail::normal_quantile(p)
                               : -detail::normal_quantile(q);
      return f.mean + f.sd * z;
    }
  };
  return std::visit(Visitor{p, q}, d.family());
}

inline double quantile(const Distribution& d, double p) {
  return quantile(d, p, 1.0 - p);
}

/// One draw by inverse-CDF transform. Laplace(j) is drawn as the difference
/// of two independent Exponential(j) variates.
inline double draw(const Distribution& d, RngStream& rng) {
  if (d.is<Laplace>()) {
    const double j = d.as<Laplace>().index;
    return (rng.exponential() - rng.exponential()) / j;
  }
  if (d.is<Exponential>()) return rng.exponential() / d.as<Exponential>().rate;
  const double u = rng.uniform();
  return quantile(d, u, 1.0 - u);
}

inline std::vector<double> sample(const Distribution& d, RngStream& rng,
                                  std::size_t count) {
  if (count == 0) throw DomainError("sample: count must be positive");
  std::vector<double> out(count);
  for (auto& x : out) x = draw(d, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Order statistics

/// The k-th smallest of n i.i.d. draws from `parent`.
class OrderStatistic {
 public:
  OrderStatistic(Distribution parent, int n, int k)
      : parent_(std::move(parent)), n_(n), k_(k) {
    if (n < 1) throw DomainError("order statistic: n must be positive");
    if (k < 1 || k > n) {
      throw DomainError("order statistic: rank k=" + std::to_string(k) +
                        " outside [1, " + std::to_string(n) + "]");
    }
  }

  const Distribution& parent() const { return parent_; }
  int n() const { return n_; }
  int k() const { return k_; }

  bool operator==(const OrderStatistic&) const = default;

 private:
  Distribution parent_;
  int n_;
  int k_;
};

inline double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

namespace detail {

// sum_{j=lo}^{hi} C(n,j) F^j (1-F)^(n-j), with F and 1-F passed separately.
inline double binomial_tail(int n, int lo, int hi, double f, double g) {
  double sum = 0.0;
  for (int j = lo; j <= hi; ++j) {
    sum += binomial_coefficient(n, j) * std::pow(f, j) * std::pow(g, n - j);
  }
  return sum;
}

}  // namespace detail

/// P(X_{k,n} <= x) = sum_{j=k}^{n} C(n,j) F^j (1-F)^(n-j).
inline double order_stat_cdf(const OrderStatistic& s, double x) {
  const double f = cdf(s.parent(), x);
  const double g = ccdf(s.parent(), x);
  return detail::binomial_tail(s.n(), s.k(), s.n(), f, g);
}

/// P(X_{k,n} > x), accurate in the upper tail.
inline double order_stat_ccdf(const OrderStatistic& s, double x) {
  const double f = cdf(s.parent(), x);
  const double g = ccdf(s.parent(), x);
  return detail::binomial_tail(s.n(), 0, s.k() - 1, f, g);
}

/// k C(n,k) F^{k-1} (1-F)^{n-k} F'.
inline double order_stat_pdf(const OrderStatistic& s, double x) {
  const int n = s.n();
  const int k = s.k();
  const double density = pdf(s.parent(), x);
  if (density == 0.0) return 0.0;
  return k * binomial_coefficient(n, k) * std::pow(cdf(s.parent(), x), k - 1) *
         std::pow(ccdf(s.parent(), x), n - k) * density;
}

namespace detail {

// Gamma(shape) for integer shape as -log of a product of uniforms, with the
// product renormalised before it can underflow.
inline double integer_gamma(int shape, RngStream& rng) {
  double log_sum = 0.0;
  double product = 1.0;
  for (int i = 0; i < shape; ++i) {
    product *= rng.uniform();
    if (product < 1e-280) {
      log_sum += std::log(product);
      product = 1.0;
    }
  }
  return -(log_sum + std::log(product));
}

}  // namespace detail

/// One draw of X_{k,n}: the parent quantile of a Beta(k, n-k+1) variate,
/// built as G1 / (G1 + G2) from integer-shape gammas so that both p and 1 - p
/// keep full relative precision.
inline double draw_order_stat(const OrderStatistic& s, RngStream& rng) {
  const double g1 = detail::integer_gamma(s.k(), rng);
  const double g2 = detail::integer_gamma(s.n() - s.k() + 1, rng);
  if (s.parent().is<Logistic>()) {
    return s.parent().as<Logistic>().location + std::log(g1) - std::log(g2);
  }
  const double total = g1 + g2;
  return quantile(s.parent(), g1 / total, g2 / total);
}

inline std::vector<double> sample_order_stat(const OrderStatistic& s,
                                             RngStream& rng,
                                             std::size_t count) {
  if (count == 0) throw DomainError("sample_order_stat: count must be positive");
  std::vector<double> out(count);
  for (auto& x : out) x = draw_order_stat(s, rng);
  return out;
}

/// Reference sampler: draw n parent values and select the k-th smallest.
inline std::vector<double> sample_order_stat_by_sorting(const OrderStatistic& s,
                                                        RngStream& rng,
                                                        std::size_t count) {
  if (count == 0) throw DomainError("sample_order_stat: count must be positive");
  std::vector<double> out(count);
  std::vector<double> block(static_cast<std::size_t>(s.n()));
  for (auto& x : out) {
    for (auto& b : block) b = draw(s.parent(), rng);
    std::nth_element(block.begin(), block.begin() + (s.k() - 1), block.end());
    x = block[static_cast<std::size_t>(s.k() - 1)];
  }
  return out;
}

}  // namespace logshift

#endif  // LOGSHIFT_DISTRIBUTIONS_HPP_
