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

#ifndef LOGSHIFT_IDENTITY_HPP_
#define LOGSHIFT_IDENTITY_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "logshift/distributions.hpp"
#include "logshift/errors.hpp"
#include "logshift/order_stat_cf.hpp"
#include "logshift/rng.hpp"
#include "logshift/special_functions.hpp"

namespace logshift {

enum class ShiftKind { exponential, laplace };

/// sign * V / weight for an independent variate V: a standard exponential,
/// or for laplace a variate with density weight * exp(-weight |x|) / 2 (so
/// V / weight there means La_weight itself).
struct Shift {
  int sign = 1;
  int weight = 1;
  ShiftKind kind = ShiftKind::exponential;
  std::string name;  // display name, e.g. "E'_2" or "La_1"

  double scale() const { return 1.0 / weight; }
  bool operator==(const Shift&) const = default;
};

/// base + sum of shifts, every term independent. A base with n = k = 1 is a
/// plain parent draw X.
struct ShiftExpression {
  OrderStatistic base;
  std::vector<Shift> shifts;

  bool is_parent_draw() const { return base.n() == 1; }

  std::string to_string() const {
    std::string out =
        is_parent_draw() ? "X"
                         : "X_{" + std::to_string(base.k()) + "," +
                               std::to_string(base.n()) + "}";
    for (const auto& s : shifts) {
      out += s.sign > 0 ? " + " : " - ";
      out += s.kind == ShiftKind::laplace
                 ? s.name
                 : s.name + "/" + std::to_string(s.weight);
    }
    return out;
  }

  bool operator==(const ShiftExpression&) const = default;
};

enum class IdentityFamily { theorem1, lemma1i, lemma1ii, median, maxexp };

inline std::string to_string(IdentityFamily f) {
  switch (f) {
    case IdentityFamily::theorem1: return "theorem1";
    case IdentityFamily::lemma1i: return "lemma1i";
    case IdentityFamily::lemma1ii: return "lemma1ii";
    case IdentityFamily::median: return "median";
    case IdentityFamily::maxexp: return "maxexp";
  }
  return "unknown";
}

struct IdentityParams {
  int n = 0;
  int k = 0;
  int m = 0;  // lemma1i upper rank
  int r = 0;  // theorem1 spacing
  bool operator==(const IdentityParams&) const = default;
};

/// lhs =d rhs.
struct IdentitySpec {
  std::string label;  // canonical selector
  IdentityFamily family = IdentityFamily::lemma1i;
  IdentityParams params;
  ShiftExpression lhs;
  ShiftExpression rhs;

  const Distribution& parent() const { return lhs.base.parent(); }
  bool operator==(const IdentitySpec&) const = default;
};

namespace detail {

inline Shift exp_shift(int sign, int weight, std::string_view primes, int index) {
  return {sign, weight, ShiftKind::exponential,
          "E" + std::string(primes) + "_" + std::to_string(index)};
}

// X_{m,n} - sum_{j=k}^{m-1} E'_j/j  vs  X_{k,n} + sum_{j=k}^{m-1} E''_j/(n-j)
inline std::pair<ShiftExpression, ShiftExpression> spacing_sides(
    const Distribution& parent, int k, int m, int n) {
  ShiftExpression lhs{OrderStatistic(parent, n, m), {}};
  ShiftExpression rhs{OrderStatistic(parent, n, k), {}};
  for (int j = k; j < m; ++j) {
    lhs.shifts.push_back(exp_shift(-1, j, "'", j));
    rhs.shifts.push_back(exp_shift(+1, n - j, "''", j));
  }
  return {lhs, rhs};
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace detail

/// X_{k+r,n} - sum_{j=k}^{k+r-1} E'_j/j =d X_{k,n} + sum_{j=k}^{k+r-1} E''_j/(n-j),
/// one equation of the r-spacing characterization.
inline IdentitySpec theorem1(int r, int k, int n,
                             const Distribution& parent = Logistic{}) {
  detail::require(r >= 1 && r <= 3, "theorem1: r must be 1, 2 or 3");
  detail::require(k >= 1 && k <= n - r,
                  "theorem1: need 1 <= k <= n - r, got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ", r=" + std::to_string(r));
  auto [lhs, rhs] = detail::spacing_sides(parent, k, k + r, n);
  return {"theorem1:r=" + std::to_string(r) + ",k1=" + std::to_string(k) +
              ",n=" + std::to_string(n),
          IdentityFamily::theorem1, {n, k, k + r, r}, lhs, rhs};
}

/// X_{m,n} - sum_{j=k}^{m-1} E'_j/j =d X_{k,n} + sum_{j=k}^{m-1} E''_j/(n-j).
inline IdentitySpec lemma1i(int k, int m, int n,
                            const Distribution& parent = Logistic{}) {
  detail::require(k >= 1 && k < m && m <= n,
                  "lemma1i: need 1 <= k < m <= n, got k=" + std::to_string(k) +
                      ", m=" + std::to_string(m) + ", n=" + std::to_string(n));
  auto [lhs, rhs] = detail::spacing_sides(parent, k, m, n);
  return {"lemma1i:k=" + std::to_string(k) + ",m=" + std::to_string(m) +
              ",n=" + std::to_string(n),
          IdentityFamily::lemma1i, {n, k, m, 0}, lhs, rhs};
}

/// X =d X_{k,n} + sum_{j=1}^{n-k} E'_j/j - sum_{j=1}^{k-1} E''_j/j.
inline IdentitySpec lemma1ii(int k, int n,
                             const Distribution& parent = Logistic{}) {
  detail::require(k >= 1 && k <= n,
                  "lemma1ii: need 1 <= k <= n, got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n));
  ShiftExpression lhs{OrderStatistic(parent, 1, 1), {}};
  ShiftExpression rhs{OrderStatistic(parent, n, k), {}};
  for (int j = 1; j <= n - k; ++j) {
    rhs.shifts.push_back(detail::exp_shift(+1, j, "'", j));
  }
  for (int j = 1; j <= k - 1; ++j) {
    rhs.shifts.push_back(detail::exp_shift(-1, j, "''", j));
  }
  return {"lemma1ii:k=" + std::to_string(k) + ",n=" + std::to_string(n),
          IdentityFamily::lemma1ii, {n, k, 0, 0}, lhs, rhs};
}

/// X =d X_{k,2k-1} + sum_{j=1}^{k-1} La_j, La_j with density j e^{-j|x|}/2.
inline IdentitySpec median(int k, const Distribution& parent = Logistic{}) {
  detail::require(k >= 2, "median: need k >= 2, got k=" + std::to_string(k));
  const int n = 2 * k - 1;
  ShiftExpression lhs{OrderStatistic(parent, 1, 1), {}};
  ShiftExpression rhs{OrderStatistic(parent, n, k), {}};
  for (int j = 1; j <= k - 1; ++j) {
    rhs.shifts.push_back(
        {+1, j, ShiftKind::laplace, "La_" + std::to_string(j)});
  }
  return {"median:k=" + std::to_string(k), IdentityFamily::median,
          {n, k, 0, 0}, lhs, rhs};
}

/// max(E'_1..E'_n) =d sum_{j=1}^{n} E'_j/j. Always on the standard exponential
/// parent; the rhs base E'_1 is carried as a parent draw.
inline IdentitySpec maxexp(int n) {
  detail::require(n >= 1, "maxexp: need n >= 1, got n=" + std::to_string(n));
  const Distribution exp1 = Exponential{1.0};
  ShiftExpression lhs{OrderStatistic(exp1, n, n), {}};
  ShiftExpression rhs{OrderStatistic(exp1, 1, 1), {}};
  for (int j = 2; j <= n; ++j) {
    rhs.shifts.push_back(detail::exp_shift(+1, j, "'", j));
  }
  return {"maxexp:n=" + std::to_string(n), IdentityFamily::maxexp,
          {n, n, 0, 0}, lhs, rhs};
}

/// Every built-in identity with sample size n <= max_n, instantiated on
/// `parent` (maxexp ignores it). theorem1 contributes one equation per k.
inline std::vector<IdentitySpec> catalog(int max_n = 6,
                                         const Distribution& parent = Logistic{}) {
  detail::require(max_n >= 1, "catalog: max_n must be positive");
  std::vector<IdentitySpec> out;
  for (int r = 1; r <= 3; ++r) {
    for (int n = r + 1; n <= max_n; ++n) {
      for (int k = 1; k <= n - r; ++k) out.push_back(theorem1(r, k, n, parent));
    }
  }
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int m = k + 1; m <= n; ++m) out.push_back(lemma1i(k, m, n, parent));
    }
  }
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) out.push_back(lemma1ii(k, n, parent));
  }
  for (int k = 2; 2 * k - 1 <= max_n; ++k) out.push_back(median(k, parent));
  for (int n = 1; n <= max_n; ++n) out.push_back(maxexp(n));
  return out;
}

/// A parsed selector: one or more equations. theorem1 with r >= 2 is a
/// characterization only when r distinct ranks are supplied; fewer ranks
/// give an exploratory run.
struct IdentitySelection {
  std::string selector;
  IdentityFamily family = IdentityFamily::lemma1i;
  std::vector<IdentitySpec> equations;
  bool characterization_level = false;
};

/// Parses "theorem1:r=2,k1=1,k2=2,n=5", "lemma1i:k=2,m=4,n=5",
/// "lemma1ii:k=3,n=5", "median:k=3", "maxexp:n=6".
inline IdentitySelection parse_identity(std::string_view text,
                                        const Distribution& parent = Logistic{}) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const auto kv = detail::parse_key_values(
      colon == std::string_view::npos ? std::string_view{}
                                      : text.substr(colon + 1));
  auto get = [&kv, &name](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw DomainError(name + ": missing parameter '" + key + "'");
    }
    return detail::parse_int(it->second, key);
  };
  IdentitySelection sel;
  sel.selector = std::string(text);
  if (name == "theorem1") {
    const int r = get("r");
    const int n = get("n");
    std::vector<int> ranks;
    for (const auto& [key, value] : kv) {
      if (key == "r" || key == "n") continue;
      const bool indexed = key.size() >= 2 && key[0] == 'k' &&
                           std::all_of(key.begin() + 1, key.end(), ::isdigit);
      if (!indexed && key != "k") {
        throw DomainError("theorem1: unknown parameter '" + key + "'");
      }
      ranks.push_back(detail::parse_int(value, key));
    }
    detail::require(!ranks.empty(), "theorem1: need at least one rank k1");
    detail::require(static_cast<int>(ranks.size()) <= r,
                    "theorem1: at most r ranks may be given");
    std::sort(ranks.begin(), ranks.end());
    detail::require(std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end(),
                    "theorem1: ranks k_i must be distinct");
    sel.family = IdentityFamily::theorem1;
    for (int k : ranks) sel.equations.push_back(theorem1(r, k, n, parent));
    sel.characterization_level = static_cast<int>(ranks.size()) == r;
    return sel;
  }
  if (name == "lemma1i") {
    detail::reject_unknown_keys(kv, {"k", "m", "n"}, name);
    sel.family = IdentityFamily::lemma1i;
    sel.equations.push_back(lemma1i(get("k"), get("m"), get("n"), parent));
  } else if (name == "lemma1ii") {
    detail::reject_unknown_keys(kv, {"k", "n"}, name);
    sel.family = IdentityFamily::lemma1ii;
    sel.equations.push_back(lemma1ii(get("k"), get("n"), parent));
  } else if (name == "median") {
    detail::reject_unknown_keys(kv, {"k"}, name);
    sel.family = IdentityFamily::median;
    sel.equations.push_back(median(get("k"), parent));
  } else if (name == "maxexp") {
    detail::reject_unknown_keys(kv, {"n"}, name);
    sel.family = IdentityFamily::maxexp;
    sel.equations.push_back(maxexp(get("n")));
  } else {
    throw DomainError("unknown identity family '" + name + "'");
  }
  // lemma1i, lemma1ii, median and maxexp selectors are single equations and
  // not rank-count limited.
  sel.characterization_level = true;
  return sel;
}

/// Product of the base CF and one factor per shift:
///   exponential: phi_E(sign t / weight); laplace: 1 / (1 + (t / weight)^2).
inline Complex exact_cf_side(const ShiftExpression& expr, double t) {
  Complex value = order_stat_cf(expr.base, t);
  for (const auto& s : expr.shifts) {
    if (s.kind == ShiftKind::exponential) {
      value *= exponential_cf(s.sign * t, s.weight);
    } else {
      value *= exponential_cf(t, s.weight) * exponential_cf(-t, s.weight);
    }
  }
  return value;
}

/// Draws per independent chunk in sample_side().
inline constexpr std::size_t kSampleChunk = std::size_t{1} << 16;

namespace detail {

inline void fill_chunk(const ShiftExpression& expr, RngStream chunk_stream,
                       double* out, std::size_t count) {
  RngStream base = chunk_stream.split(0);
  for (std::size_t i = 0; i < count; ++i) out[i] = draw_order_stat(expr.base, base);
  for (std::size_t s = 0; s < expr.shifts.size(); ++s) {
    const Shift& shift = expr.shifts[s];
    RngStream stream = chunk_stream.split(s + 1);
    const double scale = shift.sign * shift.scale();
    if (shift.kind == ShiftKind::exponential) {
      for (std::size_t i = 0; i < count; ++i) out[i] += scale * stream.exponential();
    } else {
      const Distribution la = Laplace{shift.weight};
      for (std::size_t i = 0; i < count; ++i) {
        const double u = stream.uniform();
        out[i] += shift.sign * quantile(la, u, 1.0 - u);
      }
    }
  }
}

inline unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on up to `workers` threads.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_workers(workers), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// `count` independent draws of expr. The output is split into fixed chunks
/// of kSampleChunk draws; chunk c uses rng.split(c), and within it the base
/// and each shift have their own substream. The result depends only on the
/// stream and count, never on `workers`.
inline std::vector<double> sample_side(const ShiftExpression& expr,
                                       const RngStream& rng, std::size_t count,
                                       unsigned workers = 1) {
  if (count == 0) throw DomainError("sample_side: count must be positive");
  std::vector<double> out(count);
  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  detail::parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t begin = c * kSampleChunk;
    const std::size_t n = std::min(kSampleChunk, count - begin);
    detail::fill_chunk(expr, rng.split(c), out.data() + begin, n);
  });
  return out;
}

}  // namespace logshift

#endif  // LOGSHIFT_IDENTITY_HPP_
