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

#ifndef LOGSHIFT_VERIFY_HPP_
#define LOGSHIFT_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logshift/errors.hpp"
#include "logshift/identity.hpp"
#include "logshift/order_stat_cf.hpp"
#include "logshift/rng.hpp"
#include "logshift/two_sample.hpp"

namespace logshift {

struct VerificationConfig {
  std::size_t sample_size = 1'000'000;
  double alpha = 0.01;
  std::vector<double> t_grid = uniform_grid(-5.0, 5.0, 41);
  double cf_threshold = 1e-12;
  std::uint64_t seed = 0;
  TwoSampleTest test = TwoSampleTest::kolmogorov_smirnov;
  unsigned workers = 0;  // 0: one per hardware thread

  void validate() const {
    if (sample_size < 10'000) throw DomainError("sample_size must be >= 10000");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
    if (t_grid.empty()) throw DomainError("t grid must not be empty");
    if (!(cf_threshold > 0.0)) throw DomainError("cf_threshold must be positive");
  }
};

enum class Verdict { consistent, rejected, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::rejected: return "rejected";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct VerificationReport {
  explicit VerificationReport(IdentitySpec id) : identity(std::move(id)) {}

  IdentitySpec identity;
  std::optional<double> cf_max_abs_diff;  // absent without closed-form CFs
  double cf_threshold = 0.0;
  // Named for the default test; hold the CvM statistic when test == cvm.
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::inconclusive;
  double alpha = 0.0;
  TwoSampleTest test = TwoSampleTest::kolmogorov_smirnov;

  bool cf_passed() const {
    return !cf_max_abs_diff || *cf_max_abs_diff <= cf_threshold;
  }
};

/// Both checks agree -> consistent / rejected; they disagree -> inconclusive.
/// Without closed-form CFs the verdict follows the sampling test alone.
inline Verdict decide(std::optional<double> cf_diff, double cf_threshold,
                      double p_value, double alpha) {
  const bool sampling_ok = p_value >= alpha;
  if (!cf_diff) return sampling_ok ? Verdict::consistent : Verdict::rejected;
  const bool cf_ok = *cf_diff <= cf_threshold;
  if (cf_ok && sampling_ok) return Verdict::consistent;
  if (!cf_ok && !sampling_ok) return Verdict::rejected;
  return Verdict::inconclusive;
}

/// max over the grid of |phi_lhs(t) - phi_rhs(t)|, or nullopt when either
/// side lacks a closed-form CF.
inline std::optional<double> cf_grid_distance(const IdentitySpec& identity,
                                              const std::vector<double>& grid) {
  if (!has_closed_form_cf(identity.lhs.base.parent()) ||
      !has_closed_form_cf(identity.rhs.base.parent())) {
    return std::nullopt;
  }
  double worst = 0.0;
  for (double t : grid) {
    worst = std::max(worst, std::abs(exact_cf_side(identity.lhs, t) -
                                     exact_cf_side(identity.rhs, t)));
  }
  return worst;
}

/// Exact CF-grid comparison (when available) plus a two-sample test on
/// sample_size draws per side. The lhs uses RngStream(seed).split(1), the rhs
/// split(2).
inline VerificationReport verify(const IdentitySpec& identity,
                                 const VerificationConfig& config) {
  config.validate();
  VerificationReport report{identity};
  report.cf_threshold = config.cf_threshold;
  report.cf_max_abs_diff = cf_grid_distance(identity, config.t_grid);
  report.sample_size = config.sample_size;
  report.seed = config.seed;
  report.alpha = config.alpha;
  report.test = config.test;

  const RngStream root(config.seed);
  auto lhs = sample_side(identity.lhs, root.split(1), config.sample_size,
                         config.workers);
  auto rhs = sample_side(identity.rhs, root.split(2), config.sample_size,
                         config.workers);
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  const auto result = two_sample_sorted(config.test, lhs, rhs);
  report.ks_statistic = result.statistic;
  report.ks_p_value = result.p_value;
  report.verdict = decide(report.cf_max_abs_diff, report.cf_threshold,
                          report.ks_p_value, config.alpha);
  return report;
}

/// Bonferroni summary over several reports: consistent when every CF check
/// passes and every p-value is at least alpha / tests.
struct FamilyVerdict {
  std::size_t tests = 0;
  double alpha = 0.0;
  double bonferroni_alpha = 0.0;
  double min_p_value = 1.0;
  std::size_t raw_rejections = 0;  // p < alpha before adjustment
  bool all_cf_passed = true;
  Verdict verdict = Verdict::consistent;
};

inline FamilyVerdict family_verdict(const std::vector<VerificationReport>& reports,
                                    double alpha) {
  FamilyVerdict fv;
  fv.tests = reports.size();
  fv.alpha = alpha;
  fv.bonferroni_alpha = reports.empty() ? alpha : alpha / reports.size();
  bool any_cf = false;
  for (const auto& r : reports) {
    fv.min_p_value = std::min(fv.min_p_value, r.ks_p_value);
    if (r.ks_p_value < alpha) ++fv.raw_rejections;
    if (r.cf_max_abs_diff) any_cf = true;
    if (!r.cf_passed()) fv.all_cf_passed = false;
  }
  const bool sampling_ok = fv.min_p_value >= fv.bonferroni_alpha;
  if (!any_cf) {
    fv.verdict = sampling_ok ? Verdict::consistent : Verdict::rejected;
  } else if (fv.all_cf_passed && sampling_ok) {
    fv.verdict = Verdict::consistent;
  } else if (!fv.all_cf_passed && !sampling_ok) {
    fv.verdict = Verdict::rejected;
  } else {
    fv.verdict = Verdict::inconclusive;
  }
  return fv;
}

/// One-line human summary.
inline std::string summary(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(4);
  os << r.identity.label << " [" << r.identity.parent().to_string() << "] ";
  if (r.cf_max_abs_diff) {
    os << "cf_max=" << *r.cf_max_abs_diff << " (thr " << r.cf_threshold << ") ";
  } else {
    os << "cf=n/a ";
  }
  os << to_string(r.test) << " stat=" << r.ks_statistic << " p=" << r.ks_p_value
     << " N=" << r.sample_size << " seed=" << r.seed << " -> "
     << to_string(r.verdict);
  return os.str();
}

}  // namespace logshift

#endif  // LOGSHIFT_VERIFY_HPP_
