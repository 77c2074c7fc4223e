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

// logshift command-line front end.
//
//   logshift verify --identity lemma1i:k=2,m=4,n=5 --seed 42
//   logshift verify-all --max-n 6
//   logshift cf-table --n 5 --k 2 --format csv
//   logshift gof --data sample.txt
//   logshift catalog
//
// Exit status: 0 when every verdict is consistent (gof: p >= alpha), 1 on any
// rejection or inconclusive result, 2 on usage or input errors.

#include <CLI11.hpp>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logshift/logshift.hpp"
#include "logshift/report_json.hpp"

namespace {

using nlohmann::json;
namespace ls = logshift;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string identity;
  std::string parent = "logistic,mu=0";
  std::size_t sample_size = 1'000'000;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  double t_min = -5.0;
  double t_max = 5.0;
  std::size_t t_points = 41;
  std::string output;
  std::string format;
  bool canonical = false;
  std::string test = "ks";
  int max_n = 6;
  unsigned workers = 0;
  // cf-table / gof
  int n = 3;
  int k = 2;
  bool numerical = false;
  std::string data;
  std::string column;
  std::size_t replicates = 199;
  bool center_median = false;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv("LOGSHIFT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string("LOGSHIFT_SEED is not a 64-bit unsigned integer: ") + env);
  }
  return value;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ls::TwoSampleTest parse_test(const std::string& name) {
  if (name == "ks") return ls::TwoSampleTest::kolmogorov_smirnov;
  if (name == "cvm") return ls::TwoSampleTest::cramer_von_mises;
  throw UsageError("--test must be ks or cvm");
}

json envelope(const std::string& command, const Options& o) {
  json j = {{"tool", "logshift"}, {"version", ls::kVersion}, {"command", command}};
  if (!o.canonical) j["timestamp"] = utc_timestamp();
  return j;
}

// Writes to a sibling temp file and renames it over the target.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp =
      target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw UsageError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw UsageError("cannot rename report onto " + path + ": " + ec.message());
  }
}

std::string resolve_format(const Options& o, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("--format " + f + " is not supported by this command");
}

ls::VerificationConfig verification_config(const Options& o) {
  ls::VerificationConfig c;
  c.sample_size = o.sample_size;
  c.alpha = o.alpha.value_or(0.01);
  c.t_grid = ls::uniform_grid(o.t_min, o.t_max, o.t_points);
  c.seed = resolve_seed(o);
  c.test = parse_test(o.test);
  c.workers = o.workers;
  c.validate();
  return c;
}

json config_json(const ls::VerificationConfig& c, const Options& o) {
  return {
      {"parent", ls::parse_distribution(o.parent).to_string()},
      {"sample_size", c.sample_size},
      {"alpha", c.alpha},
      {"seed", c.seed},
      {"t_min", o.t_min},
      {"t_max", o.t_max},
      {"t_points", o.t_points},
      {"cf_threshold", c.cf_threshold},
      {"test", ls::to_string(c.test)},
  };
}

int exit_for(ls::Verdict v) {
  return v == ls::Verdict::consistent ? kExitOk : kExitRejected;
}

// Single equation: its own verdict. Several: Bonferroni family verdict.
int emit_reports(const std::string& command, const Options& o,
                 const ls::VerificationConfig& c, json head,
                 const std::vector<ls::VerificationReport>& reports) {
  const auto family = ls::family_verdict(reports, c.alpha);
  const ls::Verdict overall = reports.size() == 1 ? reports.front().verdict : family.verdict;
  const std::string format = resolve_format(o, "json", {"json", "text"});
  std::string text;
  if (format == "json") {
    json j = envelope(command, o);
    j["config"] = config_json(c, o);
    for (auto& [key, value] : head.items()) j[key] = value;
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(ls::to_json(r));
    j["family"] = ls::to_json(family);
    j["verdict"] = ls::to_string(overall);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& r : reports) os << ls::summary(r) << '\n';
    if (reports.size() > 1) {
      os << "family: " << family.tests << " tests, min p=" << family.min_p_value
         << " vs " << family.bonferroni_alpha << ", raw rejections " << family.raw_rejections
         << '\n';
    }
    os << "verdict: " << ls::to_string(overall) << '\n';
    text = os.str();
  }
  write_output(o.output, text);
  return exit_for(overall);
}

int run_verify(const Options& o) {
  if (o.identity.empty()) throw UsageError("verify requires --identity");
  const auto c = verification_config(o);
  const auto selection = ls::parse_identity(o.identity, ls::parse_distribution(o.parent));
  std::vector<ls::VerificationReport> reports;
  for (const auto& id : selection.equations) reports.push_back(ls::verify(id, c));
  const bool exploratory = selection.family == ls::IdentityFamily::theorem1 &&
                           !selection.characterization_level;
  json head = {{"selector", selection.selector},
               {"characterization_level", selection.characterization_level},
               {"exploratory", exploratory}};
  if (exploratory) {
    std::cerr << "note: " << selection.selector
              << " covers fewer than r ranks; result is exploratory only\n";
  }
  return emit_reports("verify", o, c, head, reports);
}

int run_verify_all(const Options& o) {
  const auto c = verification_config(o);
  std::vector<ls::VerificationReport> reports;
  for (const auto& id : ls::catalog(o.max_n, ls::parse_distribution(o.parent))) {
    reports.push_back(ls::verify(id, c));
  }
  return emit_reports("verify-all", o, c, json{{"max_n", o.max_n}}, reports);
}

int run_cf_table(const Options& o) {
  const ls::OrderStatistic s(ls::parse_distribution(o.parent), o.n, o.k);
  const auto t = ls::uniform_grid(o.t_min, o.t_max, o.t_points);
  const bool exact = !o.numerical && ls::has_closed_form_cf(s.parent());
  const auto grid = exact ? ls::exact_cf_grid(s, t) : ls::numerical_cf_grid(s, t);
  const std::string format = resolve_format(o, "csv", {"csv", "json", "text"});
  std::ostringstream os;
  if (format == "json") {
    json j = envelope("cf-table", o);
    j["parent"] = s.parent().to_string();
    j["n"] = s.n();
    j["k"] = s.k();
    j["method"] = exact ? "closed_form" : "quadrature";
    j["rows"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      j["rows"].push_back({{"t", grid.t_values[i]},
                           {"re", grid.cf_values[i].real()},
                           {"im", grid.cf_values[i].imag()},
                           {"err", grid.abs_error_bound[i]}});
    }
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    ls::write_csv(os, grid);
  } else {
    os.precision(10);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << grid.t_values[i] << '\t' << grid.cf_values[i].real() << '\t'
         << grid.cf_values[i].imag() << '\n';
    }
  }
  write_output(o.output, os.str());
  return kExitOk;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  return fields;
}

std::optional<double> to_real(const std::string& s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

// One value per line, or the named / 1-based column of a CSV with a header.
std::vector<double> read_data(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read data file " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> index;
  if (!column.empty()) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line != "\r") break;
    }
    const auto header = split_csv(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == column) index = i;
    }
    if (!index) {
      std::size_t pos = 0;
      if (std::from_chars(column.data(), column.data() + column.size(), pos).ec ==
              std::errc() &&
          pos >= 1 && pos <= header.size()) {
        index = pos - 1;
      }
    }
    if (!index) throw UsageError("column '" + column + "' not found in " + path);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const auto fields = split_csv(line);
    const std::size_t i = index.value_or(0);
    if (!index && fields.size() != 1) {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected one value per line (use --column for CSV)");
    }
    const auto value = i < fields.size() ? to_real(fields[i]) : std::nullopt;
    if (!value) {
      if (!index && values.empty() && line_no == 1) continue;  // header line
      throw UsageError(path + ":" + std::to_string(line_no) + ": not a number");
    }
    values.push_back(*value);
  }
  return values;
}

int run_gof(const Options& o) {
  if (o.data.empty()) throw UsageError("gof requires --data");
  const auto data = read_data(o.data, o.column);
  ls::GofConfig c;
  c.null_replicates = o.replicates;
  c.alpha = o.alpha.value_or(0.05);
  c.seed = resolve_seed(o);
  c.center_median = o.center_median;
  c.workers = o.workers;
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw UsageError("--alpha must be in (0, 1)");
  const auto result = ls::gof_test(data, o.n, o.k, c);
  const bool rejected = result.rejected(c.alpha);
  const std::string format = resolve_format(o, "json", {"json", "text"});
  std::string text;
  if (format == "json") {
    json j = envelope("gof", o);
    j["config"] = {{"n", o.n},
                   {"k", o.k},
                   {"alpha", c.alpha},
                   {"null_replicates", c.null_replicates},
                   {"center_median", c.center_median},
                   {"reconstruction_passes", c.reconstruction_passes}};
    j["result"] = ls::to_json(result);
    j["rejected"] = rejected;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << result.identity_used << " statistic=" << result.statistic
       << " p=" << result.p_value << " N=" << result.sample_size
       << " seed=" << result.seed << " -> " << (rejected ? "rejected" : "not rejected")
       << '\n';
    text = os.str();
  }
  write_output(o.output, text);
  return rejected ? kExitRejected : kExitOk;
}

int run_catalog(const Options& o) {
  const auto ids = ls::catalog(o.max_n, ls::parse_distribution(o.parent));
  const std::string format = resolve_format(o, "text", {"text", "json"});
  std::ostringstream os;
  if (format == "json") {
    json j = envelope("catalog", o);
    j["identities"] = json::array();
    for (const auto& id : ids) j["identities"].push_back(ls::to_json(id));
    os << j.dump(2) << '\n';
  } else {
    for (const auto& id : ids) {
      os << id.label << "\t" << id.lhs.to_string() << " =d " << id.rhs.to_string() << '\n';
    }
  }
  write_output(o.output, os.str());
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o, bool sampling) {
  cmd->add_option("--parent", o.parent, "Parent distribution, e.g. normal,mu=0,sigma=1.8");
  cmd->add_option("--output", o.output, "Report path (default: stdout)");
  cmd->add_option("--format", o.format, "json, csv or text");
  cmd->add_flag("--canonical", o.canonical, "Omit the timestamp field");
  if (!sampling) return;
  cmd->add_option("--sample-size", o.sample_size, "Draws per side")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", o.alpha, "Significance level");
  cmd->add_option("--seed", o.seed, "Root seed (default: $LOGSHIFT_SEED or 0)");
  cmd->add_option("--workers", o.workers, "Worker threads (0: all cores)");
}

void add_grid(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-min", o.t_min, "Grid start");
  cmd->add_option("--t-max", o.t_max, "Grid end");
  cmd->add_option("--t-points", o.t_points, "Grid size");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Order-statistic shift identities for the logistic distribution", "logshift"};
  app.set_version_flag("--version", std::string(logshift::kVersion));
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Verify one identity selector");
  verify->add_option("--identity", o.identity, "e.g. lemma1i:k=2,m=4,n=5")->required();
  verify->add_option("--test", o.test, "ks or cvm");
  add_common(verify, o, true);
  add_grid(verify, o);

  auto* verify_all = app.add_subcommand("verify-all", "Verify the whole catalog");
  verify_all->add_option("--max-n", o.max_n, "Largest sample size n")->check(CLI::PositiveNumber);
  verify_all->add_option("--test", o.test, "ks or cvm");
  add_common(verify_all, o, true);
  add_grid(verify_all, o);

  auto* cf_table = app.add_subcommand("cf-table", "Tabulate the CF of X_{k,n}");
  cf_table->add_option("--n", o.n, "Sample size")->required();
  cf_table->add_option("--k", o.k, "Rank")->required();
  cf_table->add_flag("--numerical", o.numerical, "Force quadrature");
  add_common(cf_table, o, false);
  add_grid(cf_table, o);

  auto* gof = app.add_subcommand("gof", "Logistic goodness-of-fit diagnostic");
  gof->add_option("--data", o.data, "Data file")->required();
  gof->add_option("--column", o.column, "CSV column name or 1-based index");
  gof->add_option("--n", o.n, "Block size (default 3)");
  gof->add_option("--k", o.k, "Rank (default 2)");
  gof->add_option("--replicates", o.replicates, "Null replicates (>= 199)");
  gof->add_flag("--center-median", o.center_median, "Subtract the sample median first");
  add_common(gof, o, true);

  auto* catalog = app.add_subcommand("catalog", "List identity selectors");
  catalog->add_option("--max-n", o.max_n, "Largest sample size n")->check(CLI::PositiveNumber);
  add_common(catalog, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    if (const auto nl = what.find('\n'); nl != std::string::npos) what.resize(nl);
    std::cerr << "logshift: " << what << '\n';
    return kExitUsage;
  }

  if (*verify) return run_verify(o);
  if (*verify_all) return run_verify_all(o);
  if (*cf_table) return run_cf_table(o);
  if (*gof) return run_gof(o);
  return run_catalog(o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "logshift: " << e.what() << '\n';
  } catch (const logshift::Error& e) {
    std::cerr << "logshift: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "logshift: " << e.what() << '\n';
  }
  return kExitUsage;
}
