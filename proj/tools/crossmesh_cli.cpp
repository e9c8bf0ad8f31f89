// Copyright 2026 The Crossmesh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// crossmesh command-line front end. Talks to the simulator only through the
// C interface.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "crossmesh/crossmesh.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag values found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the library reports a failure.
struct LibraryError : std::runtime_error {
  cm_status status;
  LibraryError(cm_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(cm_status status, const char* what) {
  if (status == CM_OK) return;
  std::string message = std::string(what) + ": " + cm_last_error();
  if (status == CM_ERR_INVALID_ARGUMENT || status == CM_ERR_DIMENSION_MISMATCH) throw UsageError(message);
  throw LibraryError(status, message);
}

struct StringDeleter {
  void operator()(char* s) const { cm_string_free(s); }
};

std::string take(char* s) {
  std::unique_ptr<char, StringDeleter> owned(s);
  return s == nullptr ? std::string() : std::string(s);
}

struct MatrixDeleter {
  void operator()(cm_matrix* m) const { cm_matrix_destroy(m); }
};
struct RunDeleter {
  void operator()(cm_run* r) const { cm_run_destroy(r); }
};
struct TablesDeleter {
  void operator()(cm_tables* t) const { cm_tables_destroy(t); }
};
struct ReportDeleter {
  void operator()(cm_report* r) const { cm_report_destroy(r); }
};
using Matrix = std::unique_ptr<cm_matrix, MatrixDeleter>;
using Run = std::unique_ptr<cm_run, RunDeleter>;
using Tables = std::unique_ptr<cm_tables, TablesDeleter>;
using Report = std::unique_ptr<cm_report, ReportDeleter>;

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  cm_matrix* m = nullptr;
  check(cm_matrix_random(n, seed, &m), "matrix");
  return Matrix(m);
}

struct Common {
  std::string n = "4";
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  std::string mode = "int";
  std::string format = "csv";
  std::string out;
  std::string exit_side = "left";
};

std::size_t parse_size(const std::string& text, const char* flag) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw UsageError(std::string(flag) + " expects a positive integer, got '" + text + "'");
  }
  return value;
}

// "7" or "2..12".
std::vector<std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_size(text, "--n")};
  const std::size_t lo = parse_size(text.substr(0, dots), "--n");
  const std::size_t hi = parse_size(text.substr(dots + 2), "--n");
  if (hi < lo) throw UsageError("--n range is empty: " + text);
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::size_t single_n(const Common& c) {
  const auto ns = parse_range(c.n);
  if (ns.size() != 1) throw UsageError("this subcommand takes a single --n");
  return ns.front();
}

cm_exit_side exit_side_of(const Common& c) { return c.exit_side == "right" ? CM_EXIT_RIGHT : CM_EXIT_LEFT; }
cm_format format_of(const Common& c) { return c.format == "json" ? CM_FORMAT_JSON : CM_FORMAT_CSV; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw UsageError("write to " + path + " failed");
}

// Main payload goes to --out when given, else stdout.
void emit(const Common& c, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
  } else {
    write_file(c.out, content);
  }
}

void require_int_mode(const Common& c, const char* subcommand) {
  if (c.mode != "int") throw UsageError(std::string(subcommand) + " supports --mode int only");
}

Run run_batch(std::size_t n, std::uint64_t count, std::uint64_t seed, cm_trace_mode trace,
              cm_exit_side side) {
  std::vector<Matrix> owned;
  std::vector<const cm_matrix*> as;
  std::vector<const cm_matrix*> bs;
  owned.reserve(2 * count);
  for (std::uint64_t k = 0; k < count; ++k) {
    owned.push_back(random_matrix(n, seed + 2 * k));
    as.push_back(owned.back().get());
    owned.push_back(random_matrix(n, seed + 2 * k + 1));
    bs.push_back(owned.back().get());
  }
  cm_run* raw = nullptr;
  check(cm_run_batch(as.data(), bs.data(), count, trace, side, &raw), "batch run");
  return Run(raw);
}

int cmd_multiply(const Common& c, const std::string& engine_name, const std::string& trace_path) {
  const std::size_t n = single_n(c);
  const cm_engine engine = engine_name == "standard" ? CM_ENGINE_STANDARD : CM_ENGINE_CROSSWIRED;
  const cm_trace_mode trace = trace_path.empty() ? CM_TRACE_OFF : CM_TRACE_CAPTURE;
  cm_run* raw = nullptr;
  if (c.mode == "symbolic") {
    check(cm_run_symbolic(engine, n, trace, &raw), "symbolic run");
  } else {
    Matrix a = random_matrix(n, c.seed);
    Matrix b = random_matrix(n, c.seed + 1);
    check(cm_run_single(engine, a.get(), b.get(), trace, exit_side_of(c), &raw), "run");
  }
  Run run(raw);

  char* product = nullptr;
  check(cm_run_product_text(run.get(), 0, &product), "product");
  emit(c, take(product));
  if (!trace_path.empty()) {
    char* jsonl = nullptr;
    check(cm_run_trace_jsonl(run.get(), &jsonl), "trace");
    write_file(trace_path, take(jsonl));
  }

  std::uint64_t steps = 0;
  check(cm_run_steps(run.get(), &steps), "steps");
  int match = 0;
  char* diff = nullptr;
  check(cm_run_verify(run.get(), &match, &diff), "verify");
  const std::string diff_text = take(diff);
  std::cout << "steps=" << steps << " oracle=" << (match ? "match" : "mismatch") << '\n';
  if (!match) {
    std::cerr << diff_text;
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_batch(const Common& c, const std::string& metrics_path) {
  require_int_mode(c, "batch");
  const std::size_t n = single_n(c);
  if (c.count == 0) throw UsageError("--count must be at least 1");
  Run run = run_batch(n, c.count, c.seed, CM_TRACE_OFF, exit_side_of(c));

  int match = 0;
  char* diff = nullptr;
  check(cm_run_verify(run.get(), &match, &diff), "verify");
  const std::string diff_text = take(diff);

  char* measured = nullptr;
  char* formula = nullptr;
  int equal = 0;
  check(cm_run_efficiency(run.get(), &measured, &formula, &equal), "efficiency");
  const std::string measured_text = take(measured);
  const std::string formula_text = take(formula);
  char* avg = nullptr;
  check(cm_run_average_steps(run.get(), &avg), "average steps");
  std::uint64_t steps = 0;
  check(cm_run_steps(run.get(), &steps), "steps");

  if (!metrics_path.empty()) {
    char* csv = nullptr;
    check(cm_run_utilization_csv(run.get(), &csv), "utilization");
    write_file(metrics_path, take(csv));
  }

  cm_report* raw = nullptr;
  check(cm_report_create(0, &raw), "report");
  Report report(raw);
  check(cm_report_add_run(report.get(), run.get()), "report row");
  char* rendered = nullptr;
  check(cm_report_render(report.get(), format_of(c), &rendered), "render");

  std::cout << "steps=" << steps << " efficiency=" << measured_text << " avg_steps=" << take(avg)
            << " oracle=" << (match ? "match" : "mismatch") << '\n';
  emit(c, take(rendered));
  if (!match) {
    std::cerr << diff_text;
    return kExitVerify;
  }
  if (!equal) {
    std::cerr << "efficiency mismatch: measured=" << measured_text << " formula=" << formula_text << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_tables(const Common& c, bool check_reference) {
  const std::size_t n = single_n(c);
  cm_tables* raw = nullptr;
  check(cm_tables_create(n, exit_side_of(c), &raw), "tables");
  Tables tables(raw);
  const cm_format format = format_of(c);
  const std::string ext = format == CM_FORMAT_JSON ? "json" : "csv";

  char* assignment = nullptr;
  char* arrival = nullptr;
  char* symmetry = nullptr;
  check(cm_tables_assignment(tables.get(), format, &assignment), "assignment table");
  check(cm_tables_arrival(tables.get(), format, &arrival), "arrival order");
  check(cm_tables_symmetry(tables.get(), format == CM_FORMAT_JSON ? CM_FORMAT_JSON : CM_FORMAT_TEXT, &symmetry),
        "symmetry");
  const std::string assignment_text = take(assignment);
  const std::string arrival_text = take(arrival);
  const std::string symmetry_text = take(symmetry);

  if (c.out.empty()) {
    std::cout << "# assignment n=" << n << '\n'
              << assignment_text << (assignment_text.ends_with('\n') ? "" : "\n") << "# arrival n=" << n << '\n'
              << arrival_text << (arrival_text.ends_with('\n') ? "" : "\n") << "# symmetry n=" << n << '\n'
              << symmetry_text << (symmetry_text.ends_with('\n') ? "" : "\n");
  } else {
    // --out names a directory here.
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) throw UsageError("cannot create " + c.out + ": " + ec.message());
    const std::filesystem::path dir(c.out);
    const std::string suffix = "_" + std::to_string(n) + ".";
    write_file((dir / ("assignment" + suffix + ext)).string(), assignment_text);
    write_file((dir / ("arrival" + suffix + ext)).string(), arrival_text);
    write_file((dir / ("symmetry" + suffix + (format == CM_FORMAT_JSON ? "json" : "txt"))).string(),
               symmetry_text);
  }

  int ok = 0;
  check(cm_tables_symmetry_ok(tables.get(), &ok), "symmetry");
  if (check_reference) {
    int available = 0;
    std::size_t deviations = 0;
    char* summary = nullptr;
    check(cm_tables_reference_check(n, &available, &deviations, &summary), "reference check");
    const std::string text = take(summary);
    if (!available) {
      std::cout << "no reference table for n=" << n << '\n';
    } else {
      std::cout << text << '\n';
    }
  }
  if (!ok) {
    std::cerr << "symmetry check failed for n=" << n << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

std::vector<std::uint64_t> parse_counts(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_size(item, "--counts"));
  if (out.empty()) throw UsageError("--counts is empty");
  return out;
}

struct CompareJob {
  std::size_t n;
  std::uint64_t count;
  Run run;
  std::uint64_t standard_steps = 0;
  std::string error;
};

int cmd_compare(const Common& c, const std::string& counts_text, bool baseline, unsigned jobs) {
  require_int_mode(c, "compare");
  const std::vector<std::size_t> ns = parse_range(c.n);
  const std::vector<std::uint64_t> counts =
      counts_text.empty() ? std::vector<std::uint64_t>{c.count} : parse_counts(counts_text);

  std::vector<CompareJob> work;
  for (std::size_t n : ns) {
    for (std::uint64_t count : counts) work.push_back(CompareJob{n, count, nullptr, 0, {}});
  }

  const cm_exit_side side = exit_side_of(c);
  const std::uint64_t seed = c.seed;
  auto execute = [&](CompareJob& job) {
    try {
      job.run = run_batch(job.n, job.count, seed, CM_TRACE_OFF, side);
      if (baseline) {
        Matrix a = random_matrix(job.n, seed);
        Matrix b = random_matrix(job.n, seed + 1);
        cm_run* raw = nullptr;
        check(cm_run_single(CM_ENGINE_STANDARD, a.get(), b.get(), CM_TRACE_OFF, side, &raw), "standard run");
        Run standard(raw);
        check(cm_run_steps(standard.get(), &job.standard_steps), "steps");
      }
    } catch (const std::exception& e) {
      job.error = e.what();
    }
  };

  // Jobs are claimed from a shared counter; results land in their own slot so
  // the output order does not depend on scheduling.
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(work.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < work.size(); k = next++) execute(work[k]);
    });
  }
  for (auto& t : pool) t.join();

  cm_report* raw = nullptr;
  check(cm_report_create(baseline ? 1 : 0, &raw), "report");
  Report report(raw);
  bool failed = false;
  for (CompareJob& job : work) {
    if (!job.error.empty()) {
      std::cerr << "n=" << job.n << " N=" << job.count << ": " << job.error << '\n';
      failed = true;
      continue;
    }
    check(cm_report_add_run(report.get(), job.run.get()), "report row");
    int match = 0;
    check(cm_run_verify(job.run.get(), &match, nullptr), "verify");
    if (!match) {
      std::cerr << "n=" << job.n << " N=" << job.count << ": product differs from the oracle\n";
      failed = true;
    }
    if (baseline && job.standard_steps != 3 * job.n - 2) {
      std::cerr << "n=" << job.n << ": standard mesh took " << job.standard_steps << " steps, expected "
                << 3 * job.n - 2 << '\n';
      failed = true;
    }
  }

  char* rendered = nullptr;
  check(cm_report_render(report.get(), format_of(c), &rendered), "render");
  emit(c, take(rendered));
  int all = 0;
  check(cm_report_all_match(report.get(), &all), "report");
  if (!all) {
    std::cerr << "measured efficiency differs from the closed form\n";
    failed = true;
  }
  return failed ? kExitVerify : kExitOk;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "Matrix order (compare also accepts a range like 2..12)");
  app->add_option("--count", c.count, "Number of pipelined products");
  app->add_option("--seed", c.seed, "Seed for the random operands");
  app->add_option("--mode", c.mode, "Operand kind")->check(CLI::IsMember({"int", "symbolic"}));
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "Output file (a directory for tables)");
  app->add_option("--exit-side", c.exit_side, "Edge where results leave the array")
      ->check(CLI::IsMember({"left", "right"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-wired mesh array simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cm_version()));

  Common common;
  std::string engine = "crosswired";
  std::string trace_path;
  std::string metrics_path;
  bool check_reference = false;
  std::string counts_text;
  bool baseline = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  CLI::App* multiply = app.add_subcommand("multiply", "Multiply one pair of matrices");
  add_common(multiply, common);
  multiply->add_option("--engine", engine, "Mesh to simulate")->check(CLI::IsMember({"crosswired", "standard"}));
  multiply->add_option("--trace", trace_path, "Write a JSON-lines trace of every step");

  CLI::App* batch = app.add_subcommand("batch", "Pipeline --count products through the cross-wired mesh");
  add_common(batch, common);
  batch->add_option("--metrics", metrics_path, "Write the per-step utilization CSV");

  CLI::App* tables = app.add_subcommand("tables", "Assignment table, arrival order and symmetry report");
  add_common(tables, common);
  tables->add_flag("--check-paper", check_reference, "Compare with the bundled reference tables (n = 4, 7)");

  CLI::App* compare = app.add_subcommand("compare", "Sweep n and batch counts into one report");
  add_common(compare, common);
  compare->add_option("--counts", counts_text, "Comma-separated batch counts (default: --count)");
  compare->add_flag("--baseline", baseline, "Also run the standard mesh");
  compare->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*multiply) return cmd_multiply(common, engine, trace_path);
    if (*batch) return cmd_batch(common, metrics_path);
    if (*tables) return cmd_tables(common, check_reference);
    return cmd_compare(common, counts_text, baseline, jobs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
}
