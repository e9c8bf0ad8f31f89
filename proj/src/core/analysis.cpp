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

#include "crossmesh/analysis.hpp"

#include <sstream>

#include "crossmesh/error.hpp"
#include "json.hpp"

namespace crossmesh {

namespace {

void require_positive(std::uint64_t value, const char* name) {
  if (value == 0) throw InvalidArgument(std::string(name) + " must be at least 1");
}

}  // namespace

IdleCells idle_cells(std::uint64_t n) {
  require_positive(n, "n");
  const BigInt big_n = n;
  const BigInt half = big_n * (big_n - 1) * big_n / 2;
  return {half, half};
}

BigInt batch_steps(std::uint64_t batches, std::uint64_t n) {
  require_positive(batches, "N");
  require_positive(n, "n");
  return BigInt(batches) * n + n - 1;
}

BigInt total_cell_steps(std::uint64_t batches, std::uint64_t n) {
  return BigInt(n) * n * batch_steps(batches, n);
}

Rational efficiency_formula(std::uint64_t batches, std::uint64_t n) {
  require_positive(batches, "N");
  require_positive(n, "n");
  const BigInt big_n = n;
  return Rational(BigInt(batches) * big_n, big_n * (BigInt(batches) + 1) - 1);
}

Rational efficiency_measured(const BatchMetrics& metrics) {
  if (metrics.order == 0 || metrics.total_steps == 0) {
    throw IntegrityFault("metrics carry no completed run");
  }
  BigInt series_sum = 0;
  for (const UtilizationSample& s : metrics.utilization) series_sum += s.active_cells;
  if (series_sum != metrics.active_cell_steps) {
    throw IntegrityFault("utilization series sums to " + series_sum.str() +
                         " but active_cell_steps is " + std::to_string(metrics.active_cell_steps));
  }
  if (metrics.utilization.size() != metrics.total_steps) {
    throw IntegrityFault("utilization series has " + std::to_string(metrics.utilization.size()) +
                         " samples for " + std::to_string(metrics.total_steps) + " steps");
  }
  const BigInt cells = BigInt(metrics.order) * metrics.order;
  return Rational(BigInt(metrics.active_cell_steps), cells * metrics.total_steps);
}

Rational average_steps(std::uint64_t batches, std::uint64_t n) {
  return Rational(batch_steps(batches, n), BigInt(batches));
}

std::uint64_t standard_mesh_steps(std::uint64_t n) {
  require_positive(n, "n");
  return 3 * n - 2;
}

std::uint64_t crosswired_steps(std::uint64_t n) {
  require_positive(n, "n");
  return 2 * n - 1;
}

bool ComparisonReport::all_match() const {
  for (const ComparisonRow& row : rows) {
    if (!row.matches()) return false;
  }
  return true;
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream out;
  out << "n,N,steps,steps_standard,active_cell_steps,total_cell_steps,efficiency_num,"
         "efficiency_den,avg_steps_num,avg_steps_den\n";
  for (const ComparisonRow& row : rows) {
    out << row.n << ',' << row.batches << ',' << row.steps << ',';
    if (row.steps_standard) out << *row.steps_standard;
    out << ',' << row.active_cell_steps << ',' << row.total_cell_steps << ','
        << row.efficiency_measured.num() << ',' << row.efficiency_measured.den() << ','
        << row.avg_steps.num() << ',' << row.avg_steps.den() << '\n';
  }
  return out.str();
}

std::string ComparisonReport::to_json() const {
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const ComparisonRow& row : rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["N"] = row.batches;
    r["steps"] = row.steps;
    r["steps_standard"] = row.steps_standard ? nlohmann::ordered_json(*row.steps_standard)
                                             : nlohmann::ordered_json(nullptr);
    r["active_cell_steps"] = row.active_cell_steps;
    r["total_cell_steps"] = row.total_cell_steps.str();
    r["efficiency"] = to_string(row.efficiency_measured);
    r["efficiency_formula"] = to_string(row.efficiency_formula);
    r["avg_steps"] = to_string(row.avg_steps);
    r["match"] = row.matches();
    rows_json.push_back(std::move(r));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows_json);
  doc["all_match"] = all_match();
  return doc.dump(2);
}

ComparisonReport compare_report(std::span<const BatchMetrics> runs, bool include_baseline) {
  if (runs.empty()) throw InvalidArgument("comparison needs at least one run");
  ComparisonReport report;
  report.rows.reserve(runs.size());
  for (const BatchMetrics& m : runs) {
    ComparisonRow row;
    row.n = m.order;
    row.batches = m.batches;
    row.steps = m.total_steps;
    if (include_baseline) row.steps_standard = standard_mesh_steps(m.order);
    row.active_cell_steps = m.active_cell_steps;
    row.total_cell_steps = BigInt(m.order) * m.order * m.total_steps;
    row.efficiency_measured = efficiency_measured(m);
    row.efficiency_formula = efficiency_formula(m.batches, m.order);
    row.avg_steps = Rational(BigInt(m.total_steps), BigInt(m.batches));
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string utilization_csv(const BatchMetrics& metrics) {
  std::ostringstream out;
  out << "t,active_cells\n";
  for (const UtilizationSample& s : metrics.utilization) out << s.t << ',' << s.active_cells << '\n';
  return out.str();
}

}  // namespace crossmesh
