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

#include "crossmesh/table_io.hpp"

#include <sstream>

#include "crossmesh/error.hpp"
#include "json.hpp"
#include "reference_tables_data.hpp"

namespace crossmesh {

std::string assignment_csv(const AssignmentTable& table) {
  std::ostringstream out;
  for (std::size_t r = 1; r <= table.order(); ++r) {
    for (std::size_t c = 1; c <= table.order(); ++c) {
      if (c > 1) out << ',';
      out << table.at(r, c).i << ' ' << table.at(r, c).j;
    }
    out << '\n';
  }
  return out.str();
}

std::string assignment_json(const AssignmentTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 1; r <= table.order(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 1; c <= table.order(); ++c) row.push_back({table.at(r, c).i, table.at(r, c).j});
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

std::string arrival_csv(const ArrivalOrderMatrix& order) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= order.order(); ++i) {
    for (std::size_t j = 1; j <= order.order(); ++j) {
      if (j > 1) out << ',';
      out << order.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::string arrival_json(const ArrivalOrderMatrix& order) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 1; i <= order.order(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 1; j <= order.order(); ++j) row.push_back(order.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

std::string symmetry_json(const SymmetryReport& report) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const MirrorPair& p : report.mirror_pairs) {
    pairs.push_back({{"row", p.row}, {"partner", p.partner}, {"ok", p.ok}});
  }
  doc["mirror_pairs"] = std::move(pairs);
  doc["middle_row_self_symmetric"] = report.middle_row_self_symmetric
                                         ? nlohmann::ordered_json(*report.middle_row_self_symmetric)
                                         : nlohmann::ordered_json(nullptr);
  doc["diagonal_ok"] = report.diagonal_ok;
  doc["row_permutation_ok"] = report.row_permutation_ok;
  doc["bijective_ok"] = report.bijective_ok;
  nlohmann::ordered_json issues = nlohmann::ordered_json::array();
  for (const Discrepancy& d : report.discrepancies) {
    nlohmann::ordered_json issue;
    issue["check"] = to_string(d.kind);
    issue["row"] = d.row;
    issue["col"] = d.col;
    issue["expected"] = d.expected ? nlohmann::ordered_json{d.expected->i, d.expected->j}
                                   : nlohmann::ordered_json(nullptr);
    issue["found"] = {d.found.i, d.found.j};
    issues.push_back(std::move(issue));
  }
  doc["discrepancies"] = std::move(issues);
  doc["ok"] = report.all_ok();
  return doc.dump(2);
}

std::string symmetry_text(const SymmetryReport& report) {
  std::ostringstream out;
  auto verdict = [](bool ok) { return ok ? "ok" : "FAILED"; };
  out << "diagonal first row: " << verdict(report.diagonal_ok) << '\n';
  out << "row permutations: " << verdict(report.row_permutation_ok) << '\n';
  out << "bijective: " << verdict(report.bijective_ok) << '\n';
  for (const MirrorPair& p : report.mirror_pairs) {
    if (p.row == p.partner) {
      out << "row " << p.row << " self-symmetric: " << verdict(p.ok) << '\n';
    } else {
      out << "rows " << p.row << " <-> " << p.partner << " mirror: " << verdict(p.ok) << '\n';
    }
  }
  for (const Discrepancy& d : report.discrepancies) {
    out << to_string(d.kind) << " discrepancy at (" << d.row << ',' << d.col << "): found "
        << label(d.found);
    if (d.expected) out << ", expected " << label(*d.expected);
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::vector<std::string>> tokenize(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string tok; fields >> tok;) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("table text has no rows");
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw InvalidArgument("table text is not square: row of " + std::to_string(row.size()) +
                            " entries in a table of " + std::to_string(rows.size()) + " rows");
    }
  }
  return rows;
}

std::uint64_t parse_unsigned(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument("malformed table entry '" + tok + "'");
  }
  return std::stoull(tok);
}

}  // namespace

AssignmentTable parse_assignment_text(std::string_view text) {
  const auto rows = tokenize(text);
  const std::size_t n = rows.size();
  std::vector<Component> grid;
  grid.reserve(n * n);
  for (const auto& row : rows) {
    for (const std::string& tok : row) {
      Component c;
      if (auto comma = tok.find(','); comma != std::string::npos) {
        c.i = static_cast<std::uint32_t>(parse_unsigned(tok.substr(0, comma)));
        c.j = static_cast<std::uint32_t>(parse_unsigned(tok.substr(comma + 1)));
      } else if (tok.size() == 2) {
        c.i = static_cast<std::uint32_t>(parse_unsigned(tok.substr(0, 1)));
        c.j = static_cast<std::uint32_t>(parse_unsigned(tok.substr(1, 1)));
      } else {
        throw InvalidArgument("assignment entry '" + tok + "' is neither 'ij' nor 'i,j'");
      }
      grid.push_back(c);
    }
  }
  return AssignmentTable(n, std::move(grid));
}

ArrivalOrderMatrix parse_arrival_text(std::string_view text) {
  const auto rows = tokenize(text);
  std::vector<std::uint64_t> ranks;
  for (const auto& row : rows) {
    for (const std::string& tok : row) ranks.push_back(parse_unsigned(tok));
  }
  return ArrivalOrderMatrix(rows.size(), std::move(ranks));
}

std::optional<AssignmentTable> reference_assignment(std::size_t n) {
  if (n == 4) return parse_assignment_text(detail::kReferenceAssignment4);
  if (n == 7) return parse_assignment_text(detail::kReferenceAssignment7);
  return std::nullopt;
}

std::optional<ArrivalOrderMatrix> reference_arrival(std::size_t n) {
  if (n == 4) return parse_arrival_text(detail::kReferenceArrival4);
  return std::nullopt;
}

std::string ReferenceComparison::summary() const {
  if (!available) return "no reference table for n=" + std::to_string(n);
  if (assignment_deviations.empty() && arrival_deviations.empty()) return "match";
  std::ostringstream out;
  out << "match except";
  bool first = true;
  for (const TableDeviation& d : assignment_deviations) {
    out << (first ? " " : ", ") << '(' << d.row << ',' << d.col << "): paper=" << label(d.reference)
        << " derived=" << label(d.derived);
    first = false;
  }
  for (const RankDeviation& d : arrival_deviations) {
    out << (first ? " " : ", ") << "rank(" << d.i << ',' << d.j << "): paper=" << d.reference
        << " derived=" << d.derived;
    first = false;
  }
  return out.str();
}

ReferenceComparison compare_with_reference(std::size_t n) {
  ReferenceComparison cmp;
  cmp.n = n;
  const auto reference = reference_assignment(n);
  if (!reference) return cmp;
  cmp.available = true;
  const AssignmentTable derived = assignment_table(n);
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t c = 1; c <= n; ++c) {
      ++cmp.entries_compared;
      if (reference->at(r, c) != derived.at(r, c)) {
        cmp.assignment_deviations.push_back({r, c, reference->at(r, c), derived.at(r, c)});
      }
    }
  }
  if (const auto ranks = reference_arrival(n)) {
    cmp.arrival_available = true;
    const ArrivalOrderMatrix derived_ranks = arrival_order(derived);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (ranks->at(i, j) != derived_ranks.at(i, j)) {
          cmp.arrival_deviations.push_back({i, j, ranks->at(i, j), derived_ranks.at(i, j)});
        }
      }
    }
  }
  return cmp;
}

}  // namespace crossmesh
