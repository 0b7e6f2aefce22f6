// Copyright 2026 The curlab Authors.
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

#include "curlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "curlab/error.hpp"

namespace curlab {

namespace {

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else if constexpr (std::is_same_v<T, double>)
          return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
        else
          return v;
      },
      cell);
}

template <class T>
Cell optional_cell(const std::optional<T>& v) {
  if (!v) return std::monostate{};
  return *v;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "-";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          if (!std::isfinite(v)) return "-";
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.4f", v);
          return buf;
        }
      },
      cell);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("table row has the wrong arity");
  rows.push_back(std::move(row));
}

std::string Table::to_text() const {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    auto& t = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      t.push_back(format_cell(row[c]));
      width[c] = std::max(width[c], t.back().size());
    }
  }
  std::string out;
  if (!title.empty()) out += "# " + title + "\n";
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) line += "  ";
      std::string cell = cells[c];
      line += cell + std::string(width[c] - cell.size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  emit(columns);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& t : text) emit(t);
  return out;
}

std::vector<std::string> Table::to_jsonl() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < columns.size(); ++c) j[columns[c]] = to_json(row[c]);
    out.push_back(j.dump());
  }
  return out;
}

std::string round_to_json(const RoundRecord& r, const Context& context) {
  nlohmann::ordered_json j;
  for (const auto& [key, value] : context) j[key] = to_json(value);
  j["round"] = r.round;
  j["T_r"] = to_json(optional_cell(r.percentile));
  j["threshold"] = to_json(optional_cell(r.threshold));
  j["n_selected"] = r.selected.size();
  j["n_departed"] = r.n_departed;
  j["train_size"] = r.train_size;
  j["stalled"] = r.stalled;
  j["val_error"] = r.val_error;
  j["test_error"] = r.test_error;
  j["pseudo_label_accuracy"] = to_json(optional_cell(r.pseudo_label_accuracy));
  return j.dump();
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stdev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v), ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace curlab
