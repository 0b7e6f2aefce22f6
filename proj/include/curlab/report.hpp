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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curlab/data.hpp"

namespace curlab {

using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

// Text form of a cell as it appears in aligned tables: doubles to 4
// decimals, null as "-".
std::string format_cell(const Cell& cell);

/// Result table with a human-readable and a JSON-lines rendering of the same cells.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_text() const;
  std::vector<std::string> to_jsonl() const;
};

using Context = std::vector<std::pair<std::string, Cell>>;

// One trace line: context fields first, then round, T_r, threshold,
// n_selected, n_departed, train_size, stalled, val_error, test_error,
// pseudo_label_accuracy.
std::string round_to_json(const RoundRecord& round, const Context& context = {});

double mean_of(const std::vector<double>& v);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double stdev_of(const std::vector<double>& v);

}  // namespace curlab
