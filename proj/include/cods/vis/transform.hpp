// Copyright 2026 The CODS Authors
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

#ifndef CODS_VIS_TRANSFORM_HPP
#define CODS_VIS_TRANSFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "cods/vis/chart.hpp"
#include "cods/vis/dataset.hpp"

namespace cods::vis {

struct OutputColumn {
  std::string channel;                // x, y, color, size or group_by
  std::optional<std::string> field;   // absent for a count on an empty y
  std::optional<Aggregation> aggregation;
};

struct TransformedTable {
  std::vector<OutputColumn> columns;
  std::vector<std::vector<Cell>> rows;
  bool grouped = false;
};

// Projects the mapped channels, grouping when the spec sets group_by or any
// aggregation. The group key is group_by plus every mapped field that is not
// aggregated, so one output row per distinct key, in order of first
// appearance. average/sum/min/max skip missing values (sum of nothing is 0,
// the others are missing); count counts every record of the group. Sorting
// is stable, with missing values last in either direction.
//
// Throws ValidationError for unknown fields, specs that break an intrinsic
// rule (which covers non-numeric aggregation), and, on grouped output, a sort
// field that is not one of the output columns.
TransformedTable apply_transform(const Dataset& data, const ChartSpec& spec);

// Three-way comparison used for sorting: numbers numerically, temporal values
// chronologically, other strings bytewise. Missing values are not handled
// here.
int compare_cells(const Cell& a, const Cell& b, FieldType type);

// {"columns": [{"channel", "field"?, "aggregate"?}], "rows": [[...]]}
Json to_json(const TransformedTable& table);

}  // namespace cods::vis

#endif  // CODS_VIS_TRANSFORM_HPP
