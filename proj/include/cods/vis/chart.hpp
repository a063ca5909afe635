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

// The eleven-dimension chart design space, its intrinsic hard rules, and the
// chart specification a solution maps to.

#ifndef CODS_VIS_CHART_HPP
#define CODS_VIS_CHART_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/design_space.hpp"
#include "cods/vis/dataset.hpp"

namespace cods::vis {

// Dimension names, in space order.
inline constexpr std::string_view kMarkType = "mark-type";
inline constexpr std::string_view kX = "x";
inline constexpr std::string_view kY = "y";
inline constexpr std::string_view kColor = "color";
inline constexpr std::string_view kSize = "size";
inline constexpr std::string_view kGroupBy = "group-by";
inline constexpr std::string_view kAggregateX = "aggregate-x";
inline constexpr std::string_view kAggregateY = "aggregate-y";
inline constexpr std::string_view kAggregateSize = "aggregate-size";
inline constexpr std::string_view kSort = "sort";
inline constexpr std::string_view kOrder = "order";
inline constexpr std::string_view kNone = "none";

enum class Mark { kBar, kLine, kPoint, kPie };
enum class Aggregation { kAverage, kSum, kCount, kMin, kMax };
enum class SortOrder { kAscending, kDescending };

inline constexpr std::array<Mark, 4> kMarks = {Mark::kBar, Mark::kLine, Mark::kPoint, Mark::kPie};
inline constexpr std::array<Aggregation, 5> kAggregations = {
    Aggregation::kAverage, Aggregation::kSum, Aggregation::kCount, Aggregation::kMin,
    Aggregation::kMax};

std::string_view mark_name(Mark m);
std::string_view aggregation_name(Aggregation a);
std::string_view order_name(SortOrder o);
std::optional<Mark> parse_mark(std::string_view s);
std::optional<Aggregation> parse_aggregation(std::string_view s);
std::optional<SortOrder> parse_order(std::string_view s);
// Every method except count needs numbers.
inline bool needs_numbers(Aggregation a) { return a != Aggregation::kCount; }

// Throws ValidationError if the schema is empty or a field is named "none".
DesignSpace build_vis_space(const DatasetSchema& schema);

// Hard rules that make every feasible point a renderable chart:
//   R1 order is none exactly when sort is none
//   R2 a size aggregation needs size mapped
//   R3 an aggregation needs group-by set or a categorical x
//   R4 a pie needs color mapped and a value on y
//   R5 size only maps numerical fields
//   R6 x is always mapped
//   R7 average/sum/min/max need a numerical field (and a mapped y)
//   R8 aggregating x needs group-by set
// Constraint rationales start with the rule id.
std::vector<SymbolicConstraint> intrinsic_rules(const DesignSpace& space, const DatasetSchema& schema);

// Weak soft preferences (weight kParsimonyWeight each) for "none" on every
// optional dimension, so channels the requirement never asks for stay off.
inline constexpr double kParsimonyWeight = 0.01;
std::vector<SymbolicConstraint> parsimony_preferences(const DesignSpace& space);

struct ChartSpec {
  Mark mark = Mark::kBar;
  std::string x;
  std::optional<std::string> y, color, size, group_by;
  std::optional<Aggregation> aggregate_x, aggregate_y, aggregate_size;
  std::optional<std::string> sort;
  std::optional<SortOrder> order;

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

// Which intrinsic rules a spec breaks, as "R<k>: <reason>". Evaluated on the
// spec directly, independent of the compiled rules.
std::vector<std::string> rule_violations(const ChartSpec& spec, const DatasetSchema& schema);

// Grammar and invariant check of a ChartSpec document: known keys only,
// enumerated values, fields present in the schema, order iff sort,
// aggregations only on mapped channels (or y absent), group_by categorical.
std::vector<std::string> validate_chart_document(const Json& doc, const DatasetSchema& schema);

// Maps a solution to a spec. Throws ValidationError if the solution is not a
// valid selection or breaks an intrinsic rule.
ChartSpec emit_chart_spec(const DesignSpace& space, const SolutionMatrix& solution,
                          const DatasetSchema& schema);

// Canonical key order: mark, x, y, color, size, group_by, aggregate{x, y,
// size}, sort, order. Absent entries are omitted.
Json to_json(const ChartSpec& spec);
// Throws ValidationError on grammar errors.
ChartSpec chart_spec_from_json(const Json& doc);
// to_json(spec) pretty-printed with a trailing newline.
std::string serialize(const ChartSpec& spec);

// JSON Schema (draft 2020-12) of the chart document grammar.
Json chart_spec_json_schema();

}  // namespace cods::vis

#endif  // CODS_VIS_CHART_HPP
