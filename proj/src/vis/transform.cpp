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

#include "cods/vis/transform.hpp"

#include <algorithm>
#include <map>

#include "cods/error.hpp"

namespace cods::vis {

namespace {

struct Plan {
  OutputColumn column;
  int source = -1;  // dataset column, -1 for a bare count
};

Cell aggregate(Aggregation a, const std::vector<std::size_t>& members, int source, const Table& table) {
  if (a == Aggregation::kCount) return static_cast<double>(members.size());
  double sum = 0, lo = 0, hi = 0;
  std::size_t n = 0;
  for (std::size_t r : members) {
    const double* v = std::get_if<double>(&table.rows[r][source]);
    if (v == nullptr) continue;
    sum += *v;
    lo = n == 0 ? *v : std::min(lo, *v);
    hi = n == 0 ? *v : std::max(hi, *v);
    ++n;
  }
  switch (a) {
    case Aggregation::kSum: return sum;
    case Aggregation::kAverage: return n ? Cell(sum / static_cast<double>(n)) : Cell();
    case Aggregation::kMin: return n ? Cell(lo) : Cell();
    case Aggregation::kMax: return n ? Cell(hi) : Cell();
    case Aggregation::kCount: break;
  }
  return Cell();
}

}  // namespace

int compare_cells(const Cell& a, const Cell& b, FieldType type) {
  const double* da = std::get_if<double>(&a);
  const double* db = std::get_if<double>(&b);
  if (da && db) return *da < *db ? -1 : (*db < *da ? 1 : 0);
  const std::string* sa = std::get_if<std::string>(&a);
  const std::string* sb = std::get_if<std::string>(&b);
  if (sa && sb) {
    if (type == FieldType::kTemporal) {
      auto ka = temporal_key(*sa), kb = temporal_key(*sb);
      if (ka && kb && *ka != *kb) return *ka < *kb ? -1 : 1;
    }
    int c = sa->compare(*sb);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  // Mixed kinds: numbers before strings.
  return a.index() < b.index() ? -1 : (a.index() > b.index() ? 1 : 0);
}

TransformedTable apply_transform(const Dataset& data, const ChartSpec& spec) {
  const DatasetSchema& schema = data.schema;
  auto column_of = [&](const std::string& path, const std::string& field) {
    int k = schema.index_of(field);
    if (k < 0) throw ValidationError(path, "unknown field \"" + field + "\"");
    return k;
  };
  column_of("/x", spec.x);
  for (const auto& [path, field] : {std::pair{"/y", spec.y}, std::pair{"/color", spec.color},
                                    std::pair{"/size", spec.size}, std::pair{"/group_by", spec.group_by},
                                    std::pair{"/sort", spec.sort}}) {
    if (field) column_of(path, *field);
  }
  if (auto problems = rule_violations(spec, schema); !problems.empty()) {
    throw ValidationError("/", problems.front());
  }

  std::vector<Plan> plan;
  auto add = [&](const char* channel, const std::optional<std::string>& field,
                 std::optional<Aggregation> aggregation) {
    if (field) {
      plan.push_back({{channel, field, aggregation}, schema.index_of(*field)});
    } else if (aggregation) {
      plan.push_back({{channel, std::nullopt, aggregation}, -1});
    }
  };
  add("x", spec.x, spec.aggregate_x);
  add("y", spec.y, spec.aggregate_y);
  add("color", spec.color, std::nullopt);
  add("size", spec.size, spec.aggregate_size);

  TransformedTable out;
  out.grouped = spec.group_by || spec.aggregate_x || spec.aggregate_y || spec.aggregate_size;
  if (out.grouped && spec.group_by) {
    plan.push_back({{"group_by", spec.group_by, std::nullopt}, schema.index_of(*spec.group_by)});
  }
  for (const Plan& p : plan) out.columns.push_back(p.column);

  const Table& table = data.table;
  // Per output row, the dataset rows it came from.
  std::vector<std::vector<std::size_t>> members;
  if (out.grouped) {
    std::vector<int> key_columns;
    for (const Plan& p : plan) {
      if (p.source >= 0 && !p.column.aggregation &&
          std::find(key_columns.begin(), key_columns.end(), p.source) == key_columns.end()) {
        key_columns.push_back(p.source);
      }
    }
    std::map<std::vector<Cell>, std::size_t> index;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      std::vector<Cell> key;
      for (int c : key_columns) key.push_back(table.rows[r][c]);
      auto [it, added] = index.emplace(std::move(key), members.size());
      if (added) members.emplace_back();
      members[it->second].push_back(r);
    }
  } else {
    for (std::size_t r = 0; r < table.rows.size(); ++r) members.push_back({r});
  }

  for (const auto& group : members) {
    std::vector<Cell> row;
    for (const Plan& p : plan) {
      if (p.column.aggregation) row.push_back(aggregate(*p.column.aggregation, group, p.source, table));
      else row.push_back(table.rows[group.front()][p.source]);
    }
    out.rows.push_back(std::move(row));
  }

  if (spec.sort) {
    const Field& field = *schema.find(*spec.sort);
    std::vector<Cell> keys;
    FieldType type = field.type;
    if (!out.grouped) {
      int c = schema.index_of(*spec.sort);
      for (const auto& group : members) keys.push_back(table.rows[group.front()][c]);
    } else {
      // The grouping column first, then a raw channel, then an aggregated one.
      int pick = -1;
      for (int pass = 0; pass < 3 && pick < 0; ++pass) {
        for (std::size_t k = 0; k < plan.size() && pick < 0; ++k) {
          const OutputColumn& col = plan[k].column;
          if (col.field != spec.sort) continue;
          bool is_group = col.channel == "group_by";
          if ((pass == 0 && is_group) || (pass == 1 && !is_group && !col.aggregation) ||
              (pass == 2 && col.aggregation)) {
            pick = static_cast<int>(k);
          }
        }
      }
      if (pick < 0) {
        throw ValidationError("/sort", "grouped output has no column for sort field \"" + *spec.sort + "\"");
      }
      if (plan[pick].column.aggregation) type = FieldType::kNumerical;
      for (const auto& row : out.rows) keys.push_back(row[pick]);
    }
    bool descending = spec.order == SortOrder::kDescending;
    std::vector<std::size_t> perm(out.rows.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      bool ma = is_missing(keys[a]), mb = is_missing(keys[b]);
      if (ma || mb) return !ma && mb;
      int c = compare_cells(keys[a], keys[b], type);
      return descending ? c > 0 : c < 0;
    });
    std::vector<std::vector<Cell>> sorted;
    for (std::size_t k : perm) sorted.push_back(std::move(out.rows[k]));
    out.rows = std::move(sorted);
  }
  return out;
}

Json to_json(const TransformedTable& table) {
  Json columns = Json::array();
  for (const OutputColumn& c : table.columns) {
    Json j = Json::object();
    j["channel"] = c.channel;
    if (c.field) j["field"] = *c.field;
    if (c.aggregation) j["aggregate"] = aggregation_name(*c.aggregation);
    columns.push_back(std::move(j));
  }
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::array();
    for (const Cell& c : row) r.push_back(to_json(c));
    rows.push_back(std::move(r));
  }
  return {{"columns", columns}, {"grouped", table.grouped}, {"rows", rows}};
}

}  // namespace cods::vis
