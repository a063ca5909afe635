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

#include "cods/vis/chart.hpp"

#include <algorithm>

#include "cods/error.hpp"

namespace cods::vis {

namespace {

using Channel = std::optional<std::string> ChartSpec::*;
using AggregateSlot = std::optional<Aggregation> ChartSpec::*;

std::string field_description(FieldType type) {
  switch (type) {
    case FieldType::kNumerical: return "numerical data field";
    case FieldType::kTemporal: return "temporal data field";
    case FieldType::kCategorical: return "categorical data field";
  }
  return "data field";
}

Dimension make_dimension(std::string_view name, std::vector<std::string> elements) {
  Dimension d;
  d.name = std::string(name);
  d.elements = std::move(elements);
  return d;
}

std::vector<std::string> with_none(std::vector<std::string> v) {
  v.emplace_back(kNone);
  return v;
}

std::optional<std::string> none_to_absent(const std::string& s) {
  if (s == kNone) return std::nullopt;
  return s;
}

const Field* field_of(const DatasetSchema& schema, const std::optional<std::string>& name) {
  return name ? schema.find(*name) : nullptr;
}

bool is_type(const DatasetSchema& schema, const std::optional<std::string>& name, FieldType t) {
  const Field* f = field_of(schema, name);
  return f != nullptr && f->type == t;
}

template <typename T, std::size_t N>
std::optional<T> parse_enum(std::string_view s, const std::array<T, N>& values,
                            std::string_view (*name)(T)) {
  for (T v : values) {
    if (name(v) == s) return v;
  }
  return std::nullopt;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

std::string_view mark_name(Mark m) {
  switch (m) {
    case Mark::kBar: return "bar";
    case Mark::kLine: return "line";
    case Mark::kPoint: return "point";
    case Mark::kPie: return "pie";
  }
  return "bar";
}

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::kAverage: return "average";
    case Aggregation::kSum: return "sum";
    case Aggregation::kCount: return "count";
    case Aggregation::kMin: return "min";
    case Aggregation::kMax: return "max";
  }
  return "count";
}

std::string_view order_name(SortOrder o) {
  return o == SortOrder::kAscending ? "ascending" : "descending";
}

std::optional<Mark> parse_mark(std::string_view s) { return parse_enum(s, kMarks, mark_name); }

std::optional<Aggregation> parse_aggregation(std::string_view s) {
  return parse_enum(s, kAggregations, aggregation_name);
}

std::optional<SortOrder> parse_order(std::string_view s) {
  return parse_enum(s, std::array<SortOrder, 2>{SortOrder::kAscending, SortOrder::kDescending},
                    order_name);
}

DesignSpace build_vis_space(const DatasetSchema& schema) {
  if (schema.fields.empty()) throw ValidationError("/fields", "the dataset has no fields");
  std::vector<std::string> all, categorical;
  for (std::size_t k = 0; k < schema.fields.size(); ++k) {
    const Field& f = schema.fields[k];
    if (f.name == kNone) {
      throw ValidationError("/fields/" + std::to_string(k),
                            "a field named \"none\" clashes with the empty choice");
    }
    all.push_back(f.name);
    if (f.type == FieldType::kCategorical) categorical.push_back(f.name);
  }
  std::vector<std::string> marks, methods;
  for (Mark m : kMarks) marks.emplace_back(mark_name(m));
  for (Aggregation a : kAggregations) methods.emplace_back(aggregation_name(a));

  std::vector<Dimension> dims = {
      make_dimension(kMarkType, marks),
      make_dimension(kX, all),
      make_dimension(kY, with_none(all)),
      make_dimension(kColor, with_none(all)),
      make_dimension(kSize, with_none(all)),
      make_dimension(kGroupBy, with_none(categorical)),
      make_dimension(kAggregateX, with_none(methods)),
      make_dimension(kAggregateY, with_none(methods)),
      make_dimension(kAggregateSize, with_none(methods)),
      make_dimension(kSort, with_none(all)),
      make_dimension(kOrder, {"ascending", "descending", std::string(kNone)}),
  };

  MetaInfo meta;
  meta.audience = "data visualization designer";
  meta.dimension_descriptions = {
      {std::string(kMarkType), "The graphical primitive drawn for each data item; it fixes the chart type."},
      {std::string(kX), "The data field placed on the horizontal axis."},
      {std::string(kY), "The data field placed on the vertical axis; none when the axis shows an aggregated value such as a count."},
      {std::string(kColor), "The data field encoded by color, or none."},
      {std::string(kSize), "The numerical data field encoded by mark size, or none."},
      {std::string(kGroupBy), "The categorical field whose values split the records into groups, or none for no grouping."},
      {std::string(kAggregateX), "How the field on x is summarized within each group, or none."},
      {std::string(kAggregateY), "How the field on y is summarized within each group, or none."},
      {std::string(kAggregateSize), "How the field on size is summarized within each group, or none."},
      {std::string(kSort), "The data field that orders the records, or none."},
      {std::string(kOrder), "The sorting direction; none exactly when no sort field is chosen."},
  };
  std::vector<std::pair<std::string, std::string>> field_notes;
  for (const Field& f : schema.fields) field_notes.emplace_back(f.name, field_description(f.type));
  auto with_none_note = [&](std::vector<std::pair<std::string, std::string>> notes, const char* none) {
    notes.emplace_back(std::string(kNone), none);
    return notes;
  };
  std::vector<std::pair<std::string, std::string>> categorical_notes;
  for (const Field& f : schema.fields) {
    if (f.type == FieldType::kCategorical) categorical_notes.emplace_back(f.name, field_description(f.type));
  }
  std::vector<std::pair<std::string, std::string>> method_notes = {
      {"average", "arithmetic mean of the non-missing values"},
      {"sum", "total of the non-missing values"},
      {"count", "number of records in the group"},
      {"min", "smallest non-missing value"},
      {"max", "largest non-missing value"},
      {std::string(kNone), "no aggregation"},
  };
  meta.element_descriptions = {
      {std::string(kMarkType),
       {{"bar", "rectangular bars, suited to comparing amounts across categories"},
        {"line", "connected line, suited to trends over an ordered or temporal axis"},
        {"point", "one dot per item, suited to relationships between two quantities"},
        {"pie", "circle sectors, suited to parts of a whole"}}},
      {std::string(kX), field_notes},
      {std::string(kY), with_none_note(field_notes, "no field; the axis carries an aggregated value")},
      {std::string(kColor), with_none_note(field_notes, "color channel unused")},
      {std::string(kSize), with_none_note(field_notes, "size channel unused")},
      {std::string(kGroupBy), with_none_note(categorical_notes, "no grouping")},
      {std::string(kAggregateX), method_notes},
      {std::string(kAggregateY), method_notes},
      {std::string(kAggregateSize), method_notes},
      {std::string(kSort), with_none_note(field_notes, "keep the data order")},
      {std::string(kOrder),
       {{"ascending", "smallest first"}, {"descending", "largest first"}, {std::string(kNone), "no sorting"}}},
  };
  return DesignSpace("visualization", meta, dims);
}

std::vector<SymbolicConstraint> intrinsic_rules(const DesignSpace& space, const DatasetSchema& schema) {
  auto at = [&](std::string_view dim, std::string_view elem) { return space.resolve(dim, elem); };
  std::vector<SymbolicConstraint> out;
  auto exclusive = [&](std::vector<ElementRef> cells, const std::string& why) {
    out.push_back(SymbolicConstraint::exclusive(std::move(cells), why));
  };

  out.push_back(SymbolicConstraint::together(at(kOrder, kNone), at(kSort, kNone),
                                             "R1: order is none exactly when sort is none"));
  for (Aggregation a : kAggregations) {
    exclusive({at(kSize, kNone), at(kAggregateSize, aggregation_name(a))},
              "R2: a size aggregation needs a field on size");
  }
  for (const Field& f : schema.fields) {
    if (f.type == FieldType::kCategorical) continue;
    for (std::string_view aggregate : {kAggregateX, kAggregateY, kAggregateSize}) {
      for (Aggregation a : kAggregations) {
        exclusive({at(kGroupBy, kNone), at(kX, f.name), at(aggregate, aggregation_name(a))},
                  "R3: aggregating needs a group-by field or a categorical x");
      }
    }
  }
  exclusive({at(kMarkType, "pie"), at(kColor, kNone)}, "R4: a pie needs a field on color");
  exclusive({at(kMarkType, "pie"), at(kY, kNone), at(kAggregateY, kNone)},
            "R4: a pie needs a value on y");
  std::vector<ElementRef> not_numeric;
  for (const Field& f : schema.fields) {
    if (f.type != FieldType::kNumerical) not_numeric.push_back(at(kSize, f.name));
  }
  if (!not_numeric.empty()) {
    out.push_back(SymbolicConstraint::forbid(std::move(not_numeric), "R5: size only maps numerical fields"));
  }
  std::vector<ElementRef> xs;
  for (const Field& f : schema.fields) xs.push_back(at(kX, f.name));
  out.push_back(SymbolicConstraint::require_one_of(std::move(xs), "R6: x is always mapped"));
  for (Aggregation a : kAggregations) {
    if (!needs_numbers(a)) continue;
    for (const Field& f : schema.fields) {
      if (f.type == FieldType::kNumerical) continue;
      exclusive({at(kX, f.name), at(kAggregateX, aggregation_name(a))},
                "R7: " + std::string(aggregation_name(a)) + " needs a numerical field");
      exclusive({at(kY, f.name), at(kAggregateY, aggregation_name(a))},
                "R7: " + std::string(aggregation_name(a)) + " needs a numerical field");
    }
    exclusive({at(kY, kNone), at(kAggregateY, aggregation_name(a))},
              "R7: " + std::string(aggregation_name(a)) + " needs a field on y");
  }
  for (Aggregation a : kAggregations) {
    exclusive({at(kGroupBy, kNone), at(kAggregateX, aggregation_name(a))},
              "R8: aggregating x needs a group-by field");
  }
  return out;
}

std::vector<SymbolicConstraint> parsimony_preferences(const DesignSpace& space) {
  std::vector<SymbolicConstraint> out;
  for (std::string_view dim : {kColor, kSize, kGroupBy, kAggregateX, kAggregateY, kAggregateSize,
                               kSort, kOrder}) {
    out.push_back(SymbolicConstraint::prefer({space.resolve(dim, kNone)}, kParsimonyWeight,
                                             "leave unrequested channels unused"));
  }
  return out;
}

std::vector<std::string> rule_violations(const ChartSpec& spec, const DatasetSchema& schema) {
  std::vector<std::string> out;
  bool any_aggregate = spec.aggregate_x || spec.aggregate_y || spec.aggregate_size;
  if (spec.sort.has_value() != spec.order.has_value()) {
    out.push_back("R1: order must be present exactly when sort is");
  }
  if (spec.aggregate_size && !spec.size) out.push_back("R2: size aggregation without a size field");
  const Field* x = schema.find(spec.x);
  if (any_aggregate && !spec.group_by && !(x && x->type == FieldType::kCategorical)) {
    out.push_back("R3: aggregation without group_by needs a categorical x");
  }
  if (spec.mark == Mark::kPie) {
    if (!spec.color) out.push_back("R4: pie without a color field");
    if (!spec.y && !spec.aggregate_y) out.push_back("R4: pie without a value on y");
  }
  if (spec.size && !is_type(schema, spec.size, FieldType::kNumerical)) {
    out.push_back("R5: size maps a non-numerical field");
  }
  if (x == nullptr) out.push_back("R6: x must map a dataset field");
  const std::array<std::tuple<const char*, std::optional<std::string>, std::optional<Aggregation>>, 3>
      slots = {{{"x", std::optional<std::string>(spec.x), spec.aggregate_x},
                {"y", spec.y, spec.aggregate_y},
                {"size", spec.size, spec.aggregate_size}}};
  for (const auto& [name, field, aggregate] : slots) {
    if (!aggregate || !needs_numbers(*aggregate)) continue;
    if (!field) {
      out.push_back(std::string("R7: ") + std::string(aggregation_name(*aggregate)) + " on " + name +
                    " needs a field");
    } else if (!is_type(schema, field, FieldType::kNumerical)) {
      out.push_back(std::string("R7: ") + std::string(aggregation_name(*aggregate)) + " on " + name +
                    " needs a numerical field");
    }
  }
  if (spec.aggregate_x && !spec.group_by) out.push_back("R8: aggregating x needs group_by");
  return out;
}

std::vector<std::string> validate_chart_document(const Json& doc, const DatasetSchema& schema) {
  std::vector<std::string> out;
  if (!doc.is_object()) return {"/: expected an object"};
  auto field_ok = [&](const std::string& path, const Json& v) {
    if (!v.is_string()) {
      out.push_back(path + ": expected a field name");
      return false;
    }
    if (!schema.find(v.get<std::string>())) {
      out.push_back(path + ": unknown field \"" + v.get<std::string>() + "\"");
      return false;
    }
    return true;
  };
  for (const auto& [key, value] : doc.items()) {
    std::string path = "/" + key;
    if (key == "mark") {
      if (!value.is_string() || !parse_mark(value.get<std::string>())) {
        out.push_back(path + ": expected one of bar, line, point, pie");
      }
    } else if (key == "x" || key == "y" || key == "color" || key == "size" || key == "sort") {
      field_ok(path, value);
    } else if (key == "group_by") {
      if (field_ok(path, value) && schema.find(value.get<std::string>())->type != FieldType::kCategorical) {
        out.push_back(path + ": group_by must name a categorical field");
      }
    } else if (key == "aggregate") {
      if (!value.is_object() || value.empty()) {
        out.push_back(path + ": expected a non-empty object");
        continue;
      }
      for (const auto& [channel, method] : value.items()) {
        std::string cpath = path + "/" + channel;
        if (channel != "x" && channel != "y" && channel != "size") {
          out.push_back(cpath + ": unknown channel");
        } else if (!method.is_string() || !parse_aggregation(method.get<std::string>())) {
          out.push_back(cpath + ": expected one of average, sum, count, min, max");
        } else if (channel != "y" && !doc.contains(channel)) {
          out.push_back(cpath + ": aggregation on an unmapped channel");
        }
      }
    } else if (key == "order") {
      if (!value.is_string() || !parse_order(value.get<std::string>())) {
        out.push_back(path + ": expected ascending or descending");
      }
    } else {
      out.push_back(path + ": unknown key");
    }
  }
  if (!doc.contains("mark")) out.push_back("/mark: missing");
  if (!doc.contains("x")) out.push_back("/x: missing");
  if (doc.contains("sort") != doc.contains("order")) {
    out.push_back("/order: must be present exactly when sort is");
  }
  return out;
}

ChartSpec emit_chart_spec(const DesignSpace& space, const SolutionMatrix& solution,
                          const DatasetSchema& schema) {
  std::vector<ElementRef> tuple = solution_to_tuple(space, solution);
  auto pick = [&](std::string_view dim) -> const std::string& {
    auto i = space.find_dimension(dim);
    if (!i) throw ValidationError("/dimensions", "not a visualization space: no \"" + std::string(dim) + "\"");
    for (const ElementRef& r : tuple) {
      if (r.dimension == *i) return space.dimension(*i).elements[r.element];
    }
    throw ValidationError("/solution", "nothing selected for \"" + std::string(dim) + "\"");
  };
  auto aggregate = [&](std::string_view dim) -> std::optional<Aggregation> {
    const std::string& s = pick(dim);
    if (s == kNone) return std::nullopt;
    return parse_aggregation(s);
  };

  ChartSpec spec;
  spec.mark = *parse_mark(pick(kMarkType));
  spec.x = pick(kX);
  spec.y = none_to_absent(pick(kY));
  spec.color = none_to_absent(pick(kColor));
  spec.size = none_to_absent(pick(kSize));
  spec.group_by = none_to_absent(pick(kGroupBy));
  spec.aggregate_x = aggregate(kAggregateX);
  spec.aggregate_y = aggregate(kAggregateY);
  spec.aggregate_size = aggregate(kAggregateSize);
  spec.sort = none_to_absent(pick(kSort));
  if (const std::string& o = pick(kOrder); o != kNone) spec.order = parse_order(o);

  auto problems = rule_violations(spec, schema);
  if (!problems.empty()) throw ValidationError("/solution", join(problems, "; "));
  return spec;
}

Json to_json(const ChartSpec& spec) {
  Json j = Json::object();
  j["mark"] = mark_name(spec.mark);
  j["x"] = spec.x;
  const std::array<std::pair<const char*, Channel>, 4> channels = {{
      {"y", &ChartSpec::y}, {"color", &ChartSpec::color}, {"size", &ChartSpec::size},
      {"group_by", &ChartSpec::group_by}}};
  for (const auto& [key, member] : channels) {
    if (spec.*member) j[key] = *(spec.*member);
  }
  Json aggregate = Json::object();
  const std::array<std::pair<const char*, AggregateSlot>, 3> slots = {{
      {"x", &ChartSpec::aggregate_x}, {"y", &ChartSpec::aggregate_y},
      {"size", &ChartSpec::aggregate_size}}};
  for (const auto& [key, member] : slots) {
    if (spec.*member) aggregate[key] = aggregation_name(*(spec.*member));
  }
  if (!aggregate.empty()) j["aggregate"] = std::move(aggregate);
  if (spec.sort) j["sort"] = *spec.sort;
  if (spec.order) j["order"] = order_name(*spec.order);
  return j;
}

ChartSpec chart_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("/", "expected an object");
  auto text = [&](const char* key) -> std::optional<std::string> {
    auto it = doc.find(key);
    if (it == doc.end()) return std::nullopt;
    if (!it->is_string()) throw ValidationError(std::string("/") + key, "expected a string");
    return it->get<std::string>();
  };
  for (const auto& [key, value] : doc.items()) {
    static const std::array<const char*, 9> kKeys = {"mark", "x", "y", "color", "size",
                                                     "group_by", "aggregate", "sort", "order"};
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ValidationError("/" + key, "unknown key");
    }
  }
  ChartSpec spec;
  auto mark = text("mark");
  if (!mark || !parse_mark(*mark)) throw ValidationError("/mark", "expected one of bar, line, point, pie");
  spec.mark = *parse_mark(*mark);
  auto x = text("x");
  if (!x) throw ValidationError("/x", "missing");
  spec.x = *x;
  spec.y = text("y");
  spec.color = text("color");
  spec.size = text("size");
  spec.group_by = text("group_by");
  spec.sort = text("sort");
  if (auto o = text("order")) {
    spec.order = parse_order(*o);
    if (!spec.order) throw ValidationError("/order", "expected ascending or descending");
  }
  if (auto it = doc.find("aggregate"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("/aggregate", "expected an object");
    for (const auto& [channel, method] : it->items()) {
      std::string path = "/aggregate/" + channel;
      if (!method.is_string() || !parse_aggregation(method.get<std::string>())) {
        throw ValidationError(path, "expected one of average, sum, count, min, max");
      }
      Aggregation a = *parse_aggregation(method.get<std::string>());
      if (channel == "x") spec.aggregate_x = a;
      else if (channel == "y") spec.aggregate_y = a;
      else if (channel == "size") spec.aggregate_size = a;
      else throw ValidationError(path, "unknown channel");
    }
  }
  return spec;
}

std::string serialize(const ChartSpec& spec) { return to_json(spec).dump(2) + "\n"; }

Json chart_spec_json_schema() {
  Json field = {{"type", "string"}, {"minLength", 1}};
  Json method = {{"enum", {"average", "sum", "count", "min", "max"}}};
  Json schema = Json::object();
  schema["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  schema["title"] = "Chart specification";
  schema["type"] = "object";
  schema["properties"] = {
      {"mark", {{"enum", {"bar", "line", "point", "pie"}}}},
      {"x", field},
      {"y", field},
      {"color", field},
      {"size", field},
      {"group_by", field},
      {"aggregate",
       {{"type", "object"},
        {"properties", {{"x", method}, {"y", method}, {"size", method}}},
        {"additionalProperties", false},
        {"minProperties", 1}}},
      {"sort", field},
      {"order", {{"enum", {"ascending", "descending"}}}},
  };
  schema["required"] = {"mark", "x"};
  schema["additionalProperties"] = false;
  schema["dependentRequired"] = {{"sort", {"order"}}, {"order", {"sort"}}};
  return schema;
}

}  // namespace cods::vis
