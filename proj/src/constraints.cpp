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

#include "cods/constraints.hpp"

#include <array>
#include <cmath>
#include <set>

#include "cods/error.hpp"

namespace cods {

namespace {

constexpr std::array<std::pair<ConstraintKind, std::string_view>, 6> kKindNames = {{
    {ConstraintKind::kRequireOneOf, "require_one_of"},
    {ConstraintKind::kForbid, "forbid"},
    {ConstraintKind::kTogether, "together"},
    {ConstraintKind::kExclusive, "exclusive"},
    {ConstraintKind::kPrefer, "prefer"},
    {ConstraintKind::kAvoid, "avoid"},
}};

void check_shape(const CompiledConstraintSet& set, const SolutionMatrix& x) {
  if (x.shape() != set.shape || x.row_lengths() != set.row_lengths) {
    throw ShapeError("solution shape does not match the compiled constraint set");
  }
}

}  // namespace

bool is_soft(ConstraintKind kind) {
  return kind == ConstraintKind::kPrefer || kind == ConstraintKind::kAvoid;
}

std::string_view kind_name(ConstraintKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ConstraintKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

SymbolicConstraint SymbolicConstraint::require_one_of(std::vector<ElementRef> cells,
                                                      std::string rationale) {
  return {ConstraintKind::kRequireOneOf, std::move(cells), 0.0, std::move(rationale)};
}

SymbolicConstraint SymbolicConstraint::forbid(std::vector<ElementRef> cells, std::string rationale) {
  return {ConstraintKind::kForbid, std::move(cells), 0.0, std::move(rationale)};
}

SymbolicConstraint SymbolicConstraint::together(ElementRef a, ElementRef b, std::string rationale) {
  return {ConstraintKind::kTogether, {a, b}, 0.0, std::move(rationale)};
}

SymbolicConstraint SymbolicConstraint::exclusive(std::vector<ElementRef> cells,
                                                 std::string rationale) {
  return {ConstraintKind::kExclusive, std::move(cells), 0.0, std::move(rationale)};
}

SymbolicConstraint SymbolicConstraint::prefer(std::vector<ElementRef> cells, double weight,
                                              std::string rationale) {
  return {ConstraintKind::kPrefer, std::move(cells), weight, std::move(rationale)};
}

SymbolicConstraint SymbolicConstraint::avoid(std::vector<ElementRef> cells, double weight,
                                             std::string rationale) {
  return {ConstraintKind::kAvoid, std::move(cells), weight, std::move(rationale)};
}

RequirementInput::RequirementInput(std::string text, std::vector<std::string> tags)
    : text(std::move(text)), tags(std::move(tags)) {
  if (this->text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ValidationError("requirement", "requirement text is empty");
  }
}

void validate_constraint(const DesignSpace& space, const SymbolicConstraint& c) {
  std::string kind(kind_name(c.kind));
  std::vector<std::string> outside;
  for (const ElementRef& ref : c.cells) {
    if (!space.contains(ref)) outside.push_back(space.describe(ref));
  }
  if (!outside.empty()) {
    throw ResolveError(outside, kind + " references a cell outside the space: " + outside.front());
  }
  if (c.cells.empty()) throw ValidationError(kind, "constraint has no cells");
  std::set<ElementRef> distinct(c.cells.begin(), c.cells.end());
  if (distinct.size() != c.cells.size()) {
    throw ValidationError(kind, "constraint lists a cell more than once");
  }
  if (c.kind == ConstraintKind::kTogether && c.cells.size() != 2) {
    throw ValidationError(kind, "together takes exactly two cells");
  }
  if (c.kind == ConstraintKind::kExclusive && c.cells.size() < 2) {
    throw ValidationError(kind, "exclusive takes at least two cells");
  }
  if (is_soft(c.kind)) {
    if (c.weight == 0.0 || !std::isfinite(c.weight)) {
      throw ValidationError(kind, "soft constraint needs a finite nonzero weight");
    }
  } else if (c.weight != 0.0) {
    throw ValidationError(kind, "hard constraint carries a weight");
  }
}

std::string_view sense_symbol(Sense sense) {
  switch (sense) {
    case Sense::kEqual:
      return "=";
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
  }
  return "?";
}

CompiledConstraintSet compile(const DesignSpace& space,
                              const std::vector<SymbolicConstraint>& constraints) {
  CompiledConstraintSet set;
  set.shape = padded_shape(space);
  set.row_lengths = space.row_lengths();

  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const SymbolicConstraint& c = constraints[k];
    validate_constraint(space, c);
    Grid<std::int8_t> m(set.shape, 0);
    int source = static_cast<int>(k);
    switch (c.kind) {
      case ConstraintKind::kPrefer:
      case ConstraintKind::kAvoid: {
        for (const ElementRef& r : c.cells) m.at(r.dimension, r.element) = 1;
        double w = std::abs(c.weight);
        set.soft.push_back({std::move(m), c.kind == ConstraintKind::kPrefer ? w : -w, source});
        break;
      }
      case ConstraintKind::kRequireOneOf:
      case ConstraintKind::kForbid:
        for (const ElementRef& r : c.cells) m.at(r.dimension, r.element) = 1;
        set.hard.push_back({std::move(m), Sense::kEqual,
                            c.kind == ConstraintKind::kRequireOneOf ? 1 : 0,
                            RowOrigin::kConstraint, source});
        break;
      case ConstraintKind::kTogether:
        m.at(c.cells[0].dimension, c.cells[0].element) = 1;
        m.at(c.cells[1].dimension, c.cells[1].element) = -1;
        set.hard.push_back({std::move(m), Sense::kEqual, 0, RowOrigin::kConstraint, source});
        break;
      case ConstraintKind::kExclusive:
        for (const ElementRef& r : c.cells) m.at(r.dimension, r.element) = 1;
        set.hard.push_back({std::move(m), Sense::kLessEqual,
                            static_cast<int>(c.cells.size()) - 1, RowOrigin::kConstraint, source});
        break;
    }
  }

  for (int i = 0; i < space.num_dimensions(); ++i) {
    const Dimension& dim = space.dimension(i);
    auto row = [&] {
      Grid<std::int8_t> m(set.shape, 0);
      for (int j = 0; j < dim.size(); ++j) m.at(i, j) = 1;
      return m;
    };
    if (dim.cardinality.min == dim.cardinality.max) {
      set.hard.push_back({row(), Sense::kEqual, dim.cardinality.min, RowOrigin::kCardinality, i});
    } else {
      set.hard.push_back(
          {row(), Sense::kGreaterEqual, dim.cardinality.min, RowOrigin::kCardinality, i});
      set.hard.push_back(
          {row(), Sense::kLessEqual, dim.cardinality.max, RowOrigin::kCardinality, i});
    }
  }
  return set;
}

double objective_value(const CompiledConstraintSet& set, const SolutionMatrix& x) {
  check_shape(set, x);
  double total = 0.0;
  for (const SoftRule& rule : set.soft) {
    int hits = 0;
    for (int i = 0; i < set.shape.rows; ++i) {
      for (int j = 0; j < set.shape.cols; ++j) hits += rule.matrix.at(i, j) * x.at(i, j);
    }
    total += rule.weight * hits;
  }
  return total;
}

int row_activity(const HardRow& row, const SolutionMatrix& x) {
  int sum = 0;
  Shape s = row.matrix.shape();
  for (int i = 0; i < s.rows; ++i) {
    for (int j = 0; j < s.cols; ++j) sum += row.matrix.at(i, j) * x.at(i, j);
  }
  return sum;
}

bool row_satisfied(Sense sense, int activity, int rhs) {
  switch (sense) {
    case Sense::kEqual:
      return activity == rhs;
    case Sense::kLessEqual:
      return activity <= rhs;
    case Sense::kGreaterEqual:
      return activity >= rhs;
  }
  return false;
}

FeasibilityReport check_feasible(const CompiledConstraintSet& set, const SolutionMatrix& x) {
  FeasibilityReport report;
  if (x.shape() != set.shape || x.row_lengths() != set.row_lengths) {
    report.structural.push_back("solution shape does not match the compiled constraint set");
    return report;
  }
  for (int i = 0; i < set.shape.rows; ++i) {
    for (int j = 0; j < set.shape.cols; ++j) {
      std::uint8_t v = x.at(i, j);
      std::string cell = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (v > 1) report.structural.push_back("cell " + cell + " is not binary");
      else if (v == 1 && x.is_padded(i, j)) report.structural.push_back("padded cell " + cell + " is selected");
    }
  }
  bool all_rows = true;
  for (std::size_t k = 0; k < set.hard.size(); ++k) {
    const HardRow& row = set.hard[k];
    RowCheck check;
    check.index = static_cast<int>(k);
    check.achieved = row_activity(row, x);
    check.sense = row.sense;
    check.rhs = row.rhs;
    check.satisfied = row_satisfied(row.sense, check.achieved, row.rhs);
    all_rows = all_rows && check.satisfied;
    report.rows.push_back(check);
  }
  report.feasible = all_rows && report.structural.empty();
  return report;
}

std::vector<SymbolicConstraint> load_constraints(const Json& doc, const DesignSpace& space) {
  if (!doc.is_array()) throw ValidationError("/", "constraint document must be an array");
  std::vector<SymbolicConstraint> out;
  std::vector<std::string> unknown;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const Json& item = doc[k];
    std::string path = "/" + std::to_string(k);
    if (!item.is_object()) throw ValidationError(path, "expected an object");
    auto kind_it = item.find("kind");
    if (kind_it == item.end() || !kind_it->is_string()) {
      throw ValidationError(path + "/kind", "missing constraint kind");
    }
    auto kind = parse_kind(kind_it->get<std::string>());
    if (!kind) throw ValidationError(path + "/kind", "unknown kind \"" + kind_it->get<std::string>() + "\"");
    SymbolicConstraint c;
    c.kind = *kind;
    auto cells = item.find("cells");
    if (cells == item.end() || !cells->is_array()) throw ValidationError(path + "/cells", "expected an array");
    for (std::size_t j = 0; j < cells->size(); ++j) {
      const Json& cell = (*cells)[j];
      std::string cpath = path + "/cells/" + std::to_string(j);
      if (!cell.is_object() || !cell.contains("dimension") || !cell.contains("element") ||
          !cell["dimension"].is_string() || !cell["element"].is_string()) {
        throw ValidationError(cpath, "expected {\"dimension\", \"element\"} strings");
      }
      try {
        c.cells.push_back(space.resolve(cell["dimension"].get<std::string>(),
                                        cell["element"].get<std::string>()));
      } catch (const ResolveError& e) {
        unknown.insert(unknown.end(), e.names().begin(), e.names().end());
      }
    }
    if (auto w = item.find("weight"); w != item.end()) {
      if (!w->is_number()) throw ValidationError(path + "/weight", "expected a number");
      if (!is_soft(c.kind)) throw ValidationError(path + "/weight", "hard constraint carries a weight");
      c.weight = w->get<double>();
    } else if (is_soft(c.kind)) {
      c.weight = 1.0;
    }
    if (auto r = item.find("rationale"); r != item.end()) {
      if (!r->is_string()) throw ValidationError(path + "/rationale", "expected a string");
      c.rationale = r->get<std::string>();
    }
    out.push_back(std::move(c));
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& n : unknown) list += (list.empty() ? "" : ", ") + ("\"" + n + "\"");
    throw ResolveError(unknown, "unresolved references: " + list);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    try {
      validate_constraint(space, out[k]);
    } catch (const ValidationError& e) {
      throw ValidationError("/" + std::to_string(k), e.what());
    }
  }
  return out;
}

std::vector<SymbolicConstraint> load_constraints_file(const std::filesystem::path& path,
                                                      const DesignSpace& space) {
  return load_constraints(parse_json(read_file(path), "constraint document"), space);
}

Json to_json(const SymbolicConstraint& c, const DesignSpace& space) {
  Json item = Json::object();
  item["kind"] = kind_name(c.kind);
  item["cells"] = tuple_to_json(space, c.cells);
  if (is_soft(c.kind)) item["weight"] = c.weight;
  if (!c.rationale.empty()) item["rationale"] = c.rationale;
  return item;
}

Json to_json(const std::vector<SymbolicConstraint>& constraints, const DesignSpace& space) {
  Json out = Json::array();
  for (const auto& c : constraints) out.push_back(to_json(c, space));
  return out;
}

namespace {

Json grid_json(const Grid<std::int8_t>& g) {
  Json rows = Json::array();
  for (int i = 0; i < g.shape().rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.shape().cols; ++j) row.push_back(static_cast<int>(g.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json to_json(const CompiledConstraintSet& set) {
  Json doc = Json::object();
  doc["shape"] = Json::array({set.shape.rows, set.shape.cols});
  Json soft = Json::array();
  for (const SoftRule& r : set.soft) {
    soft.push_back({{"weight", r.weight}, {"source", r.source}, {"matrix", grid_json(r.matrix)}});
  }
  doc["soft"] = std::move(soft);
  Json hard = Json::array();
  for (const HardRow& r : set.hard) {
    hard.push_back({{"origin", r.origin == RowOrigin::kConstraint ? "constraint" : "cardinality"},
                    {"source", r.source},
                    {"sense", sense_symbol(r.sense)},
                    {"rhs", r.rhs},
                    {"matrix", grid_json(r.matrix)}});
  }
  doc["hard"] = std::move(hard);
  return doc;
}

}  // namespace cods
