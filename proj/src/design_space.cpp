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

#include "cods/design_space.hpp"

#include <algorithm>
#include <set>

#include "cods/error.hpp"

namespace cods {

namespace {

std::string dim_path(std::size_t i) { return "/dimensions/" + std::to_string(i); }

const Json& require_member(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::string require_string(const Json& value, const std::string& path) {
  if (!value.is_string()) throw ValidationError(path, "expected a string");
  return value.get<std::string>();
}

}  // namespace

std::optional<int> Dimension::find(std::string_view element) const {
  for (int j = 0; j < size(); ++j) {
    if (elements[j] == element) return j;
  }
  return std::nullopt;
}

const std::string* MetaInfo::dimension_description(std::string_view dimension) const {
  for (const auto& [name, text] : dimension_descriptions) {
    if (name == dimension) return &text;
  }
  return nullptr;
}

const std::string* MetaInfo::element_description(std::string_view dimension,
                                                 std::string_view element) const {
  for (const auto& [dim, entries] : element_descriptions) {
    if (dim != dimension) continue;
    for (const auto& [name, text] : entries) {
      if (name == element) return &text;
    }
  }
  return nullptr;
}

DesignSpace::DesignSpace(std::string name, MetaInfo meta, std::vector<Dimension> dimensions)
    : name_(std::move(name)), meta_(std::move(meta)), dimensions_(std::move(dimensions)) {
  if (dimensions_.empty()) throw ValidationError("/dimensions", "a design space needs at least one dimension");
  std::set<std::string_view> seen_dims;
  for (std::size_t i = 0; i < dimensions_.size(); ++i) {
    const Dimension& dim = dimensions_[i];
    if (dim.name.empty()) throw ValidationError(dim_path(i) + "/name", "empty dimension name");
    if (!seen_dims.insert(dim.name).second) {
      throw ValidationError(dim_path(i) + "/name", "duplicate dimension name \"" + dim.name + "\"");
    }
    if (dim.elements.empty()) {
      throw ValidationError(dim_path(i) + "/elements", "dimension \"" + dim.name + "\" has no elements");
    }
    std::set<std::string_view> seen_elems;
    for (std::size_t j = 0; j < dim.elements.size(); ++j) {
      if (dim.elements[j].empty()) {
        throw ValidationError(dim_path(i) + "/elements/" + std::to_string(j), "empty element name");
      }
      if (!seen_elems.insert(dim.elements[j]).second) {
        throw ValidationError(dim_path(i) + "/elements/" + std::to_string(j),
                              "duplicate element \"" + dim.elements[j] + "\" in dimension \"" +
                                  dim.name + "\"");
      }
    }
    const Cardinality& c = dim.cardinality;
    if (c.min < 0 || c.min > c.max || c.max > dim.size()) {
      throw ValidationError(dim_path(i) + "/cardinality",
                            "cardinality [" + std::to_string(c.min) + "," + std::to_string(c.max) +
                                "] must satisfy 0 <= min <= max <= " + std::to_string(dim.size()));
    }
    padded_width_ = std::max(padded_width_, dim.size());
  }
  for (const auto& [dim, text] : meta_.dimension_descriptions) {
    if (!find_dimension(dim)) {
      throw ValidationError("/meta/dimensions/" + dim, "describes unknown dimension \"" + dim + "\"");
    }
  }
  for (const auto& [dim, entries] : meta_.element_descriptions) {
    auto i = find_dimension(dim);
    if (!i) throw ValidationError("/meta/elements/" + dim, "describes unknown dimension \"" + dim + "\"");
    for (const auto& [elem, text] : entries) {
      if (!dimensions_[*i].find(elem)) {
        throw ValidationError("/meta/elements/" + dim + "/" + elem,
                              "describes unknown element \"" + elem + "\"");
      }
    }
  }
}

std::vector<int> DesignSpace::row_lengths() const {
  std::vector<int> lengths;
  lengths.reserve(dimensions_.size());
  for (const auto& d : dimensions_) lengths.push_back(d.size());
  return lengths;
}

std::optional<int> DesignSpace::find_dimension(std::string_view name) const {
  for (int i = 0; i < num_dimensions(); ++i) {
    if (dimensions_[i].name == name) return i;
  }
  return std::nullopt;
}

bool DesignSpace::contains(ElementRef ref) const {
  return ref.dimension >= 0 && ref.dimension < num_dimensions() && ref.element >= 0 &&
         ref.element < dimensions_[ref.dimension].size();
}

ElementRef DesignSpace::resolve(std::string_view dimension, std::string_view element) const {
  auto i = find_dimension(dimension);
  if (!i) {
    throw ResolveError({std::string(dimension)},
                       "unknown dimension \"" + std::string(dimension) + "\"");
  }
  auto j = dimensions_[*i].find(element);
  if (!j) {
    throw ResolveError({std::string(element)}, "unknown element \"" + std::string(element) +
                                                   "\" in dimension \"" + std::string(dimension) +
                                                   "\"");
  }
  return {*i, *j};
}

NamedRef DesignSpace::name_of(ElementRef ref) const {
  if (!contains(ref)) {
    throw ResolveError({}, "cell (" + std::to_string(ref.dimension) + "," +
                               std::to_string(ref.element) + ") is outside the design space");
  }
  const Dimension& d = dimensions_[ref.dimension];
  return {d.name, d.elements[ref.element]};
}

std::string DesignSpace::describe(ElementRef ref) const {
  if (!contains(ref)) {
    return "(" + std::to_string(ref.dimension) + "," + std::to_string(ref.element) + ")";
  }
  NamedRef named = name_of(ref);
  return named.dimension + ":" + named.element;
}

SolutionMatrix::SolutionMatrix(const DesignSpace& space)
    : SolutionMatrix(padded_shape(space), space.row_lengths()) {}

SolutionMatrix::SolutionMatrix(Shape shape, std::vector<int> row_lengths)
    : cells_(shape, 0), row_lengths_(std::move(row_lengths)) {
  if (static_cast<int>(row_lengths_.size()) != shape.rows) {
    throw ShapeError("row length count does not match the matrix row count");
  }
}

SolutionMatrix SolutionMatrix::from_rows(const DesignSpace& space,
                                         const std::vector<std::vector<int>>& rows) {
  SolutionMatrix x(space);
  Shape shape = x.shape();
  if (static_cast<int>(rows.size()) != shape.rows) {
    throw ShapeError("expected " + std::to_string(shape.rows) + " rows, got " +
                     std::to_string(rows.size()));
  }
  for (int i = 0; i < shape.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != shape.cols) {
      throw ShapeError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " cells, expected " + std::to_string(shape.cols));
    }
    for (int j = 0; j < shape.cols; ++j) x.set(i, j, static_cast<std::uint8_t>(rows[i][j]));
  }
  return x;
}

int SolutionMatrix::row_count(int i) const {
  int count = 0;
  for (int j = 0; j < shape().cols; ++j) count += at(i, j) != 0;
  return count;
}

Grid<std::uint8_t> SolutionMatrix::padding_mask() const {
  Grid<std::uint8_t> mask(shape(), 0);
  for (int i = 0; i < shape().rows; ++i) {
    for (int j = row_lengths_[i]; j < shape().cols; ++j) mask.at(i, j) = 1;
  }
  return mask;
}

Shape padded_shape(const DesignSpace& space) {
  return {space.num_dimensions(), space.padded_width()};
}

std::vector<std::string> validate_solution(const DesignSpace& space, const SolutionMatrix& x) {
  std::vector<std::string> problems;
  if (x.shape() != padded_shape(space) || x.row_lengths() != space.row_lengths()) {
    problems.push_back("solution shape does not match the design space");
    return problems;
  }
  for (int i = 0; i < space.num_dimensions(); ++i) {
    const Dimension& dim = space.dimension(i);
    for (int j = 0; j < x.shape().cols; ++j) {
      std::uint8_t v = x.at(i, j);
      if (v > 1) {
        problems.push_back("cell (" + std::to_string(i) + "," + std::to_string(j) + ") is not binary");
      } else if (v == 1 && x.is_padded(i, j)) {
        problems.push_back("padded cell (" + std::to_string(i) + "," + std::to_string(j) +
                           ") of dimension \"" + dim.name + "\" is selected");
      }
    }
    int count = x.row_count(i);
    if (count < dim.cardinality.min || count > dim.cardinality.max) {
      problems.push_back("dimension \"" + dim.name + "\" selects " + std::to_string(count) +
                         " elements, allowed [" + std::to_string(dim.cardinality.min) + "," +
                         std::to_string(dim.cardinality.max) + "]");
    }
  }
  return problems;
}

std::vector<ElementRef> solution_to_tuple(const DesignSpace& space, const SolutionMatrix& x) {
  if (x.shape() != padded_shape(space) || x.row_lengths() != space.row_lengths()) {
    throw ShapeError("solution shape does not match the design space");
  }
  auto problems = validate_solution(space, x);
  if (!problems.empty()) throw ValidationError("", problems.front());
  std::vector<ElementRef> refs;
  for (int i = 0; i < x.shape().rows; ++i) {
    for (int j = 0; j < x.shape().cols; ++j) {
      if (x.at(i, j)) refs.push_back({i, j});
    }
  }
  return refs;
}

SolutionMatrix tuple_to_solution(const DesignSpace& space, const std::vector<ElementRef>& refs) {
  SolutionMatrix x(space);
  for (const ElementRef& ref : refs) {
    if (!space.contains(ref)) {
      throw ResolveError({space.describe(ref)},
                         "reference " + space.describe(ref) + " is outside the design space");
    }
    if (x.at(ref.dimension, ref.element)) {
      throw ValidationError("", "duplicate reference " + space.describe(ref));
    }
    x.set(ref.dimension, ref.element, 1);
  }
  return x;
}

SolutionMatrix tuple_to_solution(const DesignSpace& space, const std::vector<NamedRef>& refs) {
  std::vector<ElementRef> resolved;
  std::vector<std::string> unknown;
  for (const NamedRef& ref : refs) {
    try {
      resolved.push_back(space.resolve(ref));
    } catch (const ResolveError& e) {
      unknown.insert(unknown.end(), e.names().begin(), e.names().end());
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& n : unknown) list += (list.empty() ? "" : ", ") + ("\"" + n + "\"");
    throw ResolveError(unknown, "unresolved references: " + list);
  }
  return tuple_to_solution(space, resolved);
}

DesignSpace load_design_space(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("/", "design-space document must be an object");
  std::string name = require_string(require_member(doc, "name", ""), "/name");

  MetaInfo meta;
  if (auto it = doc.find("meta"); it != doc.end()) {
    const Json& m = *it;
    if (!m.is_object()) throw ValidationError("/meta", "expected an object");
    if (auto a = m.find("audience"); a != m.end()) meta.audience = require_string(*a, "/meta/audience");
    if (auto d = m.find("dimensions"); d != m.end()) {
      if (!d->is_object()) throw ValidationError("/meta/dimensions", "expected an object");
      for (const auto& [key, value] : d->items()) {
        meta.dimension_descriptions.emplace_back(key, require_string(value, "/meta/dimensions/" + key));
      }
    }
    if (auto e = m.find("elements"); e != m.end()) {
      if (!e->is_object()) throw ValidationError("/meta/elements", "expected an object");
      for (const auto& [dim, entries] : e->items()) {
        std::string path = "/meta/elements/" + dim;
        if (!entries.is_object()) throw ValidationError(path, "expected an object");
        std::vector<std::pair<std::string, std::string>> parsed;
        for (const auto& [elem, text] : entries.items()) {
          parsed.emplace_back(elem, require_string(text, path + "/" + elem));
        }
        meta.element_descriptions.emplace_back(dim, std::move(parsed));
      }
    }
  }

  const Json& dims = require_member(doc, "dimensions", "");
  if (!dims.is_array()) throw ValidationError("/dimensions", "expected an array");
  std::vector<Dimension> dimensions;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Json& d = dims[i];
    std::string path = dim_path(i);
    if (!d.is_object()) throw ValidationError(path, "expected an object");
    Dimension dim;
    dim.name = require_string(require_member(d, "name", path), path + "/name");
    const Json& elems = require_member(d, "elements", path);
    if (!elems.is_array()) throw ValidationError(path + "/elements", "expected an array");
    for (std::size_t j = 0; j < elems.size(); ++j) {
      dim.elements.push_back(require_string(elems[j], path + "/elements/" + std::to_string(j)));
    }
    if (auto c = d.find("cardinality"); c != d.end()) {
      if (!c->is_array() || c->size() != 2 || !(*c)[0].is_number_integer() ||
          !(*c)[1].is_number_integer()) {
        throw ValidationError(path + "/cardinality", "expected [min, max] integers");
      }
      dim.cardinality = {(*c)[0].get<int>(), (*c)[1].get<int>()};
      dim.cardinality_explicit = true;
    }
    dimensions.push_back(std::move(dim));
  }
  return DesignSpace(std::move(name), std::move(meta), std::move(dimensions));
}

DesignSpace load_design_space_text(std::string_view text) {
  return load_design_space(parse_json(text, "design-space document"));
}

DesignSpace load_design_space_file(const std::filesystem::path& path) {
  return load_design_space_text(read_file(path));
}

Json to_json(const DesignSpace& space) {
  Json doc = Json::object();
  doc["name"] = space.name();
  Json meta = Json::object();
  meta["audience"] = space.meta().audience;
  if (!space.meta().dimension_descriptions.empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : space.meta().dimension_descriptions) d[k] = v;
    meta["dimensions"] = std::move(d);
  }
  if (!space.meta().element_descriptions.empty()) {
    Json e = Json::object();
    for (const auto& [dim, entries] : space.meta().element_descriptions) {
      Json inner = Json::object();
      for (const auto& [k, v] : entries) inner[k] = v;
      e[dim] = std::move(inner);
    }
    meta["elements"] = std::move(e);
  }
  doc["meta"] = std::move(meta);
  Json dims = Json::array();
  for (const Dimension& d : space.dimensions()) {
    Json entry = Json::object();
    entry["name"] = d.name;
    entry["elements"] = d.elements;
    if (d.cardinality_explicit || d.cardinality != Cardinality{}) {
      entry["cardinality"] = Json::array({d.cardinality.min, d.cardinality.max});
    }
    dims.push_back(std::move(entry));
  }
  doc["dimensions"] = std::move(dims);
  return doc;
}

Json to_json(const SolutionMatrix& x) {
  Json rows = Json::array();
  for (int i = 0; i < x.shape().rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < x.shape().cols; ++j) row.push_back(static_cast<int>(x.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json tuple_to_json(const DesignSpace& space, const std::vector<ElementRef>& refs) {
  Json out = Json::array();
  for (const ElementRef& ref : refs) {
    NamedRef named = space.name_of(ref);
    out.push_back({{"dimension", named.dimension}, {"element", named.element}});
  }
  return out;
}

}  // namespace cods
