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

// Design spaces: a product of named dimensions, each a finite ordered list of
// selectable elements, plus the meta-information used to describe the space
// to a language model. A design solution is a binary matrix with one row per
// dimension, zero-padded to the widest dimension.
//
// Indices are 0-based everywhere. Elements are identified by name, unique
// within their dimension.

#ifndef CODS_DESIGN_SPACE_HPP
#define CODS_DESIGN_SPACE_HPP

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cods/json_util.hpp"

namespace cods {

struct Shape {
  int rows = 0;
  int cols = 0;
  friend bool operator==(const Shape&, const Shape&) = default;
};

// Dense row-major n x m matrix.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(Shape shape, T fill = T{})
      : shape_(shape), data_(static_cast<std::size_t>(shape.rows) * shape.cols, fill) {}

  Shape shape() const { return shape_; }
  T& at(int i, int j) { return data_[index(i, j)]; }
  const T& at(int i, int j) const { return data_[index(i, j)]; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * shape_.cols + j;
  }
  Shape shape_;
  std::vector<T> data_;
};

// Inclusive bounds on how many elements of one dimension a solution selects.
struct Cardinality {
  int min = 1;
  int max = 1;
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

struct Dimension {
  std::string name;
  std::vector<std::string> elements;
  Cardinality cardinality;
  // Whether the source document spelled out the cardinality; controls
  // re-serialization only.
  bool cardinality_explicit = false;

  int size() const { return static_cast<int>(elements.size()); }
  std::optional<int> find(std::string_view element) const;
};

struct MetaInfo {
  std::string audience;
  // Ordered as in the source document.
  std::vector<std::pair<std::string, std::string>> dimension_descriptions;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      element_descriptions;

  const std::string* dimension_description(std::string_view dimension) const;
  const std::string* element_description(std::string_view dimension,
                                         std::string_view element) const;
};

// Address of one non-padded cell.
struct ElementRef {
  int dimension = 0;
  int element = 0;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

// Address by name, as found in documents and model responses.
struct NamedRef {
  std::string dimension;
  std::string element;
  friend bool operator==(const NamedRef&, const NamedRef&) = default;
};

// Immutable once constructed; the constructor enforces every structural
// invariant and throws ValidationError naming the offending path.
class DesignSpace {
 public:
  DesignSpace(std::string name, MetaInfo meta, std::vector<Dimension> dimensions);

  const std::string& name() const { return name_; }
  const MetaInfo& meta() const { return meta_; }
  const std::vector<Dimension>& dimensions() const { return dimensions_; }
  const Dimension& dimension(int i) const { return dimensions_.at(i); }
  int num_dimensions() const { return static_cast<int>(dimensions_.size()); }
  // The padded width m: the largest element count over all dimensions.
  int padded_width() const { return padded_width_; }
  std::vector<int> row_lengths() const;

  std::optional<int> find_dimension(std::string_view name) const;
  bool contains(ElementRef ref) const;

  // Throws ResolveError listing the unknown name.
  ElementRef resolve(std::string_view dimension, std::string_view element) const;
  ElementRef resolve(const NamedRef& ref) const { return resolve(ref.dimension, ref.element); }
  NamedRef name_of(ElementRef ref) const;
  // "dimension:element", for messages.
  std::string describe(ElementRef ref) const;

 private:
  std::string name_;
  MetaInfo meta_;
  std::vector<Dimension> dimensions_;
  int padded_width_ = 0;
};

// Binary selection matrix. Cells beyond a row's length are padding. The
// container itself does not reject selected padding cells so that invalid
// matrices can be represented and reported on; see validate_solution().
class SolutionMatrix {
 public:
  SolutionMatrix() = default;
  explicit SolutionMatrix(const DesignSpace& space);
  SolutionMatrix(Shape shape, std::vector<int> row_lengths);

  // Builds from literal 0/1 rows; every row must have length m.
  static SolutionMatrix from_rows(const DesignSpace& space,
                                  const std::vector<std::vector<int>>& rows);

  Shape shape() const { return cells_.shape(); }
  const std::vector<int>& row_lengths() const { return row_lengths_; }
  bool is_padded(int i, int j) const { return j >= row_lengths_.at(i); }
  std::uint8_t at(int i, int j) const { return cells_.at(i, j); }
  void set(int i, int j, std::uint8_t value) { cells_.at(i, j) = value; }
  int row_count(int i) const;
  // 1 where the cell is padding.
  Grid<std::uint8_t> padding_mask() const;
  const Grid<std::uint8_t>& cells() const { return cells_; }

  friend bool operator==(const SolutionMatrix&, const SolutionMatrix&) = default;

 private:
  Grid<std::uint8_t> cells_;
  std::vector<int> row_lengths_;
};

Shape padded_shape(const DesignSpace& space);

// Describes every invariant x violates against space; empty when valid.
std::vector<std::string> validate_solution(const DesignSpace& space, const SolutionMatrix& x);

// Selected cells in dimension-major, element-index order. Throws ShapeError
// on shape mismatch, ValidationError when a padded cell is selected or a
// dimension's cardinality is violated.
std::vector<ElementRef> solution_to_tuple(const DesignSpace& space, const SolutionMatrix& x);

// Exactly the referenced cells set to 1. Throws ResolveError on a reference
// outside the space and ValidationError on a duplicate reference.
SolutionMatrix tuple_to_solution(const DesignSpace& space, const std::vector<ElementRef>& refs);
SolutionMatrix tuple_to_solution(const DesignSpace& space, const std::vector<NamedRef>& refs);

// Design-space document I/O. Throws ParseError on malformed JSON and
// ValidationError (with a path such as "/dimensions/1/name") otherwise.
DesignSpace load_design_space(const Json& doc);
DesignSpace load_design_space_text(std::string_view text);
DesignSpace load_design_space_file(const std::filesystem::path& path);
Json to_json(const DesignSpace& space);

Json to_json(const SolutionMatrix& x);
Json tuple_to_json(const DesignSpace& space, const std::vector<ElementRef>& refs);

}  // namespace cods

#endif  // CODS_DESIGN_SPACE_HPP
