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

// Symbolic constraints and their compilation into the matrix program
//
//   maximize   sum_k w_k * <S^k, X>
//   subject to <H^k, X> (=|<=|>=) b_k    for every hard row k
//
// over binary X. Soft matrices are 0/1; hard rows carry coefficients in
// {-1, 0, 1}. Compilation also appends one or two rows per dimension for its
// selection cardinality.

#ifndef CODS_CONSTRAINTS_HPP
#define CODS_CONSTRAINTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cods/design_space.hpp"
#include "cods/json_util.hpp"

namespace cods {

// Declaration order is the canonical ordering used when merging constraints.
enum class ConstraintKind {
  kRequireOneOf,  // exactly one of the cells is selected
  kForbid,        // none of the cells is selected
  kTogether,      // two cells are selected together or not at all
  kExclusive,     // the cells are never all selected at once
  kPrefer,        // soft: reward each selected cell
  kAvoid,         // soft: penalize each selected cell
};

bool is_soft(ConstraintKind kind);
std::string_view kind_name(ConstraintKind kind);
std::optional<ConstraintKind> parse_kind(std::string_view name);

struct SymbolicConstraint {
  ConstraintKind kind = ConstraintKind::kRequireOneOf;
  std::vector<ElementRef> cells;
  // Soft kinds only; the sign is implied by the kind on compilation.
  double weight = 0.0;
  std::string rationale;

  static SymbolicConstraint require_one_of(std::vector<ElementRef> cells, std::string rationale = {});
  static SymbolicConstraint forbid(std::vector<ElementRef> cells, std::string rationale = {});
  static SymbolicConstraint together(ElementRef a, ElementRef b, std::string rationale = {});
  static SymbolicConstraint exclusive(std::vector<ElementRef> cells, std::string rationale = {});
  static SymbolicConstraint prefer(std::vector<ElementRef> cells, double weight = 1.0,
                                   std::string rationale = {});
  static SymbolicConstraint avoid(std::vector<ElementRef> cells, double weight = 1.0,
                                  std::string rationale = {});

  friend bool operator==(const SymbolicConstraint&, const SymbolicConstraint&) = default;
};

// Checks a constraint against a space; throws ResolveError for cells outside
// the space and ValidationError for malformed constraints (empty cell list,
// wrong arity, zero or non-finite soft weight, weight on a hard kind).
void validate_constraint(const DesignSpace& space, const SymbolicConstraint& c);

// The user requirement driving constraint generation.
struct RequirementInput {
  std::string text;
  std::vector<std::string> tags;

  explicit RequirementInput(std::string text, std::vector<std::string> tags = {});
};

enum class Sense { kEqual, kLessEqual, kGreaterEqual };
std::string_view sense_symbol(Sense sense);

enum class RowOrigin { kConstraint, kCardinality };

struct SoftRule {
  Grid<std::int8_t> matrix;
  double weight = 0.0;
  int source = -1;  // index into the symbolic constraint list
};

struct HardRow {
  Grid<std::int8_t> matrix;
  Sense sense = Sense::kEqual;
  int rhs = 0;
  RowOrigin origin = RowOrigin::kConstraint;
  int source = -1;  // constraint index, or dimension index for cardinality rows
};

struct CompiledConstraintSet {
  Shape shape;
  std::vector<int> row_lengths;
  std::vector<SoftRule> soft;
  std::vector<HardRow> hard;
};

CompiledConstraintSet compile(const DesignSpace& space,
                              const std::vector<SymbolicConstraint>& constraints);

// sum_k w_k * <S^k, x>. Throws ShapeError on mismatch.
double objective_value(const CompiledConstraintSet& set, const SolutionMatrix& x);

// <row, x>
int row_activity(const HardRow& row, const SolutionMatrix& x);
bool row_satisfied(Sense sense, int activity, int rhs);

struct RowCheck {
  int index = 0;
  int achieved = 0;
  Sense sense = Sense::kEqual;
  int rhs = 0;
  bool satisfied = false;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<RowCheck> rows;
  std::vector<std::string> structural;  // shape, non-binary or padding violations
};

FeasibilityReport check_feasible(const CompiledConstraintSet& set, const SolutionMatrix& x);

// Constraint document: [{"kind", "cells": [{"dimension", "element"}...],
// "weight"?, "rationale"?}]. Missing soft weights default to 1.
std::vector<SymbolicConstraint> load_constraints(const Json& doc, const DesignSpace& space);
std::vector<SymbolicConstraint> load_constraints_file(const std::filesystem::path& path,
                                                      const DesignSpace& space);
Json to_json(const std::vector<SymbolicConstraint>& constraints, const DesignSpace& space);
Json to_json(const SymbolicConstraint& constraint, const DesignSpace& space);

// Audit form: {"shape", "soft": [{"weight", "source", "matrix"}],
// "hard": [{"origin", "source", "sense", "rhs", "matrix"}]}.
Json to_json(const CompiledConstraintSet& set);

}  // namespace cods

#endif  // CODS_CONSTRAINTS_HPP
