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

// Exact maximization of the compiled 0-1 program.
//
// Both solvers order candidate solutions the same way: dimension-major, and
// within a dimension by the sorted list of selected element indices compared
// lexicographically (a proper prefix sorts first, so {} < {0} < {0,1} <
// {0,2} < {1}). Among optima of equal objective the first in this order is
// returned. For exactly-one dimensions this is plain index order.

#ifndef CODS_SOLVER_HPP
#define CODS_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/design_space.hpp"
#include "cods/json_util.hpp"

namespace cods {

enum class SolveStatus { kOptimal, kInfeasible };
std::string_view status_name(SolveStatus status);

struct SolveStats {
  std::int64_t nodes = 0;
  double elapsed_ms = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<SolutionMatrix> solution;
  double objective = 0.0;
  SolveStats stats;
};

// Objectives closer than this are treated as ties.
inline constexpr double kObjectiveTolerance = 1e-9;

struct SolverOptions {
  // Search nodes before ResourceLimitError.
  std::int64_t node_limit = 10'000'000;
  // Cap on the per-dimension candidate selections enumerated up front.
  std::int64_t choice_limit = 1'000'000;
};

// Depth-first branch-and-bound over dimensions in index order. Throws
// ShapeError when set was compiled against a different shape and
// ResourceLimitError when the node limit is hit.
SolveResult solve(const DesignSpace& space, const CompiledConstraintSet& set,
                  const SolverOptions& options = {});

struct BruteForceOptions {
  // Maximum number of complete assignments enumerated.
  std::int64_t assignment_cap = 1'000'000;
};

// Full enumeration with the same contract and tie-break as solve(). Used as
// the verification oracle. Throws ResourceLimitError above the cap.
SolveResult brute_force_solve(const DesignSpace& space, const CompiledConstraintSet& set,
                              const BruteForceOptions& options = {});

struct RuleContribution {
  int index = 0;
  int source = -1;
  double weight = 0.0;
  int matches = 0;
  double contribution = 0.0;
};

struct RowStatus {
  int index = 0;
  RowOrigin origin = RowOrigin::kConstraint;
  int source = -1;
  Sense sense = Sense::kEqual;
  int rhs = 0;
  int achieved = 0;
  bool binding = false;  // achieved == rhs
};

struct Explanation {
  std::vector<RuleContribution> soft;
  std::vector<RowStatus> hard;
  double total = 0.0;
};

// Per-rule breakdown of an optimal result. Throws Error when the result is
// not optimal.
Explanation explain(const SolveResult& result, const CompiledConstraintSet& set);

// {"status", "tuple", "objective", "per_rule", "stats"}. Wall-clock time is
// left out unless include_timing is set so that output is reproducible.
Json to_json(const SolveResult& result, const DesignSpace& space, const CompiledConstraintSet& set,
             bool include_timing = false);

}  // namespace cods

#endif  // CODS_SOLVER_HPP
