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

#ifndef CODS_VIS_GENERATE_HPP
#define CODS_VIS_GENERATE_HPP

#include <optional>
#include <vector>

#include "cods/llm/pipeline.hpp"
#include "cods/solver.hpp"
#include "cods/vis/chart.hpp"
#include "cods/vis/dataset.hpp"

namespace cods::vis {

// Every artifact of one query, in the order they were produced.
struct ChartRun {
  DesignSpace space;
  llm::GenerationRecord record;
  // Intrinsic rules, then generated hard and soft constraints, then the
  // parsimony preferences.
  std::vector<SymbolicConstraint> constraints;
  CompiledConstraintSet compiled;
  SolveResult result;
  std::optional<ChartSpec> spec;  // absent when infeasible
};

ChartRun generate_chart(const Dataset& data, const RequirementInput& query, llm::ChatBackend& backend,
                        const llm::PipelineConfig& config = {}, const SolverOptions& solver = {});

}  // namespace cods::vis

#endif  // CODS_VIS_GENERATE_HPP
