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

#include "cods/vis/generate.hpp"

namespace cods::vis {

ChartRun generate_chart(const Dataset& data, const RequirementInput& query, llm::ChatBackend& backend,
                        const llm::PipelineConfig& config, const SolverOptions& solver) {
  DesignSpace space = build_vis_space(data.schema);
  llm::GenerationRecord record = llm::run_pipeline(space, query, backend, config);
  std::vector<SymbolicConstraint> constraints = intrinsic_rules(space, data.schema);
  for (auto& c : record.constraints()) constraints.push_back(c);
  for (auto& c : parsimony_preferences(space)) constraints.push_back(std::move(c));
  CompiledConstraintSet compiled = compile(space, constraints);
  SolveResult result = solve(space, compiled, solver);
  std::optional<ChartSpec> spec;
  if (result.status == SolveStatus::kOptimal) spec = emit_chart_spec(space, *result.solution, data.schema);
  return {std::move(space), std::move(record), std::move(constraints), std::move(compiled),
          std::move(result), std::move(spec)};
}

}  // namespace cods::vis
