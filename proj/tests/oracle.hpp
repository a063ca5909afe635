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

// Test-only helpers: a direct evaluator of symbolic constraint semantics that
// never looks at compiled matrices, and random instance generators.

#ifndef CODS_TESTS_ORACLE_HPP
#define CODS_TESTS_ORACLE_HPP

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/design_space.hpp"

namespace cods::testing {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(CODS_DATA_DIR) / relative;
}

DesignSpace open_peeps();
// The four rules of the worked character example, as symbolic constraints.
std::vector<SymbolicConstraint> open_peeps_constraints(const DesignSpace& space);

// True iff x is a structurally valid selection (binary, no padding, within
// cardinality) and satisfies every hard constraint's intended meaning.
bool symbolic_satisfied(const DesignSpace& space, const std::vector<SymbolicConstraint>& constraints,
                        const SolutionMatrix& x);

struct RandomSpaceOptions {
  int max_dims = 6;
  int max_width = 6;
  // Probability that a dimension gets a non-default cardinality.
  double free_cardinality = 0.25;
};

DesignSpace random_space(std::mt19937_64& rng, const RandomSpaceOptions& options = {});
SymbolicConstraint random_hard(std::mt19937_64& rng, const DesignSpace& space);
SymbolicConstraint random_soft(std::mt19937_64& rng, const DesignSpace& space);
// Arbitrary 0/1 matrix over the real cells; may violate cardinality.
SolutionMatrix random_matrix(std::mt19937_64& rng, const DesignSpace& space);

}  // namespace cods::testing

#endif  // CODS_TESTS_ORACLE_HPP
