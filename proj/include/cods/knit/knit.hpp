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

// Knitwear design space and text-to-image prompt composition.

#ifndef CODS_KNIT_KNIT_HPP
#define CODS_KNIT_KNIT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cods/design_space.hpp"
#include "cods/llm/pipeline.hpp"
#include "cods/solver.hpp"

namespace cods::knit {

inline constexpr std::string_view kGarmentType = "garment type";
inline constexpr std::string_view kSurfacePattern = "surface pattern";
inline constexpr std::string_view kKnittingTechnique = "knitting technique";
inline constexpr std::string_view kAestheticStyle = "aesthetic style";
inline constexpr std::string_view kColorPalette = "color palette";
inline constexpr std::string_view kVisualMotif = "visual motif";

// The six built-in dimensions with their representative elements.
DesignSpace builtin_knit_space();

// Merges a design-space document into base. Elements of known dimensions are
// appended after the existing ones (names already present are skipped);
// unknown dimensions are appended as new dimensions. Meta descriptions in the
// extension win over the base. Throws ValidationError for a malformed
// document.
DesignSpace merge_space(const DesignSpace& base, const Json& extension);
DesignSpace merge_space_file(const DesignSpace& base, const std::filesystem::path& path);

// A parsed template. literals has one more entry than slots: the text is
// literals[0] slots[0] literals[1] ... slots[k-1] literals[k].
struct PromptTemplate {
  std::vector<std::string> literals{""};
  std::vector<std::string> slots;
  std::string style_suffix;
};

// Template text: a body with {dimension-name} placeholders ("{{" and "}}"
// are literal braces), optionally followed by a line holding only "---" and
// the style suffix. Lines starting with "#" are comments. The remaining
// lines are joined with single spaces and trimmed. Throws
// ParseError on an unbalanced brace and ValidationError on an empty or
// repeated slot.
PromptTemplate parse_prompt_template(std::string_view text);
PromptTemplate load_prompt_template(const std::filesystem::path& path);
// The template shipped with the library.
PromptTemplate default_prompt_template();

// Slot names that are not dimensions of space.
std::vector<std::string> unknown_slots(const DesignSpace& space, const PromptTemplate& tmpl);

// Fills the slots with the selected element names, then appends the
// elements of unreferenced dimensions (in space order) and the style suffix,
// separated by ", ". Throws ValidationError when a slot names a missing
// dimension or the solution does not select exactly one element per
// dimension.
std::string compose_image_prompt(const DesignSpace& space, const SolutionMatrix& solution,
                                 const PromptTemplate& tmpl);

struct KnitRun {
  DesignSpace space;
  llm::GenerationRecord record;
  std::vector<SymbolicConstraint> constraints;
  CompiledConstraintSet compiled;
  SolveResult result;
  std::optional<std::string> prompt;  // absent when infeasible
};

KnitRun generate_knit(const DesignSpace& space, const RequirementInput& requirement,
                      llm::ChatBackend& backend, const PromptTemplate& tmpl,
                      const llm::PipelineConfig& config = {}, const SolverOptions& solver = {});

}  // namespace cods::knit

#endif  // CODS_KNIT_KNIT_HPP
