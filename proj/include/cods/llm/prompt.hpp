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

// Six-part constraint-generation prompts.
//
// A prompt is either scoped to one dimension (intra-dimensional constraints)
// or to several (cross-dimensional constraints over the surviving elements).
// Template text is data and can be replaced; the machine-readable lines the
// offline stub relies on are always generated here:
//
//   User requirement: <text>              (task briefing)
//   Dimension "<name>": <description>      (design space description)
//     * "<element>" - <description>
//   Scope: intra-dimensional | cross-dimensional   (constraint reasoning)

#ifndef CODS_LLM_PROMPT_HPP
#define CODS_LLM_PROMPT_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/design_space.hpp"

namespace cods::llm {

enum class SegmentLabel {
  kRoleSetting,
  kTaskBriefing,
  kDesignSpaceDescription,
  kConstraintReasoning,
  kOutputRegulation,
  kReferralExamples,
};

inline constexpr std::array<SegmentLabel, 6> kSegmentOrder = {
    SegmentLabel::kRoleSetting,         SegmentLabel::kTaskBriefing,
    SegmentLabel::kDesignSpaceDescription, SegmentLabel::kConstraintReasoning,
    SegmentLabel::kOutputRegulation,    SegmentLabel::kReferralExamples,
};

std::string_view label_name(SegmentLabel label);   // "role_setting", ...
std::string_view label_title(SegmentLabel label);  // "Role Setting", ...

struct Segment {
  SegmentLabel label;
  std::string text;
};

struct PromptScope {
  // One index for an intra-dimensional prompt, all dimensions for the
  // cross-dimensional prompt.
  std::vector<int> dimensions;
  bool cross = false;
};

struct PromptDocument {
  std::vector<Segment> segments;
  PromptScope scope;

  const Segment& segment(SegmentLabel label) const;
  // Sections joined under "## <Title>" headers.
  std::string render() const;
};

// One few-shot pair: a requirement and the JSON response expected for it.
struct ReferralExample {
  std::string requirement;
  std::string response;
};

std::vector<ReferralExample> load_referral_examples(const Json& doc);
std::vector<ReferralExample> load_referral_examples_file(const std::filesystem::path& path);

// Replaceable template text. Placeholders: {audience}, {requirement},
// {dimension}, {dimensions}.
struct PromptTemplates {
  std::string role_setting;
  std::string task_briefing_intra;
  std::string task_briefing_cross;
  std::string reasoning_intra;
  std::string reasoning_cross;
  std::string output_regulation;
  std::string no_examples;
  std::string correction;  // appended on retry; {error}

  static PromptTemplates defaults();
};

// Overrides any subset of the fields above from a JSON object keyed by
// field name. Throws ValidationError on unknown keys.
PromptTemplates load_prompt_templates(const Json& doc, PromptTemplates base = PromptTemplates::defaults());

// Substitutes {name} placeholders; unknown placeholders are left intact.
std::string fill(std::string_view text,
                 const std::vector<std::pair<std::string, std::string>>& values);

PromptDocument build_dimension_prompt(const DesignSpace& space, const RequirementInput& requirement,
                                      int dimension,
                                      const std::vector<ReferralExample>& examples,
                                      const PromptTemplates& templates = PromptTemplates::defaults());

// surviving[i] lists the element indices of dimension i that remain
// candidates. Throws ValidationError when any list is empty or the outer size
// does not match the space.
PromptDocument build_cross_prompt(const DesignSpace& space, const RequirementInput& requirement,
                                  const std::vector<std::vector<int>>& surviving,
                                  const std::vector<ReferralExample>& examples,
                                  const PromptTemplates& templates = PromptTemplates::defaults());

// The corrective suffix used when re-prompting after an unusable response.
std::string correction_suffix(const PromptTemplates& templates, std::string_view error);

}  // namespace cods::llm

#endif  // CODS_LLM_PROMPT_HPP
