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

#include "cods/llm/prompt.hpp"

#include <sstream>

#include "cods/error.hpp"

namespace cods::llm {

namespace {

constexpr char kRoleSetting[] =
    "You are an experienced {audience}. You turn short design briefs into precise, "
    "checkable selection rules over a fixed catalogue of design options.";

constexpr char kTaskBriefingIntra[] =
    "Read the user requirement below and decide which options of the \"{dimension}\" "
    "dimension it calls for. Write hard rules for what the requirement makes mandatory "
    "and soft rules for options that suit its intent without being demanded. The rules "
    "narrow the catalogue down to the options that best serve the user's goal.";

constexpr char kTaskBriefingCross[] =
    "Read the user requirement below and decide how options from the dimensions "
    "{dimensions} should be combined. Write hard rules for combinations that must or must "
    "not co-occur and soft rules for combinations that are merely desirable or undesirable.";

constexpr char kReasoningIntra[] =
    "Work through these steps before answering.\n"
    "1. Requirement analysis: list the goals, mood, audience, cultural references, "
    "functional needs and stylistic hints in the requirement.\n"
    "2. Dimension analysis: state what this dimension controls within the whole design "
    "and what each listed option means in practice.\n"
    "3. Option filtering: name the attributes that tell the options apart, relate them to "
    "the user's goals, and keep only the options that fit best.\n"
    "4. Compatibility: check that the kept options make sense side by side in this "
    "dimension and note any that clash, with a short reason.\n"
    "5. Rule writing: options the user explicitly asks for become hard rules; options that "
    "match the intent but are not demanded become soft rules. Consider only this "
    "dimension.";

constexpr char kReasoningCross[] =
    "Work through these steps before answering.\n"
    "1. Requirement analysis: list the goals, mood, audience, cultural references, "
    "functional needs and stylistic hints in the requirement.\n"
    "2. Space analysis: explain how the listed dimensions depend on each other.\n"
    "3. Option review: the options below already passed per-dimension filtering; consider "
    "only these.\n"
    "4. Compatibility: for each pair or group of options from different dimensions, weigh "
    "meaning, visual harmony, stylistic coherence, emotional tone, functional fit and "
    "relevance to the requirement. Identify combinations that belong together and "
    "combinations that clash, each with a short reason.\n"
    "5. Rule writing: combinations that must appear together or must never appear together "
    "become hard rules (together, exclusive); desirable or undesirable combinations become "
    "soft rules (prefer, avoid).";

constexpr char kOutputRegulation[] =
    "Reply with a single JSON object and nothing else:\n"
    "{\n"
    "  \"hard\": [{\"kind\": \"require_one_of\" | \"forbid\" | \"together\" | \"exclusive\", "
    "..., \"rationale\": \"...\"}],\n"
    "  \"soft\": [{\"kind\": \"prefer\" | \"avoid\", ..., \"weight\": 1, \"rationale\": \"...\"}]\n"
    "}\n"
    "A rule names its options either as\n"
    "  \"dimension\": \"<dimension>\", \"elements\": [\"<element>\", ...]\n"
    "or, when it spans dimensions, as\n"
    "  \"cells\": [{\"dimension\": \"<dimension>\", \"element\": \"<element>\"}, ...]\n"
    "Meaning of each kind:\n"
    "- require_one_of: exactly one of the options is selected.\n"
    "- forbid: none of the options is selected.\n"
    "- together: exactly two options, selected together or not at all.\n"
    "- exclusive: two or more options that must never all be selected.\n"
    "- prefer / avoid: reward / penalize each selected option; weight is optional and "
    "defaults to 1.\n"
    "Use dimension and element names exactly as listed. Return empty lists when no rule "
    "applies.";

constexpr char kNoExamples[] = "No referral examples are provided for this task.";

constexpr char kCorrection[] =
    "Your previous reply could not be used: {error}\n"
    "Reply again with only the JSON object described under Output Regulation, using names "
    "exactly as listed.";

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string describe_dimension(const DesignSpace& space, int i, const std::vector<int>& elements) {
  const Dimension& dim = space.dimension(i);
  std::ostringstream out;
  out << "Dimension " << quoted(dim.name) << ":";
  if (const std::string* d = space.meta().dimension_description(dim.name)) out << " " << *d;
  out << "\n";
  if (dim.cardinality.min == dim.cardinality.max) {
    out << "  Select exactly " << dim.cardinality.min << " option"
        << (dim.cardinality.min == 1 ? "" : "s") << ".\n";
  } else {
    out << "  Select between " << dim.cardinality.min << " and " << dim.cardinality.max
        << " options.\n";
  }
  for (int j : elements) {
    const std::string& name = dim.elements.at(j);
    out << "  * " << quoted(name);
    if (const std::string* d = space.meta().element_description(dim.name, name); d && !d->empty()) {
      out << " - " << *d;
    }
    out << "\n";
  }
  return out.str();
}

std::string referral_text(const std::vector<ReferralExample>& examples,
                          const PromptTemplates& templates) {
  if (examples.empty()) return templates.no_examples;
  std::ostringstream out;
  for (std::size_t k = 0; k < examples.size(); ++k) {
    if (k) out << "\n\n";
    out << "Example " << k + 1 << "\n"
        << "Requirement: " << examples[k].requirement << "\n"
        << "Response:\n"
        << examples[k].response;
  }
  return out.str();
}

std::string single_line(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string audience_of(const DesignSpace& space) {
  return space.meta().audience.empty() ? std::string("designer") : space.meta().audience;
}

}  // namespace

std::string_view label_name(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::kRoleSetting: return "role_setting";
    case SegmentLabel::kTaskBriefing: return "task_briefing";
    case SegmentLabel::kDesignSpaceDescription: return "design_space_description";
    case SegmentLabel::kConstraintReasoning: return "constraint_reasoning";
    case SegmentLabel::kOutputRegulation: return "output_regulation";
    case SegmentLabel::kReferralExamples: return "referral_examples";
  }
  return "unknown";
}

std::string_view label_title(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::kRoleSetting: return "Role Setting";
    case SegmentLabel::kTaskBriefing: return "Task Briefing";
    case SegmentLabel::kDesignSpaceDescription: return "Design Space Description";
    case SegmentLabel::kConstraintReasoning: return "Constraint Reasoning";
    case SegmentLabel::kOutputRegulation: return "Output Regulation";
    case SegmentLabel::kReferralExamples: return "Referral Examples";
  }
  return "Unknown";
}

const Segment& PromptDocument::segment(SegmentLabel label) const {
  for (const Segment& s : segments) {
    if (s.label == label) return s;
  }
  throw Error("prompt has no " + std::string(label_name(label)) + " segment");
}

std::string PromptDocument::render() const {
  std::string out;
  for (const Segment& s : segments) {
    if (!out.empty()) out += "\n";
    out += "## ";
    out += label_title(s.label);
    out += "\n";
    out += s.text;
    if (out.back() != '\n') out += "\n";
  }
  return out;
}

std::vector<ReferralExample> load_referral_examples(const Json& doc) {
  if (!doc.is_array()) throw ValidationError("/", "referral examples must be an array");
  std::vector<ReferralExample> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const Json& item = doc[k];
    std::string path = "/" + std::to_string(k);
    if (!item.is_object() || !item.contains("requirement") || !item["requirement"].is_string() ||
        !item.contains("response")) {
      throw ValidationError(path, "expected {\"requirement\": string, \"response\": ...}");
    }
    const Json& response = item["response"];
    out.push_back({item["requirement"].get<std::string>(),
                   response.is_string() ? response.get<std::string>() : response.dump()});
  }
  return out;
}

std::vector<ReferralExample> load_referral_examples_file(const std::filesystem::path& path) {
  return load_referral_examples(parse_json(read_file(path), "referral examples"));
}

PromptTemplates PromptTemplates::defaults() {
  return {kRoleSetting,     kTaskBriefingIntra, kTaskBriefingCross, kReasoningIntra,
          kReasoningCross, kOutputRegulation, kNoExamples,       kCorrection};
}

PromptTemplates load_prompt_templates(const Json& doc, PromptTemplates base) {
  if (!doc.is_object()) throw ValidationError("/", "prompt templates must be an object");
  const std::vector<std::pair<const char*, std::string PromptTemplates::*>> fields = {
      {"role_setting", &PromptTemplates::role_setting},
      {"task_briefing_intra", &PromptTemplates::task_briefing_intra},
      {"task_briefing_cross", &PromptTemplates::task_briefing_cross},
      {"reasoning_intra", &PromptTemplates::reasoning_intra},
      {"reasoning_cross", &PromptTemplates::reasoning_cross},
      {"output_regulation", &PromptTemplates::output_regulation},
      {"no_examples", &PromptTemplates::no_examples},
      {"correction", &PromptTemplates::correction},
  };
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& [name, member] : fields) {
      if (key != name) continue;
      if (!value.is_string()) throw ValidationError("/" + key, "expected a string");
      base.*member = value.get<std::string>();
      known = true;
    }
    if (!known) throw ValidationError("/" + key, "unknown template field");
  }
  return base;
}

std::string fill(std::string_view text,
                 const std::vector<std::pair<std::string, std::string>>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find('{', pos);
    if (open == std::string_view::npos) break;
    std::size_t close = text.find('}', open);
    if (close == std::string_view::npos) break;
    std::string_view key = text.substr(open + 1, close - open - 1);
    out.append(text.substr(pos, open - pos));
    bool replaced = false;
    for (const auto& [k, v] : values) {
      if (k == key) {
        out += v;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.append(text.substr(open, close - open + 1));
    pos = close + 1;
  }
  out.append(text.substr(std::min(pos, text.size())));
  return out;
}

PromptDocument build_dimension_prompt(const DesignSpace& space, const RequirementInput& requirement,
                                      int dimension, const std::vector<ReferralExample>& examples,
                                      const PromptTemplates& templates) {
  if (dimension < 0 || dimension >= space.num_dimensions()) {
    throw ValidationError("dimension", "dimension index " + std::to_string(dimension) +
                                           " is outside the design space");
  }
  const Dimension& dim = space.dimension(dimension);
  std::vector<std::pair<std::string, std::string>> values = {
      {"audience", audience_of(space)},
      {"requirement", single_line(requirement.text)},
      {"dimension", dim.name},
      {"dimensions", quoted(dim.name)},
  };
  std::vector<int> all(dim.size());
  for (int j = 0; j < dim.size(); ++j) all[j] = j;

  PromptDocument doc;
  doc.scope = {{dimension}, false};
  doc.segments = {
      {SegmentLabel::kRoleSetting, fill(templates.role_setting, values)},
      {SegmentLabel::kTaskBriefing, fill(templates.task_briefing_intra, values) +
                                        "\n\nUser requirement: " + single_line(requirement.text)},
      {SegmentLabel::kDesignSpaceDescription,
       "Design space " + quoted(space.name()) + ", dimension " + std::to_string(dimension + 1) +
           " of " + std::to_string(space.num_dimensions()) + ".\n" +
           describe_dimension(space, dimension, all)},
      {SegmentLabel::kConstraintReasoning,
       "Scope: intra-dimensional\n" + fill(templates.reasoning_intra, values)},
      {SegmentLabel::kOutputRegulation, fill(templates.output_regulation, values)},
      {SegmentLabel::kReferralExamples, referral_text(examples, templates)},
  };
  return doc;
}

PromptDocument build_cross_prompt(const DesignSpace& space, const RequirementInput& requirement,
                                  const std::vector<std::vector<int>>& surviving,
                                  const std::vector<ReferralExample>& examples,
                                  const PromptTemplates& templates) {
  if (static_cast<int>(surviving.size()) != space.num_dimensions()) {
    throw ValidationError("surviving", "expected one element subset per dimension");
  }
  std::string names;
  std::string description = "Design space " + quoted(space.name()) + ", " +
                            std::to_string(space.num_dimensions()) + " dimensions.\n";
  PromptDocument doc;
  doc.scope.cross = true;
  for (int i = 0; i < space.num_dimensions(); ++i) {
    const Dimension& dim = space.dimension(i);
    if (surviving[i].empty()) {
      throw ValidationError("surviving/" + std::to_string(i),
                            "no surviving elements for dimension \"" + dim.name + "\"");
    }
    for (int j : surviving[i]) {
      if (j < 0 || j >= dim.size()) {
        throw ValidationError("surviving/" + std::to_string(i),
                              "element index " + std::to_string(j) + " is outside dimension \"" +
                                  dim.name + "\"");
      }
    }
    names += (i ? ", " : "") + quoted(dim.name);
    description += describe_dimension(space, i, surviving[i]);
    doc.scope.dimensions.push_back(i);
  }
  std::vector<std::pair<std::string, std::string>> values = {
      {"audience", audience_of(space)},
      {"requirement", single_line(requirement.text)},
      {"dimension", ""},
      {"dimensions", names},
  };
  doc.segments = {
      {SegmentLabel::kRoleSetting, fill(templates.role_setting, values)},
      {SegmentLabel::kTaskBriefing, fill(templates.task_briefing_cross, values) +
                                        "\n\nUser requirement: " + single_line(requirement.text)},
      {SegmentLabel::kDesignSpaceDescription, description},
      {SegmentLabel::kConstraintReasoning,
       "Scope: cross-dimensional\n" + fill(templates.reasoning_cross, values)},
      {SegmentLabel::kOutputRegulation, fill(templates.output_regulation, values)},
      {SegmentLabel::kReferralExamples, referral_text(examples, templates)},
  };
  return doc;
}

std::string correction_suffix(const PromptTemplates& templates, std::string_view error) {
  return "\n## Correction\n" + fill(templates.correction, {{"error", std::string(error)}}) + "\n";
}

}  // namespace cods::llm
