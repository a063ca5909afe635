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

#include "cods/knit/knit.hpp"

#include <algorithm>
#include <utility>

#include "cods/error.hpp"

namespace cods::knit {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

struct BuiltinDimension {
  std::string_view name;
  std::string_view description;
  Entries elements;
};

std::vector<BuiltinDimension> builtin_table() {
  return {
      {kGarmentType,
       "Overall garment form and silhouette.",
       {{"hoodie", "Hooded knit pullover."},
        {"jacket", "Structured knit outer layer that opens at the front."},
        {"turtleneck sweater", "Pullover with a tall folded collar."},
        {"henley shirt", "Collarless knit top with a short button placket."},
        {"a-line dress", "Dress flaring gently from the bust to the hem."},
        {"off-shoulder dress", "Dress with a neckline that sits below the shoulders."},
        {"bias-cut knit dress", "Fluid dress cut diagonally so it drapes close to the body."}}},
      {kSurfacePattern,
       "Texture or decorative pattern on the fabric face.",
       {{"ribbed knit detail", "Raised vertical ribs as an accent."},
        {"jacquard weave pattern", "Multicolour motif knitted into the fabric."},
        {"tweed knit surface", "Flecked, slightly rough multi-tone surface."},
        {"trellis knit texture", "Crossing diagonal lines forming a lattice."},
        {"striped knitted ribs", "Ribs that alternate colour or tone in stripes."}}},
      {kKnittingTechnique,
       "Stitch structure used to build the fabric.",
       {{"herringbone stitch", "Dense slanted stitch with a woven look."},
        {"chevron stitch", "Zigzag rows of increases and decreases."},
        {"seed stitch", "Alternating knit and purl giving a pebbled texture."},
        {"moss stitch", "Seed stitch variant offset every two rows."},
        {"lace stitch", "Openwork made with yarn-overs."},
        {"rib stitch", "Columns of knit and purl for stretch."},
        {"brioche stitch", "Lofty, reversible tucked-stitch rib."},
        {"waffle stitch", "Grid of raised squares."}}},
      {kAestheticStyle,
       "Stylistic family the design belongs to.",
       {{"Nordic Folk", "Traditional Scandinavian colourwork and motifs."},
        {"vintage-inspired", "Shapes and details borrowed from past decades."},
        {"bohemian crochet", "Loose, layered, handmade free-spirited look."},
        {"minimalist", "Clean lines and very little ornament."},
        {"geomorphic", "Forms echoing landforms such as dunes and strata."}}},
      {kColorPalette,
       "Colour scheme of the garment.",
       {{"pastel color", "Soft, light tints."},
        {"tropical color", "Saturated greens, corals and yellows."},
        {"vintage floral color", "Muted rose, sage and cream."},
        {"architectural gray color", "Concrete and slate greys."},
        {"desert tones color", "Sand, ochre and terracotta."}}},
      {kVisualMotif,
       "Theme or image the design draws inspiration from.",
       {{"cloud silhouette", "Soft billowing outlines."},
        {"marshmallow texture", "Puffy, squashy volumes."},
        {"magic forest", "Enchanted woodland imagery."},
        {"oil paint touch", "Visible brush-like strokes of colour."},
        {"geometric blocks", "Hard-edged tiled shapes."},
        {"pixel shapes", "Blocky low-resolution figures."},
        {"mechanical gears", "Interlocking cogs and machinery."},
        {"grain of shifting sand", "Rippled lines left by wind on sand."}}},
  };
}

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Joins the trimmed, non-empty lines with single spaces.
std::string flatten(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

template <typename V>
V* find_entry(std::vector<std::pair<std::string, V>>& entries, const std::string& key) {
  for (auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

}  // namespace

DesignSpace builtin_knit_space() {
  MetaInfo meta;
  meta.audience = "knitwear designer";
  std::vector<Dimension> dims;
  for (auto& d : builtin_table()) {
    Dimension dim;
    dim.name = std::string(d.name);
    for (const auto& [e, _] : d.elements) dim.elements.push_back(e);
    dims.push_back(std::move(dim));
    meta.dimension_descriptions.emplace_back(std::string(d.name), std::string(d.description));
    meta.element_descriptions.emplace_back(std::string(d.name), std::move(d.elements));
  }
  return DesignSpace("knitwear", std::move(meta), std::move(dims));
}

DesignSpace merge_space(const DesignSpace& base, const Json& extension) {
  DesignSpace ext = load_design_space(extension);
  MetaInfo meta = base.meta();
  std::vector<Dimension> dims = base.dimensions();
  if (!ext.meta().audience.empty()) meta.audience = ext.meta().audience;
  for (const Dimension& d : ext.dimensions()) {
    auto it = std::find_if(dims.begin(), dims.end(), [&](const Dimension& x) { return x.name == d.name; });
    if (it == dims.end()) {
      dims.push_back(d);
      continue;
    }
    for (const auto& e : d.elements) {
      if (!it->find(e)) it->elements.push_back(e);
    }
    if (d.cardinality_explicit) {
      it->cardinality = d.cardinality;
      it->cardinality_explicit = true;
    }
  }
  for (const auto& [dim, text] : ext.meta().dimension_descriptions) {
    if (auto* v = find_entry(meta.dimension_descriptions, dim)) *v = text;
    else meta.dimension_descriptions.emplace_back(dim, text);
  }
  for (const auto& [dim, entries] : ext.meta().element_descriptions) {
    auto* target = find_entry(meta.element_descriptions, dim);
    if (!target) {
      meta.element_descriptions.emplace_back(dim, entries);
      continue;
    }
    for (const auto& [elem, text] : entries) {
      if (auto* v = find_entry(*target, elem)) *v = text;
      else target->emplace_back(elem, text);
    }
  }
  return DesignSpace(base.name(), std::move(meta), std::move(dims));
}

DesignSpace merge_space_file(const DesignSpace& base, const std::filesystem::path& path) {
  return merge_space(base, parse_json(read_file(path), path.string()));
}

PromptTemplate parse_prompt_template(std::string_view text) {
  std::vector<std::string> body_lines, suffix_lines;
  bool in_suffix = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (trim(line).rfind('#', 0) == 0) {
      pos = end + 1;
      continue;
    }
    if (!in_suffix && trim(line) == "---") in_suffix = true;
    else (in_suffix ? suffix_lines : body_lines).push_back(std::move(line));
    pos = end + 1;
  }

  PromptTemplate tmpl;
  tmpl.style_suffix = flatten(suffix_lines);
  std::string body = flatten(body_lines);
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '{' && i + 1 < body.size() && body[i + 1] == '{') {
      tmpl.literals.back() += '{';
      ++i;
    } else if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
      tmpl.literals.back() += '}';
      ++i;
    } else if (c == '{') {
      std::size_t close = body.find('}', i + 1);
      std::size_t reopen = body.find('{', i + 1);
      if (close == std::string::npos || reopen < close) throw ParseError("unterminated template slot");
      std::string slot = trim(std::string_view(body).substr(i + 1, close - i - 1));
      std::string path = "/slots/" + std::to_string(tmpl.slots.size());
      if (slot.empty()) throw ValidationError(path, "empty slot");
      if (std::find(tmpl.slots.begin(), tmpl.slots.end(), slot) != tmpl.slots.end()) {
        throw ValidationError(path, "dimension \"" + slot + "\" appears twice");
      }
      tmpl.slots.push_back(std::move(slot));
      tmpl.literals.emplace_back();
      i = close;
    } else if (c == '}') {
      throw ParseError("unmatched '}' in template");
    } else {
      tmpl.literals.back() += c;
    }
  }
  return tmpl;
}

PromptTemplate load_prompt_template(const std::filesystem::path& path) {
  return parse_prompt_template(read_file(path));
}

PromptTemplate default_prompt_template() {
  return parse_prompt_template(
      "A {garment type} knitted in {knitting technique}, with a {surface pattern} surface,\n"
      "in a {aesthetic style} style, using a {color palette} palette, inspired by {visual motif}\n"
      "---\n"
      "knitwear fashion rendering, full garment on a plain background, soft studio lighting\n");
}

std::vector<std::string> unknown_slots(const DesignSpace& space, const PromptTemplate& tmpl) {
  std::vector<std::string> out;
  for (const auto& s : tmpl.slots) {
    if (!space.find_dimension(s)) out.push_back(s);
  }
  return out;
}

std::string compose_image_prompt(const DesignSpace& space, const SolutionMatrix& solution,
                                 const PromptTemplate& tmpl) {
  if (auto missing = unknown_slots(space, tmpl); !missing.empty()) {
    auto k = std::find(tmpl.slots.begin(), tmpl.slots.end(), missing.front()) - tmpl.slots.begin();
    throw ValidationError("/slots/" + std::to_string(k),
                          "no dimension named \"" + missing.front() + "\" in the space");
  }
  if (solution.shape() != padded_shape(space)) {
    throw ValidationError("/solution", "solution shape does not match the space");
  }
  if (auto problems = validate_solution(space, solution); !problems.empty()) {
    throw ValidationError("/solution", problems.front());
  }
  std::vector<std::string> selected;
  for (int i = 0; i < space.num_dimensions(); ++i) {
    if (solution.row_count(i) != 1) {
      throw ValidationError("/solution/" + std::to_string(i),
                            "dimension \"" + space.dimension(i).name + "\" needs exactly one element");
    }
    for (int j = 0; j < space.dimension(i).size(); ++j) {
      if (solution.at(i, j)) selected.push_back(space.dimension(i).elements[j]);
    }
  }

  std::string text = tmpl.literals[0];
  for (std::size_t k = 0; k < tmpl.slots.size(); ++k) {
    text += selected[*space.find_dimension(tmpl.slots[k])];
    text += tmpl.literals[k + 1];
  }
  std::vector<std::string> parts{trim(text)};
  for (int i = 0; i < space.num_dimensions(); ++i) {
    const std::string& dim = space.dimension(i).name;
    if (std::find(tmpl.slots.begin(), tmpl.slots.end(), dim) == tmpl.slots.end()) parts.push_back(selected[i]);
  }
  parts.push_back(tmpl.style_suffix);

  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

KnitRun generate_knit(const DesignSpace& space, const RequirementInput& requirement,
                      llm::ChatBackend& backend, const PromptTemplate& tmpl,
                      const llm::PipelineConfig& config, const SolverOptions& solver) {
  if (auto missing = unknown_slots(space, tmpl); !missing.empty()) {
    throw ValidationError("/slots", "no dimension named \"" + missing.front() + "\" in the space");
  }
  llm::GenerationRecord record = llm::run_pipeline(space, requirement, backend, config);
  std::vector<SymbolicConstraint> constraints = record.constraints();
  CompiledConstraintSet compiled = compile(space, constraints);
  SolveResult result = solve(space, compiled, solver);
  std::optional<std::string> prompt;
  if (result.status == SolveStatus::kOptimal) prompt = compose_image_prompt(space, *result.solution, tmpl);
  return {space, std::move(record), std::move(constraints), std::move(compiled), std::move(result),
          std::move(prompt)};
}

}  // namespace cods::knit
