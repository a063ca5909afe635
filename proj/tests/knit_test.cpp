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

#include <random>

#include "cods/error.hpp"
#include "cods/knit/knit.hpp"
#include "cods/llm/backend.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cods;
using namespace cods::knit;

namespace {

const char* kDesertRequirement = "A desert-inspired knitted dress that evokes a sense of mystery and elegance";

const std::vector<NamedRef> kDesertSolution = {
    {"garment type", "bias-cut knit dress"}, {"surface pattern", "striped knitted ribs"},
    {"knitting technique", "seed stitch"},   {"aesthetic style", "geomorphic"},
    {"color palette", "desert tones color"}, {"visual motif", "grain of shifting sand"}};

int occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

std::vector<std::string> elements(const DesignSpace& space, std::string_view dim) {
  return space.dimension(*space.find_dimension(dim)).elements;
}

SolutionMatrix random_solution(const DesignSpace& space, std::mt19937_64& rng) {
  std::vector<ElementRef> refs;
  for (int i = 0; i < space.num_dimensions(); ++i) {
    refs.push_back({i, static_cast<int>(rng() % space.dimension(i).size())});
  }
  return tuple_to_solution(space, refs);
}

}  // namespace

TEST_CASE("built-in knitwear space") {
  DesignSpace space = builtin_knit_space();
  REQUIRE(space.num_dimensions() == 6);
  std::vector<std::string> dims;
  for (const auto& d : space.dimensions()) dims.push_back(d.name);
  CHECK(dims == std::vector<std::string>{"garment type", "surface pattern", "knitting technique",
                                         "aesthetic style", "color palette", "visual motif"});
  auto technique = elements(space, kKnittingTechnique);
  for (const char* e : {"seed stitch", "moss stitch", "brioche stitch"}) {
    CHECK(std::find(technique.begin(), technique.end(), e) != technique.end());
  }
  for (const auto& ref : kDesertSolution) CHECK_NOTHROW(space.resolve(ref));
  CHECK(space.resolve("garment type", "hoodie").element == 0);
  CHECK_NOTHROW(space.resolve("surface pattern", "jacquard weave pattern"));
  CHECK_NOTHROW(space.resolve("aesthetic style", "Nordic Folk"));
  CHECK(space.meta().audience == "knitwear designer");
  for (const auto& d : space.dimensions()) {
    CHECK(space.meta().dimension_description(d.name) != nullptr);
    for (const auto& e : d.elements) CHECK(space.meta().element_description(d.name, e) != nullptr);
  }
}

TEST_CASE("extension documents merge in order") {
  DesignSpace base = builtin_knit_space();
  DesignSpace merged = merge_space_file(base, testing::data_path("spaces/knit_extension.json"));
  auto before = elements(base, kKnittingTechnique);
  auto after = elements(merged, kKnittingTechnique);
  REQUIRE(after.size() == before.size() + 1);  // seed stitch is already present
  CHECK(std::equal(before.begin(), before.end(), after.begin()));
  CHECK(after.back() == "cable stitch");
  CHECK(*merged.meta().element_description("knitting technique", "cable stitch") ==
        "Twisted columns that look like rope.");
  CHECK(merged.num_dimensions() == 6);

  Json extra = Json::parse(R"({"name": "x", "meta": {"dimensions": {"neckline": "Shape of the neck opening."}},
                               "dimensions": [{"name": "neckline", "elements": ["crew", "v-neck"]}]})");
  DesignSpace seven = merge_space(base, extra);
  CHECK(seven.num_dimensions() == 7);
  CHECK(seven.dimension(6).name == "neckline");

  CHECK_THROWS_AS(merge_space(base, Json::parse(R"({"name": "x", "dimensions": [{"name": "a", "elements": []}]})")),
                  ValidationError);
  CHECK_THROWS_AS(merge_space(base, Json::parse(R"({"dimensions": []})")), ValidationError);
}

TEST_CASE("template parsing") {
  PromptTemplate t = parse_prompt_template("A {garment type}\n  in {{braces}}, {visual motif}.\n---\nstudio\n light\n");
  CHECK(t.slots == std::vector<std::string>{"garment type", "visual motif"});
  CHECK(t.literals == std::vector<std::string>{"A ", " in {braces}, ", "."});
  CHECK(t.style_suffix == "studio light");

  PromptTemplate commented = parse_prompt_template("# note {x\n{garment type}\n  # another\n---\n# c\nlit\n");
  CHECK(commented.slots == std::vector<std::string>{"garment type"});
  CHECK(commented.style_suffix == "lit");

  PromptTemplate plain = parse_prompt_template("no slots at all");
  CHECK(plain.slots.empty());
  CHECK(plain.literals == std::vector<std::string>{"no slots at all"});

  CHECK_THROWS_AS(parse_prompt_template("A {garment type"), ParseError);
  CHECK_THROWS_AS(parse_prompt_template("A {garment {type}}"), ParseError);
  CHECK_THROWS_AS(parse_prompt_template("A } here"), ParseError);
  CHECK_THROWS_AS(parse_prompt_template("A { }"), ValidationError);
  CHECK_THROWS_AS(parse_prompt_template("{color palette} and {color palette}"), ValidationError);

  PromptTemplate shipped = load_prompt_template(testing::data_path("templates/knit.txt"));
  PromptTemplate builtin = default_prompt_template();
  CHECK(shipped.slots == builtin.slots);
  CHECK(shipped.literals == builtin.literals);
  CHECK(shipped.style_suffix == builtin.style_suffix);
  CHECK(unknown_slots(builtin_knit_space(), shipped).empty());
}

TEST_CASE("composition of the desert dress solution") {
  DesignSpace space = builtin_knit_space();
  SolutionMatrix x = tuple_to_solution(space, kDesertSolution);
  std::string prompt = compose_image_prompt(space, x, default_prompt_template());
  for (const auto& ref : kDesertSolution) CHECK(occurrences(prompt, ref.element) == 1);
  CHECK(prompt ==
        "A bias-cut knit dress knitted in seed stitch, with a striped knitted ribs surface, in a geomorphic style, "
        "using a desert tones color palette, inspired by grain of shifting sand, knitwear fashion rendering, "
        "full garment on a plain background, soft studio lighting");
}

TEST_CASE("unreferenced dimensions follow the body") {
  DesignSpace space = builtin_knit_space();
  SolutionMatrix x = tuple_to_solution(space, kDesertSolution);
  std::string prompt = compose_image_prompt(space, x, parse_prompt_template("{garment type}"));
  CHECK(prompt.rfind("bias-cut knit dress", 0) == 0);
  CHECK(prompt ==
        "bias-cut knit dress, striped knitted ribs, seed stitch, geomorphic, desert tones color, grain of shifting sand");
}

TEST_CASE("composition errors") {
  DesignSpace space = builtin_knit_space();
  SolutionMatrix x = tuple_to_solution(space, kDesertSolution);
  CHECK_THROWS_AS(compose_image_prompt(space, x, parse_prompt_template("{neckline}")), ValidationError);
  SolutionMatrix two = x;
  two.set(0, 0, 1);
  CHECK_THROWS_AS(compose_image_prompt(space, two, default_prompt_template()), ValidationError);
  SolutionMatrix none = x;
  none.set(0, space.resolve("garment type", "bias-cut knit dress").element, 0);
  CHECK_THROWS_AS(compose_image_prompt(space, none, default_prompt_template()), ValidationError);
  DesignSpace other = load_design_space_file(testing::data_path("spaces/openpeeps.json"));
  CHECK_THROWS_AS(compose_image_prompt(space, SolutionMatrix(other), default_prompt_template()), ValidationError);
}

TEST_CASE("composition properties on random solutions") {
  DesignSpace space = merge_space_file(builtin_knit_space(), testing::data_path("spaces/knit_extension.json"));
  PromptTemplate tmpl = default_prompt_template();
  PromptTemplate partial = parse_prompt_template("{visual motif} on a {garment type}\n---\nlookbook photo");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    SolutionMatrix x = random_solution(space, rng);
    auto tuple = solution_to_tuple(space, x);
    for (const PromptTemplate* t : {&tmpl, &partial}) {
      std::string prompt = compose_image_prompt(space, x, *t);
      CHECK(prompt == compose_image_prompt(space, x, *t));
      for (const auto& ref : tuple) {
        CAPTURE(prompt);
        CHECK(occurrences(prompt, space.name_of(ref).element) == 1);
      }
    }
    // Changing one dimension changes exactly that phrase.
    int d = static_cast<int>(rng() % space.num_dimensions());
    std::vector<ElementRef> changed = tuple;
    changed[d].element = (changed[d].element + 1) % space.dimension(d).size();
    SolutionMatrix y = tuple_to_solution(space, changed);
    std::string a = compose_image_prompt(space, x, tmpl);
    std::string b = compose_image_prompt(space, y, tmpl);
    std::string old_name = space.name_of(tuple[d]).element;
    std::string new_name = space.name_of(changed[d]).element;
    std::string patched = a;
    patched.replace(a.find(old_name), old_name.size(), new_name);
    CHECK(patched == b);
  }
}

TEST_CASE("desert requirement through the stub pipeline") {
  DesignSpace space = builtin_knit_space();
  llm::StubBackend stub = llm::StubBackend::from_file(testing::data_path("stub_rules/knit.json"));
  llm::PipelineConfig config;
  config.examples = llm::load_referral_examples_file(testing::data_path("referrals/knit.json"));
  KnitRun run = generate_knit(space, RequirementInput(kDesertRequirement), stub, default_prompt_template(), config);
  CHECK(run.record.transcript.size() == 7);
  REQUIRE(run.prompt.has_value());
  CHECK(solution_to_tuple(space, *run.result.solution) == [&] {
    std::vector<ElementRef> refs;
    for (const auto& r : kDesertSolution) refs.push_back(space.resolve(r));
    return refs;
  }());
  for (const auto& ref : kDesertSolution) CHECK(occurrences(*run.prompt, ref.element) == 1);
  CHECK(brute_force_solve(space, run.compiled).solution == run.result.solution);

  KnitRun again = generate_knit(space, RequirementInput(kDesertRequirement), stub, default_prompt_template(), config);
  CHECK(again.prompt == run.prompt);

  CHECK_THROWS_AS(generate_knit(space, RequirementInput(kDesertRequirement), stub, parse_prompt_template("{fabric}")),
                  ValidationError);
}
