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

// Documents cross the boundary as JSON text; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "cods/cli.hpp"
#include "cods/constraints.hpp"
#include "cods/design_space.hpp"
#include "cods/error.hpp"
#include "cods/knit/knit.hpp"
#include "cods/llm/backend.hpp"
#include "cods/llm/pipeline.hpp"
#include "cods/solver.hpp"
#include "cods/vis/chart.hpp"
#include "cods/vis/generate.hpp"
#include "cods/vis/transform.hpp"

namespace py = pybind11;
using namespace cods;

namespace {

Json parse(const std::string& text, const char* what) { return parse_json(text, what); }

std::string solve_json(const std::string& space_doc, const std::string& constraints_doc, bool compiled) {
  DesignSpace space = load_design_space(parse(space_doc, "space"));
  auto constraints = load_constraints(parse(constraints_doc, "constraints"), space);
  CompiledConstraintSet set = compile(space, constraints);
  if (compiled) return to_json(set).dump();
  return to_json(solve(space, set), space, set).dump();
}

std::string pipeline_json(const std::string& space_doc, const std::string& requirement,
                          const std::string& rules_doc) {
  DesignSpace space = load_design_space(parse(space_doc, "space"));
  llm::StubBackend stub(parse(rules_doc, "stub rules"));
  RequirementInput req(requirement);
  llm::GenerationRecord record = llm::run_pipeline(space, req, stub);
  CompiledConstraintSet set = compile(space, record.constraints());
  Json doc = Json::object();
  doc["generation"] = llm::to_json(record, space, req);
  doc["result"] = to_json(solve(space, set), space, set);
  return doc.dump();
}

std::optional<std::string> chart_json(const std::string& csv, const std::string& query, const std::string& rules_doc) {
  vis::Dataset data = vis::load_dataset(csv);
  llm::StubBackend stub(parse(rules_doc, "stub rules"));
  vis::ChartRun run = vis::generate_chart(data, RequirementInput(query), stub);
  if (!run.spec) return std::nullopt;
  return vis::to_json(*run.spec).dump();
}

std::string transform_json(const std::string& csv, const std::string& spec_doc) {
  vis::Dataset data = vis::load_dataset(csv);
  return vis::to_json(vis::apply_transform(data, vis::chart_spec_from_json(parse(spec_doc, "chart spec")))).dump();
}

std::string validate_chart_json(const std::string& csv, const std::string& spec_doc) {
  vis::Dataset data = vis::load_dataset(csv);
  Json problems = vis::validate_chart_document(parse(spec_doc, "chart spec"), data.schema);
  return problems.dump();
}

std::optional<std::string> knit_prompt(const std::string& requirement, const std::string& rules_doc,
                                       const std::optional<std::string>& template_text) {
  DesignSpace space = knit::builtin_knit_space();
  knit::PromptTemplate tmpl =
      template_text ? knit::parse_prompt_template(*template_text) : knit::default_prompt_template();
  llm::StubBackend stub(parse(rules_doc, "stub rules"));
  knit::KnitRun run = knit::generate_knit(space, RequirementInput(requirement), stub, tmpl);
  return run.prompt;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the cods package.";

  auto error = py::register_exception<Error>(m, "CodsError");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<ResolveError>(m, "ResolveError", error);
  py::register_exception<ShapeError>(m, "ShapeError", error);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", error);
  py::register_exception<IoError>(m, "IoError", error);

  m.def("normalize_space", [](const std::string& doc) { return to_json(load_design_space(parse(doc, "space"))).dump(); },
        "Validate a design-space document and return its canonical form.");
  m.def("solve", [](const std::string& s, const std::string& c) { return solve_json(s, c, false); },
        "Compile and solve; returns the result document.");
  m.def("compile", [](const std::string& s, const std::string& c) { return solve_json(s, c, true); },
        "Compiled matrices of a constraints document.");
  m.def("run_pipeline", &pipeline_json, "Stub-backend constraint generation followed by a solve.");
  m.def("generate_chart", &chart_json, "Chart spec for a CSV text and query under stub rules.");
  m.def("apply_transform", &transform_json, "Transformed table for a chart spec.");
  m.def("validate_chart", &validate_chart_json, "Grammar problems of a chart spec document.");
  m.def("chart_spec_schema", [] { return vis::chart_spec_json_schema().dump(); });
  m.def("knit_prompt", &knit_prompt, py::arg("requirement"), py::arg("rules"), py::arg("template") = py::none(),
        "Text-to-image prompt for a knitwear requirement under stub rules.");
  m.def("run_cli", &run_cli, "Run the command line in-process; returns (exit_code, stdout, stderr).");
}
