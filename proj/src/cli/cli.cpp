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

#include "cods/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cods/constraints.hpp"
#include "cods/design_space.hpp"
#include "cods/error.hpp"
#include "cods/knit/knit.hpp"
#include "cods/llm/backend.hpp"
#include "cods/llm/pipeline.hpp"
#include "cods/solver.hpp"
#include "cods/vis/generate.hpp"
#include "cods/vis/transform.hpp"

namespace cods::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string space, out, backend = "stub", stub_rules, transcript, config, examples;
  bool emit_compiled = false, timing = false;
  // Subcommand inputs.
  std::string constraints, requirement, dataset, query, templ, table;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class Timer {
 public:
  Timer(bool enabled, std::ostream& err) : enabled_(enabled), err_(err) {}
  void lap(const char* stage) {
    auto now = std::chrono::steady_clock::now();
    if (enabled_) {
      err_ << "timing " << stage << ": "
           << std::chrono::duration<double, std::milli>(now - last_).count() << " ms\n";
    }
    last_ = now;
  }

 private:
  bool enabled_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

fs::path default_data(const std::string& relative) {
#ifdef CODS_DEFAULT_DATA_DIR
  fs::path p = fs::path(CODS_DEFAULT_DATA_DIR) / relative;
  if (fs::exists(p)) return p;
#endif
  (void)relative;
  return {};
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err), timer_(o.timing, err) {}

  void emit(const std::string& text) {
    if (o_.out.empty()) out_ << text;
    else write_file(o_.out, text);
  }

  // <out without extension>.compiled.json
  void emit_compiled(const CompiledConstraintSet& set) {
    if (!o_.emit_compiled) return;
    fs::path p = o_.out;
    p.replace_extension(".compiled.json");
    write_file(p, pretty(to_json(set)));
  }

  void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  }

  void check_outputs() {
    require(!o_.emit_compiled || !o_.out.empty(), "--emit-compiled needs --out for the sidecar path");
  }

  void check_backend(const char* domain) {
    check_outputs();
    if (o_.backend == "stub" && o_.stub_rules.empty()) {
      require(domain != nullptr && !default_data(std::string("stub_rules/") + domain + ".json").empty(),
              "--backend stub needs --stub-rules");
    }
  }

  std::unique_ptr<llm::ChatBackend> make_backend(const char* domain, llm::PipelineConfig& config) {
    if (!o_.config.empty()) {
      llm::LlmConfig llm = llm::load_llm_config_file(o_.config);
      config.max_retries = llm.max_retries;
      if (!llm.templates.empty()) {
        config.templates = llm::load_prompt_templates(parse_json(read_file(llm.templates), llm.templates.string()));
      }
      llm_ = llm;
    }
    fs::path examples = o_.examples;
    if (examples.empty() && domain) examples = default_data(std::string("referrals/") + domain + ".json");
    if (!examples.empty()) config.examples = llm::load_referral_examples_file(examples);

    if (o_.backend == "live") return std::make_unique<llm::HttpBackend>(llm_);
    fs::path rules = o_.stub_rules.empty() ? default_data(std::string("stub_rules/") + domain + ".json")
                                           : fs::path(o_.stub_rules);
    return std::make_unique<llm::StubBackend>(llm::StubBackend::from_file(rules));
  }

  void write_transcript(const llm::GenerationRecord& record) {
    if (o_.transcript.empty()) return;
    std::ostringstream s;
    llm::write_transcript(s, record);
    write_file(o_.transcript, s.str());
  }

  int validate() {
    require(!o_.space.empty(), "validate needs --space");
    DesignSpace space = load_design_space_file(o_.space);
    std::ostringstream report;
    report << "valid design space \"" << space.name() << "\": " << space.num_dimensions()
           << " dimensions, padded shape " << space.num_dimensions() << "x" << space.padded_width() << "\n";
    for (const auto& d : space.dimensions()) {
      report << "  " << d.name << ": " << d.size() << " elements, cardinality [" << d.cardinality.min << ", "
             << d.cardinality.max << "]\n";
    }
    if (!o_.constraints.empty()) {
      auto cs = load_constraints_file(o_.constraints, space);
      report << "valid constraints: " << cs.size() << "\n";
    }
    emit(report.str());
    return kOk;
  }

  int solve_cmd() {
    require(!o_.space.empty() && !o_.constraints.empty(), "solve needs --space and --constraints");
    check_outputs();
    DesignSpace space = load_design_space_file(o_.space);
    auto constraints = load_constraints_file(o_.constraints, space);
    timer_.lap("load");
    CompiledConstraintSet set = compile(space, constraints);
    SolveResult result = solve(space, set);
    timer_.lap("solve");
    emit(pretty(to_json(result, space, set)));
    emit_compiled(set);
    return result.status == SolveStatus::kOptimal ? kOk : kInfeasible;
  }

  int pipeline() {
    require(!o_.space.empty() && !o_.requirement.empty(), "pipeline needs --space and --requirement");
    check_backend(nullptr);
    DesignSpace space = load_design_space_file(o_.space);
    llm::PipelineConfig config;
    auto backend = make_backend(nullptr, config);
    timer_.lap("load");
    RequirementInput req(o_.requirement);
    llm::GenerationRecord record = llm::run_pipeline(space, req, *backend, config);
    write_transcript(record);
    timer_.lap("generate");
    CompiledConstraintSet set = compile(space, record.constraints());
    SolveResult result = solve(space, set);
    timer_.lap("solve");
    Json doc = Json::object();
    doc["generation"] = llm::to_json(record, space, req);
    doc["result"] = to_json(result, space, set);
    emit(pretty(doc));
    emit_compiled(set);
    return result.status == SolveStatus::kOptimal ? kOk : kInfeasible;
  }

  int vis() {
    require(!o_.dataset.empty() && !o_.query.empty(), "vis needs --dataset and --query");
    check_backend("vis");
    vis::Dataset data = vis::load_dataset_file(o_.dataset);
    llm::PipelineConfig config;
    auto backend = make_backend("vis", config);
    timer_.lap("load");
    vis::ChartRun run = vis::generate_chart(data, RequirementInput(o_.query), *backend, config);
    write_transcript(run.record);
    timer_.lap("generate+solve");
    emit_compiled(run.compiled);
    if (!run.spec) {
      err_ << "error: no chart satisfies the constraints\n";
      return kInfeasible;
    }
    emit(vis::serialize(*run.spec));
    if (!o_.table.empty()) write_file(o_.table, pretty(vis::to_json(vis::apply_transform(data, *run.spec))));
    return kOk;
  }

  int knit() {
    require(!o_.requirement.empty(), "knit needs --requirement");
    check_backend("knit");
    DesignSpace space = knit::builtin_knit_space();
    if (!o_.space.empty()) space = knit::merge_space_file(space, o_.space);
    knit::PromptTemplate tmpl =
        o_.templ.empty() ? knit::default_prompt_template() : knit::load_prompt_template(o_.templ);
    llm::PipelineConfig config;
    auto backend = make_backend("knit", config);
    timer_.lap("load");
    knit::KnitRun run = knit::generate_knit(space, RequirementInput(o_.requirement), *backend, tmpl, config);
    write_transcript(run.record);
    timer_.lap("generate+solve");
    emit_compiled(run.compiled);
    if (!run.prompt) {
      err_ << "error: no design satisfies the constraints\n";
      return kInfeasible;
    }
    emit(*run.prompt + "\n");
    return kOk;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  Timer timer_;
  llm::LlmConfig llm_;
};

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const IoError*>(&e)) return kIoError;
  if (dynamic_cast<const llm::BackendUnavailable*>(&e)) return kBackendError;
  if (dynamic_cast<const llm::RetriesExhausted*>(&e)) return kRetriesExhausted;
  if (dynamic_cast<const ResourceLimitError*>(&e)) return kResourceLimit;
  if (dynamic_cast<const Error*>(&e)) return kInvalidInput;
  return kInternal;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Constraint-driven design generation over discrete design spaces."};
  app.name("cods");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--space", o.space, "Design-space document (knit: extension merged into the built-in space)");
  app.add_option("--out", o.out, "Write the primary output here instead of stdout");
  app.add_option("--backend", o.backend, "Chat backend")->check(CLI::IsMember({"stub", "live"}));
  app.add_option("--stub-rules", o.stub_rules, "Rules file for the stub backend");
  app.add_flag("--emit-compiled", o.emit_compiled, "Write the compiled matrices next to --out");
  app.add_option("--transcript", o.transcript, "Write every prompt and response as JSON lines");
  app.add_option("--config", o.config, "LLM configuration file");
  app.add_option("--examples", o.examples, "Referral examples file");
  app.add_flag("--timing", o.timing, "Print per-stage wall time to stderr");

  auto* validate = app.add_subcommand("validate", "Check a design-space document (and optionally constraints)");
  validate->add_option("--constraints", o.constraints, "Constraints document");
  auto* solve = app.add_subcommand("solve", "Compile and solve a constraints document");
  solve->add_option("--constraints", o.constraints, "Constraints document");
  auto* pipeline = app.add_subcommand("pipeline", "Generate constraints from a requirement, then solve");
  pipeline->add_option("--requirement", o.requirement, "Requirement text");
  auto* vis = app.add_subcommand("vis", "Chart specification from a CSV file and a query");
  vis->add_option("--dataset", o.dataset, "CSV file with a header row");
  vis->add_option("--query", o.query, "Natural-language query");
  vis->add_option("--table", o.table, "Also write the transformed table as JSON");
  auto* knit = app.add_subcommand("knit", "Text-to-image prompt for a knitwear requirement");
  knit->add_option("--requirement", o.requirement, "Requirement text");
  knit->add_option("--template", o.templ, "Prompt template file");

  std::vector<const char*> argv{"cods"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'cods --help' for usage\n";
    return kUsage;
  }

  Runner runner(o, out, err);
  try {
    if (validate->parsed()) return runner.validate();
    if (solve->parsed()) return runner.solve_cmd();
    if (pipeline->parsed()) return runner.pipeline();
    if (vis->parsed()) return runner.vis();
    return runner.knit();
  } catch (const std::exception& e) {
    int code = exit_code_for(e);
    err << (code == kUsage ? "usage error: " : "error: ") << e.what() << "\n";
    return code;
  } catch (...) {
    err << "error: unknown failure\n";
    return kInternal;
  }
}

}  // namespace cods::cli
