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

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "cods/cli.hpp"
#include "cods/constraints.hpp"
#include "cods/error.hpp"
#include "cods/json_util.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cods;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return testing::data_path(rel).string(); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "cods_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

const char* kDesert = "A desert-inspired knitted dress that evokes a sense of mystery and elegance";

}  // namespace

TEST_CASE("validate") {
  Outcome ok = run({"validate", "--space", data("spaces/openpeeps.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("5 dimensions") != std::string::npos);

  Outcome dup = run({"validate", "--space", data("spaces/duplicate_dimension.json")});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("/dimensions/1/name") != std::string::npos);

  CHECK(run({"validate", "--space", data("spaces/missing.json")}).code == 1);
  CHECK(run({"validate", "--space", data("spaces/openpeeps.json"), "--constraints",
             data("constraints/openpeeps.json")}).code == 0);
  CHECK(run({"validate"}).code == 64);
}

TEST_CASE("solve") {
  Outcome ok = run({"solve", "--space", data("spaces/openpeeps.json"), "--constraints",
                    data("constraints/openpeeps.json")});
  REQUIRE(ok.code == 0);
  Json result = Json::parse(ok.out);
  CHECK(result["status"] == "optimal");
  CHECK(result["objective"].get<double>() == 3.0);
  std::vector<std::string> tuple;
  for (const auto& t : result["tuple"]) tuple.push_back(t["element"].get<std::string>());
  CHECK(tuple == std::vector<std::string>{"woman bangs black", "calm", "sunglasses", "none", "sporty tee"});

  Outcome bad = run({"solve", "--space", data("spaces/openpeeps.json"), "--constraints",
                     data("constraints/contradictory.json")});
  CHECK(bad.code == 3);
  CHECK(Json::parse(bad.out)["status"] == "infeasible");

  fs::path out = scratch("solve.json");
  fs::remove(out.parent_path() / "solve.compiled.json");
  CHECK(run({"solve", "--space", data("spaces/openpeeps.json"), "--constraints", data("constraints/openpeeps.json"),
             "--out", out.string(), "--emit-compiled"}).code == 0);
  DesignSpace space = load_design_space_file(data("spaces/openpeeps.json"));
  Json sidecar = parse_json(read_file(out.parent_path() / "solve.compiled.json"), "sidecar");
  CHECK(sidecar == to_json(compile(space, load_constraints_file(data("constraints/openpeeps.json"), space))));
  CHECK(parse_json(read_file(out), "out") == result);

  CHECK(run({"solve", "--space", data("spaces/openpeeps.json"), "--constraints", data("constraints/openpeeps.json"),
             "--emit-compiled"}).code == 64);
  CHECK(run({"solve", "--space", data("spaces/openpeeps.json")}).code == 64);
  CHECK(run({"solve", "--space", data("spaces/openpeeps.json"), "--constraints", data("vis/cars.csv")}).code == 2);
}

TEST_CASE("pipeline") {
  fs::path transcript = scratch("pipeline.jsonl");
  Outcome ok = run({"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement",
                    "a cool and sporty girl character", "--stub-rules", data("stub_rules/openpeeps.json"),
                    "--transcript", transcript.string()});
  REQUIRE(ok.code == 0);
  Json doc = Json::parse(ok.out);
  CHECK(doc["generation"]["prompts"] == 6);
  CHECK(doc["result"]["tuple"][2]["element"] == "sunglasses");
  std::string lines = read_file(transcript);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 6);

  CHECK(run({"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement", "x"}).code == 64);

  fs::path cfg = scratch("live.json");
  write_file(cfg, R"({"llm": {"api_key_env": "CODS_TEST_UNSET_KEY_VARIABLE"}})");
  Outcome live = run({"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement", "x", "--backend", "live",
                      "--config", cfg.string()});
  CHECK(live.code == 4);
  CHECK(live.err.find("CODS_TEST_UNSET_KEY_VARIABLE") != std::string::npos);

  fs::path bad_rules = scratch("bad_rules.json");
  write_file(bad_rules, R"({"rules": [], "malformed_once": ["head"]})");
  // Retries disabled: the malformed first answer is fatal.
  fs::path no_retry = scratch("no_retry.json");
  write_file(no_retry, R"({"llm": {"max_retries": 0}})");
  CHECK(run({"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement", "x", "--stub-rules",
             bad_rules.string(), "--config", no_retry.string()}).code == 5);
  CHECK(run({"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement", "x", "--stub-rules",
             bad_rules.string()}).code == 0);
}

TEST_CASE("vis") {
  Outcome c1 = run({"vis", "--dataset", data("vis/cars.csv"), "--query",
                    "Show the correlation between weight and mile per gallon for cars."});
  REQUIRE(c1.code == 0);
  CHECK(c1.out == "{\n  \"mark\": \"point\",\n  \"x\": \"weight\",\n  \"y\": \"mpg\"\n}\n");

  Json queries = parse_json(read_file(data("vis/queries.json")), "queries");
  for (const Json& q : queries) {
    if (q["id"] != "a4") continue;
    fs::path table = scratch("a4_table.json");
    Outcome a4 = run({"vis", "--dataset", data("vis/" + q["dataset"].get<std::string>()), "--query",
                      q["query"].get<std::string>(), "--table", table.string()});
    REQUIRE(a4.code == 0);
    Json spec = Json::parse(a4.out);
    CHECK(spec["mark"] == "bar");
    CHECK(spec["aggregate"]["y"] == "sum");
    CHECK(parse_json(read_file(table), "table")["grouped"] == true);
  }

  fs::path bad = scratch("bad.csv");
  write_file(bad, "a,b\n1\n");
  CHECK(run({"vis", "--dataset", bad.string(), "--query", "anything"}).code == 2);
  CHECK(run({"vis", "--query", "no dataset"}).code == 64);
  CHECK(run({"vis", "--dataset", data("vis/none.csv"), "--query", "q"}).code == 1);
}

TEST_CASE("knit") {
  Outcome ok = run({"knit", "--requirement", kDesert});
  REQUIRE(ok.code == 0);
  CHECK(ok.out.find("desert tones color") != std::string::npos);
  CHECK(ok.out.back() == '\n');

  Outcome templated = run({"knit", "--requirement", kDesert, "--template", data("templates/knit.txt")});
  CHECK(templated.out == ok.out);

  fs::path t = scratch("motif_first.txt");
  write_file(t, "{visual motif} {fabric}");
  CHECK(run({"knit", "--requirement", kDesert, "--template", t.string()}).code == 2);
  CHECK(run({"knit", "--requirement", kDesert, "--space", data("spaces/knit_extension.json")}).code == 0);
  CHECK(run({"knit"}).code == 64);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"solve", "--bogus"}).code == 64);
  CHECK(run({"knit", "--requirement", "x", "--backend", "maybe"}).code == 64);
  Outcome help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* sub : {"validate", "solve", "pipeline", "vis", "knit"}) {
    CHECK(help.out.find(sub) != std::string::npos);
  }
}

TEST_CASE("exit codes for exceptions") {
  CHECK(cli::exit_code_for(IoError("x")) == 1);
  CHECK(cli::exit_code_for(ValidationError("/a", "x")) == 2);
  CHECK(cli::exit_code_for(ParseError("x")) == 2);
  CHECK(cli::exit_code_for(ResolveError({"a"}, "x")) == 2);
  CHECK(cli::exit_code_for(ResourceLimitError("x")) == 6);
  CHECK(cli::exit_code_for(std::runtime_error("x")) == 70);
}

TEST_CASE("every subcommand is byte-identical across runs") {
  std::vector<std::vector<std::string>> commands = {
      {"validate", "--space", data("spaces/openpeeps.json")},
      {"solve", "--space", data("spaces/openpeeps.json"), "--constraints", data("constraints/openpeeps.json")},
      {"pipeline", "--space", data("spaces/openpeeps.json"), "--requirement", "a cool and sporty girl character",
       "--stub-rules", data("stub_rules/openpeeps.json")},
      {"vis", "--dataset", data("vis/rentals.csv"), "--query",
       "Show me about the distribution of 'date address from' and the sum of 'monthly rental', grouped by other "
       "details."},
      {"knit", "--requirement", kDesert},
  };
  for (auto& cmd : commands) {
    CAPTURE(cmd[0]);
    std::vector<std::string> files;
    auto with_files = [&](int k) {
      std::vector<std::string> c = cmd;
      std::string tag = cmd[0] + std::to_string(k);
      c.insert(c.end(), {"--out", scratch(tag + ".out").string()});
      if (cmd[0] != "validate") c.push_back("--emit-compiled");
      if (cmd[0] == "pipeline" || cmd[0] == "vis" || cmd[0] == "knit") {
        c.insert(c.end(), {"--transcript", scratch(tag + ".jsonl").string()});
      }
      return c;
    };
    Outcome a = run(cmd), b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run(with_files(1)).code == 0);
    CHECK(run(with_files(2)).code == 0);
    for (const char* ext : {".out", ".compiled.json", ".jsonl"}) {
      fs::path p1 = scratch(cmd[0] + "1" + ext), p2 = scratch(cmd[0] + "2" + ext);
      if (!fs::exists(p1)) continue;
      CHECK(read_file(p1) == read_file(p2));
    }
    CHECK(read_file(scratch(cmd[0] + "1.out")) == a.out);
  }
}
