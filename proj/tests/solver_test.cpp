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
#include "cods/solver.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cods;

namespace {

const std::vector<std::vector<int>> kCharacterSolution = {
    {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}, {0, 1, 0, 0, 0}};

void check_agree(const DesignSpace& s, const CompiledConstraintSet& set) {
  SolveResult bb = solve(s, set);
  SolveResult bf = brute_force_solve(s, set);
  REQUIRE(bb.status == bf.status);
  if (bb.status == SolveStatus::kOptimal) {
    CHECK(bb.objective == doctest::Approx(bf.objective));
    CHECK(*bb.solution == *bf.solution);
    CHECK(check_feasible(set, *bb.solution).feasible);
    CHECK(bb.objective == objective_value(set, *bb.solution));
  }
}

}  // namespace

TEST_CASE("character example solves to the published solution") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, testing::open_peeps_constraints(s));
  SolveResult r = solve(s, set);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(*r.solution == SolutionMatrix::from_rows(s, kCharacterSolution));
  CHECK(r.objective == 3.0);

  SolveResult oracle = brute_force_solve(s, set);
  CHECK(oracle.stats.nodes == 3125);
  CHECK(*oracle.solution == *r.solution);
  CHECK(oracle.objective == 3.0);

  Explanation e = explain(r, set);
  REQUIRE(e.soft.size() == 2);
  CHECK(e.soft[0].contribution == 1.0);
  CHECK(e.soft[1].contribution == 2.0);
  CHECK(e.total == 3.0);
  for (const RowStatus& row : e.hard) CHECK(row.binding);
}

TEST_CASE("no rules: first element of every dimension") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, {});
  SolveResult r = solve(s, set);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == 0.0);
  CHECK(solution_to_tuple(s, *r.solution) ==
        std::vector<ElementRef>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
}

TEST_CASE("direct contradiction is infeasible") {
  DesignSpace s = testing::open_peeps();
  ElementRef calm = s.resolve("face", "calm");
  CompiledConstraintSet set =
      compile(s, {SymbolicConstraint::require_one_of({calm}), SymbolicConstraint::forbid({calm})});
  CHECK(solve(s, set).status == SolveStatus::kInfeasible);
  CHECK(brute_force_solve(s, set).status == SolveStatus::kInfeasible);
  CHECK_THROWS_AS(explain(solve(s, set), set), Error);
  Json doc = to_json(solve(s, set), s, set);
  CHECK(doc["status"] == "infeasible");
  CHECK(doc["tuple"].empty());
  CHECK(doc["objective"].is_null());
}

TEST_CASE("single dimension preference") {
  DesignSpace s = load_design_space_text(
      R"({"name": "one", "dimensions": [{"name": "d", "elements": ["a", "b", "c", "d", "e"]}]})");
  CompiledConstraintSet set = compile(s, {SymbolicConstraint::prefer({{0, 2}}, 1.0)});
  SolveResult r = brute_force_solve(s, set);
  CHECK(solution_to_tuple(s, *r.solution) == std::vector<ElementRef>{{0, 2}});
  CHECK(r.objective == 1.0);
  check_agree(s, set);
}

TEST_CASE("multi-selection ties resolve to the prefix-first order") {
  DesignSpace s = load_design_space_text(R"({"name": "multi", "dimensions": [
      {"name": "a", "elements": ["x", "y", "z"], "cardinality": [0, 2]},
      {"name": "b", "elements": ["u", "v"], "cardinality": [1, 2]}]})");
  SolveResult r = solve(s, compile(s, {}));
  CHECK(solution_to_tuple(s, *r.solution) == std::vector<ElementRef>{{1, 0}});
  // Two equally good pairs in "a": {x,z} and {y,z}; {x,z} sorts first.
  CompiledConstraintSet set = compile(s, {SymbolicConstraint::prefer({{0, 2}}, 2.0),
                                          SymbolicConstraint::prefer({{0, 0}, {0, 1}}, 1.0)});
  SolveResult tie = solve(s, set);
  CHECK(solution_to_tuple(s, *tie.solution) == std::vector<ElementRef>{{0, 0}, {0, 2}, {1, 0}});
  check_agree(s, set);
}

TEST_CASE("explain") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet none = compile(s, {});
  Explanation e = explain(solve(s, none), none);
  CHECK(e.soft.empty());
  CHECK(e.total == 0.0);

  CompiledConstraintSet penalized =
      compile(s, {SymbolicConstraint::require_one_of({s.resolve("face", "angry")}),
                  SymbolicConstraint::avoid({s.resolve("face", "angry")}, 1.0)});
  Explanation p = explain(solve(s, penalized), penalized);
  REQUIRE(p.soft.size() == 1);
  CHECK(p.soft[0].matches == 1);
  CHECK(p.soft[0].contribution == -1.0);
  CHECK(p.total == -1.0);
}

TEST_CASE("resource caps are reported distinctly") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, {});
  CHECK_THROWS_AS(brute_force_solve(s, set, {.assignment_cap = 100}), ResourceLimitError);
  CHECK_THROWS_AS(solve(s, set, {.node_limit = 3}), ResourceLimitError);
}

TEST_CASE("shape mismatch") {
  DesignSpace s = testing::open_peeps();
  DesignSpace other = load_design_space_text(
      R"({"name": "one", "dimensions": [{"name": "d", "elements": ["a"]}]})");
  CompiledConstraintSet set = compile(other, {});
  CHECK_THROWS_AS(solve(s, set), ShapeError);
  CHECK_THROWS_AS(brute_force_solve(s, set), ShapeError);
}

TEST_CASE("branch and bound agrees with enumeration on random instances") {
  std::mt19937_64 rng(2024);
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    DesignSpace s = testing::random_space(rng);
    std::vector<SymbolicConstraint> cs;
    int hard = std::uniform_int_distribution<int>(0, 8)(rng);
    int soft = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int t = 0; t < hard; ++t) cs.push_back(testing::random_hard(rng, s));
    for (int t = 0; t < soft; ++t) cs.push_back(testing::random_soft(rng, s));
    CompiledConstraintSet set = compile(s, cs);
    infeasible += solve(s, set).status == SolveStatus::kInfeasible;
    check_agree(s, set);
  }
  CHECK(infeasible > 0);
  CHECK(infeasible < 300);
}

TEST_CASE("monotonicity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    DesignSpace s = testing::random_space(rng);
    std::vector<SymbolicConstraint> cs;
    for (int t = 0; t < 3; ++t) cs.push_back(testing::random_soft(rng, s));
    for (int t = 0; t < 2; ++t) cs.push_back(testing::random_hard(rng, s));
    SolveResult base = solve(s, compile(s, cs));
    if (base.status != SolveStatus::kOptimal) continue;

    auto more_soft = cs;
    auto extra = testing::random_soft(rng, s);
    extra.kind = ConstraintKind::kPrefer;
    more_soft.push_back(extra);
    CHECK(solve(s, compile(s, more_soft)).objective >= base.objective - kObjectiveTolerance);

    auto more_hard = cs;
    more_hard.push_back(testing::random_hard(rng, s));
    SolveResult tighter = solve(s, compile(s, more_hard));
    if (tighter.status == SolveStatus::kOptimal) {
      CHECK(tighter.objective <= base.objective + kObjectiveTolerance);
    }
  }
}

TEST_CASE("serialized results are reproducible") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, testing::open_peeps_constraints(s));
  std::string a = to_json(solve(s, set), s, set).dump(2);
  std::string b = to_json(solve(s, set), s, set).dump(2);
  CHECK(a == b);
  Json doc = Json::parse(a);
  CHECK(doc["status"] == "optimal");
  CHECK(doc["objective"] == 3.0);
  CHECK(doc["tuple"][0]["element"] == "woman bangs black");
  CHECK(doc["per_rule"][1]["contribution"] == 2.0);
  CHECK_FALSE(doc["stats"].contains("elapsed_ms"));
  CHECK(to_json(solve(s, set), s, set, true)["stats"].contains("elapsed_ms"));
}
