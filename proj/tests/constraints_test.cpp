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

#include "cods/constraints.hpp"
#include "cods/error.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cods;
using cods::testing::data_path;

namespace {

Grid<std::int8_t> grid(const std::vector<std::vector<int>>& rows) {
  Grid<std::int8_t> g(Shape{static_cast<int>(rows.size()), static_cast<int>(rows[0].size())});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) g.at(i, j) = static_cast<std::int8_t>(rows[i][j]);
  }
  return g;
}

const std::vector<std::vector<int>> kCharacterSolution = {
    {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}, {0, 1, 0, 0, 0}};

}  // namespace

TEST_CASE("character rules compile to the published matrices") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, testing::open_peeps_constraints(s));
  CHECK(set.shape == Shape{5, 5});

  REQUIRE(set.hard.size() == 2 + 5);
  // H1: female heads at j = 1, 3, 5 (1-based).
  CHECK(set.hard[0].matrix == grid({{1, 0, 1, 0, 1}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0},
                                    {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
  CHECK(set.hard[0].sense == Sense::kEqual);
  CHECK(set.hard[0].rhs == 1);
  // H2: facial-hair must be "none".
  CHECK(set.hard[1].matrix == grid({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0},
                                    {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0}}));
  CHECK(set.hard[1].rhs == 1);
  for (int k = 2; k < 7; ++k) {
    CHECK(set.hard[k].origin == RowOrigin::kCardinality);
    CHECK(set.hard[k].source == k - 2);
    CHECK(set.hard[k].sense == Sense::kEqual);
    CHECK(set.hard[k].rhs == 1);
  }

  REQUIRE(set.soft.size() == 2);
  CHECK(set.soft[0].matrix == grid({{0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0},
                                    {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
  CHECK(set.soft[0].weight == 1.0);
  CHECK(set.soft[1].matrix == grid({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 1},
                                    {0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}));
}

TEST_CASE("pairwise kinds") {
  DesignSpace s = testing::open_peeps();
  ElementRef sunglasses = s.resolve("accessories", "sunglasses");
  ElementRef tee = s.resolve("body", "sporty tee");
  CompiledConstraintSet set = compile(s, {SymbolicConstraint::together(sunglasses, tee),
                                          SymbolicConstraint::exclusive({sunglasses, tee})});
  CHECK(set.hard[0].matrix.at(2, 4) == 1);
  CHECK(set.hard[0].matrix.at(4, 1) == -1);
  CHECK(set.hard[0].sense == Sense::kEqual);
  CHECK(set.hard[0].rhs == 0);
  CHECK(set.hard[1].matrix.at(2, 4) == 1);
  CHECK(set.hard[1].matrix.at(4, 1) == 1);
  CHECK(set.hard[1].sense == Sense::kLessEqual);
  CHECK(set.hard[1].rhs == 1);

  CompiledConstraintSet three = compile(
      s, {SymbolicConstraint::exclusive({sunglasses, tee, s.resolve("face", "calm")})});
  CHECK(three.hard[0].rhs == 2);
}

TEST_CASE("avoid compiles to a negative weight; forbid to a zero target") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, {SymbolicConstraint::avoid({s.resolve("face", "angry")}, 2.0),
                                          SymbolicConstraint::prefer({s.resolve("face", "smile")}, -3.0),
                                          SymbolicConstraint::forbid({s.resolve("face", "angry")})});
  CHECK(set.soft[0].weight == -2.0);
  CHECK(set.soft[1].weight == 3.0);
  CHECK(set.hard[0].rhs == 0);
}

TEST_CASE("cardinality rows: two inequalities unless min == max") {
  DesignSpace s = load_design_space_text(R"({"name": "c", "dimensions": [
      {"name": "a", "elements": ["x", "y", "z"], "cardinality": [0, 2]},
      {"name": "b", "elements": ["u"]}]})");
  CompiledConstraintSet set = compile(s, {});
  REQUIRE(set.hard.size() == 3);
  CHECK(set.hard[0].sense == Sense::kGreaterEqual);
  CHECK(set.hard[0].rhs == 0);
  CHECK(set.hard[1].sense == Sense::kLessEqual);
  CHECK(set.hard[1].rhs == 2);
  CHECK(set.hard[2].sense == Sense::kEqual);
  // No padded cell carries a coefficient.
  for (const auto& row : set.hard) {
    for (int j = 1; j < 3; ++j) CHECK(row.matrix.at(1, j) == 0);
  }
}

TEST_CASE("compile errors") {
  DesignSpace s = testing::open_peeps();
  CHECK_THROWS_AS(compile(s, {SymbolicConstraint::require_one_of({})}), ValidationError);
  CHECK_THROWS_AS(compile(s, {SymbolicConstraint::forbid({{0, 7}})}), ResolveError);
  CHECK_THROWS_AS(compile(s, {SymbolicConstraint::prefer({{0, 0}}, 0.0)}), ValidationError);
  CHECK_THROWS_AS(compile(s, {SymbolicConstraint::exclusive({{0, 0}})}), ValidationError);
  CHECK_THROWS_AS(compile(s, {SymbolicConstraint::together({0, 0}, {0, 0})}), ValidationError);
  SymbolicConstraint weighted_hard = SymbolicConstraint::forbid({{0, 0}});
  weighted_hard.weight = 1.0;
  CHECK_THROWS_AS(compile(s, {weighted_hard}), ValidationError);
}

TEST_CASE("objective value of the character solution is 3") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, testing::open_peeps_constraints(s));
  SolutionMatrix x = SolutionMatrix::from_rows(s, kCharacterSolution);
  // S1 hits e22; S2 hits e35 and e52.
  CHECK(objective_value(set, x) == 3.0);
  CHECK(objective_value(set, SolutionMatrix(s)) == 0.0);
  CHECK(objective_value(compile(s, {}), x) == 0.0);
  CHECK_THROWS_AS(objective_value(set, SolutionMatrix(Shape{1, 1}, {1})), ShapeError);
}

TEST_CASE("feasibility of the character solution") {
  DesignSpace s = testing::open_peeps();
  CompiledConstraintSet set = compile(s, testing::open_peeps_constraints(s));
  FeasibilityReport ok = check_feasible(set, SolutionMatrix::from_rows(s, kCharacterSolution));
  CHECK(ok.feasible);
  CHECK(ok.rows.size() == set.hard.size());

  auto male = kCharacterSolution;
  male[0] = {0, 1, 0, 0, 0};
  FeasibilityReport bad = check_feasible(set, SolutionMatrix::from_rows(s, male));
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.rows[0].satisfied);
  CHECK(bad.rows[0].achieved == 0);
  CHECK(bad.rows[0].rhs == 1);
  for (std::size_t k = 1; k < bad.rows.size(); ++k) CHECK(bad.rows[k].satisfied);

  CompiledConstraintSet empty;
  empty.shape = set.shape;
  empty.row_lengths = set.row_lengths;
  CHECK(check_feasible(empty, SolutionMatrix::from_rows(s, kCharacterSolution)).feasible);
  CHECK_FALSE(check_feasible(empty, SolutionMatrix(Shape{2, 2}, {2, 2})).feasible);
}

TEST_CASE("padding and non-binary cells are structurally infeasible") {
  DesignSpace s = load_design_space_text(R"({"name": "p", "dimensions": [
      {"name": "a", "elements": ["x", "y"], "cardinality": [0, 2]},
      {"name": "b", "elements": ["u"], "cardinality": [0, 1]}]})");
  CompiledConstraintSet set = compile(s, {});
  SolutionMatrix x(s);
  x.set(1, 1, 1);
  CHECK_FALSE(check_feasible(set, x).feasible);
  SolutionMatrix y(s);
  y.set(0, 0, 2);
  CHECK_FALSE(check_feasible(set, y).feasible);
}

TEST_CASE("compilation soundness against the symbolic evaluator") {
  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    DesignSpace s = testing::random_space(rng);
    std::vector<SymbolicConstraint> cs;
    int k = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int t = 0; t < k; ++t) cs.push_back(testing::random_hard(rng, s));
    CompiledConstraintSet set = compile(s, cs);
    SolutionMatrix x = testing::random_matrix(rng, s);
    bool expected = testing::symbolic_satisfied(s, cs, x);
    feasible += expected;
    CHECK(check_feasible(set, x).feasible == expected);
  }
  CHECK(feasible > 100);
}

TEST_CASE("objective is additive and homogeneous in the weights") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    DesignSpace s = testing::random_space(rng);
    std::vector<SymbolicConstraint> a, b;
    for (int t = 0; t < 3; ++t) a.push_back(testing::random_soft(rng, s));
    for (int t = 0; t < 3; ++t) b.push_back(testing::random_soft(rng, s));
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto doubled = both;
    for (auto& c : doubled) c.weight *= 2;
    SolutionMatrix x = testing::random_matrix(rng, s);
    double va = objective_value(compile(s, a), x);
    double vb = objective_value(compile(s, b), x);
    CHECK(objective_value(compile(s, both), x) == doctest::Approx(va + vb));
    CHECK(objective_value(compile(s, doubled), x) == doctest::Approx(2 * (va + vb)));
  }
}

TEST_CASE("constraint document") {
  DesignSpace s = testing::open_peeps();
  auto cs = load_constraints_file(data_path("constraints/openpeeps.json"), s);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].kind == ConstraintKind::kRequireOneOf);
  CHECK(cs[0].rationale == "A girl character needs a female head.");
  CHECK(compile(s, cs).hard[0].matrix == compile(s, testing::open_peeps_constraints(s)).hard[0].matrix);

  auto defaulted = load_constraints(
      Json::parse(R"([{"kind": "avoid", "cells": [{"dimension": "face", "element": "angry"}]}])"), s);
  CHECK(defaulted[0].weight == 1.0);
  CHECK(compile(s, defaulted).soft[0].weight == -1.0);

  try {
    load_constraints(Json::parse(R"([{"kind": "forbid", "cells": [
        {"dimension": "head", "element": "top hat"}, {"dimension": "hats", "element": "fez"}]}])"),
                     s);
    FAIL("expected a resolve error");
  } catch (const ResolveError& e) {
    CHECK(e.names() == std::vector<std::string>{"top hat", "hats"});
  }
  CHECK_THROWS_AS(load_constraints(Json::parse(R"([{"kind": "maybe", "cells": []}])"), s), ValidationError);
  CHECK_THROWS_AS(load_constraints(Json::parse(R"({})"), s), ValidationError);

  Json round = to_json(cs, s);
  CHECK(load_constraints(round, s) == cs);
}

TEST_CASE("compiled audit JSON") {
  DesignSpace s = testing::open_peeps();
  Json doc = to_json(compile(s, testing::open_peeps_constraints(s)));
  CHECK(doc["shape"] == Json::array({5, 5}));
  CHECK(doc["hard"][0]["sense"] == "=");
  CHECK(doc["hard"][0]["origin"] == "constraint");
  CHECK(doc["hard"][0]["matrix"][0] == Json::array({1, 0, 1, 0, 1}));
  CHECK(doc["hard"][6]["origin"] == "cardinality");
  CHECK(doc["soft"][1]["matrix"][4] == Json::array({0, 1, 0, 0, 0}));
}
