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

#include "cods/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "cods/error.hpp"

namespace cods {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_compatible(const DesignSpace& space, const CompiledConstraintSet& set) {
  if (set.shape != padded_shape(space) || set.row_lengths != space.row_lengths()) {
    throw ShapeError("constraint set was compiled for a different design space shape");
  }
}

////////////////////////////////////////////////////////////////////////////////
// Branch and bound
////////////////////////////////////////////////////////////////////////////////

// One way of filling a single dimension's row of X.
struct Choice {
  std::vector<int> cells;
  double score = 0.0;
  // Activity added to each row in Layer::rows, same order.
  std::vector<int> row_delta;
};

struct Layer {
  std::vector<Choice> choices;
  // Hard rows with a nonzero coefficient in this dimension.
  std::vector<int> rows;
  double max_score = 0.0;
};

// Emits every subset of [0, length) with size in [lo, hi] in prefix-first
// lexicographic order.
void enumerate_subsets(int length, int lo, int hi, std::int64_t limit, std::vector<int>& current,
                       int start, std::vector<std::vector<int>>& out) {
  int size = static_cast<int>(current.size());
  if (size >= lo && size <= hi) {
    out.push_back(current);
    if (static_cast<std::int64_t>(out.size()) > limit) {
      throw ResourceLimitError("too many candidate selections in one dimension");
    }
  }
  if (size == hi) return;
  for (int j = start; j < length; ++j) {
    current.push_back(j);
    enumerate_subsets(length, lo, hi, limit, current, j + 1, out);
    current.pop_back();
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const DesignSpace& space, const CompiledConstraintSet& set,
                 const SolverOptions& options)
      : space_(space), set_(set), options_(options) {}

  SolveResult run() {
    auto start = Clock::now();
    build_layers();
    SolveResult result;
    activity_.assign(set_.hard.size(), 0);
    path_.assign(layers_.size(), -1);
    bool root_ok = true;
    for (std::size_t r = 0; r < set_.hard.size(); ++r) {
      if (!range_ok(static_cast<int>(r), 0, rem_min_[0][r], rem_max_[0][r])) root_ok = false;
    }
    if (root_ok) dfs(0, 0.0);
    result.stats.nodes = nodes_;
    if (best_path_) {
      SolutionMatrix x(space_);
      for (std::size_t d = 0; d < layers_.size(); ++d) {
        for (int j : layers_[d].choices[(*best_path_)[d]].cells) x.set(static_cast<int>(d), j, 1);
      }
      result.status = SolveStatus::kOptimal;
      result.objective = objective_value(set_, x);
      result.solution = std::move(x);
    }
    result.stats.elapsed_ms = millis_since(start);
    return result;
  }

 private:
  void build_layers() {
    const int n = space_.num_dimensions();
    const int rows = static_cast<int>(set_.hard.size());
    Grid<double> cell_score(set_.shape, 0.0);
    for (const SoftRule& rule : set_.soft) {
      for (int i = 0; i < set_.shape.rows; ++i) {
        for (int j = 0; j < set_.shape.cols; ++j) {
          if (rule.matrix.at(i, j)) cell_score.at(i, j) += rule.weight * rule.matrix.at(i, j);
        }
      }
    }

    layers_.resize(n);
    rem_min_.assign(n + 1, std::vector<int>(rows, 0));
    rem_max_.assign(n + 1, std::vector<int>(rows, 0));
    rem_best_.assign(n + 1, 0.0);
    for (int d = n - 1; d >= 0; --d) {
      const Dimension& dim = space_.dimension(d);
      Layer& layer = layers_[d];
      for (int r = 0; r < rows; ++r) {
        for (int j = 0; j < dim.size(); ++j) {
          if (set_.hard[r].matrix.at(d, j) != 0) {
            layer.rows.push_back(r);
            break;
          }
        }
      }
      std::vector<std::vector<int>> subsets;
      std::vector<int> scratch;
      enumerate_subsets(dim.size(), dim.cardinality.min, dim.cardinality.max,
                        options_.choice_limit, scratch, 0, subsets);
      std::vector<int> lo(layer.rows.size(), std::numeric_limits<int>::max());
      std::vector<int> hi(layer.rows.size(), std::numeric_limits<int>::min());
      layer.max_score = -std::numeric_limits<double>::infinity();
      for (auto& cells : subsets) {
        Choice choice;
        for (int j : cells) choice.score += cell_score.at(d, j);
        choice.row_delta.resize(layer.rows.size(), 0);
        for (std::size_t t = 0; t < layer.rows.size(); ++t) {
          for (int j : cells) choice.row_delta[t] += set_.hard[layer.rows[t]].matrix.at(d, j);
          lo[t] = std::min(lo[t], choice.row_delta[t]);
          hi[t] = std::max(hi[t], choice.row_delta[t]);
        }
        layer.max_score = std::max(layer.max_score, choice.score);
        choice.cells = std::move(cells);
        layer.choices.push_back(std::move(choice));
      }
      rem_min_[d] = rem_min_[d + 1];
      rem_max_[d] = rem_max_[d + 1];
      for (std::size_t t = 0; t < layer.rows.size(); ++t) {
        rem_min_[d][layer.rows[t]] += lo[t];
        rem_max_[d][layer.rows[t]] += hi[t];
      }
      rem_best_[d] = rem_best_[d + 1] + layer.max_score;
    }
  }

  // Whether row r can still reach its target given the achievable range
  // [activity + lo, activity + hi] over the undecided dimensions.
  bool range_ok(int r, int activity, int lo, int hi) const {
    const HardRow& row = set_.hard[r];
    int min_total = activity + lo;
    int max_total = activity + hi;
    switch (row.sense) {
      case Sense::kEqual:
        return min_total <= row.rhs && row.rhs <= max_total;
      case Sense::kLessEqual:
        return min_total <= row.rhs;
      case Sense::kGreaterEqual:
        return max_total >= row.rhs;
    }
    return false;
  }

  void dfs(int d, double score) {
    if (++nodes_ > options_.node_limit) {
      throw ResourceLimitError("branch-and-bound node limit of " +
                               std::to_string(options_.node_limit) + " exceeded");
    }
    if (d == static_cast<int>(layers_.size())) {
      for (std::size_t r = 0; r < set_.hard.size(); ++r) {
        if (!row_satisfied(set_.hard[r].sense, activity_[r], set_.hard[r].rhs)) return;
      }
      if (!best_path_ || score > best_ + kObjectiveTolerance) {
        best_ = score;
        best_path_ = path_;
      }
      return;
    }
    if (best_path_ && score + rem_best_[d] <= best_ + kObjectiveTolerance) return;

    const Layer& layer = layers_[d];
    for (std::size_t c = 0; c < layer.choices.size(); ++c) {
      const Choice& choice = layer.choices[c];
      bool ok = true;
      for (std::size_t t = 0; t < layer.rows.size(); ++t) {
        int r = layer.rows[t];
        activity_[r] += choice.row_delta[t];
        if (ok && !range_ok(r, activity_[r], rem_min_[d + 1][r], rem_max_[d + 1][r])) ok = false;
      }
      if (ok) {
        path_[d] = static_cast<int>(c);
        dfs(d + 1, score + choice.score);
      }
      for (std::size_t t = 0; t < layer.rows.size(); ++t) {
        activity_[layer.rows[t]] -= choice.row_delta[t];
      }
    }
  }

  const DesignSpace& space_;
  const CompiledConstraintSet& set_;
  SolverOptions options_;

  std::vector<Layer> layers_;
  // Row activity bounds contributed by dimensions d..n-1.
  std::vector<std::vector<int>> rem_min_;
  std::vector<std::vector<int>> rem_max_;
  // Optimistic score of dimensions d..n-1.
  std::vector<double> rem_best_;

  std::vector<int> activity_;
  std::vector<int> path_;
  std::optional<std::vector<int>> best_path_;
  double best_ = 0.0;
  std::int64_t nodes_ = 0;
};

}  // namespace

std::string_view status_name(SolveStatus status) {
  return status == SolveStatus::kOptimal ? "optimal" : "infeasible";
}

SolveResult solve(const DesignSpace& space, const CompiledConstraintSet& set,
                  const SolverOptions& options) {
  check_compatible(space, set);
  return BranchAndBound(space, set, options).run();
}

////////////////////////////////////////////////////////////////////////////////
// Enumeration oracle
////////////////////////////////////////////////////////////////////////////////

SolveResult brute_force_solve(const DesignSpace& space, const CompiledConstraintSet& set,
                              const BruteForceOptions& options) {
  check_compatible(space, set);
  auto start = Clock::now();
  const int n = space.num_dimensions();

  // Every admissible row per dimension, via bitmasks, sorted into the
  // shared candidate order.
  std::vector<std::vector<std::vector<int>>> options_per_dim(n);
  std::int64_t total = 1;
  for (int d = 0; d < n; ++d) {
    const Dimension& dim = space.dimension(d);
    if (dim.size() > 24) throw ResourceLimitError("dimension too wide to enumerate");
    for (std::uint32_t mask = 0; mask < (1u << dim.size()); ++mask) {
      int bits = __builtin_popcount(mask);
      if (bits < dim.cardinality.min || bits > dim.cardinality.max) continue;
      std::vector<int> cells;
      for (int j = 0; j < dim.size(); ++j) {
        if (mask & (1u << j)) cells.push_back(j);
      }
      options_per_dim[d].push_back(std::move(cells));
    }
    std::sort(options_per_dim[d].begin(), options_per_dim[d].end());
    auto count = static_cast<std::int64_t>(options_per_dim[d].size());
    if (total > options.assignment_cap / std::max<std::int64_t>(count, 1)) {
      throw ResourceLimitError("enumeration exceeds the cap of " +
                               std::to_string(options.assignment_cap) + " assignments");
    }
    total *= count;
  }
  if (total > options.assignment_cap) {
    throw ResourceLimitError("enumeration exceeds the cap of " +
                             std::to_string(options.assignment_cap) + " assignments");
  }

  SolveResult result;
  std::vector<std::size_t> digit(n, 0);
  std::optional<double> best;
  while (true) {
    SolutionMatrix x(space);
    for (int d = 0; d < n; ++d) {
      for (int j : options_per_dim[d][digit[d]]) x.set(d, j, 1);
    }
    ++result.stats.nodes;
    if (check_feasible(set, x).feasible) {
      double value = objective_value(set, x);
      if (!best || value > *best + kObjectiveTolerance) {
        best = value;
        result.solution = std::move(x);
      }
    }
    // Odometer with dimension 0 most significant.
    int d = n - 1;
    while (d >= 0 && ++digit[d] == options_per_dim[d].size()) {
      digit[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  if (best) {
    result.status = SolveStatus::kOptimal;
    result.objective = *best;
  }
  result.stats.elapsed_ms = millis_since(start);
  return result;
}

Explanation explain(const SolveResult& result, const CompiledConstraintSet& set) {
  if (result.status != SolveStatus::kOptimal || !result.solution) {
    throw Error("explain requires an optimal result");
  }
  const SolutionMatrix& x = *result.solution;
  Explanation out;
  for (std::size_t k = 0; k < set.soft.size(); ++k) {
    const SoftRule& rule = set.soft[k];
    RuleContribution c;
    c.index = static_cast<int>(k);
    c.source = rule.source;
    c.weight = rule.weight;
    for (int i = 0; i < set.shape.rows; ++i) {
      for (int j = 0; j < set.shape.cols; ++j) c.matches += rule.matrix.at(i, j) * x.at(i, j);
    }
    c.contribution = c.weight * c.matches;
    out.total += c.contribution;
    out.soft.push_back(c);
  }
  for (std::size_t k = 0; k < set.hard.size(); ++k) {
    const HardRow& row = set.hard[k];
    RowStatus s;
    s.index = static_cast<int>(k);
    s.origin = row.origin;
    s.source = row.source;
    s.sense = row.sense;
    s.rhs = row.rhs;
    s.achieved = row_activity(row, x);
    s.binding = s.achieved == row.rhs;
    out.hard.push_back(s);
  }
  return out;
}

Json to_json(const SolveResult& result, const DesignSpace& space, const CompiledConstraintSet& set,
             bool include_timing) {
  Json doc = Json::object();
  doc["status"] = status_name(result.status);
  Json per_rule = Json::array();
  if (result.status == SolveStatus::kOptimal && result.solution) {
    doc["tuple"] = tuple_to_json(space, solution_to_tuple(space, *result.solution));
    doc["objective"] = result.objective;
    for (const RuleContribution& c : explain(result, set).soft) {
      per_rule.push_back({{"index", c.index},
                          {"source", c.source},
                          {"weight", c.weight},
                          {"matches", c.matches},
                          {"contribution", c.contribution}});
    }
  } else {
    doc["tuple"] = Json::array();
    doc["objective"] = nullptr;
  }
  doc["per_rule"] = std::move(per_rule);
  Json stats = Json::object();
  stats["nodes"] = result.stats.nodes;
  if (include_timing) stats["elapsed_ms"] = result.stats.elapsed_ms;
  doc["stats"] = std::move(stats);
  return doc;
}

}  // namespace cods
