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

#include "cods/llm/pipeline.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "cods/llm/response.hpp"

namespace cods::llm {

namespace {

struct PromptOutcome {
  std::vector<TranscriptEntry> entries;
  std::vector<SymbolicConstraint> constraints;
};

// Rejects constraints touching cells the prompt did not offer.
void check_scope(const DesignSpace& space, const std::vector<SymbolicConstraint>& constraints,
                 const std::vector<std::set<int>>& offered) {
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    for (const ElementRef& r : constraints[k].cells) {
      if (!offered[r.dimension].count(r.element)) {
        throw SchemaViolation("/" + std::to_string(k),
                              "\"" + space.describe(r) + "\" is not among the options offered");
      }
    }
  }
}

PromptOutcome ask(const DesignSpace& space, ChatBackend& backend, const PipelineConfig& config,
                  const std::string& scope, const std::string& prompt,
                  const std::vector<std::set<int>>& offered) {
  PromptOutcome out;
  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    TranscriptEntry entry;
    entry.scope = scope;
    entry.attempt = attempt;
    entry.prompt = attempt == 0 ? prompt : prompt + correction_suffix(config.templates, last_error);
    entry.response = backend.complete(entry.prompt);
    try {
      auto constraints = parse_constraint_response(entry.response, space);
      check_scope(space, constraints, offered);
      entry.ok = true;
      entry.constraints = static_cast<int>(constraints.size());
      out.entries.push_back(std::move(entry));
      out.constraints = std::move(constraints);
      return out;
    } catch (const ResponseError& e) {
      last_error = e.what();
      entry.error = last_error;
      out.entries.push_back(std::move(entry));
    }
  }
  throw RetriesExhausted(scope, config.max_retries + 1, last_error);
}

int min_dimension(const SymbolicConstraint& c) {
  int m = c.cells.empty() ? 0 : c.cells.front().dimension;
  for (const ElementRef& r : c.cells) m = std::min(m, r.dimension);
  return m;
}

}  // namespace

int GenerationRecord::retries() const {
  int n = 0;
  for (const auto& e : transcript) n += e.attempt > 0 ? 1 : 0;
  return n;
}

std::vector<SymbolicConstraint> GenerationRecord::constraints() const {
  std::vector<SymbolicConstraint> all = hard;
  all.insert(all.end(), soft.begin(), soft.end());
  return all;
}

std::vector<std::vector<int>> survivors_of(const DesignSpace& space,
                                           const std::vector<SymbolicConstraint>& intra) {
  std::vector<std::set<int>> named(space.num_dimensions());
  for (const SymbolicConstraint& c : intra) {
    if (c.kind != ConstraintKind::kRequireOneOf && c.kind != ConstraintKind::kPrefer) continue;
    int d = c.cells.front().dimension;
    bool inside = std::all_of(c.cells.begin(), c.cells.end(),
                              [d](const ElementRef& r) { return r.dimension == d; });
    if (!inside) continue;
    for (const ElementRef& r : c.cells) named[d].insert(r.element);
  }
  std::vector<std::vector<int>> out(space.num_dimensions());
  for (int i = 0; i < space.num_dimensions(); ++i) {
    if (named[i].empty()) {
      for (int j = 0; j < space.dimension(i).size(); ++j) out[i].push_back(j);
    } else {
      out[i].assign(named[i].begin(), named[i].end());
    }
  }
  return out;
}

void canonicalize(std::vector<SymbolicConstraint>& constraints) {
  std::stable_sort(constraints.begin(), constraints.end(),
                   [](const SymbolicConstraint& a, const SymbolicConstraint& b) {
                     int da = min_dimension(a), db = min_dimension(b);
                     if (da != db) return da < db;
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.cells < b.cells;
                   });
  std::vector<SymbolicConstraint> unique;
  for (auto& c : constraints) {
    bool seen = std::any_of(unique.begin(), unique.end(), [&c](const SymbolicConstraint& u) {
      return u.kind == c.kind && u.cells == c.cells && u.weight == c.weight;
    });
    if (!seen) unique.push_back(std::move(c));
  }
  constraints = std::move(unique);
}

GenerationRecord run_pipeline(const DesignSpace& space, const RequirementInput& requirement,
                              ChatBackend& backend, const PipelineConfig& config) {
  const int n = space.num_dimensions();
  GenerationRecord record;

  auto intra = [&](int i) {
    std::vector<std::set<int>> offered(n);
    for (int j = 0; j < space.dimension(i).size(); ++j) offered[i].insert(j);
    std::string prompt =
        build_dimension_prompt(space, requirement, i, config.examples, config.templates).render();
    return ask(space, backend, config, space.dimension(i).name, prompt, offered);
  };

  std::vector<PromptOutcome> outcomes;
  if (config.parallel && n > 1) {
    std::vector<std::future<PromptOutcome>> futures;
    for (int i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, intra, i));
    // get() in dimension order, so the first failing dimension is reported.
    for (auto& f : futures) f.wait();
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (int i = 0; i < n; ++i) outcomes.push_back(intra(i));
  }

  std::vector<SymbolicConstraint> merged;
  for (auto& o : outcomes) {
    for (auto& e : o.entries) record.transcript.push_back(std::move(e));
    merged.insert(merged.end(), o.constraints.begin(), o.constraints.end());
  }
  record.survivors = survivors_of(space, merged);

  if (n < 2) {
    record.cross_skipped = true;
  } else {
    std::vector<std::set<int>> offered(n);
    for (int i = 0; i < n; ++i) offered[i].insert(record.survivors[i].begin(), record.survivors[i].end());
    std::string prompt = build_cross_prompt(space, requirement, record.survivors, config.examples,
                                            config.templates)
                             .render();
    PromptOutcome cross = ask(space, backend, config, "cross", prompt, offered);
    for (auto& e : cross.entries) record.transcript.push_back(std::move(e));
    merged.insert(merged.end(), cross.constraints.begin(), cross.constraints.end());
  }

  canonicalize(merged);
  for (auto& c : merged) (is_soft(c.kind) ? record.soft : record.hard).push_back(std::move(c));
  return record;
}

Json to_json(const TranscriptEntry& entry) {
  Json j = Json::object();
  j["scope"] = entry.scope;
  j["attempt"] = entry.attempt;
  j["prompt"] = entry.prompt;
  j["response"] = entry.response;
  j["ok"] = entry.ok;
  if (entry.ok) j["constraints"] = entry.constraints;
  else j["error"] = entry.error;
  return j;
}

Json to_json(const GenerationRecord& record, const DesignSpace& space,
             const RequirementInput& requirement) {
  Json j = Json::object();
  j["requirement"] = requirement.text;
  j["hard"] = to_json(record.hard, space);
  j["soft"] = to_json(record.soft, space);
  Json survivors = Json::object();
  for (int i = 0; i < space.num_dimensions(); ++i) {
    Json names = Json::array();
    for (int e : record.survivors.at(i)) names.push_back(space.dimension(i).elements[e]);
    survivors[space.dimension(i).name] = std::move(names);
  }
  j["survivors"] = std::move(survivors);
  j["cross_skipped"] = record.cross_skipped;
  j["prompts"] = record.transcript.size();
  j["retries"] = record.retries();
  return j;
}

void write_transcript(std::ostream& out, const GenerationRecord& record) {
  for (const auto& e : record.transcript) out << to_json(e).dump() << "\n";
}

}  // namespace cods::llm
