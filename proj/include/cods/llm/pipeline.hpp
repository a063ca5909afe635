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

// N + 1 prompt constraint generation: one prompt per dimension, then one
// prompt over the elements that survived.

#ifndef CODS_LLM_PIPELINE_HPP
#define CODS_LLM_PIPELINE_HPP

#include <ostream>
#include <string>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/llm/backend.hpp"
#include "cods/llm/prompt.hpp"

namespace cods::llm {

// The retry budget for one prompt ran out. what() carries the last parse
// error.
class RetriesExhausted : public Error {
 public:
  RetriesExhausted(std::string scope, int attempts, const std::string& last_error)
      : Error("no usable response for " + scope + " after " + std::to_string(attempts) +
              " attempt" + (attempts == 1 ? "" : "s") + ": " + last_error),
        scope_(std::move(scope)),
        last_error_(last_error) {}
  const std::string& scope() const { return scope_; }
  const std::string& last_error() const { return last_error_; }

 private:
  std::string scope_;
  std::string last_error_;
};

struct PipelineConfig {
  int max_retries = 1;
  bool parallel = true;  // issue the per-dimension prompts concurrently
  PromptTemplates templates = PromptTemplates::defaults();
  std::vector<ReferralExample> examples;
};

// One completion call. A prompt that needed r retries contributes r + 1
// entries; all but the last carry the parse error.
struct TranscriptEntry {
  std::string scope;  // dimension name, or "cross"
  int attempt = 0;    // 0 for the first try
  std::string prompt;
  std::string response;
  bool ok = false;
  std::string error;
  int constraints = 0;
};

struct GenerationRecord {
  std::vector<TranscriptEntry> transcript;
  std::vector<SymbolicConstraint> hard;
  std::vector<SymbolicConstraint> soft;
  std::vector<std::vector<int>> survivors;
  bool cross_skipped = false;

  int retries() const;
  // hard followed by soft.
  std::vector<SymbolicConstraint> constraints() const;
};

// Elements of dimension i named by a require_one_of or prefer constraint
// wholly inside that dimension; every element when none is.
std::vector<std::vector<int>> survivors_of(const DesignSpace& space,
                                           const std::vector<SymbolicConstraint>& intra);

// Canonical merge order: lowest dimension touched, then kind, then cells.
// Exact duplicates are dropped.
void canonicalize(std::vector<SymbolicConstraint>& constraints);

// Throws BackendUnavailable from the backend and RetriesExhausted.
GenerationRecord run_pipeline(const DesignSpace& space, const RequirementInput& requirement,
                              ChatBackend& backend, const PipelineConfig& config = {});

Json to_json(const TranscriptEntry& entry);
// {"requirement", "hard", "soft", "survivors", "cross_skipped", "retries",
//  "prompts"}. Transcript bodies are written separately.
Json to_json(const GenerationRecord& record, const DesignSpace& space,
             const RequirementInput& requirement);
// One JSON object per line.
void write_transcript(std::ostream& out, const GenerationRecord& record);

}  // namespace cods::llm

#endif  // CODS_LLM_PIPELINE_HPP
