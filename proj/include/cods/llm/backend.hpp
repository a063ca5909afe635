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

#ifndef CODS_LLM_BACKEND_HPP
#define CODS_LLM_BACKEND_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "cods/error.hpp"
#include "cods/json_util.hpp"

namespace cods::llm {

// Transport or credential failure. Not retried by the pipeline.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

// complete() may be called from several threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string name() const = 0;
};

struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  double temperature = 0.0;
  double timeout_seconds = 60.0;
  int max_retries = 1;
  std::string api_key_env = "CODS_API_KEY";
  std::filesystem::path templates;  // optional PromptTemplates override file
};

// Reads the "llm" object of a config document. Unknown keys are rejected.
LlmConfig load_llm_config(const Json& doc);
LlmConfig load_llm_config_file(const std::filesystem::path& path);

// Offline backend driven by a rules document:
//
//   {"rules": [{"keywords": ["girl"], "kind": "require_one_of",
//               "dimension": "head", "elements": [...],
//               "weight": 1, "rationale": "..."}],
//    "malformed_once": ["head", "cross"]}
//
// A rule fires when any keyword occurs in the prompt's requirement line
// (case-insensitive; "*" always fires). Cells may instead be given as
// "cells": [{"dimension", "element"}]. Single-dimension rules answer the
// prompt for that dimension, multi-dimension rules answer the cross prompt,
// and only elements listed in the prompt are used. Scopes named in
// "malformed_once" answer with prose until the prompt carries a correction.
// The response is a function of the prompt text alone.
class StubBackend : public ChatBackend {
 public:
  struct Rule {
    std::vector<std::string> keywords;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> cells;
    double weight = 1.0;
    bool has_weight = false;
    std::string rationale;
  };

  StubBackend() = default;
  explicit StubBackend(const Json& rules);
  static StubBackend from_file(const std::filesystem::path& path);

  std::string complete(const std::string& prompt) override;
  std::string name() const override { return "stub"; }

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
  std::vector<std::string> malformed_once_;
};

// Chat-completions client. The key is read from the environment variable
// named by config.api_key_env when the backend is constructed; a missing key
// throws BackendUnavailable.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(LlmConfig config);
  HttpBackend(LlmConfig config, std::string api_key);

  std::string complete(const std::string& prompt) override;
  std::string name() const override { return "live"; }

 private:
  LlmConfig config_;
  std::string api_key_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace cods::llm

#endif  // CODS_LLM_BACKEND_HPP
