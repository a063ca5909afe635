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

#ifndef CODS_LLM_RESPONSE_HPP
#define CODS_LLM_RESPONSE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cods/constraints.hpp"
#include "cods/error.hpp"

namespace cods::llm {

// A model response that cannot be turned into constraints. All subclasses
// are worth a corrective re-prompt.
class ResponseError : public Error {
 public:
  using Error::Error;
};

class NoJsonFound : public ResponseError {
 public:
  NoJsonFound() : ResponseError("no JSON value found in the response") {}
};

class SchemaViolation : public ResponseError {
 public:
  SchemaViolation(std::string path, const std::string& what)
      : ResponseError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Every dimension or element name the response used that the space lacks.
class UnknownElement : public ResponseError {
 public:
  explicit UnknownElement(std::vector<std::string> names);
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// The first complete, parseable JSON object or array in text. Surrounding
// prose and markdown code fences are skipped.
std::optional<std::string_view> extract_first_json(std::string_view text);

// Parses a {"hard": [...], "soft": [...]} response. Hard entries take kinds
// require_one_of | forbid | together | exclusive, soft entries prefer |
// avoid. Each entry names cells either as "dimension" + "elements" or as a
// "cells" list. Names are matched exactly, falling back to a unique
// case-insensitive match. Missing soft weights default to 1.
std::vector<SymbolicConstraint> parse_constraint_response(std::string_view text,
                                                          const DesignSpace& space);

}  // namespace cods::llm

#endif  // CODS_LLM_RESPONSE_HPP
