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

#ifndef CODS_JSON_UTIL_HPP
#define CODS_JSON_UTIL_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace cods {

// Insertion-ordered so that emitted documents have a canonical key order.
using Json = nlohmann::ordered_json;

// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Throws ParseError with the parser's message.
Json parse_json(std::string_view text, const std::string& what);

}  // namespace cods

#endif  // CODS_JSON_UTIL_HPP
