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
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cods/constraints.hpp"
#include "cods/llm/backend.hpp"

namespace cods::llm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Decodes the JSON string literal that starts at s[pos].
std::optional<std::string> quoted_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || s[pos] != '"') return std::nullopt;
  for (std::size_t i = pos + 1; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      try {
        return Json::parse(s.substr(pos, i - pos + 1)).get<std::string>();
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

// The parts of a rendered prompt the stub reacts to.
struct PromptView {
  std::string requirement;
  bool cross = false;
  bool corrected = false;
  std::vector<std::string> dimensions;
  std::map<std::string, std::set<std::string>> elements;
};

PromptView read_prompt(const std::string& prompt) {
  PromptView view;
  std::istringstream in(prompt);
  std::string line;
  std::string section;
  std::string current;
  bool have_requirement = false;
  while (std::getline(in, line)) {
    if (starts_with(line, "## ")) {
      section = line.substr(3);
      if (section == "Correction") view.corrected = true;
      continue;
    }
    if (section == "Task Briefing" && !have_requirement && starts_with(line, "User requirement: ")) {
      view.requirement = line.substr(18);
      have_requirement = true;
    } else if (section == "Design Space Description") {
      if (starts_with(line, "Dimension ")) {
        if (auto name = quoted_at(line, 10)) {
          current = *name;
          view.dimensions.push_back(current);
          view.elements[current];
        }
      } else if (starts_with(line, "  * ") && !current.empty()) {
        if (auto name = quoted_at(line, 4)) view.elements[current].insert(*name);
      }
    } else if (section == "Constraint Reasoning" && line == "Scope: cross-dimensional") {
      view.cross = true;
    }
  }
  return view;
}

std::vector<std::string> string_list(const Json& value, const std::string& path) {
  if (!value.is_array()) throw ValidationError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_string()) throw ValidationError(path + "/" + std::to_string(k), "expected a string");
    out.push_back(value[k].get<std::string>());
  }
  return out;
}

StubBackend::Rule parse_rule(const Json& item, const std::string& path) {
  if (!item.is_object()) throw ValidationError(path, "expected an object");
  StubBackend::Rule rule;
  if (!item.contains("keywords")) throw ValidationError(path + "/keywords", "missing");
  rule.keywords = string_list(item["keywords"], path + "/keywords");
  if (!item.contains("kind") || !item["kind"].is_string()) {
    throw ValidationError(path + "/kind", "expected a string");
  }
  rule.kind = item["kind"].get<std::string>();
  if (!parse_kind(rule.kind)) throw ValidationError(path + "/kind", "unknown kind \"" + rule.kind + "\"");
  if (item.contains("cells")) {
    const Json& cells = item["cells"];
    if (!cells.is_array()) throw ValidationError(path + "/cells", "expected an array");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const Json& c = cells[k];
      std::string cpath = path + "/cells/" + std::to_string(k);
      if (!c.is_object() || !c.contains("dimension") || !c["dimension"].is_string() ||
          !c.contains("element") || !c["element"].is_string()) {
        throw ValidationError(cpath, "expected {\"dimension\": string, \"element\": string}");
      }
      rule.cells.emplace_back(c["dimension"].get<std::string>(), c["element"].get<std::string>());
    }
  } else if (item.contains("dimension") && item["dimension"].is_string() && item.contains("elements")) {
    std::string dim = item["dimension"].get<std::string>();
    for (auto& e : string_list(item["elements"], path + "/elements")) rule.cells.emplace_back(dim, e);
  } else {
    throw ValidationError(path, "needs \"dimension\" + \"elements\" or \"cells\"");
  }
  if (rule.cells.empty()) throw ValidationError(path, "rule names no cells");
  if (item.contains("weight")) {
    if (!item["weight"].is_number()) throw ValidationError(path + "/weight", "expected a number");
    rule.weight = item["weight"].get<double>();
    rule.has_weight = true;
  }
  if (item.contains("rationale")) {
    if (!item["rationale"].is_string()) throw ValidationError(path + "/rationale", "expected a string");
    rule.rationale = item["rationale"].get<std::string>();
  }
  return rule;
}

bool fires(const StubBackend::Rule& rule, const std::string& requirement) {
  std::string req = lower(requirement);
  for (const auto& k : rule.keywords) {
    if (k == "*" || (!k.empty() && req.find(lower(k)) != std::string::npos)) return true;
  }
  return false;
}

}  // namespace

StubBackend::StubBackend(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("/", "stub rules must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "rules") {
      if (!value.is_array()) throw ValidationError("/rules", "expected an array");
      for (std::size_t k = 0; k < value.size(); ++k) {
        rules_.push_back(parse_rule(value[k], "/rules/" + std::to_string(k)));
      }
    } else if (key == "malformed_once") {
      malformed_once_ = string_list(value, "/malformed_once");
    } else if (key != "description") {
      throw ValidationError("/" + key, "unknown stub rules field");
    }
  }
}

StubBackend StubBackend::from_file(const std::filesystem::path& path) {
  return StubBackend(parse_json(read_file(path), "stub rules"));
}

std::string StubBackend::complete(const std::string& prompt) {
  PromptView view = read_prompt(prompt);
  std::string scope = view.cross ? "cross" : (view.dimensions.empty() ? "" : view.dimensions.front());
  if (!view.corrected &&
      std::find(malformed_once_.begin(), malformed_once_.end(), scope) != malformed_once_.end()) {
    return "Let me think about which options suit this requirement before I answer.";
  }

  Json hard = Json::array();
  Json soft = Json::array();
  for (const Rule& rule : rules_) {
    if (!fires(rule, view.requirement)) continue;
    std::set<std::string> dims;
    bool listed = true;
    for (const auto& [d, e] : rule.cells) {
      dims.insert(d);
      auto it = view.elements.find(d);
      if (it == view.elements.end() || !it->second.count(e)) listed = false;
    }
    if (!listed || (view.cross ? dims.size() < 2 : dims.size() != 1)) continue;

    Json entry = Json::object();
    entry["kind"] = rule.kind;
    if (view.cross) {
      Json cells = Json::array();
      for (const auto& [d, e] : rule.cells) cells.push_back({{"dimension", d}, {"element", e}});
      entry["cells"] = std::move(cells);
    } else {
      entry["dimension"] = rule.cells.front().first;
      Json elements = Json::array();
      for (const auto& cell : rule.cells) elements.push_back(cell.second);
      entry["elements"] = std::move(elements);
    }
    bool soft_kind = is_soft(*parse_kind(rule.kind));
    if (soft_kind && rule.has_weight) entry["weight"] = rule.weight;
    if (!rule.rationale.empty()) entry["rationale"] = rule.rationale;
    (soft_kind ? soft : hard).push_back(std::move(entry));
  }
  Json doc = Json::object();
  doc["hard"] = std::move(hard);
  doc["soft"] = std::move(soft);
  return "```json\n" + doc.dump(2) + "\n```\n";
}

}  // namespace cods::llm
