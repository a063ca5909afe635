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

#include "cods/llm/response.hpp"

#include <algorithm>
#include <cctype>

namespace cods::llm {

namespace {

std::string join_quoted(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "\"" : ", \"") + n + "\"";
  return out;
}

// Position one past the bracket matching text[start], or npos.
std::size_t matching_end(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{' || c == '[') ++depth;
    else if (c == '}' || c == ']') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

std::string lower_trimmed(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  std::string out = b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename Names>
std::optional<int> match_name(const Names& names, std::string_view wanted) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == wanted) return static_cast<int>(k);
  }
  std::optional<int> found;
  std::string key = lower_trimmed(wanted);
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (lower_trimmed(names[k]) == key) {
      if (found) return std::nullopt;
      found = static_cast<int>(k);
    }
  }
  return found;
}

class EntryParser {
 public:
  explicit EntryParser(const DesignSpace& space) : space_(space) {
    for (const auto& d : space.dimensions()) dimension_names_.push_back(d.name);
  }

  void parse_list(const Json& doc, const char* key, bool hard,
                  std::vector<SymbolicConstraint>& out) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    std::string path = std::string("/") + key;
    if (!it->is_array()) throw SchemaViolation(path, "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      auto c = parse_entry((*it)[k], path + "/" + std::to_string(k), hard);
      if (c) out.push_back(std::move(*c));
    }
  }

  const std::vector<std::string>& unknown() const { return unknown_; }

 private:
  std::optional<ElementRef> resolve(const std::string& dimension, const std::string& element) {
    auto i = match_name(dimension_names_, dimension);
    if (!i) {
      note_unknown(dimension);
      return std::nullopt;
    }
    auto j = match_name(space_.dimension(*i).elements, element);
    if (!j) {
      note_unknown(element);
      return std::nullopt;
    }
    return ElementRef{*i, *j};
  }

  void note_unknown(const std::string& name) {
    if (std::find(unknown_.begin(), unknown_.end(), name) == unknown_.end()) unknown_.push_back(name);
  }

  static std::string string_field(const Json& entry, const char* key, const std::string& path) {
    auto it = entry.find(key);
    if (it == entry.end() || !it->is_string()) {
      throw SchemaViolation(path + "/" + key, "expected a string");
    }
    return it->get<std::string>();
  }

  std::optional<SymbolicConstraint> parse_entry(const Json& entry, const std::string& path,
                                                bool hard) {
    if (!entry.is_object()) throw SchemaViolation(path, "expected an object");
    std::string kind_text = string_field(entry, "kind", path);
    auto kind = parse_kind(kind_text);
    if (!kind) throw SchemaViolation(path + "/kind", "unknown kind \"" + kind_text + "\"");
    if (is_soft(*kind) == hard) {
      throw SchemaViolation(path + "/kind", "\"" + kind_text + "\" does not belong in the " +
                                                (hard ? "hard" : "soft") + " list");
    }

    SymbolicConstraint c;
    c.kind = *kind;
    c.weight = hard ? 0.0 : 1.0;
    bool complete = true;
    if (auto cells = entry.find("cells"); cells != entry.end()) {
      if (!cells->is_array()) throw SchemaViolation(path + "/cells", "expected an array");
      for (std::size_t k = 0; k < cells->size(); ++k) {
        std::string cpath = path + "/cells/" + std::to_string(k);
        const Json& cell = (*cells)[k];
        if (!cell.is_object()) throw SchemaViolation(cpath, "expected an object");
        auto ref = resolve(string_field(cell, "dimension", cpath), string_field(cell, "element", cpath));
        if (ref) c.cells.push_back(*ref);
        else complete = false;
      }
    } else if (entry.contains("dimension")) {
      std::string dimension = string_field(entry, "dimension", path);
      auto elems = entry.find("elements");
      if (elems == entry.end()) elems = entry.find("element");
      if (elems == entry.end()) throw SchemaViolation(path + "/elements", "missing");
      std::vector<std::string> names;
      if (elems->is_string()) {
        names.push_back(elems->get<std::string>());
      } else if (elems->is_array()) {
        for (std::size_t k = 0; k < elems->size(); ++k) {
          if (!(*elems)[k].is_string()) {
            throw SchemaViolation(path + "/elements/" + std::to_string(k), "expected a string");
          }
          names.push_back((*elems)[k].get<std::string>());
        }
      } else {
        throw SchemaViolation(path + "/elements", "expected an array of strings");
      }
      for (const auto& name : names) {
        auto ref = resolve(dimension, name);
        if (ref) c.cells.push_back(*ref);
        else complete = false;
      }
    } else {
      throw SchemaViolation(path, "needs \"dimension\" + \"elements\" or \"cells\"");
    }

    if (auto w = entry.find("weight"); w != entry.end() && !w->is_null()) {
      if (!w->is_number()) throw SchemaViolation(path + "/weight", "expected a number");
      if (!hard) c.weight = w->get<double>();
    }
    if (auto r = entry.find("rationale"); r != entry.end()) {
      if (!r->is_string()) throw SchemaViolation(path + "/rationale", "expected a string");
      c.rationale = r->get<std::string>();
    }
    if (!complete) return std::nullopt;
    // Names repeated in one entry collapse to a single cell.
    std::vector<ElementRef> unique;
    for (const ElementRef& r : c.cells) {
      if (std::find(unique.begin(), unique.end(), r) == unique.end()) unique.push_back(r);
    }
    c.cells = std::move(unique);
    try {
      validate_constraint(space_, c);
    } catch (const Error& e) {
      throw SchemaViolation(path, e.what());
    }
    return c;
  }

  const DesignSpace& space_;
  std::vector<std::string> dimension_names_;
  std::vector<std::string> unknown_;
};

}  // namespace

UnknownElement::UnknownElement(std::vector<std::string> names)
    : ResponseError("unknown names: " + join_quoted(names)), names_(std::move(names)) {}

std::optional<std::string_view> extract_first_json(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    if (text[pos] != '{' && text[pos] != '[') continue;
    std::size_t end = matching_end(text, pos);
    if (end == std::string_view::npos) continue;
    std::string_view candidate = text.substr(pos, end - pos);
    if (nlohmann::json::accept(candidate)) return candidate;
  }
  return std::nullopt;
}

std::vector<SymbolicConstraint> parse_constraint_response(std::string_view text,
                                                          const DesignSpace& space) {
  auto json_text = extract_first_json(text);
  if (!json_text) throw NoJsonFound();
  Json doc = Json::parse(*json_text);
  if (!doc.is_object()) throw SchemaViolation("/", "expected an object with \"hard\" and \"soft\"");
  if (!doc.contains("hard") && !doc.contains("soft")) {
    throw SchemaViolation("/", "expected \"hard\" and/or \"soft\" lists");
  }
  EntryParser parser(space);
  std::vector<SymbolicConstraint> out;
  parser.parse_list(doc, "hard", true, out);
  parser.parse_list(doc, "soft", false, out);
  if (!parser.unknown().empty()) throw UnknownElement(parser.unknown());
  return out;
}

}  // namespace cods::llm
