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

#include "cods/vis/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "cods/error.hpp"

namespace cods::vis {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool blank(std::string_view s) { return trim(s).empty(); }

// Parses exactly `width` digits at s[pos].
std::optional<int> digits(std::string_view s, std::size_t pos, std::size_t width) {
  if (pos + width > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

bool valid_date(int y, int m, int d) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12 || d < 1) return false;
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return d <= kDays[m - 1] + (m == 2 && leap ? 1 : 0);
}

std::string date_key(int y, int m, int d, int hh = 0, int mm = 0, int ss = 0) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", y, m, d, hh, mm, ss);
  return buf;
}

std::optional<std::string> iso_key(std::string_view s) {
  auto y = digits(s, 0, 4), m = digits(s, 5, 2), d = digits(s, 8, 2);
  if (!y || !m || !d || s[4] != '-' || s[7] != '-' || !valid_date(*y, *m, *d)) return std::nullopt;
  if (s.size() == 10) return date_key(*y, *m, *d);
  if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
  auto hh = digits(s, 11, 2), mm = digits(s, 14, 2);
  if (!hh || !mm || s.size() < 16 || s[13] != ':' || *hh > 23 || *mm > 59) return std::nullopt;
  int ss = 0;
  if (s.size() == 19) {
    auto sec = digits(s, 17, 2);
    if (!sec || s[16] != ':' || *sec > 59) return std::nullopt;
    ss = *sec;
  } else if (s.size() != 16) {
    return std::nullopt;
  }
  return date_key(*y, *m, *d, *hh, *mm, ss);
}

}  // namespace

std::string_view field_type_name(FieldType type) {
  switch (type) {
    case FieldType::kCategorical: return "categorical";
    case FieldType::kNumerical: return "numerical";
    case FieldType::kTemporal: return "temporal";
  }
  return "unknown";
}

int DatasetSchema::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (fields[k].name == name) return static_cast<int>(k);
  }
  return -1;
}

const Field* DatasetSchema::find(std::string_view name) const {
  int k = index_of(name);
  return k < 0 ? nullptr : &fields[k];
}

CsvDocument parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<int> lines;  // starting line of each record
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  bool record_quoted = false;
  int line = 1;
  int record_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    // A record that is one empty unquoted field is a blank line.
    if (!(record.size() == 1 && record[0].empty() && !record_quoted)) {
      records.push_back(std::move(record));
      lines.push_back(record_line);
    }
    record.clear();
    record_quoted = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      record_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      record_line = ++line;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("CSV: unterminated quoted field starting on line " + std::to_string(record_line));
  if (!field.empty() || !record.empty() || was_quoted) end_record();

  if (records.empty()) throw ValidationError("/", "CSV document is empty");
  CsvDocument doc;
  doc.header = std::move(records.front());
  std::set<std::string> seen;
  for (std::size_t k = 0; k < doc.header.size(); ++k) {
    std::string name(trim(doc.header[k]));
    if (name.empty()) throw ValidationError("/header/" + std::to_string(k), "empty column name");
    if (!seen.insert(name).second) {
      throw ValidationError("/header/" + std::to_string(k), "duplicate column name \"" + name + "\"");
    }
    doc.header[k] = name;
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != doc.header.size()) {
      throw ValidationError("/line/" + std::to_string(lines[r]),
                            "expected " + std::to_string(doc.header.size()) + " fields, found " +
                                std::to_string(records[r].size()));
    }
    doc.rows.push_back(std::move(records[r]));
  }
  return doc;
}

std::optional<std::string> temporal_key(std::string_view value, const SchemaOptions& options) {
  std::string_view s = trim(value);
  if (options.iso_dates && s.size() >= 10 && s[4] == '-') {
    if (auto k = iso_key(s)) return k;
  }
  if (s.size() != 10) return std::nullopt;
  if (options.slash_ymd && s[4] == '/' && s[7] == '/') {
    auto y = digits(s, 0, 4), m = digits(s, 5, 2), d = digits(s, 8, 2);
    if (y && m && d && valid_date(*y, *m, *d)) return date_key(*y, *m, *d);
  }
  if (options.slash_mdy && s[2] == '/' && s[5] == '/') {
    auto m = digits(s, 0, 2), d = digits(s, 3, 2), y = digits(s, 6, 4);
    if (y && m && d && valid_date(*y, *m, *d)) return date_key(*y, *m, *d);
  }
  return std::nullopt;
}

std::optional<double> parse_number(std::string_view value) {
  std::string_view s = trim(value);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

DatasetSchema infer_schema(const CsvDocument& csv, const SchemaOptions& options) {
  DatasetSchema schema;
  schema.row_count = csv.rows.size();
  for (std::size_t k = 0; k < csv.header.size(); ++k) {
    bool any = false, numeric = true, temporal = true;
    for (const auto& row : csv.rows) {
      const std::string& v = row[k];
      if (blank(v)) continue;
      any = true;
      if (numeric && !parse_number(v)) numeric = false;
      if (temporal && !temporal_key(v, options)) temporal = false;
      if (!numeric && !temporal) break;
    }
    FieldType type = FieldType::kCategorical;
    if (any && numeric) type = FieldType::kNumerical;
    else if (any && temporal) type = FieldType::kTemporal;
    schema.fields.push_back({csv.header[k], type});
  }
  return schema;
}

DatasetSchema infer_schema(std::string_view csv_text, const SchemaOptions& options) {
  return infer_schema(parse_csv(csv_text), options);
}

Dataset load_dataset(std::string_view csv_text, const SchemaOptions& options) {
  CsvDocument csv = parse_csv(csv_text);
  Dataset data;
  data.schema = infer_schema(csv, options);
  data.table.columns = csv.header;
  for (auto& raw : csv.rows) {
    std::vector<Cell> row;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (blank(raw[k])) row.emplace_back(std::monostate{});
      else if (data.schema.fields[k].type == FieldType::kNumerical) row.emplace_back(*parse_number(raw[k]));
      else row.emplace_back(std::move(raw[k]));
    }
    data.table.rows.push_back(std::move(row));
  }
  return data;
}

Dataset load_dataset_file(const std::filesystem::path& path, const SchemaOptions& options) {
  return load_dataset(read_file(path), options);
}

Json to_json(const DatasetSchema& schema) {
  Json fields = Json::array();
  for (const Field& f : schema.fields) {
    fields.push_back({{"name", f.name}, {"type", field_type_name(f.type)}});
  }
  return {{"fields", fields}, {"rows", schema.row_count}};
}

Json to_json(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return *d;
  if (const std::string* s = std::get_if<std::string>(&cell)) return *s;
  return nullptr;
}

}  // namespace cods::vis
