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

// CSV ingestion and field type inference for the visualization domain.

#ifndef CODS_VIS_DATASET_HPP
#define CODS_VIS_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cods/json_util.hpp"

namespace cods::vis {

enum class FieldType { kCategorical, kNumerical, kTemporal };
std::string_view field_type_name(FieldType type);

struct Field {
  std::string name;
  FieldType type = FieldType::kCategorical;
};

struct DatasetSchema {
  std::vector<Field> fields;
  std::size_t row_count = 0;

  // -1 when absent.
  int index_of(std::string_view name) const;
  const Field* find(std::string_view name) const;
};

// Missing values are empty (or all-whitespace) CSV fields.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Dataset {
  DatasetSchema schema;
  Table table;  // numerical columns hold doubles, the rest strings
};

// Raw RFC-4180 records. Accepts LF or CRLF line ends and a leading UTF-8 BOM.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws ParseError on an unterminated quote, ValidationError on an empty
// document, ragged rows, or empty/duplicate header names.
CsvDocument parse_csv(std::string_view text);

struct SchemaOptions {
  bool iso_dates = true;    // YYYY-MM-DD, optionally followed by [T ]HH:MM[:SS]
  bool slash_ymd = true;    // YYYY/MM/DD
  bool slash_mdy = true;    // MM/DD/YYYY
};

// A sortable "YYYY-MM-DDTHH:MM:SS" key for a value matching an enabled
// pattern with a real calendar date.
std::optional<std::string> temporal_key(std::string_view value, const SchemaOptions& options = {});

// Whole-string finite decimal number, surrounding whitespace allowed.
std::optional<double> parse_number(std::string_view value);

// Numerical if every non-missing value is a number, else temporal if every
// non-missing value is a date, else categorical. A column with no values at
// all is categorical.
DatasetSchema infer_schema(const CsvDocument& csv, const SchemaOptions& options = {});
DatasetSchema infer_schema(std::string_view csv_text, const SchemaOptions& options = {});

Dataset load_dataset(std::string_view csv_text, const SchemaOptions& options = {});
Dataset load_dataset_file(const std::filesystem::path& path, const SchemaOptions& options = {});

// {"fields": [{"name", "type"}], "rows"}
Json to_json(const DatasetSchema& schema);
Json to_json(const Cell& cell);

}  // namespace cods::vis

#endif  // CODS_VIS_DATASET_HPP
