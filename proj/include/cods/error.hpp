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

#ifndef CODS_ERROR_HPP
#define CODS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cods {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document could not be read as JSON / CSV at all.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A structurally readable document violates a type invariant. `path` is a
// JSON-pointer-like location of the offending value.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A symbolic reference (dimension / element name or index) does not resolve.
class ResolveError : public Error {
 public:
  ResolveError(std::vector<std::string> names, const std::string& what)
      : Error(what), names_(std::move(names)) {}
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// Matrix shapes disagree with the design space they are used against.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A configured search or enumeration cap was hit before completion.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cods

#endif  // CODS_ERROR_HPP
