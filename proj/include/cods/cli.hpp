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

// The `cods` command line: validate, solve, pipeline, vis and knit.

#ifndef CODS_CLI_HPP
#define CODS_CLI_HPP

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace cods::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kInvalidInput = 2,  // parse, validation, resolution and domain errors
  kInfeasible = 3,
  kBackendError = 4,
  kRetriesExhausted = 5,
  kResourceLimit = 6,
  kUsage = 64,
  kInternal = 70,  // anything not covered above
};

// Maps an exception escaping a command to its exit code.
int exit_code_for(const std::exception& e);

// args excludes the program name. Primary output goes to out (or --out),
// diagnostics and --timing lines to err. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cods::cli

#endif  // CODS_CLI_HPP
