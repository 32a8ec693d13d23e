// Copyright 2026 The dpbins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON run configuration for the CLI. A config file is a flat object whose
// keys are long option names of the chosen subcommand; explicit flags win.

#ifndef DPBINS_TOOLS_JSON_CONFIG_H_
#define DPBINS_TOOLS_JSON_CONFIG_H_

#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace dpbins::cli {

// Bad invocation: unknown config keys, missing required values, bad values.
// Maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json LoadConfigFile(const std::string& path);

// Fills every option of `app` that was not given on the command line from
// the matching key of `config`. Throws UsageError on keys `app` lacks.
void ApplyConfig(CLI::App& app, const nlohmann::json& config);

// Effective option values of `app` keyed by long name, as strings. Feeding
// the result back through ApplyConfig reproduces the run.
nlohmann::json EchoConfig(const CLI::App& app);

}  // namespace dpbins::cli

#endif  // DPBINS_TOOLS_JSON_CONFIG_H_
