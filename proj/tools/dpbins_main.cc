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

// dpbins command-line tool. Exit codes: 0 success, 1 usage error, 2 data
// error.

#include <exception>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.h"
#include "dpbins/csv_io.h"
#include "json_config.h"

int main(int argc, char** argv) {
  CLI::App app{"Differentially private synthetic data from noisy bin counts"};
  app.name("dpbins");
  app.require_subcommand(1);
  app.set_version_flag("--version", DPBINS_VERSION);
  const auto commands = dpbins::cli::RegisterCommands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (const auto& command : commands) {
      if (command->app()->parsed()) {
        command->Execute();
        return 0;
      }
    }
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const dpbins::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const dpbins::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
