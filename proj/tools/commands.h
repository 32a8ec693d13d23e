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

#ifndef DPBINS_TOOLS_COMMANDS_H_
#define DPBINS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace dpbins::cli {

// One leaf subcommand. Options bind to members during registration; Execute
// merges the --config file and runs.
class Command {
 public:
  explicit Command(CLI::App* app);
  virtual ~Command() = default;
  Command(const Command&) = delete;
  Command& operator=(const Command&) = delete;

  CLI::App* app() const { return app_; }
  // "generate", "bounds tau", ...
  std::string path() const;
  void Execute();

 protected:
  virtual void Run() = 0;

  // A sweep list that may be given empty ("--epsilons" with no values).
  template <typename T>
  CLI::Option* AddList(const std::string& flag, std::vector<T>& values,
                       const std::string& help);

  CLI::App* app_;
  std::uint64_t seed_ = 0;
  std::string config_path_;

 private:
  struct ListOption {
    CLI::Option* option;
    std::string default_text;
    std::function<void()> clear;
  };
  std::vector<ListOption> lists_;
};

std::vector<std::unique_ptr<Command>> RegisterCommands(CLI::App& app);

}  // namespace dpbins::cli

#endif  // DPBINS_TOOLS_COMMANDS_H_
