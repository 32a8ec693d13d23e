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

#include "json_config.h"

#include <cmath>
#include <fstream>
#include <vector>

namespace dpbins::cli {
namespace {

std::string LongName(const CLI::Option& opt) {
  const auto& names = opt.get_lnames();
  return names.empty() ? std::string() : names.front();
}

std::string ScalarToString(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_float()) {
    // 1e5 in JSON must still parse as an integer option.
    const double v = value.get<double>();
    if (v == std::floor(v) && std::abs(v) < 9007199254740992.0) {
      return std::to_string(static_cast<long long>(v));
    }
  }
  if (value.is_number()) return value.dump();
  throw UsageError("config values must be strings, numbers, booleans or "
                   "arrays of those");
}

// "[a,b,c]" (CLI11's rendering of a vector default) to ["a", "b", "c"].
nlohmann::json SplitDefaultList(std::string text) {
  nlohmann::json out = nlohmann::json::array();
  if (!text.empty() && text.front() == '[') text = text.substr(1);
  if (!text.empty() && text.back() == ']') text.pop_back();
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(CLI::detail::trim_copy(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

nlohmann::json LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json config = nlohmann::json::parse(in, nullptr, false);
  if (config.is_discarded() || !config.is_object()) {
    throw UsageError(path + ": config must be a JSON object");
  }
  return config;
}

void ApplyConfig(CLI::App& app, const nlohmann::json& config) {
  for (const auto& [key, value] : config.items()) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config" || key == "help") {
      throw UsageError("unknown config key '" + key + "' for " +
                       app.get_name());
    }
    if (opt->count() > 0) continue;
    std::vector<std::string> results;
    if (value.is_array()) {
      for (const auto& v : value) results.push_back(ScalarToString(v));
      // A bare flag with no values parses as one empty result.
      if (results.empty()) results.emplace_back();
    } else {
      results.push_back(ScalarToString(value));
    }
    try {
      opt->add_result(results);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

nlohmann::json EchoConfig(const CLI::App& app) {
  nlohmann::json echo = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = LongName(*opt);
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (results.size() == 1 && results[0].empty()) {
        echo[name] = nlohmann::json::array();
      } else if (opt->get_items_expected_max() > 1) {
        echo[name] = results;
      } else {
        echo[name] = results.back();
      }
    } else if (opt->get_items_expected_max() > 1) {
      echo[name] = SplitDefaultList(opt->get_default_str());
    } else {
      echo[name] = opt->get_default_str();
    }
  }
  return echo;
}

}  // namespace dpbins::cli
