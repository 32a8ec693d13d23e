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

#include "dpbins/bounds.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace dpbins {
namespace {

bool ValidCommon(BoundReport& report, double n, double epsilon, double delta) {
  if (!(n > 0.0) || !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    report.explanation = "need n > 0, epsilon > 0 and 0 < delta < 1";
    return false;
  }
  return true;
}

}  // namespace

double rounding_error_bound(double w, std::size_t d) {
  return w * std::sqrt(static_cast<double>(d)) / (2.0 * std::sqrt(std::numbers::e));
}

BoundReport worst_case_bound(double R, double w, std::size_t d, double n,
                             double epsilon, double delta) {
  BoundReport r;
  r.name = "worst-case";
  r.inputs = {{"R", R},   {"w", w},       {"d", static_cast<double>(d)},
              {"n", n},   {"epsilon", epsilon}, {"delta", delta}};
  if (!ValidCommon(r, n, epsilon, delta)) return r;
  if (!(R > 0.0) || !(w > 0.0) || d == 0) {
    r.explanation = "need R > 0, w > 0 and d >= 1";
    return r;
  }
  const double log_inv_delta = std::log(1.0 / delta);
  const double log_j = static_cast<double>(d) * std::log(R / w);
  const double capacity = epsilon * n / (4.0 * log_inv_delta);
  if (!(log_j < std::log(capacity))) {
    r.explanation = "(R/w)^d must be below eps n / (4 ln(1/delta))";
    r.terms = {{"log_J", log_j}, {"log_capacity", std::log(capacity)}};
    return r;
  }
  const double j = std::exp(log_j);
  const double noise = 2.0 / (capacity / j - 1.0);
  const double rounding = w / 2.0 * std::sqrt(d / std::numbers::e);
  r.terms = {{"J", j}, {"noise", noise}, {"rounding", rounding}};
  r.value = noise + rounding;
  r.preconditions_met = true;
  r.explanation = "preconditions met";
  return r;
}

BoundReport beyond_worst_case_bound(double n, double m, double M,
                                    double epsilon, double delta, double w,
                                    std::size_t d) {
  BoundReport r;
  r.name = "beyond-worst-case";
  r.inputs = {{"n", n},           {"m", m},         {"M", M},
              {"epsilon", epsilon}, {"delta", delta}, {"w", w},
              {"d", static_cast<double>(d)}};
  if (!ValidCommon(r, n, epsilon, delta)) return r;
  if (m < 0.0 || M < 0.0 || !(w > 0.0) || d == 0) {
    r.explanation = "need m, M >= 0, w > 0 and d >= 1";
    return r;
  }
  const double log_inv_delta = std::log(1.0 / delta);
  const double denominator = epsilon * n - epsilon * m - 4.0 * M * log_inv_delta;
  if (!(denominator > 0.0)) {
    r.explanation = "eps n - eps m - 4 M ln(1/delta) must be positive";
    r.terms = {{"denominator", denominator}};
    return r;
  }
  const double noise = (epsilon * m + 8.0 * M * log_inv_delta) / denominator;
  const double filtered = m / n;
  const double rounding = rounding_error_bound(w, d);
  r.terms = {{"noise", noise}, {"filtered", filtered}, {"rounding", rounding}};
  r.value = noise + filtered + rounding;
  r.preconditions_met = true;
  r.explanation = "preconditions met";
  r.notes.push_back(
      "also assumes (R/w)^d <= 1/delta and t = 8 ln(1/delta)/eps; R is not an "
      "input here");
  return r;
}

BoundReport gaussian_bound(double n, std::size_t d, double data_sigma,
                           double w, double epsilon, double delta) {
  BoundReport r;
  r.name = "gaussian";
  const double dd = static_cast<double>(d);
  r.inputs = {{"n", n}, {"d", dd},         {"sigma", data_sigma},
              {"w", w}, {"epsilon", epsilon}, {"delta", delta}};
  if (!ValidCommon(r, n, epsilon, delta)) return r;
  if (!(data_sigma > 0.0) || !(w > 0.0) || d == 0 || !(n > 1.0)) {
    r.explanation = "need sigma > 0, w > 0, d >= 1 and n > 1";
    return r;
  }
  const double log_inv_delta = std::log(1.0 / delta);
  const double log_n = std::log(n);
  const double ratio = w / (data_sigma * std::sqrt(2.0 * std::numbers::pi));
  const double coarse = 12.0 * data_sigma / w;
  r.notes.push_back(
      "second precondition uses (12 sigma / w)^d; the shorter statement "
      "prints the exponent as 2");
  r.notes.push_back(
      "first term uses the constant 8; the longer derivation ends with "
      "3 (16 C)^(1/3)");

  const bool density_ok = std::log(n) >= dd * std::log(ratio);
  const double lhs = n / std::pow(log_n, dd / 2.0);
  const double rhs = 16.0 * log_inv_delta * std::pow(coarse, dd);
  const double rhs_printed = 16.0 * log_inv_delta * coarse * coarse;
  r.terms = {{"sample_size_lhs", lhs},
             {"sample_size_rhs", rhs},
             {"sample_size_rhs_exponent_2", rhs_printed}};
  if (!density_ok) {
    r.explanation = "need n >= (w / (sigma sqrt(2 pi)))^d";
    return r;
  }
  if (!(lhs >= rhs)) {
    r.explanation =
        "need n / (ln n)^(d/2) >= 16 ln(1/delta) (12 sigma / w)^d";
    return r;
  }
  const double en = epsilon * n;
  const double term1 = 8.0 * std::cbrt(log_inv_delta) *
                       std::exp(-dd / 3.0 * (std::log(ratio) - 2.0)) /
                       std::cbrt(en);
  const double term2 =
      16.0 * log_inv_delta * std::pow(coarse, dd) * std::pow(log_n, dd / 2.0) /
      en;
  const double term3 = rounding_error_bound(w, d);
  r.terms.insert(r.terms.end(),
                 {{"heavy_bins", term1}, {"light_points", term2},
                  {"rounding", term3}});
  r.value = term1 + term2 + term3;
  r.preconditions_met = true;
  r.explanation = "preconditions met";
  return r;
}

double kd_mmd_conversion(BoundDirection direction, double value) {
  if (!(value >= 0.0)) {
    throw std::invalid_argument("bound value must be non-negative");
  }
  return direction == BoundDirection::kKdToMmd ? std::sqrt(2.0 * value)
                                               : value;
}

std::string BoundReportJson(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["value"] = report.value ? nlohmann::ordered_json(*report.value)
                            : nlohmann::ordered_json(nullptr);
  j["preconditions_met"] = report.preconditions_met;
  j["explanation"] = report.explanation;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.inputs) j["inputs"][k] = v;
  j["terms"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.terms) j["terms"][k] = v;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

}  // namespace dpbins
