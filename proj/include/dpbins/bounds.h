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

// Closed-form utility bounds on sup_x |KD_Q(x) - KD_P(x)| for the grid
// pipeline, plus the KD/MMD conversions. All logarithms are natural.
//
// Evaluators never throw on an unmet precondition; they return a report
// with preconditions_met = false, no value, and an explanation.

#ifndef DPBINS_BOUNDS_H_
#define DPBINS_BOUNDS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dpbins {

struct BoundReport {
  std::string name;
  std::optional<double> value;
  // In declaration order, for stable JSON output.
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> terms;
  bool preconditions_met = false;
  std::string explanation;
  std::vector<std::string> notes;
};

// Rounding every point to the center of its width-w cube moves the unit
// bandwidth kernel density by at most w sqrt(d) / (2 sqrt(e)).
double rounding_error_bound(double w, std::size_t d);

// Requires J = (R/w)^d < eps n / (4 ln(1/delta)).
BoundReport worst_case_bound(double R, double w, std::size_t d, double n,
                             double epsilon, double delta);

// Requires eps n - eps m - 4 M ln(1/delta) > 0.
BoundReport beyond_worst_case_bound(double n, double m, double M,
                                    double epsilon, double delta, double w,
                                    std::size_t d);

// Gaussian data N(c, sigma^2 I). Requires n >= (w / (sigma sqrt(2 pi)))^d
// and n / (ln n)^(d/2) >= 16 ln(1/delta) (12 sigma / w)^d.
BoundReport gaussian_bound(double n, std::size_t d, double data_sigma,
                           double w, double epsilon, double delta);

enum class BoundDirection { kKdToMmd, kMmdToKd };

// KD-sup bound v gives an MMD bound sqrt(2 v); an MMD bound is already a
// KD-sup bound. Throws std::invalid_argument on negative input.
double kd_mmd_conversion(BoundDirection direction, double value);

// Pretty-printed JSON object for a report.
std::string BoundReportJson(const BoundReport& report);

}  // namespace dpbins

#endif  // DPBINS_BOUNDS_H_
