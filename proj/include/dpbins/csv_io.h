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

#ifndef DPBINS_CSV_IO_H_
#define DPBINS_CSV_IO_H_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbins/types.h"

namespace dpbins {

// Malformed or unreadable input data. Messages carry 1-based line numbers.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads one point per row, all columns numeric. A first row that does not
// parse as numbers is treated as a header. Throws DataError when no rows.
Dataset ReadDatasetCsv(std::istream& in);
Dataset ReadDatasetCsvFile(const std::string& path);

// d coordinate columns followed by a trailing `weight` column. A header with
// no rows is an empty release and yields an empty dataset.
WeightedDataset ReadWeightedCsv(std::istream& in);
WeightedDataset ReadWeightedCsvFile(const std::string& path);

void WriteDatasetCsv(std::ostream& out, const Dataset& data);
void WriteWeightedCsv(std::ostream& out, const WeightedDataset& data);

// Shortest round-trip decimal form; '.' decimal separator regardless of locale.
std::string FormatDouble(double value);

// Joins already-formatted cells with commas and a trailing newline.
std::string CsvRow(const std::vector<std::string>& cells);

}  // namespace dpbins

#endif  // DPBINS_CSV_IO_H_
