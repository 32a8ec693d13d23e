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

#include "dpbins/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace dpbins {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      break;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> ParseNumber(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

struct Table {
  std::size_t columns = 0;
  std::vector<double> values;
  bool had_header = false;
};

Table ReadTable(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCells(line);
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    for (std::string_view cell : cells) {
      auto v = ParseNumber(cell);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (first_content_row) {
      first_content_row = false;
      table.columns = cells.size();
      if (!numeric) {
        table.had_header = true;
        continue;
      }
    }
    if (!numeric) {
      throw DataError("line " + std::to_string(line_no) +
                      ": non-numeric value");
    }
    if (row.size() != table.columns) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(table.columns) + " columns, found " +
                      std::to_string(row.size()));
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw DataError("line " + std::to_string(line_no) +
                        ": non-finite value");
      }
    }
    table.values.insert(table.values.end(), row.begin(), row.end());
  }
  return table;
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

Dataset ReadDatasetCsv(std::istream& in) {
  Table table = ReadTable(in);
  if (table.values.empty()) throw DataError("empty input");
  return Dataset(table.columns, std::move(table.values));
}

Dataset ReadDatasetCsvFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadDatasetCsv(in);
}

WeightedDataset ReadWeightedCsv(std::istream& in) {
  Table table = ReadTable(in);
  if (table.columns < 2) {
    throw DataError("weighted CSV needs coordinates plus a weight column");
  }
  const std::size_t dim = table.columns - 1;
  const std::size_t rows = table.values.size() / table.columns;
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(rows * dim);
  weights.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = table.values.data() + r * table.columns;
    coords.insert(coords.end(), row, row + dim);
    if (!(row[dim] > 0.0)) {
      throw DataError("row " + std::to_string(r + 1) +
                      ": weight must be positive");
    }
    weights.push_back(row[dim]);
  }
  return WeightedDataset(dim, std::move(coords), std::move(weights));
}

WeightedDataset ReadWeightedCsvFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadWeightedCsv(in);
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string CsvRow(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

void WriteDatasetCsv(std::ostream& out, const Dataset& data) {
  std::vector<std::string> cells;
  for (std::size_t a = 0; a < data.dim(); ++a) {
    cells.push_back("x" + std::to_string(a));
  }
  out << CsvRow(cells);
  for (std::size_t i = 0; i < data.size(); ++i) {
    cells.clear();
    for (double v : data.point(i)) cells.push_back(FormatDouble(v));
    out << CsvRow(cells);
  }
}

void WriteWeightedCsv(std::ostream& out, const WeightedDataset& data) {
  std::vector<std::string> cells;
  for (std::size_t a = 0; a < data.dim(); ++a) {
    cells.push_back("x" + std::to_string(a));
  }
  cells.push_back("weight");
  out << CsvRow(cells);
  for (std::size_t i = 0; i < data.size(); ++i) {
    cells.clear();
    for (double v : data.center(i)) cells.push_back(FormatDouble(v));
    cells.push_back(FormatDouble(data.weight(i)));
    out << CsvRow(cells);
  }
}

}  // namespace dpbins
