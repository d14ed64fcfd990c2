// Copyright 2026 The ibrl Authors.
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


#ifndef IBRL_COMMON_CSV_H_
#define IBRL_COMMON_CSV_H_

#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ibrl {

// Shortest decimal that round-trips; "nan" for NaN. Locale independent so
// output files hash identically across machines.
std::string FormatNumber(double value);
std::string FormatNumber(long long value);
inline std::string FormatNumber(int value) { return FormatNumber(static_cast<long long>(value)); }

// Writes one comma-separated row. Fields must not contain commas.
void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

// Minimal reader for the unquoted CSV files this project writes.
class CsvTable {
 public:
  static CsvTable Parse(std::istream& in);
  static CsvTable ReadFile(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  size_t rows() const { return rows_.size(); }
  // Column index or throws IoError naming the column.
  size_t Column(std::string_view name) const;
  bool HasColumn(std::string_view name) const;
  const std::string& Cell(size_t row, size_t col) const { return rows_[row][col]; }
  double Number(size_t row, size_t col) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Opens `path` for writing, runs `body`, and reports failures as IoError.
void WriteTextFile(const std::string& path, const std::function<void(std::ostream&)>& body);
std::string ReadTextFile(const std::string& path);

}  // namespace ibrl

#endif  // IBRL_COMMON_CSV_H_
