// Copyright 2026 The repbias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace repbias::csv {

struct Row {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line number in the source file
};

// Reads an entire CSV file. RFC-4180 quoting (quoted fields, doubled quotes,
// embedded commas/newlines), tolerant of CRLF. Throws DataError with the
// offending line number on malformed input.
std::vector<Row> read_file(const std::string& path);

// Quotes a field if it contains a comma, quote or newline.
std::string escape(const std::string& field);

// Joins fields into one CSV line (no trailing newline).
std::string join(const std::vector<std::string>& fields);

}  // namespace repbias::csv
