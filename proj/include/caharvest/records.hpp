// Copyright 2026 The ca-harvest Authors.
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

// Line-delimited record files: one flat JSON object per line, blank lines
// skipped. Writers emit keys in a fixed order so reruns are byte-identical.

#ifndef CAHARVEST_RECORDS_HPP_
#define CAHARVEST_RECORDS_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace caharvest {

using Record = nlohmann::json;
using OrderedRecord = nlohmann::ordered_json;

// Iterates over the nonempty lines of a stream, tracking 1-based line
// numbers. A trailing '\r' is stripped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line);
  std::size_t line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::size_t line_number_ = 0;
};

// Parses one line into an object. Throws FormatError on malformed JSON or a
// non-object value.
Record parse_record(std::string_view line, std::size_t line_number);

// Parses one line, returning nullopt instead of throwing.
std::optional<Record> try_parse_record(std::string_view line);

// Calls fn(record, line_number) for every nonempty line.
template <class Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    fn(parse_record(line, reader.line_number()), reader.line_number());
  }
}

void write_record(std::ostream& out, const OrderedRecord& record);

// Field accessors; `line` is only used in error messages.
std::string require_string(const Record& r, std::string_view key,
                           std::size_t line);
std::optional<std::string> optional_string(const Record& r,
                                           std::string_view key,
                                           std::size_t line);
bool require_bool(const Record& r, std::string_view key, std::size_t line);
double require_number(const Record& r, std::string_view key, std::size_t line);

// Opens a file for reading, throwing Error when it cannot be opened.
std::ifstream open_input_file(const std::filesystem::path& path,
                              std::ios::openmode mode = std::ios::in);
std::ofstream open_output_file(const std::filesystem::path& path,
                               std::ios::openmode mode = std::ios::out);

}  // namespace caharvest

#endif  // CAHARVEST_RECORDS_HPP_
