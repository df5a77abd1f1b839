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

#include "caharvest/records.hpp"

#include "caharvest/error.hpp"
#include "caharvest/text.hpp"

namespace caharvest {
namespace {

std::string where(std::string_view key, std::size_t line) {
  return "line " + std::to_string(line) + ": field '" + std::string(key) + "'";
}

}  // namespace

bool LineReader::next(std::string& line) {
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) return true;
  }
  if (in_.bad()) {
    throw IngestError("read failure after line " +
                      std::to_string(line_number_));
  }
  return false;
}

std::optional<Record> try_parse_record(std::string_view line) {
  Record r = Record::parse(line, nullptr, /*allow_exceptions=*/false);
  if (r.is_discarded() || !r.is_object()) return std::nullopt;
  return r;
}

Record parse_record(std::string_view line, std::size_t line_number) {
  auto r = try_parse_record(line);
  if (!r) {
    throw FormatError(
        "line " + std::to_string(line_number) + ": not a JSON object record",
        line_number);
  }
  return std::move(*r);
}

void write_record(std::ostream& out, const OrderedRecord& record) {
  out << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
      << '\n';
}

std::string require_string(const Record& r, std::string_view key,
                           std::size_t line) {
  auto it = r.find(key);
  if (it == r.end()) throw FormatError(where(key, line) + " is missing", line);
  if (!it->is_string()) {
    throw FormatError(where(key, line) + " must be a string", line);
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const Record& r,
                                           std::string_view key,
                                           std::size_t line) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw FormatError(where(key, line) + " must be a string", line);
  }
  return it->get<std::string>();
}

bool require_bool(const Record& r, std::string_view key, std::size_t line) {
  auto it = r.find(key);
  if (it == r.end()) throw FormatError(where(key, line) + " is missing", line);
  if (!it->is_boolean()) {
    throw FormatError(where(key, line) + " must be a boolean", line);
  }
  return it->get<bool>();
}

double require_number(const Record& r, std::string_view key, std::size_t line) {
  auto it = r.find(key);
  if (it == r.end()) throw FormatError(where(key, line) + " is missing", line);
  if (!it->is_number()) {
    throw FormatError(where(key, line) + " must be a number", line);
  }
  return it->get<double>();
}

std::ifstream open_input_file(const std::filesystem::path& path,
                              std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output_file(const std::filesystem::path& path,
                               std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace caharvest
