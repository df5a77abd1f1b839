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

// Run manifests: the resolved configuration of one invocation plus SHA-256
// digests of everything it read and wrote.

#ifndef CAHARVEST_TOOLS_CLI_MANIFEST_HPP_
#define CAHARVEST_TOOLS_CLI_MANIFEST_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <streambuf>
#include <string>
#include <string_view>

#include "caharvest/records.hpp"

namespace caharvest::cli {

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const char* data, std::size_t n);
  // Lowercase hex digest; the object must not be updated afterwards.
  std::string finish();
  std::uint64_t bytes() const { return bytes_; }

 private:
  struct Context;
  std::unique_ptr<Context> ctx_;
  std::uint64_t bytes_ = 0;
};

std::string sha256_hex(std::string_view data);

// Input buffer that hashes every byte it hands out.
class DigestInputBuf : public std::streambuf {
 public:
  explicit DigestInputBuf(std::streambuf* source) : source_(source) {}

  // Hashes whatever is left in the source, then returns the digest.
  std::string finish();
  std::uint64_t bytes() const { return digest_.bytes(); }

 protected:
  int_type underflow() override;

 private:
  std::streambuf* source_;
  Sha256 digest_;
  std::array<char, 1 << 16> buffer_{};
};

// Output buffer that hashes every byte before passing it on.
class DigestOutputBuf : public std::streambuf {
 public:
  explicit DigestOutputBuf(std::streambuf* sink) : sink_(sink) {}

  std::string finish();
  std::uint64_t bytes() const { return digest_.bytes(); }

 protected:
  int_type overflow(int_type ch) override;
  std::streamsize xsputn(const char* s, std::streamsize n) override;
  int sync() override;

 private:
  std::streambuf* sink_;
  Sha256 digest_;
};

class Manifest {
 public:
  void set_command(std::string command) { command_ = std::move(command); }
  void set_config(OrderedRecord config) { config_ = std::move(config); }
  void add_input(std::string_view role, std::string_view path,
                 std::string_view sha256, std::uint64_t bytes);
  void add_output(std::string_view role, std::string_view path,
                  std::string_view sha256, std::uint64_t bytes);
  OrderedRecord& stats() { return stats_; }

  // `created_at` is the only field that varies between identical runs.
  OrderedRecord to_record(std::string_view created_at) const;

 private:
  std::string command_;
  OrderedRecord config_ = OrderedRecord::object();
  OrderedRecord inputs_ = OrderedRecord::array();
  OrderedRecord outputs_ = OrderedRecord::array();
  OrderedRecord stats_ = OrderedRecord::object();
};

// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

}  // namespace caharvest::cli

#endif  // CAHARVEST_TOOLS_CLI_MANIFEST_HPP_
