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

#include "cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace caharvest::cli {

struct Sha256::Context {
  EVP_MD_CTX* md = nullptr;
};

Sha256::Sha256() : ctx_(std::make_unique<Context>()) {
  ctx_->md = EVP_MD_CTX_new();
  if (ctx_->md == nullptr ||
      EVP_DigestInit_ex(ctx_->md, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("cannot initialise SHA-256");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(ctx_->md); }

void Sha256::update(const char* data, std::size_t n) {
  if (n == 0) return;
  EVP_DigestUpdate(ctx_->md, data, n);
  bytes_ += n;
}

std::string Sha256::finish() {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx_->md, digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.finish();
}

DigestInputBuf::int_type DigestInputBuf::underflow() {
  if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
  const std::streamsize n = source_->sgetn(buffer_.data(), buffer_.size());
  if (n <= 0) return traits_type::eof();
  digest_.update(buffer_.data(), static_cast<std::size_t>(n));
  setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
  return traits_type::to_int_type(buffer_[0]);
}

std::string DigestInputBuf::finish() {
  while (underflow() != traits_type::eof()) setg(eback(), egptr(), egptr());
  return digest_.finish();
}

DigestOutputBuf::int_type DigestOutputBuf::overflow(int_type ch) {
  if (traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::not_eof(ch);
  const char c = traits_type::to_char_type(ch);
  return xsputn(&c, 1) == 1 ? ch : traits_type::eof();
}

std::streamsize DigestOutputBuf::xsputn(const char* s, std::streamsize n) {
  const std::streamsize written = sink_->sputn(s, n);
  if (written > 0) digest_.update(s, static_cast<std::size_t>(written));
  return written;
}

int DigestOutputBuf::sync() { return sink_->pubsync(); }

std::string DigestOutputBuf::finish() {
  sink_->pubsync();
  return digest_.finish();
}

void Manifest::add_input(std::string_view role, std::string_view path,
                         std::string_view sha256, std::uint64_t bytes) {
  OrderedRecord r;
  r["role"] = role;
  r["path"] = path;
  r["sha256"] = sha256;
  r["bytes"] = bytes;
  inputs_.push_back(std::move(r));
}

void Manifest::add_output(std::string_view role, std::string_view path,
                          std::string_view sha256, std::uint64_t bytes) {
  OrderedRecord r;
  r["role"] = role;
  r["path"] = path;
  r["sha256"] = sha256;
  r["bytes"] = bytes;
  outputs_.push_back(std::move(r));
}

OrderedRecord Manifest::to_record(std::string_view created_at) const {
  OrderedRecord r;
  r["tool"] = "ca-harvest";
  r["command"] = command_;
  r["config"] = config_;
  r["inputs"] = inputs_;
  r["outputs"] = outputs_;
  r["stats"] = stats_;
  r["created_at"] = created_at;
  return r;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace caharvest::cli
