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

// Reader/writer for the CAES embedding-store format. Byte order is fixed to
// little-endian regardless of host.

#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "caharvest/embeddings.hpp"
#include "caharvest/error.hpp"
#include "caharvest/records.hpp"

namespace caharvest {
namespace {

constexpr std::array<char, 4> kMagic = {'C', 'A', 'E', 'S'};

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint64_t offset() const { return offset_; }

  // Reads exactly n bytes or returns false.
  bool read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    const auto got = static_cast<std::size_t>(in_.gcount());
    offset_ += got;
    return got == n;
  }

  template <class T>
  bool get_le(T& value) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
    value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<T>(bytes[i]) << (8 * i));
    }
    return true;
  }

  bool at_eof() {
    return in_.peek() == std::char_traits<char>::eof();
  }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace

void write_embedding_store(std::ostream& out, const EmbeddingStore& store) {
  if (store.dimension() == 0 ||
      store.dimension() > std::numeric_limits<std::uint32_t>::max()) {
    throw StoreError("cannot write store with dimension " +
                         std::to_string(store.dimension()),
                     0);
  }
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(out, kStoreFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(store.dimension()));
  put_le<std::uint64_t>(out, store.size());
  std::uint64_t offset = 18;
  for (const auto& [id, vec] : store.entries()) {
    if (id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw StoreError("id longer than 65535 bytes: '" + id.substr(0, 32) + "...'", offset);
    }
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    for (double x : vec.values()) {
      put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    }
    offset += 2 + id.size() + 4 * vec.dimension();
  }
  if (!out) throw StoreError("write failure", offset);
}

EmbeddingStore read_embedding_store(std::istream& in, std::string provenance) {
  Reader r(in);
  std::array<char, 4> magic{};
  if (!r.read(magic.data(), magic.size()) || magic != kMagic) {
    throw StoreError("bad magic, expected 'CAES'", 0);
  }
  std::uint16_t version = 0;
  if (!r.get_le(version)) throw StoreError("truncated header", r.offset());
  if (version != kStoreFormatVersion) {
    throw StoreError("unsupported store version " + std::to_string(version), 4);
  }
  std::uint32_t dimension = 0;
  if (!r.get_le(dimension)) throw StoreError("truncated header", r.offset());
  if (dimension == 0) throw StoreError("store dimension is zero", 6);
  std::uint64_t count = 0;
  if (!r.get_le(count)) throw StoreError("truncated header", r.offset());

  EmbeddingStore store(dimension, std::move(provenance));
  std::string previous;
  std::string id;
  std::vector<double> values(dimension);
  for (std::uint64_t n = 0; n < count; ++n) {
    const std::uint64_t record_offset = r.offset();
    std::uint16_t id_len = 0;
    if (!r.get_le(id_len)) {
      throw StoreError("truncated record " + std::to_string(n) + " of " +
                           std::to_string(count),
                       record_offset);
    }
    if (id_len == 0) throw StoreError("empty id", record_offset);
    id.resize(id_len);
    if (!r.read(id.data(), id_len)) {
      throw StoreError("truncated record " + std::to_string(n) + " of " +
                           std::to_string(count),
                       record_offset);
    }
    if (n > 0) {
      if (id == previous) {
        throw StoreError("duplicate id '" + id + "'", record_offset);
      }
      if (id < previous) {
        throw StoreError("records not sorted by id ('" + id + "' after '" +
                             previous + "')",
                         record_offset);
      }
    }
    for (std::uint32_t i = 0; i < dimension; ++i) {
      std::uint32_t bits = 0;
      if (!r.get_le(bits)) {
        throw StoreError("truncated record '" + id + "'", record_offset);
      }
      const float f = std::bit_cast<float>(bits);
      if (!std::isfinite(f)) {
        throw StoreError("non-finite value in record '" + id + "'", record_offset);
      }
      values[i] = f;
    }
    store.insert(id, EmbeddingVector(values));
    previous = id;
  }
  if (!r.at_eof()) throw StoreError("trailing bytes after last record", r.offset());
  return store;
}

void save_embedding_store(const EmbeddingStore& store,
                          const std::filesystem::path& path) {
  auto out = open_output_file(path, std::ios::out | std::ios::binary);
  write_embedding_store(out, store);
}

EmbeddingStore load_embedding_store(const std::filesystem::path& path) {
  auto in = open_input_file(path, std::ios::in | std::ios::binary);
  return read_embedding_store(in, path.string());
}

}  // namespace caharvest
