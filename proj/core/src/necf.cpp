// Copyright (c) 2026 The nec Authors
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

#include "nec/necf.hpp"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <limits>
#include <sstream>

#include "nec/error.hpp"

namespace nec {

namespace {

constexpr char kMagic[4] = {'N', 'E', 'C', 'F'};

void PutU16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string& out, uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(std::string("NECF truncated while reading ") + what);
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  uint8_t U8(const char* what) { return static_cast<uint8_t>(Take(1, what)[0]); }
  uint16_t U16(const char* what) {
    auto s = Take(2, what);
    return static_cast<uint16_t>(static_cast<uint8_t>(s[0]) |
                                 (static_cast<uint8_t>(s[1]) << 8));
  }
  uint32_t U32(const char* what) {
    auto s = Take(4, what);
    uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<uint8_t>(s[k]);
    return v;
  }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

size_t Tensor::numel() const {
  size_t n = 1;
  for (uint32_t d : dims) n *= d;
  return n;
}

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  while (!bytes.empty()) {
    const size_t n = std::min<size_t>(bytes.size(), 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(n));
    bytes.remove_prefix(n);
  }
  return static_cast<uint32_t>(crc);
}

std::string EncodeNecf(const std::vector<Tensor>& tensors) {
  std::string out(kMagic, 4);
  PutU32(out, kNecfVersion);
  PutU32(out, static_cast<uint32_t>(tensors.size()));
  for (const Tensor& t : tensors) {
    if (t.name.size() > std::numeric_limits<uint16_t>::max()) {
      throw DataError("tensor name too long: " + t.name.substr(0, 32) + "...");
    }
    if (t.dims.size() > std::numeric_limits<uint8_t>::max()) {
      throw DataError("tensor rank too large: " + t.name);
    }
    if (t.numel() != t.data.size()) {
      throw DataError("tensor " + t.name + " data size does not match dims");
    }
    PutU16(out, static_cast<uint16_t>(t.name.size()));
    out += t.name;
    out.push_back(static_cast<char>(t.dims.size()));
    for (uint32_t d : t.dims) PutU32(out, d);
    out.reserve(out.size() + 4 * t.data.size() + 4);
    for (float f : t.data) PutU32(out, std::bit_cast<uint32_t>(f));
  }
  PutU32(out, Crc32(out));
  return out;
}

std::vector<Tensor> DecodeNecf(std::string_view bytes) {
  if (bytes.size() < 16) throw FormatError("NECF truncated: file too small");
  if (bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
    throw FormatError("not a NECF container (bad magic)");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader crc_reader(bytes.substr(bytes.size() - 4));
  const uint32_t stored_crc = crc_reader.U32("checksum");

  Reader r(body);
  r.Take(4, "magic");
  const uint32_t version = r.U32("version");
  if (version != kNecfVersion) {
    throw FormatError("unsupported NECF version " + std::to_string(version));
  }
  // Checked after the version so a future version reports as such.
  if (Crc32(body) != stored_crc) throw FormatError("NECF checksum mismatch");

  const uint32_t count = r.U32("tensor count");
  std::vector<Tensor> tensors;
  tensors.reserve(std::min<uint32_t>(count, 1u << 16));
  for (uint32_t i = 0; i < count; ++i) {
    Tensor t;
    const uint16_t name_len = r.U16("name length");
    t.name = std::string(r.Take(name_len, "name"));
    const uint8_t rank = r.U8("rank");
    uint64_t numel = 1;
    for (uint8_t k = 0; k < rank; ++k) {
      t.dims.push_back(r.U32("dims"));
      numel *= t.dims.back();
      if (numel > r.remaining()) throw FormatError("NECF truncated in tensor " + t.name);
    }
    if (numel > r.remaining() / 4) throw FormatError("NECF truncated in tensor " + t.name);
    auto raw = r.Take(static_cast<size_t>(numel) * 4, "tensor data");
    t.data.resize(static_cast<size_t>(numel));
    for (size_t k = 0; k < t.data.size(); ++k) {
      uint32_t v = 0;
      for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<uint8_t>(raw[4 * k + b]);
      t.data[k] = std::bit_cast<float>(v);
    }
    tensors.push_back(std::move(t));
  }
  if (r.remaining() != 0) throw FormatError("NECF has trailing bytes before checksum");
  return tensors;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("short write to " + path.string());
}

void WriteNecf(const std::filesystem::path& path, const std::vector<Tensor>& tensors) {
  WriteFileBytes(path, EncodeNecf(tensors));
}

std::vector<Tensor> ReadNecf(const std::filesystem::path& path) {
  return DecodeNecf(ReadFileBytes(path));
}

const Tensor& FindTensor(const std::vector<Tensor>& tensors, std::string_view name) {
  for (const auto& t : tensors) {
    if (t.name == name) return t;
  }
  throw DataError("tensor '" + std::string(name) + "' not found");
}

}  // namespace nec
