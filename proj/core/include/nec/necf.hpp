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

#ifndef NEC_NECF_HPP_
#define NEC_NECF_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nec {

// A named, row-major float32 tensor.
struct Tensor {
  std::string name;
  std::vector<uint32_t> dims;
  std::vector<float> data;

  size_t numel() const;
  bool operator==(const Tensor&) const = default;
};

// NECF binary container, all integers little-endian:
//
//   "NECF" | u32 version (=1) | u32 tensor count
//   per tensor: u16 name length | name bytes | u8 rank | u32 dims[rank]
//               | float32 data (row-major)
//   u32 CRC-32 of every preceding byte
//
// Decoding throws FormatError on bad magic, unsupported version, truncation,
// trailing bytes or checksum mismatch.
inline constexpr uint32_t kNecfVersion = 1;

std::string EncodeNecf(const std::vector<Tensor>& tensors);
std::vector<Tensor> DecodeNecf(std::string_view bytes);

void WriteNecf(const std::filesystem::path& path, const std::vector<Tensor>& tensors);
std::vector<Tensor> ReadNecf(const std::filesystem::path& path);

// Returns the tensor named `name` or throws DataError.
const Tensor& FindTensor(const std::vector<Tensor>& tensors, std::string_view name);

uint32_t Crc32(std::string_view bytes);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace nec

#endif  // NEC_NECF_HPP_
