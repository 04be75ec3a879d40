// Copyright 2026 The projpool Authors.
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

#include <bit>
#include <cstring>

#include "projpool/error.hpp"
#include "projpool/sceneio.hpp"

namespace projpool {
namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'P', 'T', 'F'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kDtypeFloat32 = 1;
constexpr std::size_t kFixedHeader = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const FeatureTensor& t) {
  if (t.rank() == 0 || t.rank() > 255) {
    throw Error(ErrorCode::InvalidShape, "tensor rank must be in [1, 255]");
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(kDtypeFloat32);
  out.push_back(static_cast<std::uint8_t>(t.rank()));
  out.push_back(0);
  for (std::size_t d : t.shape()) {
    if (d == 0 || d > 0xFFFFFFFFu) throw Error(ErrorCode::InvalidShape, "dimension out of range");
    put_u32(out, static_cast<std::uint32_t>(d));
  }
  out.reserve(out.size() + 4 * t.size());
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

FeatureTensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::BadMagic, "not a PPTF tensor file");
  }
  if (bytes.size() < kFixedHeader) throw Error(ErrorCode::TruncatedPayload, "header is truncated");
  if (bytes[4] != kVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "tensor file version " + std::to_string(bytes[4]) + " is not supported");
  }
  if (bytes[5] != kDtypeFloat32) {
    throw Error(ErrorCode::UnsupportedVersion,
                "tensor dtype " + std::to_string(bytes[5]) + " is not supported");
  }
  const std::size_t ndim = bytes[6];
  if (ndim == 0) throw Error(ErrorCode::InvalidShape, "tensor has no dimensions");
  if (bytes[7] != 0) throw Error(ErrorCode::UnsupportedVersion, "reserved header byte is set");
  if (bytes.size() < kFixedHeader + 4 * ndim) {
    throw Error(ErrorCode::TruncatedPayload, "dimension table is truncated");
  }
  std::vector<std::size_t> shape(ndim);
  std::size_t count = 1;
  for (std::size_t i = 0; i < ndim; ++i) {
    shape[i] = get_u32(bytes.data() + kFixedHeader + 4 * i);
    if (shape[i] == 0) throw Error(ErrorCode::InvalidShape, "tensor dimensions must be positive");
    count *= shape[i];
  }
  const std::size_t payload = kFixedHeader + 4 * ndim;
  if (bytes.size() - payload != 4 * count) {
    throw Error(ErrorCode::TruncatedPayload,
                "expected " + std::to_string(4 * count) + " payload bytes, found " +
                    std::to_string(bytes.size() - payload));
  }
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes.data() + payload + 4 * i));
  }
  return FeatureTensor(std::move(shape), std::move(data));
}

FeatureTensor load_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_file_bytes(path));
}

void save_tensor(const FeatureTensor& t, const std::filesystem::path& path) {
  write_file_bytes(path, encode_tensor(t));
}

}  // namespace projpool
