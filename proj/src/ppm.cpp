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

#include <string>

#include "projpool/error.hpp"
#include "projpool/sceneio.hpp"

namespace projpool {

void save_ppm(const std::filesystem::path& path, int width, int height,
              std::span<const std::array<std::uint8_t, 3>> pixels) {
  if (width < 1 || height < 1 ||
      pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::InvalidShape, "pixel count does not match image size");
  }
  const std::string header =
      "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + 3 * pixels.size());
  for (const auto& px : pixels) bytes.insert(bytes.end(), px.begin(), px.end());
  write_file_bytes(path, bytes);
}

}  // namespace projpool
