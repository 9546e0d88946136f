// Copyright 2026 The Enclavon Authors
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

#ifndef ENCLAVON_COMMON_BYTES_H_
#define ENCLAVON_COMMON_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enclavon {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

Bytes ToBytes(std::string_view text);
std::string ToString(ByteSpan bytes);

// Lower-case hex, two characters per byte.
std::string HexEncode(ByteSpan bytes);
// Accepts upper or lower case; returns false on odd length or non-hex input.
bool HexDecode(std::string_view hex, Bytes* out);

bool IsValidUtf8(ByteSpan bytes);
inline bool IsValidUtf8(std::string_view text) {
  return IsValidUtf8(
      ByteSpan(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

// True when `needle` occurs contiguously in `haystack`. An empty needle
// never matches, so scans for unset sentinels cannot pass vacuously.
bool ContainsBytes(ByteSpan haystack, ByteSpan needle);
inline bool ContainsBytes(ByteSpan haystack, std::string_view needle) {
  return ContainsBytes(
      haystack,
      ByteSpan(reinterpret_cast<const uint8_t*>(needle.data()), needle.size()));
}

}  // namespace enclavon

#endif  // ENCLAVON_COMMON_BYTES_H_
