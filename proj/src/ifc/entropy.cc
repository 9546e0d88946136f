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

#include "enclavon/ifc/entropy.h"

#include <cstdlib>
#include <limits>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"
#include "openssl/rand.h"

namespace enclavon::ifc {

void EntropySource::Fill(std::span<uint8_t> out) {
  size_t i = 0;
  while (i < out.size()) {
    uint64_t v = NextU64();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<uint8_t>(v >> (8 * b));
    }
  }
}

uint64_t OsEntropy::NextU64() {
  uint8_t buf[8];
  Fill(buf);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

void OsEntropy::Fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    std::abort();
  }
}

uint64_t ScriptedEntropy::NextU64() {
  if (values_.empty()) return 0;
  uint64_t v = values_.front();
  values_.pop_front();
  return v;
}

absl::StatusOr<int64_t> RandomInRange(EntropySource& src, int64_t lo,
                                      int64_t hi) {
  if (lo > hi) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("empty range [", lo, ", ", hi, "]"));
  }
  // Width of the range; 0 stands for the full 2^64.
  uint64_t width = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (width == 0) return static_cast<int64_t>(src.NextU64());
  uint64_t max = std::numeric_limits<uint64_t>::max();
  uint64_t limit = max - (max % width + 1) % width;  // accept x <= limit
  uint64_t x;
  do {
    x = src.NextU64();
  } while (x > limit);
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + x % width);
}

Bytes RandomBytes(EntropySource& src, size_t n) {
  Bytes out(n);
  src.Fill(out);
  return out;
}

}  // namespace enclavon::ifc
