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

#ifndef ENCLAVON_IFC_ENTROPY_H_
#define ENCLAVON_IFC_ENTROPY_H_

#include <cstdint>
#include <deque>
#include <random>
#include <span>

#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"

namespace enclavon::ifc {

// Capability to draw randomness. Code that needs randomness takes one of
// these instead of reaching for a global generator.
class EntropySource {
 public:
  virtual ~EntropySource() = default;

  virtual uint64_t NextU64() = 0;

  // Fills `out` from successive NextU64 draws, low byte first.
  virtual void Fill(std::span<uint8_t> out);
};

// The operating system's CSPRNG.
class OsEntropy : public EntropySource {
 public:
  uint64_t NextU64() override;
  void Fill(std::span<uint8_t> out) override;
};

// Reproducible stream for tests and seeded demo runs.
class SeededEntropy : public EntropySource {
 public:
  explicit SeededEntropy(uint64_t seed) : rng_(seed) {}
  uint64_t NextU64() override { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

// Replays fixed values, then falls back to zero.
class ScriptedEntropy : public EntropySource {
 public:
  explicit ScriptedEntropy(std::initializer_list<uint64_t> values)
      : values_(values) {}
  uint64_t NextU64() override;

 private:
  std::deque<uint64_t> values_;
};

// Uniform integer on the inclusive range [lo, hi] by rejection sampling: a
// draw x is accepted when it lies below the largest multiple of the range
// width and mapped to lo + x mod width. kUsage if lo > hi.
absl::StatusOr<int64_t> RandomInRange(EntropySource& src, int64_t lo,
                                      int64_t hi);

Bytes RandomBytes(EntropySource& src, size_t n);

}  // namespace enclavon::ifc

#endif  // ENCLAVON_IFC_ENTROPY_H_
