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

#ifndef ENCLAVON_IFC_SEAL_H_
#define ENCLAVON_IFC_SEAL_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/ifc/entropy.h"

namespace enclavon::ifc {

inline constexpr size_t kAeadKeySize = 16;
inline constexpr size_t kNonceSize = 12;
inline constexpr size_t kTagSize = 16;
inline constexpr uint8_t kSealVersion = 1;
// "HSTE", version, nonce.
inline constexpr size_t kSealHeaderSize = 4 + 1 + kNonceSize;

using AeadKey = std::array<uint8_t, kAeadKeySize>;

// Blob layout:
//   48 53 54 45 | 01 | nonce (12) | AES-128-GCM ciphertext | tag (16)
// with the 5-byte magic+version as additional authenticated data. The nonce
// is drawn from `entropy` for every call.
Bytes AeadSeal(const AeadKey& key, ByteSpan plaintext, EntropySource& entropy);

// Every failure (short input, wrong magic or version, wrong key, any
// modified byte) is the same kIntegrity error, and no plaintext is released.
absl::StatusOr<Bytes> AeadUnseal(const AeadKey& key, ByteSpan blob);

// The simulated per-chip sealing key. There is no accessor for the key
// bytes and no Codec, so it cannot be returned, logged or sent.
class RootSealKey {
 public:
  // 32 hexadecimal characters. kUsage otherwise.
  static absl::StatusOr<RootSealKey> FromHex(std::string_view hex);
  // Reads HASTEE_RSK. kUsage if unset or malformed.
  static absl::StatusOr<RootSealKey> FromEnvironment();

  Bytes Seal(ByteSpan plaintext, EntropySource& entropy) const {
    return AeadSeal(key_, plaintext, entropy);
  }
  absl::StatusOr<Bytes> Unseal(ByteSpan blob) const {
    return AeadUnseal(key_, blob);
  }

 private:
  explicit RootSealKey(const AeadKey& key) : key_(key) {}

  AeadKey key_;
};

}  // namespace enclavon::ifc

#endif  // ENCLAVON_IFC_SEAL_H_
