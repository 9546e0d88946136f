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

#include "enclavon/ifc/seal.h"

#include <cstdlib>
#include <memory>
#include <string>

#include "enclavon/common/status.h"
#include "openssl/evp.h"

namespace enclavon::ifc {
namespace {

constexpr uint8_t kMagic[4] = {0x48, 0x53, 0x54, 0x45};

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

absl::Status IntegrityError() {
  return MakeError(ErrorKind::kIntegrity, "sealed data failed verification");
}

}  // namespace

Bytes AeadSeal(const AeadKey& key, ByteSpan plaintext, EntropySource& entropy) {
  Bytes blob(kSealHeaderSize + plaintext.size() + kTagSize);
  std::copy(std::begin(kMagic), std::end(kMagic), blob.begin());
  blob[4] = kSealVersion;
  uint8_t* nonce = blob.data() + 5;
  entropy.Fill(std::span<uint8_t>(nonce, kNonceSize));

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  bool ok =
      ctx != nullptr &&
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, nullptr,
                         nullptr) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceSize,
                          nullptr) == 1 &&
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce) == 1 &&
      EVP_EncryptUpdate(ctx.get(), nullptr, &len, blob.data(), 5) == 1 &&
      EVP_EncryptUpdate(ctx.get(), blob.data() + kSealHeaderSize, &len,
                        plaintext.data(),
                        static_cast<int>(plaintext.size())) == 1 &&
      EVP_EncryptFinal_ex(ctx.get(), blob.data() + kSealHeaderSize + len,
                          &len) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagSize,
                          blob.data() + blob.size() - kTagSize) == 1;
  if (!ok) std::abort();
  return blob;
}

absl::StatusOr<Bytes> AeadUnseal(const AeadKey& key, ByteSpan blob) {
  if (blob.size() < kSealHeaderSize + kTagSize) return IntegrityError();
  if (!std::equal(std::begin(kMagic), std::end(kMagic), blob.begin()) ||
      blob[4] != kSealVersion) {
    return IntegrityError();
  }
  const uint8_t* nonce = blob.data() + 5;
  size_t ct_len = blob.size() - kSealHeaderSize - kTagSize;
  Bytes plaintext(ct_len);
  Bytes tag(blob.end() - kTagSize, blob.end());

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  bool ok =
      ctx != nullptr &&
      EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, nullptr,
                         nullptr) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceSize,
                          nullptr) == 1 &&
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce) == 1 &&
      EVP_DecryptUpdate(ctx.get(), nullptr, &len, blob.data(), 5) == 1 &&
      EVP_DecryptUpdate(ctx.get(), plaintext.data(), &len,
                        blob.data() + kSealHeaderSize,
                        static_cast<int>(ct_len)) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagSize,
                          tag.data()) == 1 &&
      EVP_DecryptFinal_ex(ctx.get(), plaintext.data() + len, &len) == 1;
  if (!ok) {
    std::fill(plaintext.begin(), plaintext.end(), 0);
    return IntegrityError();
  }
  return plaintext;
}

absl::StatusOr<RootSealKey> RootSealKey::FromHex(std::string_view hex) {
  Bytes raw;
  if (hex.size() != 2 * kAeadKeySize || !HexDecode(hex, &raw)) {
    return MakeError(ErrorKind::kUsage,
                     "root seal key must be 32 hexadecimal characters");
  }
  AeadKey key;
  std::copy(raw.begin(), raw.end(), key.begin());
  return RootSealKey(key);
}

absl::StatusOr<RootSealKey> RootSealKey::FromEnvironment() {
  const char* hex = std::getenv("HASTEE_RSK");
  if (hex == nullptr) {
    return MakeError(ErrorKind::kUsage,
                     "HASTEE_RSK is not set; sealing needs a root seal key");
  }
  return FromHex(hex);
}

}  // namespace enclavon::ifc
