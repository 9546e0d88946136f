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

#ifndef ENCLAVON_PAILLIER_PAILLIER_H_
#define ENCLAVON_PAILLIER_PAILLIER_H_

#include <gmpxx.h>

#include <utility>

#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/paillier/bigint.h"
#include "enclavon/wire/codec.h"

namespace enclavon::paillier {

inline constexpr int kDefaultKeyBits = 512;
inline constexpr int kPrimalityRounds = 40;
inline constexpr double kFixedScale = 1e6;
inline constexpr double kMaxFixedMagnitude = 1e9;

struct PublicKey {
  mpz_class n;
  mpz_class g;     // n + 1
  mpz_class n_sq;  // n * n

  static PublicKey FromModulus(const mpz_class& n);
  bool operator==(const PublicKey& o) const {
    return n == o.n && g == o.g && n_sq == o.n_sq;
  }
};

// Has no Codec: it can never cross the enclave boundary.
class PrivateKey {
 public:
  PrivateKey(mpz_class lambda, mpz_class mu)
      : lambda_(std::move(lambda)), mu_(std::move(mu)) {}

  const mpz_class& lambda() const { return lambda_; }
  const mpz_class& mu() const { return mu_; }

 private:
  mpz_class lambda_;
  mpz_class mu_;
};

struct Ciphertext {
  mpz_class c;

  bool operator==(const Ciphertext& o) const { return c == o.c; }
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

// Two random primes of bits/2 bits each (top two bits and the low bit set,
// Miller-Rabin with kPrimalityRounds rounds), n = p*q with exactly `bits`
// bits, g = n + 1. All randomness comes from `entropy`.
// kUsage unless bits is 512, 1024 or 2048.
absl::StatusOr<KeyPair> GenerateKeyPair(int bits, ifc::EntropySource& entropy);

// c = g^m * r^n mod n^2 with r uniform in Z_n^*. kUsage unless 0 <= m < n.
absl::StatusOr<Ciphertext> Encrypt(const PublicKey& pk, const mpz_class& m,
                                   ifc::EntropySource& entropy);

// L(c^lambda mod n^2) * mu mod n with L(x) = (x - 1) / n.
mpz_class Decrypt(const PrivateKey& sk, const PublicKey& pk,
                  const Ciphertext& c);

// 0 <= c < n^2 and gcd(c, n) = 1.
bool IsValidCiphertext(const PublicKey& pk, const Ciphertext& c);

// Decrypts to (a + b) mod n.
Ciphertext HomAdd(const PublicKey& pk, const Ciphertext& a,
                  const Ciphertext& b);
// Decrypts to (k * a) mod n. kUsage if k < 0.
absl::StatusOr<Ciphertext> ScalarMul(const PublicKey& pk, const Ciphertext& c,
                                     const mpz_class& k);

// Fresh encryption of the same plaintext.
Ciphertext ReEncrypt(const PrivateKey& sk, const PublicKey& pk,
                     const Ciphertext& c, ifc::EntropySource& entropy);

// round(x * 1e6) mapped into Z_n, negatives as n - |q|. kUsage if
// |x| > 1e9, x is not finite, or |q| >= n/2.
absl::StatusOr<mpz_class> EncodeFixed(const PublicKey& pk, double x);
// Values above n/2 decode as negatives.
double DecodeFixed(const PublicKey& pk, const mpz_class& m);

// Key encapsulation for byte records: a fresh 128-bit key encrypted under
// Paillier as an integer, and the record sealed under that key with the
// same AEAD container as sealed storage.
struct HybridCiphertext {
  Ciphertext key;
  Bytes body;

  bool operator==(const HybridCiphertext& o) const {
    return key == o.key && body == o.body;
  }
};

HybridCiphertext HybridEncrypt(const PublicKey& pk, ByteSpan record,
                               ifc::EntropySource& entropy);
// kIntegrity if the decapsulated key is out of range or the body fails
// authentication.
absl::StatusOr<Bytes> HybridDecrypt(const PrivateKey& sk, const PublicKey& pk,
                                    const HybridCiphertext& h);

}  // namespace enclavon::paillier

namespace enclavon::wire {

// Field order: n, g, n_sq. Decoding checks g = n + 1 and n_sq = n^2.
template <>
struct Codec<paillier::PublicKey> {
  static void Encode(const paillier::PublicKey& v, Encoder& e);
  static absl::StatusOr<paillier::PublicKey> Decode(Decoder& d);
};

template <>
struct Codec<paillier::Ciphertext> {
  static void Encode(const paillier::Ciphertext& v, Encoder& e) {
    Codec<mpz_class>::Encode(v.c, e);
  }
  static absl::StatusOr<paillier::Ciphertext> Decode(Decoder& d);
};

template <>
struct Codec<paillier::HybridCiphertext> {
  static void Encode(const paillier::HybridCiphertext& v, Encoder& e);
  static absl::StatusOr<paillier::HybridCiphertext> Decode(Decoder& d);
};

}  // namespace enclavon::wire

#endif  // ENCLAVON_PAILLIER_PAILLIER_H_
