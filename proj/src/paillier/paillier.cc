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

#include "enclavon/paillier/paillier.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"
#include "enclavon/ifc/seal.h"

namespace enclavon::paillier {
namespace {

mpz_class RandomBits(ifc::EntropySource& entropy, int bits) {
  Bytes raw = ifc::RandomBytes(entropy, static_cast<size_t>((bits + 7) / 8));
  mpz_class v = FromBigEndian(raw);
  int excess = static_cast<int>(raw.size()) * 8 - bits;
  if (excess > 0) v >>= excess;
  return v;
}

mpz_class RandomPrime(ifc::EntropySource& entropy, int bits) {
  while (true) {
    mpz_class candidate = RandomBits(entropy, bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    mpz_setbit(candidate.get_mpz_t(), bits - 2);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (mpz_probab_prime_p(candidate.get_mpz_t(), kPrimalityRounds) > 0) {
      return candidate;
    }
  }
}

// Uniform in [0, bound) by rejection over the bit length of bound.
mpz_class RandomBelow(ifc::EntropySource& entropy, const mpz_class& bound) {
  int bits = static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  while (true) {
    mpz_class v = RandomBits(entropy, bits);
    if (v < bound) return v;
  }
}

mpz_class RandomUnit(ifc::EntropySource& entropy, const mpz_class& n) {
  while (true) {
    mpz_class r = RandomBelow(entropy, n);
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return r;
  }
}

mpz_class PowMod(const mpz_class& base, const mpz_class& exp,
                 const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class L(const mpz_class& x, const mpz_class& n) { return (x - 1) / n; }

// With g = n + 1, g^m mod n^2 = 1 + m*n.
Ciphertext EncryptUnchecked(const PublicKey& pk, const mpz_class& m,
                            ifc::EntropySource& entropy) {
  mpz_class r = RandomUnit(entropy, pk.n);
  mpz_class gm = (1 + m * pk.n) % pk.n_sq;
  return Ciphertext{(gm * PowMod(r, pk.n, pk.n_sq)) % pk.n_sq};
}

}  // namespace

PublicKey PublicKey::FromModulus(const mpz_class& n) {
  return PublicKey{n, n + 1, n * n};
}

absl::StatusOr<KeyPair> GenerateKeyPair(int bits, ifc::EntropySource& entropy) {
  if (bits != 512 && bits != 1024 && bits != 2048) {
    return MakeError(
        ErrorKind::kUsage,
        absl::StrCat("key size must be 512, 1024 or 2048, got ", bits));
  }
  const int half = bits / 2;
  while (true) {
    mpz_class p = RandomPrime(entropy, half);
    mpz_class q = RandomPrime(entropy, half);
    if (p == q) continue;
    mpz_class n = p * q;
    if (static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2)) != bits) continue;
    mpz_class lambda;
    mpz_class pm1 = p - 1;
    mpz_class qm1 = q - 1;
    mpz_lcm(lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
    PublicKey pk = PublicKey::FromModulus(n);
    mpz_class u = L(PowMod(pk.g, lambda, pk.n_sq), n);
    mpz_class mu;
    if (mpz_invert(mu.get_mpz_t(), u.get_mpz_t(), n.get_mpz_t()) == 0) {
      continue;
    }
    return KeyPair{std::move(pk), PrivateKey(std::move(lambda), std::move(mu))};
  }
}

absl::StatusOr<Ciphertext> Encrypt(const PublicKey& pk, const mpz_class& m,
                                   ifc::EntropySource& entropy) {
  if (m < 0 || m >= pk.n) {
    return MakeError(ErrorKind::kUsage, "plaintext outside [0, n)");
  }
  return EncryptUnchecked(pk, m, entropy);
}

mpz_class Decrypt(const PrivateKey& sk, const PublicKey& pk,
                  const Ciphertext& c) {
  mpz_class u = L(PowMod(c.c, sk.lambda(), pk.n_sq), pk.n);
  return (u * sk.mu()) % pk.n;
}

bool IsValidCiphertext(const PublicKey& pk, const Ciphertext& c) {
  if (c.c < 0 || c.c >= pk.n_sq) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.c.get_mpz_t(), pk.n.get_mpz_t());
  return g == 1;
}

Ciphertext HomAdd(const PublicKey& pk, const Ciphertext& a,
                  const Ciphertext& b) {
  return Ciphertext{(a.c * b.c) % pk.n_sq};
}

absl::StatusOr<Ciphertext> ScalarMul(const PublicKey& pk, const Ciphertext& c,
                                     const mpz_class& k) {
  if (k < 0) return MakeError(ErrorKind::kUsage, "negative scalar");
  return Ciphertext{PowMod(c.c, k, pk.n_sq)};
}

Ciphertext ReEncrypt(const PrivateKey& sk, const PublicKey& pk,
                     const Ciphertext& c, ifc::EntropySource& entropy) {
  return EncryptUnchecked(pk, Decrypt(sk, pk, c), entropy);
}

absl::StatusOr<mpz_class> EncodeFixed(const PublicKey& pk, double x) {
  if (!std::isfinite(x) || std::fabs(x) > kMaxFixedMagnitude) {
    return MakeError(ErrorKind::kUsage, "fixed-point value out of range");
  }
  mpz_class q(static_cast<long>(std::llround(x * kFixedScale)));
  mpz_class abs_q = abs(q);
  if (2 * abs_q >= pk.n) {
    return MakeError(ErrorKind::kUsage, "fixed-point value overflows n/2");
  }
  return q < 0 ? mpz_class(pk.n - abs_q) : q;
}

double DecodeFixed(const PublicKey& pk, const mpz_class& m) {
  mpz_class r = m % pk.n;
  if (r < 0) r += pk.n;
  if (2 * r > pk.n) r -= pk.n;
  return r.get_d() / kFixedScale;
}

HybridCiphertext HybridEncrypt(const PublicKey& pk, ByteSpan record,
                               ifc::EntropySource& entropy) {
  ifc::AeadKey key;
  entropy.Fill(key);
  mpz_class k = FromBigEndian(key);
  HybridCiphertext out{EncryptUnchecked(pk, k, entropy),
                       ifc::AeadSeal(key, record, entropy)};
  return out;
}

absl::StatusOr<Bytes> HybridDecrypt(const PrivateKey& sk, const PublicKey& pk,
                                    const HybridCiphertext& h) {
  if (!IsValidCiphertext(pk, h.key)) {
    return MakeError(ErrorKind::kIntegrity, "key capsule is not a ciphertext");
  }
  absl::StatusOr<Bytes> raw =
      ToBigEndian(Decrypt(sk, pk, h.key), ifc::kAeadKeySize);
  if (!raw.ok()) {
    return MakeError(ErrorKind::kIntegrity, "decapsulated key out of range");
  }
  ifc::AeadKey key;
  std::copy(raw->begin(), raw->end(), key.begin());
  return ifc::AeadUnseal(key, h.body);
}

}  // namespace enclavon::paillier

namespace enclavon::wire {

void Codec<paillier::PublicKey>::Encode(const paillier::PublicKey& v,
                                        Encoder& e) {
  Codec<mpz_class>::Encode(v.n, e);
  Codec<mpz_class>::Encode(v.g, e);
  Codec<mpz_class>::Encode(v.n_sq, e);
}

absl::StatusOr<paillier::PublicKey> Codec<paillier::PublicKey>::Decode(
    Decoder& d) {
  ENCLAVON_ASSIGN_OR_RETURN(mpz_class n, Codec<mpz_class>::Decode(d));
  ENCLAVON_ASSIGN_OR_RETURN(mpz_class g, Codec<mpz_class>::Decode(d));
  ENCLAVON_ASSIGN_OR_RETURN(mpz_class n_sq, Codec<mpz_class>::Decode(d));
  if (n <= 1 || g != n + 1 || n_sq != n * n) {
    return DecodeError("inconsistent public key");
  }
  return paillier::PublicKey{std::move(n), std::move(g), std::move(n_sq)};
}

absl::StatusOr<paillier::Ciphertext> Codec<paillier::Ciphertext>::Decode(
    Decoder& d) {
  ENCLAVON_ASSIGN_OR_RETURN(mpz_class c, Codec<mpz_class>::Decode(d));
  if (c < 0) return DecodeError("negative ciphertext");
  return paillier::Ciphertext{std::move(c)};
}

void Codec<paillier::HybridCiphertext>::Encode(
    const paillier::HybridCiphertext& v, Encoder& e) {
  Codec<paillier::Ciphertext>::Encode(v.key, e);
  Codec<Bytes>::Encode(v.body, e);
}

absl::StatusOr<paillier::HybridCiphertext>
Codec<paillier::HybridCiphertext>::Decode(Decoder& d) {
  ENCLAVON_ASSIGN_OR_RETURN(paillier::Ciphertext key,
                            Codec<paillier::Ciphertext>::Decode(d));
  ENCLAVON_ASSIGN_OR_RETURN(Bytes body, Codec<Bytes>::Decode(d));
  return paillier::HybridCiphertext{std::move(key), std::move(body)};
}

}  // namespace enclavon::wire
