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

#ifndef ENCLAVON_PAILLIER_BIGINT_H_
#define ENCLAVON_PAILLIER_BIGINT_H_

#include <gmpxx.h>

#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/wire/codec.h"

namespace enclavon {

// Magnitude as little-endian bytes with no trailing zero byte (empty for 0).
Bytes MagnitudeBytes(const mpz_class& v);
mpz_class FromMagnitudeBytes(ByteSpan le);

// Big-endian fixed-width import and export for key material.
mpz_class FromBigEndian(ByteSpan be);
// kIntegrity if `v` is negative or does not fit in `width` bytes.
absl::StatusOr<Bytes> ToBigEndian(const mpz_class& v, size_t width);

}  // namespace enclavon

namespace enclavon::wire {

// Sign byte (0 non-negative, 1 negative), u32 length, minimal magnitude
// bytes little-endian. Non-minimal magnitudes and negative zero are
// rejected so that the encoding stays injective.
template <>
struct Codec<mpz_class> {
  static void Encode(const mpz_class& v, Encoder& e);
  static absl::StatusOr<mpz_class> Decode(Decoder& d);
};

}  // namespace enclavon::wire

#endif  // ENCLAVON_PAILLIER_BIGINT_H_
