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

#include "enclavon/paillier/bigint.h"

#include "enclavon/common/status.h"

namespace enclavon {

Bytes MagnitudeBytes(const mpz_class& v) {
  size_t count = 0;
  Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, -1, 1, 0, 0, v.get_mpz_t());
  out.resize(count);
  return out;
}

mpz_class FromMagnitudeBytes(ByteSpan le) {
  mpz_class v;
  if (!le.empty()) mpz_import(v.get_mpz_t(), le.size(), -1, 1, 0, 0, le.data());
  return v;
}

mpz_class FromBigEndian(ByteSpan be) {
  mpz_class v;
  if (!be.empty()) mpz_import(v.get_mpz_t(), be.size(), 1, 1, 0, 0, be.data());
  return v;
}

absl::StatusOr<Bytes> ToBigEndian(const mpz_class& v, size_t width) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 256) > width) {
    return MakeError(ErrorKind::kIntegrity, "integer does not fit");
  }
  Bytes le = MagnitudeBytes(v);
  Bytes out(width, 0);
  for (size_t i = 0; i < le.size(); ++i) out[width - 1 - i] = le[i];
  return out;
}

}  // namespace enclavon

namespace enclavon::wire {

void Codec<mpz_class>::Encode(const mpz_class& v, Encoder& e) {
  e.PutU8(v < 0 ? 1 : 0);
  mpz_class mag = abs(v);
  e.PutLengthPrefixed(MagnitudeBytes(mag));
}

absl::StatusOr<mpz_class> Codec<mpz_class>::Decode(Decoder& d) {
  ENCLAVON_ASSIGN_OR_RETURN(uint8_t sign, d.U8());
  if (sign > 1) return DecodeError("big-integer sign byte out of range");
  ENCLAVON_ASSIGN_OR_RETURN(ByteSpan mag, d.LengthPrefixed());
  if (!mag.empty() && mag.back() == 0) {
    return DecodeError("big-integer magnitude is not minimal");
  }
  if (sign == 1 && mag.empty()) return DecodeError("negative zero");
  mpz_class v = FromMagnitudeBytes(mag);
  if (sign == 1) v = -v;
  return v;
}

}  // namespace enclavon::wire
