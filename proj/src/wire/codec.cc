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

#include "enclavon/wire/codec.h"

#include <string>

namespace enclavon::wire {

void Encoder::PutU32(uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void Encoder::PutU64(uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void Encoder::PutLengthPrefixed(ByteSpan bytes) {
  PutU32(static_cast<uint32_t>(bytes.size()));
  PutRaw(bytes);
}

absl::Status DecodeError(std::string_view what) {
  return MakeError(ErrorKind::kDecode, what);
}

absl::StatusOr<ByteSpan> Decoder::Raw(size_t n) {
  if (remaining() < n) return DecodeError("truncated input");
  ByteSpan out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

absl::StatusOr<uint8_t> Decoder::U8() {
  ENCLAVON_ASSIGN_OR_RETURN(ByteSpan b, Raw(1));
  return b[0];
}

absl::StatusOr<uint32_t> Decoder::U32() {
  ENCLAVON_ASSIGN_OR_RETURN(ByteSpan b, Raw(4));
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

absl::StatusOr<uint64_t> Decoder::U64() {
  ENCLAVON_ASSIGN_OR_RETURN(ByteSpan b, Raw(8));
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

absl::StatusOr<ByteSpan> Decoder::LengthPrefixed() {
  ENCLAVON_ASSIGN_OR_RETURN(uint32_t n, U32());
  return Raw(n);
}

absl::Status Decoder::ExpectEnd() const {
  if (remaining() != 0) return DecodeError("trailing bytes");
  return absl::OkStatus();
}

void Codec<std::string>::Encode(const std::string& v, Encoder& e) {
  e.PutLengthPrefixed(
      ByteSpan(reinterpret_cast<const uint8_t*>(v.data()), v.size()));
}

absl::StatusOr<std::string> Codec<std::string>::Decode(Decoder& d) {
  ENCLAVON_ASSIGN_OR_RETURN(ByteSpan raw, d.LengthPrefixed());
  if (!IsValidUtf8(raw)) return DecodeError("text is not valid UTF-8");
  return ToString(raw);
}

}  // namespace enclavon::wire
