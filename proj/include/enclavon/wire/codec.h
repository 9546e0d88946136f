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

#ifndef ENCLAVON_WIRE_CODEC_H_
#define ENCLAVON_WIRE_CODEC_H_

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"

namespace enclavon::wire {

// Append-only little-endian byte writer.
class Encoder {
 public:
  void PutU8(uint8_t v) { out_.push_back(v); }
  void PutU32(uint32_t v);
  void PutU64(uint64_t v);
  void PutRaw(ByteSpan bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }
  // u32 length followed by the bytes.
  void PutLengthPrefixed(ByteSpan bytes);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Cursor over an encoded buffer. Every read fails with kDecode on truncation.
class Decoder {
 public:
  explicit Decoder(ByteSpan in) : in_(in) {}

  absl::StatusOr<uint8_t> U8();
  absl::StatusOr<uint32_t> U32();
  absl::StatusOr<uint64_t> U64();
  absl::StatusOr<ByteSpan> Raw(size_t n);
  absl::StatusOr<ByteSpan> LengthPrefixed();

  size_t remaining() const { return in_.size() - pos_; }
  // kDecode if any input is left over.
  absl::Status ExpectEnd() const;

 private:
  ByteSpan in_;
  size_t pos_ = 0;
};

absl::Status DecodeError(std::string_view what);

// A type is serializable only through an explicit Codec specialization
// providing
//   static void Encode(const T&, Encoder&);
//   static absl::StatusOr<T> Decode(Decoder&);
// The primary template is empty, so types without one fail the concept and
// cannot be passed to or returned from the enclave.
template <typename T, typename Enable = void>
struct Codec {};

template <typename T>
concept Serializable = requires(const T& v, Encoder& e, Decoder& d) {
  { Codec<T>::Encode(v, e) } -> std::same_as<void>;
  { Codec<T>::Decode(d) } -> std::same_as<absl::StatusOr<T>>;
};

template <Serializable T>
Bytes EncodeValue(const T& v) {
  Encoder e;
  Codec<T>::Encode(v, e);
  return e.Take();
}

// Decodes exactly one value; trailing bytes are an error.
template <Serializable T>
absl::StatusOr<T> DecodeValue(ByteSpan bytes) {
  Decoder d(bytes);
  absl::StatusOr<T> v = Codec<T>::Decode(d);
  if (!v.ok()) return v.status();
  ENCLAVON_RETURN_IF_ERROR(d.ExpectEnd());
  return v;
}

// Signed 64-bit integer: 8 bytes, two's complement.
template <>
struct Codec<int64_t> {
  static void Encode(int64_t v, Encoder& e) {
    e.PutU64(static_cast<uint64_t>(v));
  }
  static absl::StatusOr<int64_t> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint64_t raw, d.U64());
    return static_cast<int64_t>(raw);
  }
};

// IEEE-754 binary64 bits.
template <>
struct Codec<double> {
  static void Encode(double v, Encoder& e) {
    e.PutU64(std::bit_cast<uint64_t>(v));
  }
  static absl::StatusOr<double> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint64_t raw, d.U64());
    return std::bit_cast<double>(raw);
  }
};

// One byte, 0 or 1; any other byte is rejected.
template <>
struct Codec<bool> {
  static void Encode(bool v, Encoder& e) { e.PutU8(v ? 1 : 0); }
  static absl::StatusOr<bool> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint8_t raw, d.U8());
    if (raw > 1) return DecodeError("boolean byte out of range");
    return raw == 1;
  }
};

// u32 byte length, then UTF-8. Decoding validates the UTF-8.
template <>
struct Codec<std::string> {
  static void Encode(const std::string& v, Encoder& e);
  static absl::StatusOr<std::string> Decode(Decoder& d);
};

// Raw byte string: u32 length, then the bytes unchanged.
template <>
struct Codec<Bytes> {
  static void Encode(const Bytes& v, Encoder& e) { e.PutLengthPrefixed(v); }
  static absl::StatusOr<Bytes> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(ByteSpan raw, d.LengthPrefixed());
    return Bytes(raw.begin(), raw.end());
  }
};

// u32 element count, then the elements.
template <Serializable T>
struct Codec<std::vector<T>> {
  static void Encode(const std::vector<T>& v, Encoder& e) {
    e.PutU32(static_cast<uint32_t>(v.size()));
    for (const T& x : v) Codec<T>::Encode(x, e);
  }
  static absl::StatusOr<std::vector<T>> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint32_t count, d.U32());
    std::vector<T> out;
    out.reserve(std::min<size_t>(count, d.remaining()));
    for (uint32_t i = 0; i < count; ++i) {
      ENCLAVON_ASSIGN_OR_RETURN(T x, Codec<T>::Decode(d));
      out.push_back(std::move(x));
    }
    return out;
  }
};

// u8 0 for absent, or 1 followed by the payload.
template <Serializable T>
struct Codec<std::optional<T>> {
  static void Encode(const std::optional<T>& v, Encoder& e) {
    e.PutU8(v.has_value() ? 1 : 0);
    if (v.has_value()) Codec<T>::Encode(*v, e);
  }
  static absl::StatusOr<std::optional<T>> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint8_t tag, d.U8());
    if (tag == 0) return std::optional<T>();
    if (tag != 1) return DecodeError("optional tag out of range");
    ENCLAVON_ASSIGN_OR_RETURN(T x, Codec<T>::Decode(d));
    return std::optional<T>(std::move(x));
  }
};

// Records and tuples: fields in declaration order, no framing.
template <Serializable... Ts>
struct Codec<std::tuple<Ts...>> {
  static void Encode(const std::tuple<Ts...>& v, Encoder& e) {
    std::apply([&](const auto&... f) { (Codec<Ts>::Encode(f, e), ...); }, v);
  }
  static absl::StatusOr<std::tuple<Ts...>> Decode(Decoder& d) {
    return DecodeFields<Ts...>(d);
  }

  template <typename... Rest>
  static absl::StatusOr<std::tuple<Rest...>> DecodeFields(Decoder& d) {
    if constexpr (sizeof...(Rest) == 0) {
      return std::tuple<>();
    } else {
      return DecodeHead<Rest...>(d);
    }
  }

  template <typename Head, typename... Rest>
  static absl::StatusOr<std::tuple<Head, Rest...>> DecodeHead(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(Head head, Codec<Head>::Decode(d));
    ENCLAVON_ASSIGN_OR_RETURN(std::tuple<Rest...> rest,
                              DecodeFields<Rest...>(d));
    return std::tuple_cat(std::make_tuple(std::move(head)), std::move(rest));
  }
};

template <Serializable A, Serializable B>
struct Codec<std::pair<A, B>> {
  static void Encode(const std::pair<A, B>& v, Encoder& e) {
    Codec<A>::Encode(v.first, e);
    Codec<B>::Encode(v.second, e);
  }
  static absl::StatusOr<std::pair<A, B>> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(A a, Codec<A>::Decode(d));
    ENCLAVON_ASSIGN_OR_RETURN(B b, Codec<B>::Decode(d));
    return std::make_pair(std::move(a), std::move(b));
  }
};

// Unit result for handlers that return nothing useful: zero bytes.
struct Unit {
  bool operator==(const Unit&) const = default;
};
template <>
struct Codec<Unit> {
  static void Encode(const Unit&, Encoder&) {}
  static absl::StatusOr<Unit> Decode(Decoder&) { return Unit{}; }
};

}  // namespace enclavon::wire

#endif  // ENCLAVON_WIRE_CODEC_H_
