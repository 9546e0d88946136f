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

#ifndef ENCLAVON_WIRE_MESSAGE_H_
#define ENCLAVON_WIRE_MESSAGE_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"

namespace enclavon::wire {

inline constexpr size_t kMaxCallArgs = 8;
inline constexpr size_t kDigestSize = 32;

enum class MessageTag : uint8_t {
  kCall = 0x01,
  kResult = 0x02,
  kDigest = 0x03,
  kDigestAck = 0x04,
};

enum class ResultStatus : uint8_t {
  kOk = 0,
  kUnknownCall = 1,
  kBadArgument = 2,
  kHandlerFailed = 3,
  kMalformed = 4,
};

std::string_view ResultStatusName(ResultStatus status);

struct CallMessage {
  uint32_t call_id = 0;
  std::vector<Bytes> args;  // at most kMaxCallArgs

  bool operator==(const CallMessage&) const = default;
};

struct ResultMessage {
  ResultStatus status = ResultStatus::kOk;
  Bytes body;

  bool operator==(const ResultMessage&) const = default;
};

using Digest = std::array<uint8_t, kDigestSize>;

struct DigestMessage {
  Digest digest{};

  bool operator==(const DigestMessage&) const = default;
};

struct DigestAckMessage {
  bool accepted = false;

  bool operator==(const DigestAckMessage&) const = default;
};

using Message =
    std::variant<CallMessage, ResultMessage, DigestMessage, DigestAckMessage>;

// Tag byte followed by the body:
//   CALL        call_id u32 LE, argc u8, argc x (u32 LE length, bytes)
//   RESULT      status u8, u32 LE length, body
//   DIGEST      32 bytes
//   DIGEST_ACK  u8 0 or 1
// kUsage if a CALL carries more than kMaxCallArgs arguments.
absl::StatusOr<Bytes> EncodeMessage(const Message& message);

// kMalformed on an unknown tag or status, a truncated body, trailing bytes,
// argc above kMaxCallArgs, or an acknowledgement byte other than 0 or 1.
absl::StatusOr<Message> DecodeMessage(ByteSpan bytes);

}  // namespace enclavon::wire

#endif  // ENCLAVON_WIRE_MESSAGE_H_
