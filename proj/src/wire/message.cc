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

#include "enclavon/wire/message.h"

#include <algorithm>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"
#include "enclavon/wire/codec.h"

namespace enclavon::wire {
namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

absl::Status Malformed(std::string_view what) {
  return MakeError(ErrorKind::kMalformed, what);
}

// Re-labels decoder failures as malformed messages.
template <typename T>
absl::StatusOr<T> Check(absl::StatusOr<T> v) {
  if (!v.ok()) return Malformed(std::string(v.status().message()));
  return v;
}

absl::StatusOr<Message> DecodeBody(MessageTag tag, Decoder& d) {
  switch (tag) {
    case MessageTag::kCall: {
      CallMessage call;
      ENCLAVON_ASSIGN_OR_RETURN(call.call_id, Check(d.U32()));
      ENCLAVON_ASSIGN_OR_RETURN(uint8_t argc, Check(d.U8()));
      if (argc > kMaxCallArgs) {
        return Malformed(
            absl::StrCat("CALL with ", static_cast<int>(argc), " arguments"));
      }
      for (uint8_t i = 0; i < argc; ++i) {
        ENCLAVON_ASSIGN_OR_RETURN(ByteSpan arg, Check(d.LengthPrefixed()));
        call.args.emplace_back(arg.begin(), arg.end());
      }
      return call;
    }
    case MessageTag::kResult: {
      ResultMessage result;
      ENCLAVON_ASSIGN_OR_RETURN(uint8_t status, Check(d.U8()));
      if (status > static_cast<uint8_t>(ResultStatus::kMalformed)) {
        return Malformed(
            absl::StrCat("unknown RESULT status ", static_cast<int>(status)));
      }
      result.status = static_cast<ResultStatus>(status);
      ENCLAVON_ASSIGN_OR_RETURN(ByteSpan body, Check(d.LengthPrefixed()));
      result.body.assign(body.begin(), body.end());
      return result;
    }
    case MessageTag::kDigest: {
      DigestMessage digest;
      ENCLAVON_ASSIGN_OR_RETURN(ByteSpan raw, Check(d.Raw(kDigestSize)));
      std::copy(raw.begin(), raw.end(), digest.digest.begin());
      return digest;
    }
    case MessageTag::kDigestAck: {
      ENCLAVON_ASSIGN_OR_RETURN(uint8_t raw, Check(d.U8()));
      if (raw > 1) return Malformed("DIGEST_ACK byte out of range");
      return DigestAckMessage{raw == 1};
    }
  }
  return Malformed("unknown message tag");
}

}  // namespace

std::string_view ResultStatusName(ResultStatus status) {
  switch (status) {
    case ResultStatus::kOk:
      return "Ok";
    case ResultStatus::kUnknownCall:
      return "UnknownCall";
    case ResultStatus::kBadArgument:
      return "BadArgument";
    case ResultStatus::kHandlerFailed:
      return "HandlerFailed";
    case ResultStatus::kMalformed:
      return "Malformed";
  }
  return "Unknown";
}

absl::StatusOr<Bytes> EncodeMessage(const Message& message) {
  Encoder e;
  absl::Status status = std::visit(
      Overloaded{
          [&](const CallMessage& m) -> absl::Status {
            if (m.args.size() > kMaxCallArgs) {
              return MakeError(
                  ErrorKind::kUsage,
                  absl::StrCat("CALL with ", m.args.size(), " arguments"));
            }
            e.PutU8(static_cast<uint8_t>(MessageTag::kCall));
            e.PutU32(m.call_id);
            e.PutU8(static_cast<uint8_t>(m.args.size()));
            for (const Bytes& a : m.args) e.PutLengthPrefixed(a);
            return absl::OkStatus();
          },
          [&](const ResultMessage& m) -> absl::Status {
            e.PutU8(static_cast<uint8_t>(MessageTag::kResult));
            e.PutU8(static_cast<uint8_t>(m.status));
            e.PutLengthPrefixed(m.body);
            return absl::OkStatus();
          },
          [&](const DigestMessage& m) -> absl::Status {
            e.PutU8(static_cast<uint8_t>(MessageTag::kDigest));
            e.PutRaw(m.digest);
            return absl::OkStatus();
          },
          [&](const DigestAckMessage& m) -> absl::Status {
            e.PutU8(static_cast<uint8_t>(MessageTag::kDigestAck));
            e.PutU8(m.accepted ? 1 : 0);
            return absl::OkStatus();
          },
      },
      message);
  ENCLAVON_RETURN_IF_ERROR(status);
  return e.Take();
}

absl::StatusOr<Message> DecodeMessage(ByteSpan bytes) {
  Decoder d(bytes);
  ENCLAVON_ASSIGN_OR_RETURN(uint8_t tag, Check(d.U8()));
  if (tag < static_cast<uint8_t>(MessageTag::kCall) ||
      tag > static_cast<uint8_t>(MessageTag::kDigestAck)) {
    return Malformed(
        absl::StrCat("unknown message tag ", static_cast<int>(tag)));
  }
  ENCLAVON_ASSIGN_OR_RETURN(Message m,
                            DecodeBody(static_cast<MessageTag>(tag), d));
  if (d.remaining() != 0) return Malformed("trailing bytes after message");
  return m;
}

}  // namespace enclavon::wire
