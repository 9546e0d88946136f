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

#include "enclavon/common/status.h"

#include <array>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/string_view.h"

namespace enclavon {
namespace {

constexpr absl::string_view kKindPayloadUrl = "type.enclavon/error_kind";
constexpr absl::string_view kRemoteKindPayloadUrl =
    "type.enclavon/remote_error_kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 20> kKinds = {{
    {ErrorKind::kUsage, "Usage", absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kParse, "Parse", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kArity, "Arity", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kUnknownCall, "UnknownCall", absl::StatusCode::kNotFound},
    {ErrorKind::kBadArgument, "BadArgument",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kHandlerFailed, "HandlerFailed", absl::StatusCode::kAborted},
    {ErrorKind::kMalformed, "Malformed", absl::StatusCode::kInternal},
    {ErrorKind::kBadResult, "BadResult", absl::StatusCode::kInternal},
    {ErrorKind::kTransportTimeout, "TransportTimeout",
     absl::StatusCode::kDeadlineExceeded},
    {ErrorKind::kConnectFailure, "ConnectFailure",
     absl::StatusCode::kUnavailable},
    {ErrorKind::kDisconnected, "Disconnected", absl::StatusCode::kUnavailable},
    {ErrorKind::kRegistryMismatch, "RegistryMismatch",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kFrameTooLarge, "FrameTooLarge",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kDecode, "Decode", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIntegrity, "IntegrityError", absl::StatusCode::kDataLoss},
    {ErrorKind::kAbsentFile, "AbsentFile", absl::StatusCode::kNotFound},
    {ErrorKind::kEncoding, "Encoding", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIo, "Io", absl::StatusCode::kUnavailable},
    {ErrorKind::kResourceExhausted, "ResourceExhausted",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kInternal, "Internal", absl::StatusCode::kInternal},
}};

const KindInfo& InfoFor(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds.back();
}

std::optional<ErrorKind> ReadKindPayload(const absl::Status& status,
                                         absl::string_view url) {
  absl::optional<absl::Cord> payload = status.GetPayload(url);
  if (!payload.has_value()) return std::nullopt;
  std::string name(*payload);
  return ErrorKindFromName(name);
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return InfoFor(kind).name; }

std::optional<ErrorKind> ErrorKindFromName(std::string_view name) {
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = InfoFor(kind);
  absl::Status status(info.code,
                      absl::string_view(message.data(), message.size()));
  status.SetPayload(kKindPayloadUrl, absl::Cord(absl::string_view(
                                         info.name.data(), info.name.size())));
  return status;
}

ErrorKind GetErrorKind(const absl::Status& status) {
  return ReadKindPayload(status, kKindPayloadUrl)
      .value_or(ErrorKind::kInternal);
}

bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return !status.ok() && GetErrorKind(status) == kind;
}

std::optional<ErrorKind> GetRemoteErrorKind(const absl::Status& status) {
  return ReadKindPayload(status, kRemoteKindPayloadUrl);
}

absl::Status WithRemoteErrorKind(absl::Status status, ErrorKind remote_kind) {
  std::string_view name = ErrorKindName(remote_kind);
  status.SetPayload(kRemoteKindPayloadUrl,
                    absl::Cord(absl::string_view(name.data(), name.size())));
  return status;
}

}  // namespace enclavon
