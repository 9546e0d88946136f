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

#ifndef ENCLAVON_COMMON_STATUS_H_
#define ENCLAVON_COMMON_STATUS_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace enclavon {

// Every failure the framework reports carries one of these kinds as a status
// payload, on top of the canonical absl code. Callers that need to tell
// UnknownCall from BadArgument (or integrity failures from absent files) use
// GetErrorKind instead of matching messages.
enum class ErrorKind {
  kUsage,              // API misuse: wrong role, bad range, sealed registry.
  kParse,              // surface-syntax errors in calculus programs.
  kArity,              // over-application of a secure handle.
  kUnknownCall,        // RESULT status 1.
  kBadArgument,        // RESULT status 2.
  kHandlerFailed,      // RESULT status 3.
  kMalformed,          // RESULT status 4, or an undecodable message.
  kBadResult,          // the client could not decode a RESULT body.
  kTransportTimeout,   // no RESULT within the configured timeout.
  kConnectFailure,     // could not reach the peer.
  kDisconnected,       // peer closed the stream mid-protocol.
  kRegistryMismatch,   // handshake digests differ.
  kFrameTooLarge,      // declared frame length above the 16 MiB cap.
  kDecode,             // canonical value decoding failed.
  kIntegrity,          // sealed data failed authentication.
  kAbsentFile,         // a file that should exist does not.
  kEncoding,           // text was not valid UTF-8.
  kIo,                 // other filesystem failures.
  kResourceExhausted,  // evaluator depth guard.
  kInternal,
};

std::string_view ErrorKindName(ErrorKind kind);
std::optional<ErrorKind> ErrorKindFromName(std::string_view name);

// Builds a status with the canonical code for `kind` and the kind attached.
absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the attached kind, or kInternal for foreign non-OK statuses.
// Must not be called on an OK status.
ErrorKind GetErrorKind(const absl::Status& status);

// True when `status` is non-OK and carries `kind`.
bool HasErrorKind(const absl::Status& status, ErrorKind kind);

// For kHandlerFailed statuses produced from a remote RESULT: the kind the
// handler itself failed with, when the enclave reported one.
std::optional<ErrorKind> GetRemoteErrorKind(const absl::Status& status);
absl::Status WithRemoteErrorKind(absl::Status status, ErrorKind remote_kind);

}  // namespace enclavon

#define ENCLAVON_STATUS_CONCAT_INNER_(a, b) a##b
#define ENCLAVON_STATUS_CONCAT_(a, b) ENCLAVON_STATUS_CONCAT_INNER_(a, b)

#define ENCLAVON_RETURN_IF_ERROR(expr)        \
  do {                                        \
    ::absl::Status _enclavon_status = (expr); \
    if (!_enclavon_status.ok()) {             \
      return _enclavon_status;                \
    }                                         \
  } while (false)

#define ENCLAVON_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                    \
  if (!statusor.ok()) {                                       \
    return statusor.status();                                 \
  }                                                           \
  lhs = *std::move(statusor)

#define ENCLAVON_ASSIGN_OR_RETURN(lhs, rexpr) \
  ENCLAVON_ASSIGN_OR_RETURN_IMPL_(            \
      ENCLAVON_STATUS_CONCAT_(_enclavon_statusor_, __LINE__), lhs, rexpr)

#endif  // ENCLAVON_COMMON_STATUS_H_
