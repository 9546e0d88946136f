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

#ifndef ENCLAVON_WIRE_FRAME_H_
#define ENCLAVON_WIRE_FRAME_H_

#include <cstddef>
#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"

namespace enclavon::wire {

inline constexpr size_t kFrameHeaderSize = 4;
inline constexpr size_t kMaxFramePayload = size_t{16} << 20;

// 4-byte big-endian length, then the payload. kFrameTooLarge above the cap.
absl::StatusOr<Bytes> EncodeFrame(ByteSpan payload);

// Incremental frame splitter for a byte stream.
class FrameReader {
 public:
  void Append(ByteSpan bytes);

  // The next complete payload, std::nullopt if more input is needed, or
  // kFrameTooLarge as soon as a header declares an oversized frame.
  absl::StatusOr<std::optional<Bytes>> Next();

  // Called at end of stream: kMalformed if a partial frame is buffered.
  absl::Status Finish() const;

  size_t buffered() const { return buffer_.size() - start_; }

 private:
  Bytes buffer_;
  size_t start_ = 0;
};

// Decodes a buffer that must hold exactly one frame.
absl::StatusOr<Bytes> DecodeFrame(ByteSpan bytes);

}  // namespace enclavon::wire

#endif  // ENCLAVON_WIRE_FRAME_H_
