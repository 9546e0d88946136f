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

#include "enclavon/wire/frame.h"

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::wire {
namespace {

size_t ReadLength(const uint8_t* p) {
  return (size_t{p[0]} << 24) | (size_t{p[1]} << 16) | (size_t{p[2]} << 8) |
         size_t{p[3]};
}

absl::Status TooLarge(size_t n) {
  return MakeError(ErrorKind::kFrameTooLarge,
                   absl::StrCat("frame of ", n, " bytes exceeds the ",
                                kMaxFramePayload, " byte limit"));
}

}  // namespace

absl::StatusOr<Bytes> EncodeFrame(ByteSpan payload) {
  if (payload.size() > kMaxFramePayload) return TooLarge(payload.size());
  Bytes out;
  out.reserve(kFrameHeaderSize + payload.size());
  uint32_t n = static_cast<uint32_t>(payload.size());
  out.push_back(static_cast<uint8_t>(n >> 24));
  out.push_back(static_cast<uint8_t>(n >> 16));
  out.push_back(static_cast<uint8_t>(n >> 8));
  out.push_back(static_cast<uint8_t>(n));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

void FrameReader::Append(ByteSpan bytes) {
  if (start_ > 0 && start_ == buffer_.size()) {
    buffer_.clear();
    start_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

absl::StatusOr<std::optional<Bytes>> FrameReader::Next() {
  if (buffered() < kFrameHeaderSize) return std::optional<Bytes>();
  size_t n = ReadLength(buffer_.data() + start_);
  if (n > kMaxFramePayload) return TooLarge(n);
  if (buffered() < kFrameHeaderSize + n) return std::optional<Bytes>();
  auto begin = buffer_.begin() + start_ + kFrameHeaderSize;
  Bytes payload(begin, begin + n);
  start_ += kFrameHeaderSize + n;
  if (start_ > (1 << 16) && start_ * 2 > buffer_.size()) {
    buffer_.erase(buffer_.begin(), buffer_.begin() + start_);
    start_ = 0;
  }
  return std::optional<Bytes>(std::move(payload));
}

absl::Status FrameReader::Finish() const {
  if (buffered() != 0) {
    return MakeError(ErrorKind::kMalformed,
                     absl::StrCat("stream ended inside a frame with ",
                                  buffered(), " bytes buffered"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Bytes> DecodeFrame(ByteSpan bytes) {
  FrameReader reader;
  reader.Append(bytes);
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Bytes> frame, reader.Next());
  if (!frame.has_value()) {
    ENCLAVON_RETURN_IF_ERROR(reader.Finish());
  }
  if (reader.buffered() != 0) {
    return MakeError(ErrorKind::kMalformed, "bytes after the frame");
  }
  return *std::move(frame);
}

}  // namespace enclavon::wire
