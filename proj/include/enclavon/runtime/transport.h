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

#ifndef ENCLAVON_RUNTIME_TRANSPORT_H_
#define ENCLAVON_RUNTIME_TRANSPORT_H_

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/wire/frame.h"
#include "enclavon/wire/message.h"

namespace enclavon::runtime {

using Timeout = std::optional<std::chrono::milliseconds>;

inline constexpr std::chrono::milliseconds kDefaultTimeout{30000};
inline constexpr std::string_view kDefaultAddress = "127.0.0.1:7455";

// A duplex byte stream between the two roles.
class ByteStream {
 public:
  virtual ~ByteStream() = default;

  virtual absl::Status Write(ByteSpan data) = 0;

  // Blocks until at least one byte arrives. An empty result means orderly
  // end of stream. kTransportTimeout once `timeout` elapses; no timeout
  // waits forever.
  virtual absl::StatusOr<Bytes> ReadSome(Timeout timeout) = 0;

  // Signals end of stream to the peer. Reading stays possible.
  virtual void CloseWrite() = 0;
};

// Two connected in-memory streams.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
MakeInMemoryPair();

// "host:port" with a numeric or resolvable IPv4 host.
absl::StatusOr<std::pair<std::string, uint16_t>> ParseAddress(
    std::string_view address);

// kConnectFailure if nothing accepts at `address`.
absl::StatusOr<std::unique_ptr<ByteStream>> TcpConnect(
    std::string_view address);

class TcpListener {
 public:
  // Port 0 picks a free port.
  static absl::StatusOr<std::unique_ptr<TcpListener>> Listen(
      std::string_view address);
  ~TcpListener();

  uint16_t port() const { return port_; }
  absl::StatusOr<std::unique_ptr<ByteStream>> Accept();

 private:
  TcpListener(int fd, uint16_t port) : fd_(fd), port_(port) {}

  int fd_;
  uint16_t port_;
};

// Every byte that crossed a captured stream, per direction.
class WireCapture {
 public:
  void RecordSent(ByteSpan data);
  void RecordReceived(ByteSpan data);

  Bytes sent() const;
  Bytes received() const;
  // True if `needle` occurs in either direction.
  bool Contains(ByteSpan needle) const;

 private:
  mutable std::mutex mu_;
  Bytes sent_;
  Bytes received_;
};

// Forwards to `inner` and records the traffic in `capture`.
std::unique_ptr<ByteStream> MakeCapturingStream(
    std::unique_ptr<ByteStream> inner, std::shared_ptr<WireCapture> capture);

// Message framing over a byte stream.
class Connection {
 public:
  explicit Connection(std::unique_ptr<ByteStream> stream)
      : stream_(std::move(stream)) {}

  absl::Status SendFrame(ByteSpan payload);
  absl::Status Send(const wire::Message& message);

  // The next frame payload, or std::nullopt at a clean end of stream.
  // kMalformed if the stream ends inside a frame, kFrameTooLarge for an
  // oversized header.
  absl::StatusOr<std::optional<Bytes>> ReceiveFrame(Timeout timeout);

  // Like ReceiveFrame but decoded; end of stream is kDisconnected.
  absl::StatusOr<wire::Message> Receive(Timeout timeout);

  void CloseWrite() { stream_->CloseWrite(); }

 private:
  std::unique_ptr<ByteStream> stream_;
  wire::FrameReader reader_;
  bool eof_ = false;
};

}  // namespace enclavon::runtime

#endif  // ENCLAVON_RUNTIME_TRANSPORT_H_
