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

#include "enclavon/runtime/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <limits>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::runtime {
namespace {

using Clock = std::chrono::steady_clock;

absl::Status TimeoutError() {
  return MakeError(ErrorKind::kTransportTimeout,
                   "no data from peer before the timeout");
}

// One direction of an in-memory channel.
struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<uint8_t> data;
  bool closed = false;
};

class InMemoryStream : public ByteStream {
 public:
  InMemoryStream(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~InMemoryStream() override { CloseWrite(); }

  absl::Status Write(ByteSpan data) override {
    std::lock_guard<std::mutex> lock(out_->mu);
    if (out_->closed) {
      return MakeError(ErrorKind::kDisconnected, "write after close");
    }
    out_->data.insert(out_->data.end(), data.begin(), data.end());
    out_->cv.notify_all();
    return absl::OkStatus();
  }

  absl::StatusOr<Bytes> ReadSome(Timeout timeout) override {
    std::unique_lock<std::mutex> lock(in_->mu);
    auto ready = [this] { return !in_->data.empty() || in_->closed; };
    if (timeout.has_value()) {
      if (!in_->cv.wait_for(lock, *timeout, ready)) return TimeoutError();
    } else {
      in_->cv.wait(lock, ready);
    }
    Bytes out(in_->data.begin(), in_->data.end());
    in_->data.clear();
    return out;
  }

  void CloseWrite() override {
    std::lock_guard<std::mutex> lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<Pipe> in_;
  std::shared_ptr<Pipe> out_;
};

absl::Status SocketError(ErrorKind kind, const char* what) {
  return MakeError(kind, absl::StrCat(what, ": ", std::strerror(errno)));
}

class TcpStream : public ByteStream {
 public:
  explicit TcpStream(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  ~TcpStream() override { close(fd_); }

  absl::Status Write(ByteSpan data) override {
    size_t done = 0;
    while (done < data.size()) {
      ssize_t n =
          send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        return SocketError(ErrorKind::kDisconnected, "send");
      }
      done += static_cast<size_t>(n);
    }
    return absl::OkStatus();
  }

  absl::StatusOr<Bytes> ReadSome(Timeout timeout) override {
    pollfd pfd{fd_, POLLIN, 0};
    int wait_ms = timeout.has_value()
                      ? static_cast<int>(std::min<int64_t>(
                            timeout->count(), std::numeric_limits<int>::max()))
                      : -1;
    while (true) {
      int r = poll(&pfd, 1, wait_ms);
      if (r < 0 && errno == EINTR) continue;
      if (r < 0) return SocketError(ErrorKind::kIo, "poll");
      if (r == 0) return TimeoutError();
      break;
    }
    Bytes buf(64 * 1024);
    while (true) {
      ssize_t n = recv(fd_, buf.data(), buf.size(), 0);
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) {
        if (errno == ECONNRESET) return Bytes();
        return SocketError(ErrorKind::kDisconnected, "recv");
      }
      buf.resize(static_cast<size_t>(n));
      return buf;
    }
  }

  void CloseWrite() override { shutdown(fd_, SHUT_WR); }

 private:
  int fd_;
};

class CapturingStream : public ByteStream {
 public:
  CapturingStream(std::unique_ptr<ByteStream> inner,
                  std::shared_ptr<WireCapture> capture)
      : inner_(std::move(inner)), capture_(std::move(capture)) {}

  absl::Status Write(ByteSpan data) override {
    capture_->RecordSent(data);
    return inner_->Write(data);
  }

  absl::StatusOr<Bytes> ReadSome(Timeout timeout) override {
    absl::StatusOr<Bytes> got = inner_->ReadSome(timeout);
    if (got.ok()) capture_->RecordReceived(*got);
    return got;
  }

  void CloseWrite() override { inner_->CloseWrite(); }

 private:
  std::unique_ptr<ByteStream> inner_;
  std::shared_ptr<WireCapture> capture_;
};

absl::StatusOr<sockaddr_in> Resolve(std::string_view address) {
  ENCLAVON_ASSIGN_OR_RETURN(auto host_port, ParseAddress(address));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(host_port.second);
  if (inet_pton(AF_INET, host_port.first.c_str(), &addr.sin_addr) == 1) {
    return addr;
  }
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (getaddrinfo(host_port.first.c_str(), nullptr, &hints, &res) != 0 ||
      res == nullptr) {
    return MakeError(ErrorKind::kConnectFailure,
                     absl::StrCat("cannot resolve host ", host_port.first));
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  freeaddrinfo(res);
  return addr;
}

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
MakeInMemoryPair() {
  auto ab = std::make_shared<Pipe>();
  auto ba = std::make_shared<Pipe>();
  return {std::make_unique<InMemoryStream>(ba, ab),
          std::make_unique<InMemoryStream>(ab, ba)};
}

absl::StatusOr<std::pair<std::string, uint16_t>> ParseAddress(
    std::string_view address) {
  size_t colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("address must be host:port, got '",
                                  std::string(address), "'"));
  }
  std::string_view port_text = address.substr(colon + 1);
  unsigned port = 0;
  auto [end, ec] = std::from_chars(port_text.data(),
                                   port_text.data() + port_text.size(), port);
  if (ec != std::errc() || end != port_text.data() + port_text.size() ||
      port > 65535 || port_text.empty()) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("bad port in '", std::string(address), "'"));
  }
  return std::make_pair(std::string(address.substr(0, colon)),
                        static_cast<uint16_t>(port));
}

absl::StatusOr<std::unique_ptr<ByteStream>> TcpConnect(
    std::string_view address) {
  ENCLAVON_ASSIGN_OR_RETURN(sockaddr_in addr, Resolve(address));
  int fd = socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return SocketError(ErrorKind::kConnectFailure, "socket");
  if (connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    absl::Status status =
        MakeError(ErrorKind::kConnectFailure,
                  absl::StrCat("cannot connect to ", std::string(address), ": ",
                               std::strerror(errno)));
    close(fd);
    return status;
  }
  return std::unique_ptr<ByteStream>(std::make_unique<TcpStream>(fd));
}

absl::StatusOr<std::unique_ptr<TcpListener>> TcpListener::Listen(
    std::string_view address) {
  ENCLAVON_ASSIGN_OR_RETURN(sockaddr_in addr, Resolve(address));
  int fd = socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return SocketError(ErrorKind::kIo, "socket");
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      listen(fd, 1) != 0) {
    absl::Status status = SocketError(ErrorKind::kIo, "bind");
    close(fd);
    return status;
  }
  socklen_t len = sizeof(addr);
  getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  return std::unique_ptr<TcpListener>(
      new TcpListener(fd, ntohs(addr.sin_port)));
}

TcpListener::~TcpListener() { close(fd_); }

absl::StatusOr<std::unique_ptr<ByteStream>> TcpListener::Accept() {
  while (true) {
    int fd = accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      return std::unique_ptr<ByteStream>(std::make_unique<TcpStream>(fd));
    }
    if (errno != EINTR) return SocketError(ErrorKind::kIo, "accept");
  }
}

void WireCapture::RecordSent(ByteSpan data) {
  std::lock_guard<std::mutex> lock(mu_);
  sent_.insert(sent_.end(), data.begin(), data.end());
}

void WireCapture::RecordReceived(ByteSpan data) {
  std::lock_guard<std::mutex> lock(mu_);
  received_.insert(received_.end(), data.begin(), data.end());
}

Bytes WireCapture::sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sent_;
}

Bytes WireCapture::received() const {
  std::lock_guard<std::mutex> lock(mu_);
  return received_;
}

bool WireCapture::Contains(ByteSpan needle) const {
  std::lock_guard<std::mutex> lock(mu_);
  return ContainsBytes(sent_, needle) || ContainsBytes(received_, needle);
}

std::unique_ptr<ByteStream> MakeCapturingStream(
    std::unique_ptr<ByteStream> inner, std::shared_ptr<WireCapture> capture) {
  return std::make_unique<CapturingStream>(std::move(inner),
                                           std::move(capture));
}

absl::Status Connection::SendFrame(ByteSpan payload) {
  ENCLAVON_ASSIGN_OR_RETURN(Bytes frame, wire::EncodeFrame(payload));
  return stream_->Write(frame);
}

absl::Status Connection::Send(const wire::Message& message) {
  ENCLAVON_ASSIGN_OR_RETURN(Bytes payload, wire::EncodeMessage(message));
  return SendFrame(payload);
}

absl::StatusOr<std::optional<Bytes>> Connection::ReceiveFrame(Timeout timeout) {
  std::optional<Clock::time_point> deadline;
  if (timeout.has_value()) deadline = Clock::now() + *timeout;
  while (true) {
    ENCLAVON_ASSIGN_OR_RETURN(std::optional<Bytes> frame, reader_.Next());
    if (frame.has_value()) return frame;
    if (eof_) {
      ENCLAVON_RETURN_IF_ERROR(reader_.Finish());
      return std::optional<Bytes>();
    }
    Timeout remaining;
    if (deadline.has_value()) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          *deadline - Clock::now());
      if (left.count() <= 0) return TimeoutError();
      remaining = left;
    }
    ENCLAVON_ASSIGN_OR_RETURN(Bytes chunk, stream_->ReadSome(remaining));
    if (chunk.empty()) {
      eof_ = true;
    } else {
      reader_.Append(chunk);
    }
  }
}

absl::StatusOr<wire::Message> Connection::Receive(Timeout timeout) {
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Bytes> frame, ReceiveFrame(timeout));
  if (!frame.has_value()) {
    return MakeError(ErrorKind::kDisconnected, "peer closed the connection");
  }
  return wire::DecodeMessage(*frame);
}

}  // namespace enclavon::runtime
