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

#include "enclavon/runtime/app.h"

#include <openssl/evp.h>

#include <thread>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "enclavon/wire/codec.h"

namespace enclavon::runtime {
namespace {

wire::ResultMessage ErrorResult(wire::ResultStatus status,
                                std::string message) {
  return {status, wire::EncodeValue(std::move(message))};
}

// Best-effort text from an error body, which is a text or a (kind, message)
// pair of texts.
std::string DescribeBody(wire::ResultStatus status, ByteSpan body) {
  if (status == wire::ResultStatus::kHandlerFailed) {
    auto pair = wire::DecodeValue<std::tuple<std::string, std::string>>(body);
    if (pair.ok()) {
      return absl::StrCat(std::get<0>(*pair), ": ", std::get<1>(*pair));
    }
  }
  auto text = wire::DecodeValue<std::string>(body);
  if (text.ok()) return *text;
  return "(undecodable error body)";
}

absl::Status RemoteError(const wire::ResultMessage& result) {
  std::string detail = DescribeBody(result.status, result.body);
  std::string message = absl::StrCat(
      "enclave replied ", std::string(wire::ResultStatusName(result.status)),
      ": ", detail);
  switch (result.status) {
    case wire::ResultStatus::kUnknownCall:
      return MakeError(ErrorKind::kUnknownCall, message);
    case wire::ResultStatus::kBadArgument:
      return MakeError(ErrorKind::kBadArgument, message);
    case wire::ResultStatus::kHandlerFailed: {
      absl::Status status = MakeError(ErrorKind::kHandlerFailed, message);
      auto pair =
          wire::DecodeValue<std::tuple<std::string, std::string>>(result.body);
      if (pair.ok()) {
        std::optional<ErrorKind> kind = ErrorKindFromName(std::get<0>(*pair));
        if (kind.has_value()) status = WithRemoteErrorKind(status, *kind);
      }
      return status;
    }
    default:
      return MakeError(ErrorKind::kMalformed, message);
  }
}

absl::Status RunEnclaveSession(const Registry& registry,
                               std::unique_ptr<ByteStream> stream,
                               Timeout timeout) {
  Connection connection(std::move(stream));
  absl::Status status = EnclaveHandshake(registry, connection, timeout);
  if (status.ok()) status = ServeLoop(registry, connection);
  connection.CloseWrite();
  return status;
}

absl::Status RunClientSession(const Registry& registry, const ClientMain& main,
                              std::unique_ptr<ByteStream> stream,
                              Timeout timeout) {
  Connection connection(std::move(stream));
  absl::Status status = ClientHandshake(registry, connection, timeout);
  if (status.ok()) {
    Client client(connection, timeout);
    status = main(client);
  }
  connection.CloseWrite();
  return status;
}

absl::StatusOr<std::unique_ptr<ByteStream>> ConnectWithRetry(
    const RunOptions& options) {
  auto deadline = std::chrono::steady_clock::now() + options.connect_retry;
  while (true) {
    absl::StatusOr<std::unique_ptr<ByteStream>> stream =
        TcpConnect(options.address);
    if (stream.ok() ||
        !HasErrorKind(stream.status(), ErrorKind::kConnectFailure) ||
        std::chrono::steady_clock::now() >= deadline) {
      return stream;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kClient:
      return "client";
    case Role::kEnclave:
      return "enclave";
    case Role::kLocal:
      return "local";
  }
  return "unknown";
}

absl::StatusOr<Role> ParseRole(std::string_view name) {
  for (Role role : {Role::kClient, Role::kEnclave, Role::kLocal}) {
    if (RoleName(role) == name) return role;
  }
  return MakeError(ErrorKind::kUsage,
                   absl::StrCat("unknown role '", std::string(name),
                                "' (expected client, enclave or local)"));
}

Bytes EncodeHandlerFailure(const absl::Status& status) {
  return wire::EncodeValue(
      std::make_tuple(std::string(ErrorKindName(GetErrorKind(status))),
                      std::string(status.message())));
}

absl::StatusOr<uint32_t> Registry::Add(std::string name, size_t arity,
                                       ErasedHandler handler) {
  if (sealed_) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("cannot register '", name,
                                  "' after the application started"));
  }
  if (arity > kMaxArity) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("'", name, "' has arity ", arity,
                                  ", the maximum is ", kMaxArity));
  }
  uint32_t id = static_cast<uint32_t>(entries_.size());
  entries_.push_back(RegistryEntry{
      id, std::move(name), static_cast<uint8_t>(arity), std::move(handler)});
  return id;
}

wire::Digest Registry::Digest() const {
  wire::Encoder e;
  for (const RegistryEntry& entry : entries_) {
    e.PutU32(entry.call_id);
    e.PutLengthPrefixed(ToBytes(entry.name));
    e.PutU8(entry.arity);
  }
  Bytes input = e.Take();
  wire::Digest digest;
  unsigned int len = 0;
  EVP_Digest(input.data(), input.size(), digest.data(), &len, EVP_sha256(),
             nullptr);
  return digest;
}

wire::ResultMessage Registry::Dispatch(const wire::CallMessage& call) const {
  if (call.call_id >= entries_.size()) {
    return ErrorResult(wire::ResultStatus::kUnknownCall,
                       absl::StrCat("no function with call id ", call.call_id));
  }
  const RegistryEntry& entry = entries_[call.call_id];
  if (call.args.size() != entry.arity) {
    return ErrorResult(wire::ResultStatus::kBadArgument,
                       absl::StrCat("'", entry.name, "' takes ", entry.arity,
                                    " arguments, got ", call.args.size()));
  }
  if (!entry.handler) {
    return {wire::ResultStatus::kHandlerFailed,
            EncodeHandlerFailure(MakeError(
                ErrorKind::kUsage, "registry has no handlers in this role"))};
  }
  HandlerOutcome outcome = entry.handler(call.args);
  return {outcome.status, std::move(outcome.body)};
}

absl::StatusOr<SecureHandle> SecureHandle::ApplyEncoded(Bytes arg) const {
  if (pending_args_.size() >= arity_) {
    return MakeError(ErrorKind::kArity,
                     absl::StrCat("call id ", call_id_, " takes ", arity_,
                                  " arguments; cannot apply another"));
  }
  SecureHandle out = *this;
  out.pending_args_.push_back(std::move(arg));
  return out;
}

absl::StatusOr<SecureHandle> App::RegisterFunction(std::string name,
                                                   size_t arity,
                                                   ErasedHandler handler) {
  if (!in_enclave()) handler = nullptr;
  ENCLAVON_ASSIGN_OR_RETURN(
      uint32_t id, registry_.Add(std::move(name), arity, std::move(handler)));
  return SecureHandle(id, arity);
}

absl::StatusOr<Bytes> Client::GatewayRaw(const SecureHandle& handle) {
  if (handle.pending_args().size() != handle.arity()) {
    return MakeError(
        ErrorKind::kArity,
        absl::StrCat("call id ", handle.call_id(), " needs ", handle.arity(),
                     " arguments, has ", handle.pending_args().size()));
  }
  std::lock_guard<std::mutex> lock(mu_);
  ++calls_;
  ENCLAVON_RETURN_IF_ERROR(connection_.Send(
      wire::CallMessage{handle.call_id(), handle.pending_args()}));
  ENCLAVON_ASSIGN_OR_RETURN(wire::Message reply, connection_.Receive(timeout_));
  auto* result = std::get_if<wire::ResultMessage>(&reply);
  if (result == nullptr) {
    return MakeError(ErrorKind::kMalformed, "expected a RESULT message");
  }
  if (result->status != wire::ResultStatus::kOk) return RemoteError(*result);
  return std::move(result->body);
}

absl::Status EnclaveHandshake(const Registry& registry, Connection& connection,
                              Timeout timeout) {
  ENCLAVON_ASSIGN_OR_RETURN(wire::Message message, connection.Receive(timeout));
  auto* digest = std::get_if<wire::DigestMessage>(&message);
  if (digest == nullptr) {
    return MakeError(ErrorKind::kMalformed, "expected a DIGEST message");
  }
  bool accepted = digest->digest == registry.Digest();
  ENCLAVON_RETURN_IF_ERROR(connection.Send(wire::DigestAckMessage{accepted}));
  if (!accepted) {
    return MakeError(ErrorKind::kRegistryMismatch,
                     "client registry differs from the enclave registry");
  }
  return absl::OkStatus();
}

absl::Status ClientHandshake(const Registry& registry, Connection& connection,
                             Timeout timeout) {
  ENCLAVON_RETURN_IF_ERROR(
      connection.Send(wire::DigestMessage{registry.Digest()}));
  ENCLAVON_ASSIGN_OR_RETURN(wire::Message message, connection.Receive(timeout));
  auto* ack = std::get_if<wire::DigestAckMessage>(&message);
  if (ack == nullptr) {
    return MakeError(ErrorKind::kMalformed, "expected a DIGEST_ACK message");
  }
  if (!ack->accepted) {
    return MakeError(ErrorKind::kRegistryMismatch,
                     "enclave registry differs from the client registry");
  }
  return absl::OkStatus();
}

absl::Status ServeLoop(const Registry& registry, Connection& connection) {
  while (true) {
    absl::StatusOr<std::optional<Bytes>> frame =
        connection.ReceiveFrame(std::nullopt);
    if (!frame.ok()) {
      // The stream cannot be resynchronised after a framing error.
      connection
          .Send(ErrorResult(wire::ResultStatus::kMalformed,
                            std::string(frame.status().message())))
          .IgnoreError();
      return frame.status();
    }
    if (!frame->has_value()) return absl::OkStatus();
    absl::StatusOr<wire::Message> message = wire::DecodeMessage(**frame);
    wire::ResultMessage reply;
    if (!message.ok()) {
      reply = ErrorResult(wire::ResultStatus::kMalformed,
                          std::string(message.status().message()));
    } else if (auto* call = std::get_if<wire::CallMessage>(&*message)) {
      reply = registry.Dispatch(*call);
    } else {
      reply = ErrorResult(wire::ResultStatus::kMalformed,
                          "expected a CALL message");
    }
    ENCLAVON_RETURN_IF_ERROR(connection.Send(reply));
  }
}

absl::Status RunApp(const AppBuilder& build, const RunOptions& options) {
  Timeout timeout = options.timeout;
  switch (options.role) {
    case Role::kEnclave: {
      App app(Role::kEnclave);
      ENCLAVON_RETURN_IF_ERROR(build(app).status());
      app.Seal();
      ENCLAVON_ASSIGN_OR_RETURN(std::unique_ptr<TcpListener> listener,
                                TcpListener::Listen(options.address));
      if (options.on_listening) options.on_listening(listener->port());
      ENCLAVON_ASSIGN_OR_RETURN(std::unique_ptr<ByteStream> stream,
                                listener->Accept());
      return RunEnclaveSession(app.registry(), std::move(stream), std::nullopt);
    }
    case Role::kClient: {
      App app(Role::kClient);
      ENCLAVON_ASSIGN_OR_RETURN(ClientMain main, build(app));
      app.Seal();
      ENCLAVON_ASSIGN_OR_RETURN(std::unique_ptr<ByteStream> stream,
                                ConnectWithRetry(options));
      if (options.capture != nullptr) {
        stream = MakeCapturingStream(std::move(stream), options.capture);
      }
      return RunClientSession(app.registry(), main, std::move(stream), timeout);
    }
    case Role::kLocal: {
      App enclave_app(Role::kEnclave);
      ENCLAVON_RETURN_IF_ERROR(build(enclave_app).status());
      enclave_app.Seal();
      App client_app(Role::kClient);
      ENCLAVON_ASSIGN_OR_RETURN(ClientMain main, build(client_app));
      client_app.Seal();
      auto [client_end, enclave_end] = MakeInMemoryPair();
      if (options.capture != nullptr) {
        client_end =
            MakeCapturingStream(std::move(client_end), options.capture);
      }
      absl::Status enclave_status;
      std::thread enclave([&, stream = std::move(enclave_end)]() mutable {
        enclave_status = RunEnclaveSession(enclave_app.registry(),
                                           std::move(stream), std::nullopt);
      });
      absl::Status client_status = RunClientSession(
          client_app.registry(), main, std::move(client_end), timeout);
      enclave.join();
      if (!client_status.ok()) return client_status;
      return enclave_status;
    }
  }
  return MakeError(ErrorKind::kUsage, "unknown role");
}

}  // namespace enclavon::runtime
