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

#ifndef ENCLAVON_RUNTIME_APP_H_
#define ENCLAVON_RUNTIME_APP_H_

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"
#include "enclavon/runtime/transport.h"
#include "enclavon/wire/codec.h"
#include "enclavon/wire/message.h"

namespace enclavon::runtime {

// Chosen once at startup. kLocal runs both roles in one process over an
// in-memory channel.
enum class Role { kClient, kEnclave, kLocal };

std::string_view RoleName(Role role);
absl::StatusOr<Role> ParseRole(std::string_view name);

inline constexpr size_t kMaxArity = wire::kMaxCallArgs;
inline constexpr uint32_t kUnboundCallId = 0xffffffff;

struct HandlerOutcome {
  wire::ResultStatus status = wire::ResultStatus::kOk;
  Bytes body;
};

using ErasedHandler =
    std::function<HandlerOutcome(const std::vector<Bytes>& args)>;

// Body of a RESULT with status kHandlerFailed: the error kind name and the
// message, as a pair of texts.
Bytes EncodeHandlerFailure(const absl::Status& status);

struct RegistryEntry {
  uint32_t call_id = 0;
  std::string name;
  uint8_t arity = 0;
  ErasedHandler handler;  // empty in the client role
};

class Registry {
 public:
  // kUsage once sealed or if arity exceeds kMaxArity.
  absl::StatusOr<uint32_t> Add(std::string name, size_t arity,
                               ErasedHandler handler);
  void Seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }
  const std::vector<RegistryEntry>& entries() const { return entries_; }

  // SHA-256 over every (call id u32 LE, name as u32 LE length plus bytes,
  // arity u8) triple in registration order.
  wire::Digest Digest() const;

  // Runs the handler for one CALL.
  wire::ResultMessage Dispatch(const wire::CallMessage& call) const;

 private:
  std::vector<RegistryEntry> entries_;
  bool sealed_ = false;
};

// A call id plus arguments that are already canonically encoded.
class SecureHandle {
 public:
  SecureHandle(uint32_t call_id, size_t arity)
      : call_id_(call_id), arity_(arity) {}

  uint32_t call_id() const { return call_id_; }
  size_t arity() const { return arity_; }
  const std::vector<Bytes>& pending_args() const { return pending_args_; }

  // A copy with `arg` appended. kArity when the handle is saturated.
  absl::StatusOr<SecureHandle> ApplyEncoded(Bytes arg) const;

 private:
  uint32_t call_id_;
  size_t arity_;
  std::vector<Bytes> pending_args_;
};

// Typed view of a SecureHandle: a function living in the enclave that
// still expects Args.
template <typename Sig>
class Secure;

template <typename R, typename... Args>
class Secure<R(Args...)> {
 public:
  // Unbound: a gateway call on it is answered with UnknownCall.
  Secure() : handle_(kUnboundCallId, sizeof...(Args)) {}
  explicit Secure(SecureHandle handle) : handle_(std::move(handle)) {}
  const SecureHandle& handle() const { return handle_; }

 private:
  SecureHandle handle_;
};

template <typename R, typename A, typename... Rest>
Secure<R(Rest...)> Apply(const Secure<R(A, Rest...)>& f,
                         const std::type_identity_t<A>& arg) {
  return Secure<R(Rest...)>(
      *f.handle().ApplyEncoded(wire::EncodeValue<A>(arg)));
}

template <typename R, typename A, typename B, typename... Rest,
          typename... More>
auto Apply(const Secure<R(A, B, Rest...)>& f, const std::type_identity_t<A>& a,
           const std::type_identity_t<B>& b, const More&... more) {
  return Apply(Apply(f, a), b, more...);
}

// A value that exists only in enclave memory. The client role holds an
// empty token.
template <typename T>
class EnclaveConst {
 public:
  EnclaveConst() = default;
  explicit EnclaveConst(std::shared_ptr<const T> value)
      : value_(std::move(value)) {}

  // kUsage in the client role.
  absl::StatusOr<const T*> Get() const {
    if (value_ == nullptr) {
      return MakeError(ErrorKind::kUsage,
                       "enclave value read outside the enclave");
    }
    return value_.get();
  }

 private:
  std::shared_ptr<const T> value_;
};

// A mutable cell in enclave memory that persists across gateway calls.
template <typename T>
class EnclaveRef {
 public:
  EnclaveRef() = default;
  EnclaveRef(size_t slot, std::shared_ptr<T> cell)
      : slot_(slot), cell_(std::move(cell)) {}

  size_t slot() const { return slot_; }

  absl::StatusOr<T> Read() const {
    ENCLAVON_ASSIGN_OR_RETURN(T * cell, Mutable());
    return *cell;
  }
  absl::Status Write(T value) const {
    ENCLAVON_ASSIGN_OR_RETURN(T * cell, Mutable());
    *cell = std::move(value);
    return absl::OkStatus();
  }
  // In-place access for handlers. kUsage in the client role.
  absl::StatusOr<T*> Mutable() const {
    if (cell_ == nullptr) {
      return MakeError(ErrorKind::kUsage,
                       "enclave reference used outside the enclave");
    }
    return cell_.get();
  }

 private:
  size_t slot_ = 0;
  std::shared_ptr<T> cell_;
};

namespace internal {

template <typename T>
struct UnwrapStatusOr {
  using type = T;
};
template <typename T>
struct UnwrapStatusOr<absl::StatusOr<T>> {
  using type = T;
};

template <typename R, typename... Args, typename F, size_t... I>
HandlerOutcome InvokeTyped(const F& fn, const std::vector<Bytes>& args,
                           std::index_sequence<I...>) {
  std::tuple<absl::StatusOr<Args>...> decoded{
      wire::DecodeValue<Args>(args[I])...};
  absl::Status bad;
  size_t index = 0;
  auto check = [&](const absl::Status& s) {
    if (bad.ok() && !s.ok()) {
      bad = MakeError(
          ErrorKind::kBadArgument,
          absl::StrCat("argument ", index, ": ", std::string(s.message())));
    }
    ++index;
  };
  (check(std::get<I>(decoded).status()), ...);
  static_cast<void>(check);
  if (!bad.ok()) {
    return {wire::ResultStatus::kBadArgument,
            wire::EncodeValue(std::string(bad.message()))};
  }
  absl::StatusOr<R> result;
  try {
    result = fn(std::move(*std::get<I>(decoded))...);
  } catch (const std::exception& e) {
    result = MakeError(ErrorKind::kInternal,
                       absl::StrCat("handler threw: ", e.what()));
  } catch (...) {
    result = MakeError(ErrorKind::kInternal, "handler threw");
  }
  if (!result.ok()) {
    return {wire::ResultStatus::kHandlerFailed,
            EncodeHandlerFailure(result.status())};
  }
  return {wire::ResultStatus::kOk, wire::EncodeValue<R>(*result)};
}

}  // namespace internal

// The application-building phase. The same building code runs in both
// roles: the enclave keeps handlers and values, the client keeps only call
// ids and empty tokens, so registration order lines up by construction.
class App {
 public:
  // `role` must be kClient or kEnclave.
  explicit App(Role role) : role_(role) {}

  Role role() const { return role_; }
  bool in_enclave() const { return role_ == Role::kEnclave; }

  template <typename T>
  EnclaveConst<T> InEnclaveConstant(T value) {
    if (!in_enclave()) return EnclaveConst<T>();
    return EnclaveConst<T>(std::make_shared<const T>(std::move(value)));
  }

  // `make` runs only in the enclave role.
  template <typename F>
  auto InEnclaveConstantFrom(F make) -> EnclaveConst<decltype(make())> {
    using T = decltype(make());
    if (!in_enclave()) return EnclaveConst<T>();
    return EnclaveConst<T>(std::make_shared<const T>(make()));
  }

  template <typename T>
  EnclaveRef<T> NewRef(T initial) {
    size_t slot = ref_count_++;
    if (!in_enclave()) return EnclaveRef<T>(slot, nullptr);
    return EnclaveRef<T>(slot, std::make_shared<T>(std::move(initial)));
  }

  // Registers `fn` under the next call id. `fn` takes Args and returns R or
  // absl::StatusOr<R>; a failed status or an exception becomes a
  // HandlerFailed reply. kUsage after Seal.
  template <typename Sig, typename F>
  absl::StatusOr<Secure<Sig>> InEnclave(std::string name, F fn) {
    return RegisterTyped(std::move(name), std::move(fn),
                         static_cast<Sig*>(nullptr));
  }

  // Untyped registration. kUsage after Seal or if arity > kMaxArity.
  absl::StatusOr<SecureHandle> RegisterFunction(std::string name, size_t arity,
                                                ErasedHandler handler);

  void Seal() { registry_.Seal(); }
  const Registry& registry() const { return registry_; }

 private:
  template <typename R, typename... Args, typename F>
  absl::StatusOr<Secure<R(Args...)>> RegisterTyped(std::string name, F fn,
                                                   R (*)(Args...)) {
    static_assert(sizeof...(Args) <= kMaxArity, "at most 8 arguments");
    static_assert((wire::Serializable<Args> && ...),
                  "gateway arguments need a wire::Codec");
    static_assert(wire::Serializable<R>, "gateway results need a wire::Codec");
    ErasedHandler handler;
    if (in_enclave()) {
      handler = [fn = std::move(fn)](const std::vector<Bytes>& args) {
        return internal::InvokeTyped<R, Args...>(
            fn, args, std::index_sequence_for<Args...>());
      };
    }
    ENCLAVON_ASSIGN_OR_RETURN(
        SecureHandle h,
        RegisterFunction(std::move(name), sizeof...(Args), std::move(handler)));
    return Secure<R(Args...)>(std::move(h));
  }

  Role role_;
  Registry registry_;
  size_t ref_count_ = 0;
};

// The client side of an established connection.
class Client {
 public:
  Client(Connection& connection, Timeout timeout)
      : connection_(connection), timeout_(timeout) {}

  // Sends CALL and waits for the RESULT body. kArity unless the handle is
  // saturated; remote failures map to kUnknownCall, kBadArgument,
  // kHandlerFailed (with the remote kind attached) and kMalformed.
  absl::StatusOr<Bytes> GatewayRaw(const SecureHandle& handle);

  // kBadResult if the body does not decode as R.
  template <typename R>
  absl::StatusOr<R> Gateway(const Secure<R()>& f) {
    ENCLAVON_ASSIGN_OR_RETURN(Bytes body, GatewayRaw(f.handle()));
    absl::StatusOr<R> value = wire::DecodeValue<R>(body);
    if (!value.ok()) {
      return MakeError(ErrorKind::kBadResult,
                       absl::StrCat("cannot decode result: ",
                                    std::string(value.status().message())));
    }
    return value;
  }

  size_t calls() const { return calls_; }

 private:
  std::mutex mu_;
  Connection& connection_;
  Timeout timeout_;
  size_t calls_ = 0;
};

using ClientMain = std::function<absl::Status(Client&)>;
// Builds the application; returns the client computation. In the enclave
// role the returned computation is not run.
using AppBuilder = std::function<absl::StatusOr<ClientMain>(App&)>;

struct RunOptions {
  Role role = Role::kLocal;
  std::string address = std::string(kDefaultAddress);
  std::chrono::milliseconds timeout = kDefaultTimeout;
  // How long a client keeps retrying a refused connection.
  std::chrono::milliseconds connect_retry{0};
  // Records client-side traffic when set.
  std::shared_ptr<WireCapture> capture;
  // Enclave role: called with the bound port before accepting.
  std::function<void(uint16_t)> on_listening;
};

// Enclave side: waits for DIGEST and answers DIGEST_ACK. kRegistryMismatch
// if the digests differ.
absl::Status EnclaveHandshake(const Registry& registry, Connection& connection,
                              Timeout timeout);
// Client side: sends DIGEST and expects an accepting DIGEST_ACK.
absl::Status ClientHandshake(const Registry& registry, Connection& connection,
                             Timeout timeout);

// Answers CALLs one at a time until the peer closes the stream. Undecodable
// messages get a Malformed RESULT and the loop continues.
absl::Status ServeLoop(const Registry& registry, Connection& connection);

absl::Status RunApp(const AppBuilder& build, const RunOptions& options);

}  // namespace enclavon::runtime

#endif  // ENCLAVON_RUNTIME_APP_H_
