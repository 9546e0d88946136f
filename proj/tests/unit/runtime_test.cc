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

#include <atomic>
#include <bit>
#include <chrono>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"
#include "enclavon/runtime/app.h"
#include "enclavon/runtime/transport.h"
#include "enclavon/wire/codec.h"
#include "enclavon/wire/frame.h"
#include "enclavon/wire/message.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace enclavon::runtime {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

// The password checker: a secret constant and a function over it.
absl::StatusOr<ClientMain> PasswordApp(App& app, std::vector<bool>* results) {
  EnclaveConst<std::string> pwd = app.InEnclaveConstant(std::string("secret"));
  ENCLAVON_ASSIGN_OR_RETURN(
      auto checker,
      app.InEnclave<bool(std::string)>(
          "pwdChkr", [pwd](const std::string& guess) -> absl::StatusOr<bool> {
            ENCLAVON_ASSIGN_OR_RETURN(const std::string* p, pwd.Get());
            return *p == guess;
          }));
  return ClientMain([checker, results](Client& client) -> absl::Status {
    for (const char* guess : {"secret", "wrong"}) {
      ENCLAVON_ASSIGN_OR_RETURN(
          bool ok, client.Gateway(Apply(checker, std::string(guess))));
      results->push_back(ok);
    }
    return absl::OkStatus();
  });
}

// Counter: returns the value before incrementing it.
absl::StatusOr<ClientMain> CounterApp(App& app, std::vector<int64_t>* seen,
                                      int calls) {
  EnclaveRef<int64_t> ref = app.NewRef<int64_t>(0);
  ENCLAVON_ASSIGN_OR_RETURN(
      auto count,
      app.InEnclave<int64_t()>("count", [ref]() -> absl::StatusOr<int64_t> {
        ENCLAVON_ASSIGN_OR_RETURN(int64_t v, ref.Read());
        ENCLAVON_RETURN_IF_ERROR(ref.Write(v + 1));
        return v;
      }));
  return ClientMain([count, seen, calls](Client& client) -> absl::Status {
    for (int i = 0; i < calls; ++i) {
      ENCLAVON_ASSIGN_OR_RETURN(int64_t v, client.Gateway(count));
      seen->push_back(v);
    }
    return absl::OkStatus();
  });
}

// Runs `main` against an enclave built by `build` over an in-memory pair.
absl::Status RunLocalWith(const AppBuilder& build,
                          std::shared_ptr<WireCapture> capture = nullptr,
                          std::chrono::milliseconds timeout = kDefaultTimeout) {
  RunOptions options;
  options.role = Role::kLocal;
  options.capture = std::move(capture);
  options.timeout = timeout;
  return RunApp(build, options);
}

Bytes Frame(const wire::Message& m) {
  return *wire::EncodeFrame(*wire::EncodeMessage(m));
}

TEST(RoleTest, Names) {
  EXPECT_EQ(*ParseRole("client"), Role::kClient);
  EXPECT_EQ(*ParseRole("enclave"), Role::kEnclave);
  EXPECT_EQ(*ParseRole("local"), Role::kLocal);
  EXPECT_TRUE(HasErrorKind(ParseRole("server").status(), ErrorKind::kUsage));
}

TEST(RegistryTest, DenseCallIds) {
  App app(Role::kEnclave);
  auto a = app.InEnclave<int64_t()>("a", [] { return int64_t{1}; });
  auto b = app.InEnclave<int64_t(int64_t)>("b", [](int64_t x) { return x; });
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(a->handle().call_id(), 0u);
  EXPECT_EQ(b->handle().call_id(), 1u);
  EXPECT_EQ(b->handle().arity(), 1u);
  EXPECT_TRUE(b->handle().pending_args().empty());
}

TEST(RegistryTest, ArityCapAndSealing) {
  App app(Role::kEnclave);
  EXPECT_TRUE(app.RegisterFunction("eight", 8, nullptr).ok());
  EXPECT_TRUE(HasErrorKind(app.RegisterFunction("nine", 9, nullptr).status(),
                           ErrorKind::kUsage));
  app.Seal();
  auto late = app.InEnclave<int64_t()>("late", [] { return int64_t{0}; });
  EXPECT_TRUE(HasErrorKind(late.status(), ErrorKind::kUsage));
}

TEST(RegistryTest, ClientDropsHandlers) {
  App app(Role::kClient);
  bool ran = false;
  auto f = app.InEnclave<int64_t()>("f", [&ran] {
    ran = true;
    return int64_t{0};
  });
  ASSERT_TRUE(f.ok());
  EXPECT_FALSE(app.registry().entries()[0].handler);
  wire::ResultMessage r = app.registry().Dispatch(wire::CallMessage{0, {}});
  EXPECT_EQ(r.status, wire::ResultStatus::kHandlerFailed);
  EXPECT_FALSE(ran);
}

TEST(DigestTest, KnownVectors) {
  // Oracle values from an independent SHA-256 over the documented layout.
  Registry empty;
  EXPECT_EQ(HexEncode(empty.Digest()),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Registry one;
  ASSERT_TRUE(one.Add("f", 1, nullptr).ok());
  EXPECT_EQ(HexEncode(one.Digest()),
            "067e223655715694c8815e90aeaa4f2592bfd222c201cbfbb328f15a0c0c7aec");
  App app(Role::kClient);
  std::vector<bool> unused;
  ASSERT_TRUE(PasswordApp(app, &unused).ok());
  EXPECT_EQ(HexEncode(app.registry().Digest()),
            "490f3f017cbdaa8c5515dc8baba544ef4b1f82f48eebe4de83480d49350eb969");
}

TEST(HandlerFailureTest, BodyIsKindAndMessage) {
  EXPECT_EQ(HexEncode(EncodeHandlerFailure(MakeError(ErrorKind::kUsage, "x"))),
            "0500000055736167650100000078");
}

TEST(DigestTest, SameInBothRolesAndSensitiveToChanges) {
  auto build = [](Role role, std::vector<std::pair<std::string, size_t>> fs) {
    App app(role);
    for (auto& [name, arity] : fs) {
      EXPECT_TRUE(app.RegisterFunction(name, arity, nullptr).ok());
    }
    return app.registry().Digest();
  };
  auto base = build(Role::kEnclave, {{"f", 1}, {"g", 2}});
  EXPECT_EQ(base, build(Role::kClient, {{"f", 1}, {"g", 2}}));
  EXPECT_NE(base, build(Role::kClient, {{"f", 1}, {"h", 2}}));
  EXPECT_NE(base, build(Role::kClient, {{"g", 2}, {"f", 1}}));
  EXPECT_NE(base, build(Role::kClient, {{"f", 1}, {"g", 3}}));
  EXPECT_NE(base, build(Role::kClient, {{"f", 1}, {"g", 2}, {"k", 0}}));
}

TEST(CallIdAgreementTest, GeneratedPrograms) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::string, size_t>> program;
    int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      program.push_back({"fn" + std::to_string(rng() % 1000), rng() % 9});
    }
    App enclave(Role::kEnclave), client(Role::kClient);
    std::vector<uint32_t> enclave_ids, client_ids;
    for (auto& [name, arity] : program) {
      enclave_ids.push_back(
          enclave.RegisterFunction(name, arity, nullptr)->call_id());
      client_ids.push_back(
          client.RegisterFunction(name, arity, nullptr)->call_id());
    }
    EXPECT_EQ(enclave_ids, client_ids);
    for (size_t i = 0; i < enclave_ids.size(); ++i) {
      EXPECT_EQ(enclave.registry().entries()[i].call_id, enclave_ids[i]);
      EXPECT_EQ(enclave_ids[i], i);
    }
    EXPECT_EQ(enclave.registry().Digest(), client.registry().Digest());
  }
}

TEST(ApplyTest, AccumulatesEncodedArgumentsWithValueSemantics) {
  App app(Role::kClient);
  auto f = *app.InEnclave<int64_t(int64_t, std::string)>(
      "f", [](int64_t, std::string) { return int64_t{0}; });
  auto g = Apply(f, 2);
  EXPECT_TRUE(f.handle().pending_args().empty());
  EXPECT_THAT(g.handle().pending_args(),
              ElementsAre(wire::EncodeValue(int64_t{2})));
  auto h = Apply(g, "x");
  EXPECT_THAT(h.handle().pending_args(),
              ElementsAre(wire::EncodeValue(int64_t{2}),
                          wire::EncodeValue(std::string("x"))));
  auto both = Apply(f, 2, "x");
  EXPECT_EQ(both.handle().pending_args(), h.handle().pending_args());
}

TEST(ApplyTest, OverApplicationIsArityError) {
  SecureHandle h(0, 2);
  auto one = h.ApplyEncoded(Bytes{1});
  auto two = one->ApplyEncoded(Bytes{2});
  ASSERT_TRUE(two.ok());
  EXPECT_TRUE(
      HasErrorKind(two->ApplyEncoded(Bytes{3}).status(), ErrorKind::kArity));
}

TEST(ApplyTest, UnderAppliedGatewayFailsBeforeTraffic) {
  auto [a, b] = MakeInMemoryPair();
  auto capture = std::make_shared<WireCapture>();
  Connection conn(MakeCapturingStream(std::move(a), capture));
  Client client(conn, std::chrono::milliseconds(100));
  SecureHandle h(0, 2);
  EXPECT_TRUE(HasErrorKind(client.GatewayRaw(h).status(), ErrorKind::kArity));
  EXPECT_TRUE(capture->sent().empty());
}

TEST(RefTest, EnclaveReadWrite) {
  App app(Role::kEnclave);
  EnclaveRef<int64_t> ref = app.NewRef<int64_t>(0);
  ASSERT_TRUE(ref.Write(5).ok());
  EXPECT_EQ(*ref.Read(), 5);
}

TEST(RefTest, ClientRoleIsUsageError) {
  App app(Role::kClient);
  EnclaveRef<int64_t> ref = app.NewRef<int64_t>(0);
  EXPECT_TRUE(HasErrorKind(ref.Read().status(), ErrorKind::kUsage));
  EXPECT_TRUE(HasErrorKind(ref.Write(1), ErrorKind::kUsage));
  EnclaveConst<std::string> c = app.InEnclaveConstant(std::string("x"));
  EXPECT_TRUE(HasErrorKind(c.Get().status(), ErrorKind::kUsage));
  bool made = false;
  auto lazy = app.InEnclaveConstantFrom([&made] {
    made = true;
    return 1;
  });
  EXPECT_FALSE(made);
  EXPECT_FALSE(lazy.Get().ok());
}

TEST(LocalRunTest, PasswordChecker) {
  std::vector<bool> results;
  absl::Status s =
      RunLocalWith([&](App& app) { return PasswordApp(app, &results); });
  ASSERT_TRUE(s.ok()) << s;
  EXPECT_THAT(results, ElementsAre(true, false));
}

TEST(LocalRunTest, CounterPersistsAcrossCalls) {
  std::vector<int64_t> seen;
  absl::Status s =
      RunLocalWith([&](App& app) { return CounterApp(app, &seen, 3); });
  ASSERT_TRUE(s.ok()) << s;
  EXPECT_THAT(seen, ElementsAre(0, 1, 2));
}

TEST(LocalRunTest, ConstantNeverCrossesTheWire) {
  auto capture = std::make_shared<WireCapture>();
  std::vector<bool> results;
  ASSERT_TRUE(RunLocalWith([&](App& app) { return PasswordApp(app, &results); },
                           capture)
                  .ok());
  EXPECT_FALSE(capture->sent().empty());
  // The guess "secret" is a client value and is sent; the constant itself
  // would have to appear in the enclave-to-client direction to leak.
  EXPECT_FALSE(ContainsBytes(capture->received(), "secret"));
  EXPECT_TRUE(ContainsBytes(capture->sent(), "secret"));
}

TEST(LocalRunTest, ConstantBytesAbsentInEitherDirection) {
  auto capture = std::make_shared<WireCapture>();
  absl::Status s = RunLocalWith(
      [](App& app) -> absl::StatusOr<ClientMain> {
        auto key = app.InEnclaveConstant(std::string("k3y-S3NTINEL"));
        ENCLAVON_ASSIGN_OR_RETURN(
            auto len,
            app.InEnclave<int64_t()>("len", [key]() -> absl::StatusOr<int64_t> {
              ENCLAVON_ASSIGN_OR_RETURN(const std::string* k, key.Get());
              return static_cast<int64_t>(k->size());
            }));
        return ClientMain([len](Client& c) -> absl::Status {
          ENCLAVON_ASSIGN_OR_RETURN(int64_t n, c.Gateway(len));
          EXPECT_EQ(n, 12);
          return absl::OkStatus();
        });
      },
      capture);
  ASSERT_TRUE(s.ok()) << s;
  EXPECT_FALSE(capture->Contains(ToBytes("k3y-S3NTINEL")));
}

// An app with a set of misbehaving functions, driven by `main`.
struct Faulty {
  Secure<int64_t(int64_t)> echo;
  Secure<int64_t()> fails;
  Secure<int64_t()> throws;
  Secure<std::string()> text;
  Secure<int64_t()> slow;
};

absl::Status RunFaulty(std::function<absl::Status(Client&, const Faulty&)> main,
                       std::chrono::milliseconds timeout = kDefaultTimeout) {
  return RunLocalWith(
      [main](App& app) -> absl::StatusOr<ClientMain> {
        Faulty f;
        ENCLAVON_ASSIGN_OR_RETURN(f.echo,
                                  app.InEnclave<int64_t(int64_t)>(
                                      "echo", [](int64_t x) { return x; }));
        ENCLAVON_ASSIGN_OR_RETURN(
            f.fails,
            app.InEnclave<int64_t()>("fails", []() -> absl::StatusOr<int64_t> {
              return MakeError(ErrorKind::kIntegrity, "bad seal");
            }));
        ENCLAVON_ASSIGN_OR_RETURN(
            f.throws, app.InEnclave<int64_t()>("throws", []() -> int64_t {
              throw std::runtime_error("boom");
            }));
        ENCLAVON_ASSIGN_OR_RETURN(
            f.text, app.InEnclave<std::string()>(
                        "text", [] { return std::string("hello"); }));
        ENCLAVON_ASSIGN_OR_RETURN(f.slow, app.InEnclave<int64_t()>("slow", [] {
          std::this_thread::sleep_for(std::chrono::milliseconds(400));
          return int64_t{7};
        }));
        return ClientMain(
            [main, f](Client& client) { return main(client, f); });
      },
      nullptr, timeout);
}

TEST(GatewayErrorTest, UnknownCall) {
  absl::Status s = RunFaulty([](Client& c, const Faulty&) {
    absl::Status st = c.GatewayRaw(SecureHandle(999, 0)).status();
    EXPECT_TRUE(HasErrorKind(st, ErrorKind::kUnknownCall)) << st;
    EXPECT_THAT(std::string(st.message()), HasSubstr("999"));
    return absl::OkStatus();
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayErrorTest, BadArgument) {
  absl::Status s = RunFaulty([](Client& c, const Faulty& f) {
    SecureHandle h = *f.echo.handle().ApplyEncoded(Bytes{1, 2, 3});
    EXPECT_TRUE(
        HasErrorKind(c.GatewayRaw(h).status(), ErrorKind::kBadArgument));
    SecureHandle wrong_count(f.text.handle().call_id(), 1);
    wrong_count = *wrong_count.ApplyEncoded(wire::EncodeValue(int64_t{1}));
    EXPECT_TRUE(HasErrorKind(c.GatewayRaw(wrong_count).status(),
                             ErrorKind::kBadArgument));
    return absl::OkStatus();
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayErrorTest, HandlerFailedCarriesRemoteKind) {
  absl::Status s = RunFaulty([](Client& c, const Faulty& f) {
    absl::Status st = c.Gateway(f.fails).status();
    EXPECT_TRUE(HasErrorKind(st, ErrorKind::kHandlerFailed)) << st;
    EXPECT_EQ(GetRemoteErrorKind(st), ErrorKind::kIntegrity);
    EXPECT_THAT(std::string(st.message()), HasSubstr("bad seal"));
    absl::Status thrown = c.Gateway(f.throws).status();
    EXPECT_TRUE(HasErrorKind(thrown, ErrorKind::kHandlerFailed));
    EXPECT_THAT(std::string(thrown.message()), HasSubstr("boom"));
    // The connection stays usable after failures.
    EXPECT_EQ(*c.Gateway(Apply(f.echo, 5)), 5);
    return absl::OkStatus();
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayErrorTest, BadResult) {
  absl::Status s = RunFaulty([](Client& c, const Faulty& f) {
    // Reinterpret a text-returning function as returning a bool.
    Secure<bool()> wrong(f.text.handle());
    EXPECT_TRUE(HasErrorKind(c.Gateway(wrong).status(), ErrorKind::kBadResult));
    return absl::OkStatus();
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayErrorTest, Timeout) {
  absl::Status s = RunFaulty(
      [](Client& c, const Faulty& f) {
        absl::Status st = c.Gateway(f.slow).status();
        EXPECT_TRUE(HasErrorKind(st, ErrorKind::kTransportTimeout)) << st;
        return absl::OkStatus();
      },
      std::chrono::milliseconds(50));
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayTest, CopySemanticsBitExact) {
  std::mt19937_64 rng(99);
  absl::Status s = RunLocalWith([&](App& app) -> absl::StatusOr<ClientMain> {
    using Rec = std::tuple<int64_t, std::string, std::vector<double>, bool>;
    ENCLAVON_ASSIGN_OR_RETURN(
        auto id, app.InEnclave<Rec(Rec)>("id", [](Rec r) { return r; }));
    ENCLAVON_ASSIGN_OR_RETURN(auto raw, app.InEnclave<Bytes(Bytes)>(
                                            "raw", [](Bytes b) { return b; }));
    return ClientMain([&rng, id, raw](Client& c) -> absl::Status {
      for (int i = 0; i < 300; ++i) {
        std::vector<double> ds(rng() % 20);
        for (double& d : ds) d = std::bit_cast<double>(rng());
        std::string text(rng() % 40, 'a' + static_cast<char>(rng() % 26));
        Rec v{static_cast<int64_t>(rng()), text, ds, (rng() & 1) != 0};
        ENCLAVON_ASSIGN_OR_RETURN(Bytes body,
                                  c.GatewayRaw(Apply(id, v).handle()));
        EXPECT_EQ(body, wire::EncodeValue(v));
        Bytes blob(rng() % 5000);
        for (uint8_t& b : blob) b = static_cast<uint8_t>(rng());
        ENCLAVON_ASSIGN_OR_RETURN(Bytes back, c.Gateway(Apply(raw, blob)));
        EXPECT_EQ(back, blob);
      }
      return absl::OkStatus();
    });
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(GatewayTest, ConcurrentCallersAreSerialized) {
  absl::Status s = RunLocalWith([](App& app) -> absl::StatusOr<ClientMain> {
    ENCLAVON_ASSIGN_OR_RETURN(
        auto echo,
        app.InEnclave<int64_t(int64_t)>("echo", [](int64_t x) { return x; }));
    return ClientMain([echo](Client& c) -> absl::Status {
      std::atomic<int> mismatches{0};
      std::vector<std::thread> threads;
      for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
          for (int64_t i = 0; i < 100; ++i) {
            int64_t v = t * 1000 + i;
            absl::StatusOr<int64_t> r = c.Gateway(Apply(echo, v));
            if (!r.ok() || *r != v) ++mismatches;
          }
        });
      }
      for (auto& th : threads) th.join();
      EXPECT_EQ(mismatches.load(), 0);
      EXPECT_EQ(c.calls(), 400u);
      return absl::OkStatus();
    });
  });
  EXPECT_TRUE(s.ok()) << s;
}

TEST(HandshakeTest, MismatchedRegistriesFail) {
  absl::Status s = RunLocalWith([](App& app) -> absl::StatusOr<ClientMain> {
    ENCLAVON_RETURN_IF_ERROR(
        app.InEnclave<int64_t()>("a", [] { return int64_t{1}; }).status());
    if (app.in_enclave()) {
      ENCLAVON_RETURN_IF_ERROR(
          app.InEnclave<int64_t()>("extra", [] { return int64_t{2}; })
              .status());
    }
    return ClientMain([](Client&) { return absl::OkStatus(); });
  });
  EXPECT_TRUE(HasErrorKind(s, ErrorKind::kRegistryMismatch)) << s;
}

// Drives ServeLoop directly with raw bytes.
class ServeLoopTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_TRUE(registry_
                    .Add("echo", 1,
                         [](const std::vector<Bytes>& args) {
                           return HandlerOutcome{wire::ResultStatus::kOk,
                                                 args[0]};
                         })
                    .ok());
    registry_.Seal();
    auto [client, enclave] = MakeInMemoryPair();
    client_ = std::move(client);
    server_ = std::thread([this, stream = std::move(enclave)]() mutable {
      Connection conn(std::move(stream));
      serve_status_ = ServeLoop(registry_, conn);
    });
  }

  std::vector<wire::ResultMessage> Finish() {
    client_->CloseWrite();
    server_.join();
    Connection conn(std::move(client_));
    std::vector<wire::ResultMessage> out;
    while (true) {
      auto frame = conn.ReceiveFrame(std::chrono::milliseconds(1000));
      if (!frame.ok() || !frame->has_value()) break;
      auto m = wire::DecodeMessage(**frame);
      if (!m.ok()) break;
      out.push_back(std::get<wire::ResultMessage>(*m));
    }
    return out;
  }

  Registry registry_;
  std::unique_ptr<ByteStream> client_;
  std::thread server_;
  absl::Status serve_status_;
};

TEST_F(ServeLoopTest, EchoIsBitExactAndOrdered) {
  ASSERT_TRUE(client_->Write(Frame(wire::CallMessage{0, {Bytes{1, 2}}})).ok());
  ASSERT_TRUE(client_->Write(Frame(wire::CallMessage{0, {Bytes{3}}})).ok());
  auto results = Finish();
  EXPECT_TRUE(serve_status_.ok());
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0],
            (wire::ResultMessage{wire::ResultStatus::kOk, Bytes{1, 2}}));
  EXPECT_EQ(results[1],
            (wire::ResultMessage{wire::ResultStatus::kOk, Bytes{3}}));
}

TEST_F(ServeLoopTest, MalformedThenValid) {
  ASSERT_TRUE(client_->Write(*wire::EncodeFrame(Bytes{0x7f, 1, 2})).ok());
  ASSERT_TRUE(client_->Write(Frame(wire::DigestAckMessage{true})).ok());
  ASSERT_TRUE(client_->Write(Frame(wire::CallMessage{0, {Bytes{9}}})).ok());
  auto results = Finish();
  ASSERT_EQ(results.size(), 3u);
  EXPECT_EQ(results[0].status, wire::ResultStatus::kMalformed);
  EXPECT_EQ(results[1].status, wire::ResultStatus::kMalformed);
  EXPECT_EQ(results[2],
            (wire::ResultMessage{wire::ResultStatus::kOk, Bytes{9}}));
}

TEST_F(ServeLoopTest, OversizedFrameEndsTheSession) {
  ASSERT_TRUE(client_->Write(Bytes{0x7f, 0xff, 0xff, 0xff}).ok());
  auto results = Finish();
  EXPECT_TRUE(HasErrorKind(serve_status_, ErrorKind::kFrameTooLarge));
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].status, wire::ResultStatus::kMalformed);
}

TEST_F(ServeLoopTest, CleanEof) {
  auto results = Finish();
  EXPECT_TRUE(serve_status_.ok());
  EXPECT_TRUE(results.empty());
}

TEST(TransportTest, InMemoryTimeoutAndEof) {
  auto [a, b] = MakeInMemoryPair();
  EXPECT_TRUE(HasErrorKind(a->ReadSome(std::chrono::milliseconds(10)).status(),
                           ErrorKind::kTransportTimeout));
  ASSERT_TRUE(b->Write(Bytes{1}).ok());
  EXPECT_EQ(*a->ReadSome(std::nullopt), Bytes{1});
  b->CloseWrite();
  EXPECT_TRUE(a->ReadSome(std::nullopt)->empty());
}

TEST(TransportTest, TruncatedFrameAtEofIsMalformed) {
  auto [a, b] = MakeInMemoryPair();
  ASSERT_TRUE(b->Write(Bytes{0, 0, 0, 5, 1, 2, 3}).ok());
  b->CloseWrite();
  Connection conn(std::move(a));
  EXPECT_TRUE(HasErrorKind(conn.ReceiveFrame(std::nullopt).status(),
                           ErrorKind::kMalformed));
}

TEST(TransportTest, ParseAddress) {
  auto hp = ParseAddress("127.0.0.1:7455");
  ASSERT_TRUE(hp.ok());
  EXPECT_EQ(hp->first, "127.0.0.1");
  EXPECT_EQ(hp->second, 7455);
  EXPECT_FALSE(ParseAddress("localhost").ok());
  EXPECT_FALSE(ParseAddress("h:99999").ok());
  EXPECT_FALSE(ParseAddress("h:").ok());
  EXPECT_FALSE(ParseAddress(":80").ok());
}

TEST(TcpTest, CounterAcrossProcessesStyleRoles) {
  std::vector<int64_t> enclave_seen;
  std::vector<int64_t> seen;
  std::promise<uint16_t> port_promise;
  auto port_future = port_promise.get_future();
  absl::Status enclave_status;
  std::thread enclave([&] {
    RunOptions options;
    options.role = Role::kEnclave;
    options.address = "127.0.0.1:0";
    options.on_listening = [&](uint16_t port) { port_promise.set_value(port); };
    enclave_status = RunApp(
        [&](App& app) { return CounterApp(app, &enclave_seen, 3); }, options);
  });
  uint16_t port = port_future.get();
  RunOptions options;
  options.role = Role::kClient;
  options.address = "127.0.0.1:" + std::to_string(port);
  options.capture = std::make_shared<WireCapture>();
  absl::Status s =
      RunApp([&](App& app) { return CounterApp(app, &seen, 3); }, options);
  enclave.join();
  EXPECT_TRUE(s.ok()) << s;
  EXPECT_TRUE(enclave_status.ok()) << enclave_status;
  EXPECT_THAT(seen, ElementsAre(0, 1, 2));
  EXPECT_TRUE(enclave_seen.empty());
  // DIGEST frame first on the wire.
  Bytes sent = options.capture->sent();
  ASSERT_GE(sent.size(), 5u + 32u);
  EXPECT_EQ(HexEncode(ByteSpan(sent).first(5)), "0000002103");
}

TEST(TcpTest, UnreachableEnclaveIsConnectFailure) {
  // Bind and release a port so nothing listens on it.
  uint16_t port;
  {
    auto listener = TcpListener::Listen("127.0.0.1:0");
    ASSERT_TRUE(listener.ok());
    port = (*listener)->port();
  }
  RunOptions options;
  options.role = Role::kClient;
  options.address = "127.0.0.1:" + std::to_string(port);
  std::vector<int64_t> seen;
  absl::Status s =
      RunApp([&](App& app) { return CounterApp(app, &seen, 1); }, options);
  EXPECT_TRUE(HasErrorKind(s, ErrorKind::kConnectFailure)) << s;
}

}  // namespace
}  // namespace enclavon::runtime
