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

// Runs every acceptance criterion at its stated tolerance and prints one
// PASS or FAIL line per criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/calculus/syntax.h"
#include "enclavon/calculus/value.h"
#include "enclavon/cleanroom/cleanroom.h"
#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"
#include "enclavon/demos/demos.h"
#include "enclavon/demos/wallet.h"
#include "enclavon/fedagg/fedagg.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/ifc/seal.h"
#include "enclavon/ifc/secure_store.h"
#include "enclavon/paillier/bigint.h"
#include "enclavon/paillier/paillier.h"
#include "enclavon/runtime/app.h"
#include "enclavon/runtime/transport.h"
#include "enclavon/semantics/evaluator.h"
#include "enclavon/semantics/properties.h"
#include "enclavon/wire/codec.h"
#include "enclavon/wire/frame.h"
#include "enclavon/wire/message.h"
#include "tests/support/wallet_model.h"

namespace enclavon::acceptance {
namespace {

namespace fs = std::filesystem;
using calculus::Closure;
using calculus::Dummy;
using calculus::Env;
using calculus::IntVal;
using calculus::SecureClosure;
using calculus::Value;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Fail(std::string detail) { return {false, std::move(detail)}; }
Outcome FailStatus(std::string_view what, const absl::Status& s) {
  return {false, absl::StrCat(std::string(what), ": ", s.ToString())};
}

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << " s";
  return out.str();
}

constexpr double kLaplaceScale = 10.0;
const double kLaplaceBound = kLaplaceScale * std::log(1000.0);

// b * (ln 1000 - (1/1000) * sum_{k=1..1000} ln k), by brute force.
double MeanAbsOracle(double b) {
  double sum = 0;
  for (int k = 1; k <= 1000; ++k) sum += std::log(static_cast<double>(k));
  return b * (std::log(1000.0) - sum / 1000.0);
}

// Variance of the discrete sampler: b^2 * mean over k of ln^2(1000 / k),
// that is 2 b^2 times the discrete correction factor.
double VarianceOracle(double b) {
  double sum = 0;
  for (int k = 1; k <= 1000; ++k) {
    double l = std::log(1000.0 / k);
    sum += l * l;
  }
  return b * b * sum / 1000.0;
}

Outcome SampleProgram() {
  Clock::time_point start = Clock::now();
  std::ifstream in(ENCLAVON_SAMPLE_PROGRAM);
  std::stringstream text;
  text << in.rdbuf();
  std::ostringstream printed;
  absl::Status s = demos::RunCalc(text.str(), printed);
  if (!s.ok()) return FailStatus("calc", s);
  auto program = calculus::ParseProgram(text.str());
  if (!program.ok()) return FailStatus("parse", program.status());
  auto r = semantics::EvalTwoPass(**program);
  if (!r.ok()) return FailStatus("eval", r.status());
  Closure f{{"x"},
            calculus::MakePlus(calculus::MakeVar("x"), calculus::MakeVar("m")),
            Env::FromBindings({{"m", IntVal{3}}})};
  Env enclave = Env::FromBindings(
      {{"y", Dummy{}}, {"EncVar0", f}, {"f", f}, {"m", IntVal{3}}});
  Env client = Env::FromBindings({{"y", SecureClosure{"EncVar0", {}}},
                                  {"EncVar0", Dummy{}},
                                  {"f", f},
                                  {"m", IntVal{3}}});
  double elapsed = SecondsSince(start);
  if (!(r->value == Value(IntVal{5}))) {
    return Fail("value is " + calculus::PrintValue(r->value));
  }
  if (!(r->enclave_env == enclave)) {
    return Fail("enclave env is " + calculus::PrintEnv(r->enclave_env));
  }
  if (!(r->client_env == client)) {
    return Fail("client env is " + calculus::PrintEnv(r->client_env));
  }
  if (printed.str().rfind("value: IntVal 5\n", 0) != 0) {
    return Fail("calc printed " + printed.str());
  }
  if (elapsed >= 1.0) return Fail("took " + Seconds(elapsed));
  return {true, "IntVal 5, both environments exact, " + Seconds(elapsed)};
}

Outcome Property(const semantics::PropertyReport& report, int min_cases,
                 double elapsed, double limit) {
  std::string detail = absl::StrCat(report.cases, " cases, ", report.failures,
                                    " failures, ", Seconds(elapsed));
  if (report.cases < min_cases) return Fail("too few cases: " + detail);
  if (report.failures > 0) {
    return Fail(detail + "; first: " + report.first_failure);
  }
  if (elapsed >= limit) return Fail("over time: " + detail);
  return {true, detail};
}

Outcome Noninterference() {
  Clock::time_point start = Clock::now();
  auto report = semantics::CheckNoninterferenceCases(0, 1000);
  return Property(report, 1000, SecondsSince(start), 60.0);
}

Outcome Association() {
  Clock::time_point start = Clock::now();
  auto report = semantics::CheckAssociation(0, 500);
  return Property(report, 500, SecondsSince(start), 1e9);
}

Outcome EnclaveFreeOracle() {
  Clock::time_point start = Clock::now();
  auto report = semantics::CheckEnclaveFreeOracle(0, 1000);
  return Property(report, 1000, SecondsSince(start), 1e9);
}

Outcome RuntimeDemos() {
  std::ostringstream counter;
  absl::Status s = demos::CounterDemo(demos::DemoOptions{}, counter);
  if (!s.ok()) return FailStatus("counter", s);
  if (counter.str() != "Counter's #0\nCounter's #1\nCounter's #2\n") {
    return Fail("counter printed " + counter.str());
  }
  for (const std::string guess :
       {"secret", "Secret", "secret ", "", "secre", "secrets", "wrong"}) {
    std::istringstream in(guess + "\n");
    std::ostringstream out;
    s = demos::PasswordCheckDemo(demos::DemoOptions{}, in, out);
    if (!s.ok()) return FailStatus("pwdcheck", s);
    std::string want =
        guess == "secret" ? "Login returned True\n" : "Login returned False\n";
    if (out.str() != want) {
      return Fail("pwdcheck '" + guess + "' printed " + out.str());
    }
  }
  // Client and enclave builds that disagree on one gateway name.
  s = runtime::RunApp(
      [](runtime::App& app) -> absl::StatusOr<runtime::ClientMain> {
        std::string name = app.in_enclave() ? "pwdChkr" : "pwdChecker";
        ENCLAVON_ASSIGN_OR_RETURN(
            auto f, app.InEnclave<bool(std::string)>(
                        name, [](const std::string& g) { return g == "x"; }));
        return runtime::ClientMain([f](runtime::Client& c) {
          return c.Gateway(runtime::Apply(f, std::string("x"))).status();
        });
      },
      runtime::RunOptions{});
  if (!HasErrorKind(s, ErrorKind::kRegistryMismatch)) {
    return FailStatus("mismatched registries were accepted", s);
  }
  return {true,
          "counter 0/1/2, pwdcheck True only for \"secret\" over 7 guesses, "
          "digest mismatch rejected"};
}

wire::Message RandomMessage(std::mt19937_64& rng) {
  auto random_bytes = [&](size_t max) {
    Bytes b(rng() % (max + 1));
    for (auto& x : b) x = static_cast<uint8_t>(rng());
    return b;
  };
  switch (rng() % 4) {
    case 0: {
      wire::CallMessage m;
      m.call_id = static_cast<uint32_t>(rng());
      size_t argc = rng() % (wire::kMaxCallArgs + 1);
      for (size_t i = 0; i < argc; ++i) m.args.push_back(random_bytes(64));
      return m;
    }
    case 1:
      return wire::ResultMessage{static_cast<wire::ResultStatus>(rng() % 5),
                                 random_bytes(200)};
    case 2: {
      wire::DigestMessage m;
      for (auto& b : m.digest) b = static_cast<uint8_t>(rng());
      return m;
    }
    default:
      return wire::DigestAckMessage{rng() % 2 == 0};
  }
}

Outcome Wire() {
  std::mt19937_64 rng(6);
  int failures = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    wire::Message m = RandomMessage(rng);
    auto enc = wire::EncodeMessage(m);
    if (!enc.ok()) {
      ++failures;
      continue;
    }
    auto framed = wire::EncodeFrame(*enc);
    auto unframed = framed.ok() ? wire::DecodeFrame(*framed)
                                : absl::StatusOr<Bytes>(framed.status());
    auto dec = unframed.ok() ? wire::DecodeMessage(*unframed)
                             : absl::StatusOr<wire::Message>(unframed.status());
    if (!dec.ok() || !(*dec == m)) ++failures;
  }
  auto ab = wire::EncodeFrame(ToBytes("AB"));
  std::string ab_hex = ab.ok() ? HexEncode(*ab) : "error";
  std::string detail = absl::StrCat(n, " messages, ", failures,
                                    " failures, \"AB\" frame ", ab_hex);
  if (failures > 0 || ab_hex != "000000024142") return Fail(detail);
  return {true, detail};
}

Outcome Sealing() {
  ifc::RootSealKey key =
      *ifc::RootSealKey::FromHex("000102030405060708090a0b0c0d0e0f");
  ifc::RootSealKey other =
      *ifc::RootSealKey::FromHex("0f0e0d0c0b0a09080706050403020100");
  ifc::SeededEntropy entropy(7);
  for (size_t n :
       {size_t{0}, size_t{1}, size_t{16}, size_t{4097}, size_t{1} << 20}) {
    Bytes data = ifc::RandomBytes(entropy, n);
    auto back = key.Unseal(key.Seal(data, entropy));
    if (!back.ok() || *back != data) {
      return Fail(absl::StrCat("roundtrip failed at ", n, " bytes"));
    }
  }
  Bytes blob = key.Seal(
      ifc::RandomBytes(entropy, 64 - ifc::kSealHeaderSize - ifc::kTagSize),
      entropy);
  if (blob.size() != 64) return Fail("blob is not 64 bytes");
  int rejected = 0;
  for (size_t bit = 0; bit < 512; ++bit) {
    Bytes bad = blob;
    bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    if (HasErrorKind(key.Unseal(bad).status(), ErrorKind::kIntegrity)) {
      ++rejected;
    }
  }
  bool wrong_key =
      HasErrorKind(other.Unseal(blob).status(), ErrorKind::kIntegrity);
  ifc::OsEntropy os;
  std::set<Bytes> nonces;
  for (int i = 0; i < 10000; ++i) {
    Bytes b = key.Seal(ToBytes("same"), os);
    nonces.insert(Bytes(b.begin() + 5, b.begin() + 5 + ifc::kNonceSize));
  }
  std::string detail = absl::StrCat("roundtrip to 1 MiB, ", rejected,
                                    "/512 flips rejected, wrong key ",
                                    wrong_key ? "rejected" : "accepted", ", ",
                                    nonces.size(), "/10000 distinct nonces");
  if (rejected != 512 || !wrong_key || nonces.size() != 10000) {
    return Fail(detail);
  }
  return {true, detail};
}

mpz_class RandomBelow(ifc::EntropySource& e, const mpz_class& n) {
  size_t bytes = (mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8 + 8;
  return FromBigEndian(ifc::RandomBytes(e, bytes)) % n;
}

Outcome Paillier() {
  Clock::time_point start = Clock::now();
  ifc::SeededEntropy e(8);
  auto kp = paillier::GenerateKeyPair(512, e);
  if (!kp.ok()) return FailStatus("keygen", kp.status());
  const paillier::PublicKey& pk = kp->public_key;
  const paillier::PrivateKey& sk = kp->private_key;
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    mpz_class m = RandomBelow(e, pk.n);
    if (paillier::Decrypt(sk, pk, *paillier::Encrypt(pk, m, e)) != m) ++bad;
  }
  int bad_add = 0;
  for (int i = 0; i < 200; ++i) {
    mpz_class a = RandomBelow(e, pk.n);
    mpz_class b = RandomBelow(e, pk.n);
    paillier::Ciphertext sum = paillier::HomAdd(
        pk, *paillier::Encrypt(pk, a, e), *paillier::Encrypt(pk, b, e));
    if (paillier::Decrypt(sk, pk, sum) != mpz_class((a + b) % pk.n)) {
      ++bad_add;
    }
  }
  int bad_scalar = 0;
  for (int i = 0; i < 20; ++i) {
    mpz_class a = RandomBelow(e, pk.n);
    paillier::Ciphertext c = *paillier::Encrypt(pk, a, e);
    for (int k : {0, 1, 2, 17}) {
      auto s = paillier::ScalarMul(pk, c, mpz_class(k));
      if (!s.ok() ||
          paillier::Decrypt(sk, pk, *s) != mpz_class((a * k) % pk.n)) {
        ++bad_scalar;
      }
    }
  }
  double elapsed = SecondsSince(start);
  std::string detail = absl::StrCat(
      "roundtrip ", 100 - bad, "/100, add ", 200 - bad_add, "/200, scalar ",
      80 - bad_scalar, "/80 (k in 0,1,2,17), ", Seconds(elapsed));
  if (bad || bad_add || bad_scalar || elapsed >= 120) return Fail(detail);
  return {true, detail};
}

Outcome Laplace() {
  Clock::time_point start = Clock::now();
  ifc::SeededEntropy e(20260101);
  const int n = 100000;
  double sum = 0, abs_sum = 0;
  int outside = 0;
  for (int i = 0; i < n; ++i) {
    auto x = cleanroom::LaplaceSample(e, kLaplaceScale);
    if (!x.ok()) return FailStatus("sample", x.status());
    if (std::fabs(*x) > kLaplaceBound + 1e-9) ++outside;
    sum += *x;
    abs_sum += std::fabs(*x);
  }
  double mean = sum / n;
  double mean_abs = abs_sum / n;
  double oracle = MeanAbsOracle(kLaplaceScale);
  double elapsed = SecondsSince(start);
  std::string detail = absl::StrCat(
      outside, " outside +-", kLaplaceBound, ", mean ", mean, ", mean|X| ",
      mean_abs, " vs oracle ", oracle, ", ", Seconds(elapsed));
  if (outside > 0 || std::fabs(mean) >= 0.2 ||
      std::fabs(mean_abs - oracle) > 0.3 || elapsed >= 30) {
    return Fail(detail);
  }
  return {true, detail};
}

struct CleanRoomSession {
  absl::Status status;
  cleanroom::CleanRoomRun run;
  std::vector<double> repeats;
};

CleanRoomSession RunCleanRoom(const std::vector<cleanroom::User>& users,
                              uint64_t enclave_seed, int repeats,
                              std::shared_ptr<runtime::WireCapture> capture) {
  CleanRoomSession out;
  runtime::RunOptions options;
  options.capture = std::move(capture);
  out.status = runtime::RunApp(
      [&](runtime::App& app) -> absl::StatusOr<runtime::ClientMain> {
        cleanroom::CleanRoomConfig config;
        if (app.in_enclave()) {
          config.entropy = std::make_shared<ifc::SeededEntropy>(enclave_seed);
        }
        ENCLAVON_ASSIGN_OR_RETURN(cleanroom::CleanRoomApi api,
                                  cleanroom::RegisterCleanRoom(app, config));
        return runtime::ClientMain(
            [&, api](runtime::Client& c) -> absl::Status {
              ifc::SeededEntropy client_entropy(enclave_seed + 1);
              ENCLAVON_ASSIGN_OR_RETURN(
                  out.run, cleanroom::RunCleanRoomClient(
                               c, api, users, 10000, 50000, client_entropy));
              for (int i = 0; i < repeats; ++i) {
                ENCLAVON_ASSIGN_OR_RETURN(
                    double r,
                    c.Gateway(runtime::Apply(api.laplace_mechanism,
                                             int64_t{10000}, int64_t{50000})));
                out.repeats.push_back(r);
              }
              return absl::OkStatus();
            });
      },
      options);
  return out;
}

Outcome CleanRoom() {
  std::vector<cleanroom::User> users = cleanroom::GenerateUsers(500, 500);
  int64_t truth =
      cleanroom::CountingQuery(users, cleanroom::SalaryWithin(10000, 50000));
  CleanRoomSession s = RunCleanRoom(users, 42, 200, nullptr);
  if (!s.status.ok()) return FailStatus("run", s.status);
  if (s.run.provisioned != 500) return Fail("not all users provisioned");
  int outside = std::fabs(s.run.result - truth) > kLaplaceBound ? 1 : 0;
  double mean = 0;
  for (double r : s.repeats) {
    if (std::fabs(r - truth) > kLaplaceBound) ++outside;
    mean += r - truth;
  }
  mean /= s.repeats.size();
  double var = 0;
  for (double r : s.repeats) var += (r - truth - mean) * (r - truth - mean);
  var /= s.repeats.size() - 1;
  double expected = VarianceOracle(kLaplaceScale);
  std::string detail = absl::StrCat(
      "true ", truth, ", first answer ", s.run.result, ", ", outside,
      " answers outside +-", kLaplaceBound, ", noise variance ", var,
      " vs oracle ", expected, " (ratio ", var / expected, ")");
  if (outside > 0 || std::fabs(var / expected - 1.0) > 0.25) {
    return Fail(detail);
  }
  return {true, detail};
}

Outcome FederatedAggregation() {
  auto weights = fedagg::GenerateLocalWeights(2024, 2, 3, 5);
  fedagg::FedSumReport report;
  runtime::RunOptions options;
  absl::Status s = runtime::RunApp(
      [&](runtime::App& app) -> absl::StatusOr<runtime::ClientMain> {
        fedagg::FedAggConfig config;
        if (app.in_enclave()) {
          config.entropy = std::make_shared<ifc::SeededEntropy>(5);
        }
        ENCLAVON_ASSIGN_OR_RETURN(fedagg::FedAggApi api,
                                  fedagg::RegisterFedAgg(app, config));
        return runtime::ClientMain([&,
                                    api](runtime::Client& c) -> absl::Status {
          ifc::SeededEntropy client_entropy(6);
          ENCLAVON_ASSIGN_OR_RETURN(
              report, fedagg::RunFedSumClient(c, api, weights, client_entropy));
          return absl::OkStatus();
        });
      },
      options);
  if (!s.ok()) return FailStatus("run", s);
  double worst = 0;
  for (size_t epoch = 0; epoch < 2; ++epoch) {
    for (size_t j = 0; j < 5; ++j) {
      double sum = 0;
      for (int c = 0; c < 3; ++c) {
        sum += std::round(weights[epoch][c][j] * 1e6) / 1e6;
      }
      worst = std::max(worst, std::fabs(report.revealed[epoch][j] - sum / 3));
    }
  }
  bool absent_ok = report.absent_replies == std::vector<int>{2, 2};
  std::string detail =
      absl::StrCat("max error ", worst, ", absent replies per epoch ",
                   report.absent_replies[0], ",", report.absent_replies[1]);
  if (worst > 1e-6 || !absent_ok) return Fail(detail);
  return {true, detail};
}

class TempDir {
 public:
  explicit TempDir(std::string_view tag) {
    path_ = fs::temp_directory_path() / absl::StrCat("enclavon_acceptance_",
                                                     std::string(tag), "_",
                                                     std::random_device{}());
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

constexpr std::string_view kKeyHex = "000102030405060708090a0b0c0d0e0f";

Outcome SecrecyScans() {
  using demos::testing::OpKind;
  using demos::testing::OpResult;
  using demos::testing::WalletOp;
  TempDir dir("secrecy");
  ifc::OsEntropy entropy;
  auto store = std::make_shared<ifc::SecureStore>(
      dir.path(), *ifc::RootSealKey::FromHex(kKeyHex), entropy);

  // Session 1 stores three sentinel passwords. Its arguments travel
  // client to enclave, so only the outward direction is scanned.
  std::vector<WalletOp> fill = {
      {OpKind::kAdd, "MP-Q7SENTINEL", "a", "user-a", "PW-A-Q7SENTINEL"},
      {OpKind::kAdd, "MP-Q7SENTINEL", "b", "user-b", "PW-B-Q7SENTINEL"},
      {OpKind::kAdd, "MP-Q7SENTINEL", "c", "user-c", "PW-C-Q7SENTINEL"},
  };
  runtime::RunOptions run;
  run.capture = std::make_shared<runtime::WireCapture>();
  std::vector<OpResult> results;
  absl::Status s = demos::testing::RunWalletSession(run, store, fill, &results);
  if (!s.ok()) return FailStatus("wallet fill", s);
  for (std::string_view pw :
       {"PW-A-Q7SENTINEL", "PW-B-Q7SENTINEL", "PW-C-Q7SENTINEL"}) {
    if (ContainsBytes(run.capture->received(), pw)) {
      return Fail(absl::StrCat("enclave sent ", std::string(pw)));
    }
  }

  // Session 2 exercises every other operation with one successful get; the
  // whole capture, both directions, may hold only that password.
  std::vector<WalletOp> use = {
      {OpKind::kGet, "MP-Q7SENTINEL", "b", "", ""},
      {OpKind::kGet, "wrong", "a", "", ""},
      {OpKind::kGet, "MP-Q7SENTINEL", "zzz", "", ""},
      {OpKind::kDelete, "MP-Q7SENTINEL", "c", "", ""},
      {OpKind::kChangeMaster, "MP-Q7SENTINEL", "MP2-Q7SENTINEL", "", ""},
      {OpKind::kGet, "MP-Q7SENTINEL", "a", "", ""},
  };
  run.capture = std::make_shared<runtime::WireCapture>();
  results.clear();
  s = demos::testing::RunWalletSession(run, store, use, &results);
  if (!s.ok()) return FailStatus("wallet use", s);
  if (results[0] != OpResult{demos::ReturnCode::kSuccess, "PW-B-Q7SENTINEL"}) {
    return Fail("get did not return the stored password");
  }
  if (!run.capture->Contains(ToBytes("PW-B-Q7SENTINEL"))) {
    return Fail("declassified password missing from the capture");
  }
  for (std::string_view pw : {"PW-A-Q7SENTINEL", "PW-C-Q7SENTINEL"}) {
    if (run.capture->Contains(ToBytes(pw))) {
      return Fail(absl::StrCat(std::string(pw), " on the wire"));
    }
  }
  auto sealed = ifc::ReadFileBytes(
      store->FileFor(*ifc::SecurePath::Create(demos::kWalletFile)));
  if (!sealed.ok()) return FailStatus("read sealed wallet", sealed.status());
  if (ContainsBytes(*sealed, "Q7SENTINEL") ||
      ContainsBytes(*sealed, HexEncode(ToBytes("PW-A-Q7SENTINEL")))) {
    return Fail("sentinel bytes in wallet.seal");
  }

  // Clean room: a sentinel user's name, salary and record never appear.
  std::vector<cleanroom::User> users = cleanroom::GenerateUsers(500, 500);
  users[17].name = "NAME-Q7SENTINEL";
  users[17].salary = 73519;
  auto capture = std::make_shared<runtime::WireCapture>();
  CleanRoomSession c = RunCleanRoom(users, 43, 0, capture);
  if (!c.status.ok()) return FailStatus("clean room", c.status);
  if (capture->Contains(ToBytes("NAME-Q7SENTINEL")) ||
      capture->Contains(wire::EncodeValue(int64_t{73519})) ||
      capture->Contains(cleanroom::SerializeUserRecord(users[17]))) {
    return Fail("clean-room sentinel on the wire");
  }
  return {true,
          "wallet: only the retrieved password left the enclave, none in "
          "wallet.seal; clean room: no sentinel name, salary or record"};
}

// Starts `enclavon wallet --role enclave` as a child process and returns the
// port it listens on.
struct EnclaveProcess {
  FILE* pipe = nullptr;
  uint16_t port = 0;
};

absl::StatusOr<EnclaveProcess> StartWalletEnclave() {
  std::string cmd = absl::StrCat("'", ENCLAVON_CLI_PATH,
                                 "' wallet --role enclave --addr 127.0.0.1:0");
  EnclaveProcess p;
  p.pipe = popen(cmd.c_str(), "r");
  if (p.pipe == nullptr) return MakeError(ErrorKind::kIo, "popen failed");
  char line[256] = {0};
  if (std::fgets(line, sizeof(line), p.pipe) == nullptr) {
    pclose(p.pipe);
    return MakeError(ErrorKind::kIo, "enclave process printed nothing");
  }
  std::string text(line);
  size_t colon = text.rfind(':');
  if (text.rfind("listening on ", 0) != 0 || colon == std::string::npos) {
    pclose(p.pipe);
    return MakeError(ErrorKind::kIo, "unexpected enclave output: " + text);
  }
  p.port = static_cast<uint16_t>(std::stoi(text.substr(colon + 1)));
  return p;
}

Outcome WalletModel() {
  using demos::testing::OpResult;
  using demos::testing::WalletOp;
  TempDir dir("wallet_model");
  setenv("HASTEE_RSK", std::string(kKeyHex).c_str(), 1);
  setenv("HASTEE_SECURE_DIR", dir.path().c_str(), 1);
  std::vector<WalletOp> ops = demos::testing::GenerateWalletOps(13, 200);
  std::vector<OpResult> results;
  for (int half = 0; half < 2; ++half) {
    auto enclave = StartWalletEnclave();
    if (!enclave.ok()) return FailStatus("enclave process", enclave.status());
    runtime::RunOptions run;
    run.role = runtime::Role::kClient;
    run.address = absl::StrCat("127.0.0.1:", enclave->port);
    std::vector<WalletOp> part(ops.begin() + half * 100,
                               ops.begin() + (half + 1) * 100);
    absl::Status s =
        demos::testing::RunWalletSession(run, nullptr, part, &results);
    int exit_status = pclose(enclave->pipe);
    if (!s.ok()) return FailStatus("wallet session", s);
    if (exit_status != 0) {
      return Fail(absl::StrCat("enclave process exited with ", exit_status));
    }
  }
  auto mismatch = demos::testing::FirstModelMismatch(ops, results);
  if (mismatch.has_value()) {
    return Fail(absl::StrCat("model mismatch at op ", *mismatch));
  }
  std::set<demos::ReturnCode> codes;
  for (const OpResult& r : results) codes.insert(r.first);
  return {true, absl::StrCat("200 ops match the model across an enclave "
                             "process restart at op 100; ",
                             codes.size(), " distinct return codes")};
}

Outcome Latency() {
  auto mean = demos::MeasureGatewayRoundTrip(1000);
  if (!mean.ok()) return FailStatus("bench", mean.status());
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << "mean loopback gateway round-trip " << *mean
      << " us over 1000 calls (informational)";
  return {true, out.str()};
}

int Main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "sample program environments", SampleProgram},
      {2, "non-interference", Noninterference},
      {3, "association of enclave application", Association},
      {4, "enclave-free oracle equivalence", EnclaveFreeOracle},
      {5, "runtime demos", RuntimeDemos},
      {6, "wire roundtrip", Wire},
      {7, "sealing", Sealing},
      {8, "paillier", Paillier},
      {9, "laplace mechanism", Laplace},
      {10, "clean room end to end", CleanRoom},
      {11, "federated aggregation", FederatedAggregation},
      {12, "secrecy scans", SecrecyScans},
      {13, "wallet model-based test", WalletModel},
      {14, "latency report", Latency},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o = c.run();
    if (!o.pass) ++failed;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL")
              << " " << c.title << " (" << o.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace enclavon::acceptance

int main() { return enclavon::acceptance::Main(); }
