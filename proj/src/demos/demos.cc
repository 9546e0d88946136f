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

#include "enclavon/demos/demos.h"

#include <chrono>
#include <future>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/calculus/syntax.h"
#include "enclavon/cleanroom/cleanroom.h"
#include "enclavon/common/status.h"
#include "enclavon/demos/wallet.h"
#include "enclavon/fedagg/fedagg.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/semantics/evaluator.h"
#include "enclavon/semantics/properties.h"

namespace enclavon::demos {
namespace {

using runtime::App;
using runtime::Client;
using runtime::ClientMain;

constexpr uint64_t kDefaultUserSeed = 500;
constexpr int kCleanRoomUsers = 500;
constexpr int64_t kSalaryLo = 10000;
constexpr int64_t kSalaryHi = 50000;
constexpr uint64_t kDefaultWeightSeed = 7;

std::shared_ptr<ifc::EntropySource> EnclaveEntropy(const DemoOptions& options) {
  if (options.seed.has_value()) {
    return std::make_shared<ifc::SeededEntropy>(*options.seed);
  }
  return std::make_shared<ifc::OsEntropy>();
}

// Client randomness is kept apart from the enclave's so that the two
// sides never draw from one stream in local runs.
std::unique_ptr<ifc::EntropySource> ClientEntropy(const DemoOptions& options) {
  if (options.seed.has_value()) {
    return std::make_unique<ifc::SeededEntropy>(*options.seed ^
                                                0x9e3779b97f4a7c15ULL);
  }
  return std::make_unique<ifc::OsEntropy>();
}

std::string FormatWeights(const std::vector<double>& w) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << "[";
  for (size_t i = 0; i < w.size(); ++i) s << (i ? ", " : "") << w[i];
  s << "]";
  return s.str();
}

bool IsTransportKind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kTransportTimeout:
    case ErrorKind::kConnectFailure:
    case ErrorKind::kDisconnected:
    case ErrorKind::kRegistryMismatch:
    case ErrorKind::kFrameTooLarge:
    case ErrorKind::kMalformed:
    case ErrorKind::kBadResult:
    case ErrorKind::kUnknownCall:
      return true;
    default:
      return false;
  }
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  ErrorKind kind = GetErrorKind(status);
  if (kind == ErrorKind::kIntegrity ||
      GetRemoteErrorKind(status) == ErrorKind::kIntegrity) {
    return kExitIntegrity;
  }
  if (IsTransportKind(kind)) return kExitTransport;
  return kExitUsage;
}

absl::Status CounterDemo(const DemoOptions& options, std::ostream& out,
                         int calls) {
  return runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        runtime::EnclaveRef<int64_t> ref = app.NewRef<int64_t>(0);
        ENCLAVON_ASSIGN_OR_RETURN(
            auto count, app.InEnclave<int64_t()>(
                            "count", [ref]() -> absl::StatusOr<int64_t> {
                              ENCLAVON_ASSIGN_OR_RETURN(int64_t v, ref.Read());
                              ENCLAVON_RETURN_IF_ERROR(ref.Write(v + 1));
                              return v;
                            }));
        return ClientMain([count, calls, &out](Client& client) -> absl::Status {
          for (int i = 0; i < calls; ++i) {
            ENCLAVON_ASSIGN_OR_RETURN(int64_t v, client.Gateway(count));
            out << "Counter's #" << v << "\n";
          }
          return absl::OkStatus();
        });
      },
      options.run);
}

absl::Status PasswordCheckDemo(const DemoOptions& options, std::istream& in,
                               std::ostream& out) {
  return runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        runtime::EnclaveConst<std::string> pwd =
            app.InEnclaveConstant(std::string("secret"));
        ENCLAVON_ASSIGN_OR_RETURN(
            auto checker,
            app.InEnclave<bool(std::string)>(
                "pwdChkr",
                [pwd](const std::string& guess) -> absl::StatusOr<bool> {
                  ENCLAVON_ASSIGN_OR_RETURN(const std::string* p, pwd.Get());
                  return ConstantTimeEquals(*p, guess);
                }));
        return ClientMain([checker, &in, &out](Client& client) -> absl::Status {
          std::string guess;
          std::getline(in, guess);
          ENCLAVON_ASSIGN_OR_RETURN(
              bool ok, client.Gateway(runtime::Apply(checker, guess)));
          out << "Login returned " << (ok ? "True" : "False") << "\n";
          return absl::OkStatus();
        });
      },
      options.run);
}

absl::Status CleanRoomDemo(const DemoOptions& options, std::ostream& out) {
  cleanroom::CleanRoomConfig config;
  config.entropy = EnclaveEntropy(options);
  std::unique_ptr<ifc::EntropySource> client_entropy = ClientEntropy(options);
  return runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        ENCLAVON_ASSIGN_OR_RETURN(cleanroom::CleanRoomApi api,
                                  cleanroom::RegisterCleanRoom(app, config));
        return ClientMain([&, api](Client& client) -> absl::Status {
          std::vector<cleanroom::User> users = cleanroom::GenerateUsers(
              options.seed.value_or(kDefaultUserSeed), kCleanRoomUsers);
          ENCLAVON_ASSIGN_OR_RETURN(
              cleanroom::CleanRoomRun run,
              cleanroom::RunCleanRoomClient(client, api, users, kSalaryLo,
                                            kSalaryHi, *client_entropy));
          out << "provisioned: " << run.provisioned << "\n";
          out << "res: " << run.result << "\n";
          return absl::OkStatus();
        });
      },
      options.run);
}

absl::Status FedSumDemo(const DemoOptions& options, std::ostream& out) {
  fedagg::FedAggConfig config;
  config.num_clients = 3;
  config.entropy = EnclaveEntropy(options);
  std::unique_ptr<ifc::EntropySource> client_entropy = ClientEntropy(options);
  return runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        ENCLAVON_ASSIGN_OR_RETURN(fedagg::FedAggApi api,
                                  fedagg::RegisterFedAgg(app, config));
        return ClientMain([&, api](Client& client) -> absl::Status {
          auto weights = fedagg::GenerateLocalWeights(
              options.seed.value_or(kDefaultWeightSeed), 2, config.num_clients,
              4);
          ENCLAVON_ASSIGN_OR_RETURN(
              fedagg::FedSumReport report,
              fedagg::RunFedSumClient(client, api, weights, *client_entropy));
          for (size_t e = 0; e < report.revealed.size(); ++e) {
            out << "epoch " << e
                << " average: " << FormatWeights(report.revealed[e])
                << " expected: " << FormatWeights(report.expected[e])
                << " absent replies: " << report.absent_replies[e] << "\n";
          }
          return absl::OkStatus();
        });
      },
      options.run);
}

absl::Status ValidateWalletCommand(const WalletCommand& command) {
  size_t want = 0;
  if (command.op == "add") {
    want = 4;
  } else if (command.op == "get" || command.op == "delete" ||
             command.op == "change-master") {
    want = 2;
  } else {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("unknown wallet operation: ", command.op));
  }
  if (command.args.size() != want) {
    return MakeError(ErrorKind::kUsage,
                     absl::StrCat("wallet ", command.op, " takes ", want,
                                  " arguments, got ", command.args.size()));
  }
  return absl::OkStatus();
}

StoreFactory EnvironmentStore() {
  return []() -> absl::StatusOr<std::shared_ptr<ifc::SecureStore>> {
    auto entropy = std::make_shared<ifc::OsEntropy>();
    ENCLAVON_ASSIGN_OR_RETURN(ifc::SecureStore store,
                              ifc::SecureStore::FromEnvironment(*entropy));
    auto* raw = new ifc::SecureStore(std::move(store));
    return std::shared_ptr<ifc::SecureStore>(
        raw, [entropy](ifc::SecureStore* s) { delete s; });
  };
}

absl::Status WalletDemo(const DemoOptions& options,
                        const WalletCommand& command,
                        const StoreFactory& make_store, std::ostream& out) {
  if (options.run.role != runtime::Role::kEnclave) {
    ENCLAVON_RETURN_IF_ERROR(ValidateWalletCommand(command));
  }
  return runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        std::shared_ptr<ifc::SecureStore> store;
        if (app.in_enclave()) {
          ENCLAVON_ASSIGN_OR_RETURN(store, make_store());
        }
        ENCLAVON_ASSIGN_OR_RETURN(WalletApi api, RegisterWallet(app, store));
        return ClientMain([&, api](Client& client) -> absl::Status {
          const std::vector<std::string>& a = command.args;
          ReturnCode code;
          std::string password;
          if (command.op == "add") {
            ENCLAVON_ASSIGN_OR_RETURN(
                code, client.Gateway(
                          runtime::Apply(api.add, a[0], a[1], a[2], a[3])));
          } else if (command.op == "get") {
            ENCLAVON_ASSIGN_OR_RETURN(
                auto got, client.Gateway(runtime::Apply(api.get, a[0], a[1])));
            code = got.first;
            password = std::move(got.second);
          } else if (command.op == "delete") {
            ENCLAVON_ASSIGN_OR_RETURN(
                code, client.Gateway(runtime::Apply(api.remove, a[0], a[1])));
          } else {
            ENCLAVON_ASSIGN_OR_RETURN(
                code,
                client.Gateway(runtime::Apply(api.change_master, a[0], a[1])));
          }
          out << ReturnCodeName(code) << "\n";
          if (command.op == "get" && code == ReturnCode::kSuccess) {
            out << "password: " << password << "\n";
          }
          return absl::OkStatus();
        });
      },
      options.run);
}

absl::Status RunCalc(std::string_view program, std::ostream& out) {
  ENCLAVON_ASSIGN_OR_RETURN(calculus::ExpPtr e,
                            calculus::ParseProgram(program));
  ENCLAVON_ASSIGN_OR_RETURN(semantics::TwoPassResult r,
                            semantics::EvalTwoPass(*e));
  out << "value: " << calculus::PrintValue(r.value) << "\n";
  out << "enclave env: " << calculus::PrintEnv(r.enclave_env) << "\n";
  out << "client env: " << calculus::PrintEnv(r.client_env) << "\n";
  return absl::OkStatus();
}

absl::Status RunFuzz(uint64_t first_seed, int count, int budget,
                     std::ostream& out) {
  if (count < 0 || budget < 1) {
    return MakeError(ErrorKind::kUsage, "count and budget must be positive");
  }
  struct Named {
    const char* name;
    semantics::PropertyReport report;
  };
  Named runs[] = {
      {"noninterference",
       semantics::CheckNoninterferenceCases(first_seed, count, budget)},
      {"association", semantics::CheckAssociation(first_seed, count, budget)},
      {"enclave-free oracle",
       semantics::CheckEnclaveFreeOracle(first_seed, count, budget)},
  };
  int failures = 0;
  for (const Named& n : runs) {
    out << n.name << ": " << n.report.cases << " cases, " << n.report.failures
        << " failures\n";
    if (n.report.failures > 0) {
      out << "  first failure: " << n.report.first_failure << "\n";
    }
    failures += n.report.failures;
  }
  if (failures > 0) {
    return MakeError(ErrorKind::kInternal,
                     absl::StrCat(failures, " property failures"));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> MeasureGatewayRoundTrip(int calls) {
  if (calls < 1) return MakeError(ErrorKind::kUsage, "calls must be positive");
  runtime::AppBuilder build = [&](App& app) -> absl::StatusOr<ClientMain> {
    ENCLAVON_ASSIGN_OR_RETURN(
        auto echo,
        app.InEnclave<int64_t(int64_t)>("echo", [](int64_t x) { return x; }));
    return ClientMain([echo](Client&) { return absl::OkStatus(); });
  };

  std::mutex mu;
  bool announced = false;
  std::promise<uint16_t> port_promise;
  auto announce = [&](uint16_t port) {
    std::lock_guard<std::mutex> lock(mu);
    if (announced) return;
    announced = true;
    port_promise.set_value(port);
  };
  absl::Status enclave_status;
  std::thread enclave([&] {
    runtime::RunOptions options;
    options.role = runtime::Role::kEnclave;
    options.address = "127.0.0.1:0";
    options.on_listening = announce;
    enclave_status = runtime::RunApp(build, options);
    announce(0);
  });
  uint16_t port = port_promise.get_future().get();
  if (port == 0) {
    enclave.join();
    return enclave_status;
  }

  double mean_us = 0;
  runtime::RunOptions options;
  options.role = runtime::Role::kClient;
  options.address = absl::StrCat("127.0.0.1:", port);
  absl::Status client_status = runtime::RunApp(
      [&](App& app) -> absl::StatusOr<ClientMain> {
        ENCLAVON_ASSIGN_OR_RETURN(auto echo,
                                  app.InEnclave<int64_t(int64_t)>(
                                      "echo", [](int64_t x) { return x; }));
        return ClientMain([&, echo](Client& client) -> absl::Status {
          auto start = std::chrono::steady_clock::now();
          for (int i = 0; i < calls; ++i) {
            ENCLAVON_ASSIGN_OR_RETURN(
                int64_t v,
                client.Gateway(runtime::Apply(echo, static_cast<int64_t>(i))));
            if (v != i)
              return MakeError(ErrorKind::kBadResult, "echo mismatch");
          }
          std::chrono::duration<double, std::micro> elapsed =
              std::chrono::steady_clock::now() - start;
          mean_us = elapsed.count() / calls;
          return absl::OkStatus();
        });
      },
      options);
  enclave.join();
  ENCLAVON_RETURN_IF_ERROR(client_status);
  ENCLAVON_RETURN_IF_ERROR(enclave_status);
  return mean_us;
}

absl::Status RunBench(int calls, std::ostream& out) {
  ENCLAVON_ASSIGN_OR_RETURN(double mean_us, MeasureGatewayRoundTrip(calls));
  out << std::fixed << std::setprecision(1)
      << "gateway round-trip over loopback TCP: mean " << mean_us << " us over "
      << calls << " calls\n";
  return absl::OkStatus();
}

}  // namespace enclavon::demos
