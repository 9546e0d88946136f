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

// Command-line entry point for the demos, the calculus interpreter and the
// property fuzzer.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"
#include "enclavon/demos/demos.h"
#include "enclavon/runtime/app.h"
#include "enclavon/runtime/transport.h"

namespace enclavon {
namespace {

struct CommonFlags {
  std::string role = "local";
  std::string address = std::string(runtime::kDefaultAddress);
  int64_t timeout_ms = runtime::kDefaultTimeout.count();
  int64_t connect_retry_ms = 0;
  std::optional<uint64_t> seed;
  std::string capture_path;
};

void AddRunFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--role", flags.role, "client, enclave or local")
      ->check(CLI::IsMember({"client", "enclave", "local"}));
  cmd->add_option("--addr", flags.address, "HOST:PORT of the enclave");
  cmd->add_option("--timeout-ms", flags.timeout_ms,
                  "client wait for each RESULT")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--connect-retry-ms", flags.connect_retry_ms,
                  "client retry window for a refused connection")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", flags.seed, "seed for every random source");
  cmd->add_option("--capture", flags.capture_path,
                  "write client-side wire traffic as hex to FILE");
}

absl::StatusOr<demos::DemoOptions> ToDemoOptions(const CommonFlags& flags) {
  demos::DemoOptions options;
  ENCLAVON_ASSIGN_OR_RETURN(options.run.role, runtime::ParseRole(flags.role));
  options.run.address = flags.address;
  options.run.timeout = std::chrono::milliseconds(flags.timeout_ms);
  options.run.connect_retry = std::chrono::milliseconds(flags.connect_retry_ms);
  options.seed = flags.seed;
  if (!flags.capture_path.empty()) {
    options.run.capture = std::make_shared<runtime::WireCapture>();
  }
  options.run.on_listening = [host = flags.address](uint16_t port) {
    std::string h = host.substr(0, host.rfind(':'));
    std::cout << "listening on " << h << ":" << port << std::endl;
  };
  return options;
}

absl::Status WriteCapture(const CommonFlags& flags,
                          const demos::DemoOptions& options) {
  if (options.run.capture == nullptr) return absl::OkStatus();
  std::ofstream out(flags.capture_path, std::ios::trunc);
  out << "sent " << HexEncode(options.run.capture->sent()) << "\n"
      << "received " << HexEncode(options.run.capture->received()) << "\n";
  if (!out) {
    return MakeError(ErrorKind::kIo,
                     "cannot write capture file " + flags.capture_path);
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeError(ErrorKind::kUsage, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

int Finish(const absl::Status& status) {
  if (!status.ok()) {
    std::cerr << "error: " << ErrorKindName(GetErrorKind(status)) << ": "
              << status.message() << "\n";
  }
  return demos::ExitCodeFor(status);
}

int Main(int argc, char** argv) {
  CLI::App app{"Partitioned enclave demos over a simulated enclave boundary"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* counter = app.add_subcommand("counter", "counter kept in the enclave");
  AddRunFlags(counter, flags);
  auto* pwdcheck =
      app.add_subcommand("pwdcheck", "check a guess read from stdin");
  AddRunFlags(pwdcheck, flags);
  auto* cleanroom =
      app.add_subcommand("cleanroom", "noised salary count over 500 users");
  AddRunFlags(cleanroom, flags);
  auto* fedsum = app.add_subcommand("fedsum", "encrypted model averaging");
  AddRunFlags(fedsum, flags);

  demos::WalletCommand wallet_command;
  std::vector<std::string> wallet_words;
  auto* wallet = app.add_subcommand(
      "wallet",
      "password wallet: add MASTER TITLE USER PASSWORD | get MASTER TITLE | "
      "delete MASTER TITLE | change-master OLD NEW");
  AddRunFlags(wallet, flags);
  wallet->add_option("words", wallet_words, "operation and its arguments");

  std::string program_path;
  auto* calc = app.add_subcommand("calc", "evaluate a calculus program");
  calc->add_option("--program", program_path, "program file")
      ->required()
      ->check(CLI::ExistingFile);

  uint64_t fuzz_seed = 0;
  int fuzz_count = 1000;
  int fuzz_budget = 30;
  auto* fuzz = app.add_subcommand("fuzz", "run the calculus properties");
  fuzz->add_option("--seed", fuzz_seed, "first seed");
  fuzz->add_option("--count", fuzz_count, "cases per property")
      ->check(CLI::NonNegativeNumber);
  fuzz->add_option("--budget", fuzz_budget, "generator size budget")
      ->check(CLI::PositiveNumber);

  int bench_calls = 1000;
  auto* bench =
      app.add_subcommand("bench", "mean gateway round-trip over loopback");
  bench->add_option("--calls", bench_calls, "number of calls")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? demos::kExitOk : demos::kExitUsage;
  }

  if (calc->parsed()) {
    absl::StatusOr<std::string> text = ReadText(program_path);
    if (!text.ok()) return Finish(text.status());
    return Finish(demos::RunCalc(*text, std::cout));
  }
  if (fuzz->parsed()) {
    return Finish(
        demos::RunFuzz(fuzz_seed, fuzz_count, fuzz_budget, std::cout));
  }
  if (bench->parsed()) return Finish(demos::RunBench(bench_calls, std::cout));

  absl::StatusOr<demos::DemoOptions> options = ToDemoOptions(flags);
  if (!options.ok()) return Finish(options.status());
  absl::Status status;
  if (counter->parsed()) {
    status = demos::CounterDemo(*options, std::cout);
  } else if (pwdcheck->parsed()) {
    status = demos::PasswordCheckDemo(*options, std::cin, std::cout);
  } else if (cleanroom->parsed()) {
    status = demos::CleanRoomDemo(*options, std::cout);
  } else if (fedsum->parsed()) {
    status = demos::FedSumDemo(*options, std::cout);
  } else if (wallet->parsed()) {
    if (!wallet_words.empty()) {
      wallet_command.op = wallet_words.front();
      wallet_command.args.assign(wallet_words.begin() + 1, wallet_words.end());
    }
    status = demos::WalletDemo(*options, wallet_command,
                               demos::EnvironmentStore(), std::cout);
  }
  if (status.ok()) status = WriteCapture(flags, *options);
  return Finish(status);
}

}  // namespace
}  // namespace enclavon

int main(int argc, char** argv) { return enclavon::Main(argc, argv); }
