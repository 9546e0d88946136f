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

#ifndef ENCLAVON_DEMOS_DEMOS_H_
#define ENCLAVON_DEMOS_DEMOS_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/ifc/secure_store.h"
#include "enclavon/runtime/app.h"

namespace enclavon::demos {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTransport = 2;
inline constexpr int kExitIntegrity = 3;

// Integrity failures (local, or reported by a remote handler) map to
// kExitIntegrity; connection and protocol failures to kExitTransport;
// everything else to kExitUsage.
int ExitCodeFor(const absl::Status& status);

struct DemoOptions {
  runtime::RunOptions run;
  // Seeds every random source of the demo; unset means OS entropy for the
  // enclave and fixed defaults for generated data.
  std::optional<uint64_t> seed;
};

// Three calls to a counter kept in enclave memory; prints "Counter's #v".
absl::Status CounterDemo(const DemoOptions& options, std::ostream& out,
                         int calls = 3);

// Reads one guess line from `in` (client side only) and prints
// "Login returned True" or "Login returned False".
absl::Status PasswordCheckDemo(const DemoOptions& options, std::istream& in,
                               std::ostream& out);

// Provisions 500 generated users and prints "res: <noised count>" for the
// number of salaries within [10000, 50000].
absl::Status CleanRoomDemo(const DemoOptions& options, std::ostream& out);

// Three clients, two epochs, four weights each. Prints each epoch's
// decrypted average next to the plaintext mean.
absl::Status FedSumDemo(const DemoOptions& options, std::ostream& out);

struct WalletCommand {
  // One of "add", "get", "delete", "change-master".
  std::string op;
  std::vector<std::string> args;
};

// kUsage for an unknown op or a wrong argument count.
absl::Status ValidateWalletCommand(const WalletCommand& command);

using StoreFactory =
    std::function<absl::StatusOr<std::shared_ptr<ifc::SecureStore>>()>;

// Store from HASTEE_RSK and HASTEE_SECURE_DIR, sealing with OS entropy.
StoreFactory EnvironmentStore();

// Runs one wallet operation and prints "<ReturnCode>", followed for a
// successful get by "password: <password>". `make_store` is only called
// in the enclave and local roles, and the enclave role ignores `command`.
absl::Status WalletDemo(const DemoOptions& options,
                        const WalletCommand& command,
                        const StoreFactory& make_store, std::ostream& out);

// Parses and evaluates a calculus program; prints "value: ...",
// "enclave env: ..." and "client env: ...".
absl::Status RunCalc(std::string_view program, std::ostream& out);

// Runs the non-interference, association and enclave-free oracle
// properties over `count` seeds each. kInternal if any case fails.
absl::Status RunFuzz(uint64_t first_seed, int count, int budget,
                     std::ostream& out);

// Mean wall-clock time of a one-argument gateway call over loopback TCP,
// in microseconds.
absl::StatusOr<double> MeasureGatewayRoundTrip(int calls);

// Prints the MeasureGatewayRoundTrip result.
absl::Status RunBench(int calls, std::ostream& out);

}  // namespace enclavon::demos

#endif  // ENCLAVON_DEMOS_DEMOS_H_
