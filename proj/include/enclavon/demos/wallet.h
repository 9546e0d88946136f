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

#ifndef ENCLAVON_DEMOS_WALLET_H_
#define ENCLAVON_DEMOS_WALLET_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/ifc/secure_store.h"
#include "enclavon/runtime/app.h"
#include "enclavon/wire/codec.h"

namespace enclavon::demos {

enum class ReturnCode : uint8_t {
  kSuccess = 0,
  kAuthFailure = 1,
  kNotFound = 2,
  kDuplicateEntry = 3,
  kIoFailure = 4,
};

std::string_view ReturnCodeName(ReturnCode code);

struct Item {
  std::string title;
  std::string username;
  std::string password;

  bool operator==(const Item&) const = default;
};

// Has no wire::Codec: the wallet never crosses the gateway whole.
struct Wallet {
  std::vector<Item> items;
  int64_t size = 0;
  std::string master_password;

  bool operator==(const Wallet&) const = default;
};

inline constexpr std::string_view kWalletFile = "wallet.seal";
inline constexpr std::string_view kWalletHeader = "enclavon-wallet 1";

// Line-oriented text: the header line, "master <hex>", "size <n>", then
// one "item <hex title> <hex username> <hex password>" line per item.
std::string SerializeWallet(const Wallet& wallet);
// kDecode for anything that does not match the format, including a size
// line that disagrees with the item count.
absl::StatusOr<Wallet> ParseWallet(std::string_view text);

// Compares without an early exit on the first differing byte.
bool ConstantTimeEquals(std::string_view a, std::string_view b);

// Enclave-side wallet operations over the sealed store. Every operation
// loads the sealed file and every mutation writes it back, so the wallet
// survives an enclave restart. Integrity failures are returned as errors,
// never as a missing wallet.
class WalletService {
 public:
  explicit WalletService(ifc::SecureStore& store) : store_(store) {}

  // Absent if the file is missing or does not parse.
  absl::StatusOr<std::optional<Wallet>> Load() const;
  ReturnCode Save(const Wallet& wallet);

  // The first add creates the wallet with `master` as its password.
  absl::StatusOr<ReturnCode> Add(std::string_view master,
                                 std::string_view title,
                                 std::string_view username,
                                 std::string_view password);
  absl::StatusOr<std::pair<ReturnCode, std::string>> Get(
      std::string_view master, std::string_view title) const;
  absl::StatusOr<ReturnCode> Delete(std::string_view master,
                                    std::string_view title);
  absl::StatusOr<ReturnCode> ChangeMaster(std::string_view old_master,
                                          std::string_view new_master);

 private:
  ifc::SecureStore& store_;
};

struct WalletApi {
  runtime::Secure<ReturnCode(std::string, std::string, std::string,
                             std::string)>
      add;
  runtime::Secure<std::pair<ReturnCode, std::string>(std::string, std::string)>
      get;
  runtime::Secure<ReturnCode(std::string, std::string)> remove;
  runtime::Secure<ReturnCode(std::string, std::string)> change_master;
};

// `store` is required in the enclave role and ignored in the client role.
absl::StatusOr<WalletApi> RegisterWallet(
    runtime::App& app, std::shared_ptr<ifc::SecureStore> store);

}  // namespace enclavon::demos

namespace enclavon::wire {

template <>
struct Codec<demos::ReturnCode> {
  static void Encode(demos::ReturnCode v, Encoder& e) {
    e.PutU8(static_cast<uint8_t>(v));
  }
  static absl::StatusOr<demos::ReturnCode> Decode(Decoder& d) {
    ENCLAVON_ASSIGN_OR_RETURN(uint8_t raw, d.U8());
    if (raw > static_cast<uint8_t>(demos::ReturnCode::kIoFailure)) {
      return DecodeError("return code out of range");
    }
    return static_cast<demos::ReturnCode>(raw);
  }
};

}  // namespace enclavon::wire

#endif  // ENCLAVON_DEMOS_WALLET_H_
