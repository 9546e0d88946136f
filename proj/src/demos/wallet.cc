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

#include "enclavon/demos/wallet.h"

#include <algorithm>
#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "enclavon/common/bytes.h"
#include "enclavon/common/status.h"

namespace enclavon::demos {
namespace {

absl::Status FormatError(std::string_view what) {
  return MakeError(ErrorKind::kDecode,
                   absl::StrCat("wallet file: ", std::string(what)));
}

absl::StatusOr<std::string> FromHex(std::string_view hex) {
  Bytes raw;
  if (!HexDecode(hex, &raw)) return FormatError("bad hex field");
  return ToString(raw);
}

const ifc::SecurePath& WalletPath() {
  static const ifc::SecurePath* path =
      new ifc::SecurePath(*ifc::SecurePath::Create(kWalletFile));
  return *path;
}

std::vector<Item>::iterator FindItem(Wallet& w, std::string_view title) {
  return std::find_if(w.items.begin(), w.items.end(),
                      [&](const Item& i) { return i.title == title; });
}

}  // namespace

std::string_view ReturnCodeName(ReturnCode code) {
  switch (code) {
    case ReturnCode::kSuccess:
      return "Success";
    case ReturnCode::kAuthFailure:
      return "AuthFailure";
    case ReturnCode::kNotFound:
      return "NotFound";
    case ReturnCode::kDuplicateEntry:
      return "DuplicateEntry";
    case ReturnCode::kIoFailure:
      return "IOFailure";
  }
  return "Unknown";
}

std::string SerializeWallet(const Wallet& wallet) {
  std::string out = absl::StrCat(std::string(kWalletHeader), "\nmaster ",
                                 HexEncode(ToBytes(wallet.master_password)),
                                 "\nsize ", wallet.size, "\n");
  for (const Item& item : wallet.items) {
    absl::StrAppend(&out, "item ", HexEncode(ToBytes(item.title)), " ",
                    HexEncode(ToBytes(item.username)), " ",
                    HexEncode(ToBytes(item.password)), "\n");
  }
  return out;
}

absl::StatusOr<Wallet> ParseWallet(std::string_view text) {
  std::vector<std::string> lines =
      absl::StrSplit(absl::string_view(text.data(), text.size()), '\n');
  if (lines.empty() || !lines.back().empty()) {
    return FormatError("missing final newline");
  }
  lines.pop_back();
  if (lines.size() < 3 || lines[0] != kWalletHeader) {
    return FormatError("bad header");
  }
  Wallet w;
  std::vector<std::string> master = absl::StrSplit(lines[1], ' ');
  if (master.size() != 2 || master[0] != "master") {
    return FormatError("bad master line");
  }
  ENCLAVON_ASSIGN_OR_RETURN(w.master_password, FromHex(master[1]));
  std::vector<std::string> size = absl::StrSplit(lines[2], ' ');
  if (size.size() != 2 || size[0] != "size") {
    return FormatError("bad size line");
  }
  auto [end, ec] =
      std::from_chars(size[1].data(), size[1].data() + size[1].size(), w.size);
  if (ec != std::errc() || end != size[1].data() + size[1].size()) {
    return FormatError("bad size value");
  }
  for (size_t i = 3; i < lines.size(); ++i) {
    std::vector<std::string> f = absl::StrSplit(lines[i], ' ');
    if (f.size() != 4 || f[0] != "item") return FormatError("bad item line");
    Item item;
    ENCLAVON_ASSIGN_OR_RETURN(item.title, FromHex(f[1]));
    ENCLAVON_ASSIGN_OR_RETURN(item.username, FromHex(f[2]));
    ENCLAVON_ASSIGN_OR_RETURN(item.password, FromHex(f[3]));
    w.items.push_back(std::move(item));
  }
  if (w.size != static_cast<int64_t>(w.items.size())) {
    return FormatError("size does not match the item count");
  }
  return w;
}

bool ConstantTimeEquals(std::string_view a, std::string_view b) {
  size_t n = std::max(a.size(), b.size());
  unsigned diff = a.size() == b.size() ? 0 : 1;
  for (size_t i = 0; i < n; ++i) {
    unsigned char x = i < a.size() ? static_cast<unsigned char>(a[i]) : 0;
    unsigned char y = i < b.size() ? static_cast<unsigned char>(b[i]) : 0;
    diff |= static_cast<unsigned>(x ^ y);
  }
  return diff == 0;
}

absl::StatusOr<std::optional<Wallet>> WalletService::Load() const {
  absl::StatusOr<std::string> text = store_.ReadSecure(WalletPath());
  if (HasErrorKind(text.status(), ErrorKind::kAbsentFile)) {
    return std::optional<Wallet>();
  }
  if (!text.ok()) return text.status();
  absl::StatusOr<Wallet> wallet = ParseWallet(*text);
  if (!wallet.ok()) return std::optional<Wallet>();
  return std::optional<Wallet>(*std::move(wallet));
}

ReturnCode WalletService::Save(const Wallet& wallet) {
  if (!store_.WriteSecure(WalletPath(), SerializeWallet(wallet)).ok()) {
    return ReturnCode::kIoFailure;
  }
  return ReturnCode::kSuccess;
}

absl::StatusOr<ReturnCode> WalletService::Add(std::string_view master,
                                              std::string_view title,
                                              std::string_view username,
                                              std::string_view password) {
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Wallet> loaded, Load());
  Wallet w;
  if (loaded.has_value()) {
    w = *std::move(loaded);
    if (!ConstantTimeEquals(w.master_password, master)) {
      return ReturnCode::kAuthFailure;
    }
  } else {
    w.master_password = std::string(master);
  }
  if (FindItem(w, title) != w.items.end()) return ReturnCode::kDuplicateEntry;
  w.items.push_back(
      Item{std::string(title), std::string(username), std::string(password)});
  w.size = static_cast<int64_t>(w.items.size());
  return Save(w);
}

absl::StatusOr<std::pair<ReturnCode, std::string>> WalletService::Get(
    std::string_view master, std::string_view title) const {
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Wallet> w, Load());
  if (!w.has_value()) return std::make_pair(ReturnCode::kNotFound, "");
  if (!ConstantTimeEquals(w->master_password, master)) {
    return std::make_pair(ReturnCode::kAuthFailure, "");
  }
  auto it = FindItem(*w, title);
  if (it == w->items.end()) return std::make_pair(ReturnCode::kNotFound, "");
  return std::make_pair(ReturnCode::kSuccess, it->password);
}

absl::StatusOr<ReturnCode> WalletService::Delete(std::string_view master,
                                                 std::string_view title) {
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Wallet> w, Load());
  if (!w.has_value()) return ReturnCode::kNotFound;
  if (!ConstantTimeEquals(w->master_password, master)) {
    return ReturnCode::kAuthFailure;
  }
  auto it = FindItem(*w, title);
  if (it == w->items.end()) return ReturnCode::kNotFound;
  w->items.erase(it);
  w->size = static_cast<int64_t>(w->items.size());
  return Save(*w);
}

absl::StatusOr<ReturnCode> WalletService::ChangeMaster(
    std::string_view old_master, std::string_view new_master) {
  ENCLAVON_ASSIGN_OR_RETURN(std::optional<Wallet> w, Load());
  if (!w.has_value()) return ReturnCode::kNotFound;
  if (!ConstantTimeEquals(w->master_password, old_master)) {
    return ReturnCode::kAuthFailure;
  }
  w->master_password = std::string(new_master);
  return Save(*w);
}

absl::StatusOr<WalletApi> RegisterWallet(
    runtime::App& app, std::shared_ptr<ifc::SecureStore> store) {
  if (app.in_enclave() && store == nullptr) {
    return MakeError(ErrorKind::kUsage, "wallet needs a secure store");
  }
  std::shared_ptr<WalletService> service;
  if (app.in_enclave()) {
    service = std::shared_ptr<WalletService>(
        new WalletService(*store), [store](WalletService* s) { delete s; });
  }
  WalletApi api;
  ENCLAVON_ASSIGN_OR_RETURN(
      api.add,
      (app.InEnclave<ReturnCode(std::string, std::string, std::string,
                                std::string)>(
          "wallet_add",
          [service](const std::string& master, const std::string& title,
                    const std::string& user, const std::string& pw) {
            return service->Add(master, title, user, pw);
          })));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.get, (app.InEnclave<std::pair<ReturnCode, std::string>(std::string,
                                                                 std::string)>(
                   "wallet_get", [service](const std::string& master,
                                           const std::string& title) {
                     return service->Get(master, title);
                   })));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.remove, (app.InEnclave<ReturnCode(std::string, std::string)>(
                      "wallet_delete", [service](const std::string& master,
                                                 const std::string& title) {
                        return service->Delete(master, title);
                      })));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.change_master,
      (app.InEnclave<ReturnCode(std::string, std::string)>(
          "wallet_change_master", [service](const std::string& old_master,
                                            const std::string& new_master) {
            return service->ChangeMaster(old_master, new_master);
          })));
  return api;
}

}  // namespace enclavon::demos
