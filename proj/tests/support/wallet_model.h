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

#ifndef ENCLAVON_TESTS_SUPPORT_WALLET_MODEL_H_
#define ENCLAVON_TESTS_SUPPORT_WALLET_MODEL_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"
#include "enclavon/demos/wallet.h"
#include "enclavon/runtime/app.h"

namespace enclavon::demos::testing {

enum class OpKind { kAdd, kGet, kDelete, kChangeMaster };

struct WalletOp {
  OpKind kind = OpKind::kGet;
  std::string master;  // the old master for kChangeMaster
  std::string title;   // the new master for kChangeMaster
  std::string username;
  std::string password;
};

using OpResult = std::pair<ReturnCode, std::string>;

// The wallet as a plain in-memory value, with no sealing and no gateway.
class WalletModel {
 public:
  OpResult Apply(const WalletOp& op) {
    switch (op.kind) {
      case OpKind::kAdd:
        if (master_.has_value() && *master_ != op.master) {
          return {ReturnCode::kAuthFailure, ""};
        }
        if (!master_.has_value()) master_ = op.master;
        if (Find(op.title) != items_.end()) {
          return {ReturnCode::kDuplicateEntry, ""};
        }
        items_.push_back({op.title, op.password});
        return {ReturnCode::kSuccess, ""};
      case OpKind::kGet: {
        if (!master_.has_value()) return {ReturnCode::kNotFound, ""};
        if (*master_ != op.master) return {ReturnCode::kAuthFailure, ""};
        auto it = Find(op.title);
        if (it == items_.end()) return {ReturnCode::kNotFound, ""};
        return {ReturnCode::kSuccess, it->second};
      }
      case OpKind::kDelete: {
        if (!master_.has_value()) return {ReturnCode::kNotFound, ""};
        if (*master_ != op.master) return {ReturnCode::kAuthFailure, ""};
        auto it = Find(op.title);
        if (it == items_.end()) return {ReturnCode::kNotFound, ""};
        items_.erase(it);
        return {ReturnCode::kSuccess, ""};
      }
      case OpKind::kChangeMaster:
        if (!master_.has_value()) return {ReturnCode::kNotFound, ""};
        if (*master_ != op.master) return {ReturnCode::kAuthFailure, ""};
        master_ = op.title;
        return {ReturnCode::kSuccess, ""};
    }
    return {ReturnCode::kIoFailure, ""};
  }

  size_t size() const { return items_.size(); }

 private:
  using Entry = std::pair<std::string, std::string>;

  std::vector<Entry>::iterator Find(const std::string& title) {
    return std::find_if(items_.begin(), items_.end(),
                        [&](const Entry& e) { return e.first == title; });
  }

  std::optional<std::string> master_;
  std::vector<Entry> items_;
};

// Small pools make every branch likely: duplicates, misses, wrong masters
// and master changes that later ops must respect.
inline std::vector<WalletOp> GenerateWalletOps(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> masters = {"m-alpha", "m-beta", "m-gamma"};
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[rng() % pool.size()];
  };
  std::vector<std::string> titles;
  for (int i = 0; i < 8; ++i) titles.push_back(absl::StrCat("site", i));
  std::vector<WalletOp> ops;
  for (int i = 0; i < count; ++i) {
    WalletOp op;
    uint64_t r = rng() % 20;
    if (r < 8) {
      op.kind = OpKind::kAdd;
      op.username = absl::StrCat("user", rng() % 100);
      op.password = absl::StrCat("pw-", i, "-", rng() % 1000000);
    } else if (r < 14) {
      op.kind = OpKind::kGet;
    } else if (r < 18) {
      op.kind = OpKind::kDelete;
    } else {
      op.kind = OpKind::kChangeMaster;
    }
    op.master = pick(masters);
    op.title = op.kind == OpKind::kChangeMaster ? pick(masters) : pick(titles);
    ops.push_back(std::move(op));
  }
  return ops;
}

// Sends `op` through the gateway and normalizes the reply.
inline absl::StatusOr<OpResult> CallWallet(runtime::Client& client,
                                           const WalletApi& api,
                                           const WalletOp& op) {
  switch (op.kind) {
    case OpKind::kAdd: {
      ENCLAVON_ASSIGN_OR_RETURN(ReturnCode c, client.Gateway(runtime::Apply(
                                                  api.add, op.master, op.title,
                                                  op.username, op.password)));
      return OpResult{c, ""};
    }
    case OpKind::kGet:
      return client.Gateway(runtime::Apply(api.get, op.master, op.title));
    case OpKind::kDelete: {
      ENCLAVON_ASSIGN_OR_RETURN(
          ReturnCode c,
          client.Gateway(runtime::Apply(api.remove, op.master, op.title)));
      return OpResult{c, ""};
    }
    case OpKind::kChangeMaster: {
      ENCLAVON_ASSIGN_OR_RETURN(
          ReturnCode c, client.Gateway(runtime::Apply(api.change_master,
                                                      op.master, op.title)));
      return OpResult{c, ""};
    }
  }
  return MakeError(ErrorKind::kInternal, "unknown op");
}

// One session: an enclave (store from `store`) and a client over `run`,
// performing `ops` in order and appending each reply to `results`.
inline absl::Status RunWalletSession(const runtime::RunOptions& run,
                                     std::shared_ptr<ifc::SecureStore> store,
                                     const std::vector<WalletOp>& ops,
                                     std::vector<OpResult>* results) {
  return runtime::RunApp(
      [&](runtime::App& app) -> absl::StatusOr<runtime::ClientMain> {
        ENCLAVON_ASSIGN_OR_RETURN(
            WalletApi api,
            RegisterWallet(app, app.in_enclave() ? store : nullptr));
        return runtime::ClientMain(
            [&, api](runtime::Client& client) -> absl::Status {
              for (const WalletOp& op : ops) {
                ENCLAVON_ASSIGN_OR_RETURN(OpResult r,
                                          CallWallet(client, api, op));
                results->push_back(std::move(r));
              }
              return absl::OkStatus();
            });
      },
      run);
}

// Index of the first reply that differs from the model, or nullopt.
inline std::optional<size_t> FirstModelMismatch(
    const std::vector<WalletOp>& ops, const std::vector<OpResult>& results) {
  WalletModel model;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (i >= results.size() || model.Apply(ops[i]) != results[i]) return i;
  }
  if (results.size() != ops.size()) return ops.size();
  return std::nullopt;
}

}  // namespace enclavon::demos::testing

#endif  // ENCLAVON_TESTS_SUPPORT_WALLET_MODEL_H_
