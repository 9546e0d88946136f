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

#ifndef ENCLAVON_CLEANROOM_CLEANROOM_H_
#define ENCLAVON_CLEANROOM_CLEANROOM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/common/bytes.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/paillier/paillier.h"
#include "enclavon/runtime/app.h"
#include "enclavon/runtime/transport.h"
#include "enclavon/wire/codec.h"

namespace enclavon::cleanroom {

// Plaintext user record. Has no wire::Codec, so it can only leave the
// client in hybrid-encrypted form.
struct User {
  std::string name;
  std::string occupation;
  int64_t salary = 0;
  std::string gender;
  int64_t age = 0;

  bool operator==(const User&) const = default;
};

// Local record bytes that get hybrid-encrypted: the five fields in order,
// canonically encoded.
Bytes SerializeUserRecord(const User& user);
// kDecode for malformed bytes, kBadArgument for negative salary or age.
absl::StatusOr<User> ParseUserRecord(ByteSpan bytes);

// Seeded test data: salary uniform on [0, 100000], age uniform on [18, 80],
// name, occupation and gender drawn from fixed lists.
std::vector<User> GenerateUsers(uint64_t seed, size_t count);

using UserPredicate = std::function<bool(const User&)>;

// lo <= salary <= hi.
UserPredicate SalaryWithin(int64_t lo, int64_t hi);

int64_t CountingQuery(const std::vector<User>& users,
                      const UserPredicate& predicate);

inline constexpr int64_t kLaplaceResolution = 1000;

// Draws z from {0, 1} and k from [1, 1000], then returns
// (2z - 1) * b * ln(1000 / k). kUsage if b < 0.
absl::StatusOr<double> LaplaceSample(ifc::EntropySource& entropy, double b);

class CleanRoomState {
 public:
  // kUsage unless epsilon > 0. `entropy` must outlive the state.
  static absl::StatusOr<std::unique_ptr<CleanRoomState>> Create(
      double epsilon, ifc::EntropySource& entropy,
      int key_bits = paillier::kDefaultKeyBits);

  double epsilon() const { return epsilon_; }
  const paillier::PublicKey& public_key() const { return keys_.public_key; }
  const std::vector<User>& users() const { return users_; }

  // Decrypts and appends one record; on any failure the state is unchanged.
  absl::Status Provision(const paillier::HybridCiphertext& record);

  int64_t Count(const UserPredicate& predicate) const {
    return CountingQuery(users_, predicate);
  }

  // Exact count plus Laplace noise with b = 1 / epsilon.
  absl::StatusOr<double> LaplaceMechanism(const UserPredicate& predicate);

 private:
  CleanRoomState(double epsilon, paillier::KeyPair keys,
                 ifc::EntropySource& entropy)
      : epsilon_(epsilon), keys_(std::move(keys)), entropy_(entropy) {}

  double epsilon_;
  paillier::KeyPair keys_;
  ifc::EntropySource& entropy_;
  std::vector<User> users_;
};

// Gateway surface of the clean room. Only the noised query is exposed.
struct CleanRoomApi {
  runtime::Secure<wire::Unit()> init;
  runtime::Secure<paillier::PublicKey()> get_public_key;
  // Returns the number of users after provisioning.
  runtime::Secure<int64_t(paillier::HybridCiphertext)> provision_user;
  // Salary bounds, inclusive.
  runtime::Secure<double(int64_t, int64_t)> laplace_mechanism;
};

struct CleanRoomConfig {
  double epsilon = 0.1;
  int key_bits = paillier::kDefaultKeyBits;
  // Enclave randomness; required in the enclave role.
  std::shared_ptr<ifc::EntropySource> entropy;
};

absl::StatusOr<CleanRoomApi> RegisterCleanRoom(runtime::App& app,
                                               const CleanRoomConfig& config);

struct CleanRoomRun {
  int64_t provisioned = 0;
  double result = 0;
};

// The client flow: init, fetch the key, provision every user and run the
// salary query. `client_entropy` drives hybrid encryption.
absl::StatusOr<CleanRoomRun> RunCleanRoomClient(
    runtime::Client& client, const CleanRoomApi& api,
    const std::vector<User>& users, int64_t lo, int64_t hi,
    ifc::EntropySource& client_entropy);

}  // namespace enclavon::cleanroom

#endif  // ENCLAVON_CLEANROOM_CLEANROOM_H_
