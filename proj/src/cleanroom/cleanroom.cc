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

#include "enclavon/cleanroom/cleanroom.h"

#include <array>
#include <cmath>
#include <string_view>
#include <tuple>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::cleanroom {
namespace {

using UserTuple =
    std::tuple<std::string, std::string, int64_t, std::string, int64_t>;

constexpr std::array<std::string_view, 8> kNames = {
    "Alice", "Bob", "Chen", "Dana", "Emeka", "Farah", "Goran", "Hiro"};
constexpr std::array<std::string_view, 6> kOccupations = {
    "engineer", "nurse", "teacher", "chef", "pilot", "clerk"};
constexpr std::array<std::string_view, 3> kGenders = {"female", "male",
                                                      "nonbinary"};

template <size_t N>
std::string Pick(ifc::EntropySource& e,
                 const std::array<std::string_view, N>& options) {
  int64_t i = *ifc::RandomInRange(e, 0, static_cast<int64_t>(N) - 1);
  return std::string(options[static_cast<size_t>(i)]);
}

}  // namespace

Bytes SerializeUserRecord(const User& user) {
  return wire::EncodeValue(UserTuple(user.name, user.occupation, user.salary,
                                     user.gender, user.age));
}

absl::StatusOr<User> ParseUserRecord(ByteSpan bytes) {
  ENCLAVON_ASSIGN_OR_RETURN(UserTuple t, wire::DecodeValue<UserTuple>(bytes));
  User user{std::move(std::get<0>(t)), std::move(std::get<1>(t)),
            std::get<2>(t), std::move(std::get<3>(t)), std::get<4>(t)};
  if (user.salary < 0 || user.age < 0) {
    return MakeError(ErrorKind::kBadArgument,
                     "salary and age must be non-negative");
  }
  return user;
}

std::vector<User> GenerateUsers(uint64_t seed, size_t count) {
  ifc::SeededEntropy e(seed);
  std::vector<User> users;
  users.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    User u;
    u.name = Pick(e, kNames);
    u.occupation = Pick(e, kOccupations);
    u.salary = *ifc::RandomInRange(e, 0, 100000);
    u.gender = Pick(e, kGenders);
    u.age = *ifc::RandomInRange(e, 18, 80);
    users.push_back(std::move(u));
  }
  return users;
}

UserPredicate SalaryWithin(int64_t lo, int64_t hi) {
  return [lo, hi](const User& u) { return lo <= u.salary && u.salary <= hi; };
}

int64_t CountingQuery(const std::vector<User>& users,
                      const UserPredicate& predicate) {
  int64_t n = 0;
  for (const User& u : users) {
    if (predicate(u)) ++n;
  }
  return n;
}

absl::StatusOr<double> LaplaceSample(ifc::EntropySource& entropy, double b) {
  if (!(b >= 0)) {
    return MakeError(ErrorKind::kUsage, "Laplace scale must be >= 0");
  }
  ENCLAVON_ASSIGN_OR_RETURN(int64_t z, ifc::RandomInRange(entropy, 0, 1));
  ENCLAVON_ASSIGN_OR_RETURN(int64_t k,
                            ifc::RandomInRange(entropy, 1, kLaplaceResolution));
  double u = static_cast<double>(kLaplaceResolution) / static_cast<double>(k);
  return static_cast<double>(2 * z - 1) * (b * std::log(u));
}

absl::StatusOr<std::unique_ptr<CleanRoomState>> CleanRoomState::Create(
    double epsilon, ifc::EntropySource& entropy, int key_bits) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return MakeError(ErrorKind::kUsage, "epsilon must be positive");
  }
  ENCLAVON_ASSIGN_OR_RETURN(paillier::KeyPair keys,
                            paillier::GenerateKeyPair(key_bits, entropy));
  return std::unique_ptr<CleanRoomState>(
      new CleanRoomState(epsilon, std::move(keys), entropy));
}

absl::Status CleanRoomState::Provision(
    const paillier::HybridCiphertext& record) {
  ENCLAVON_ASSIGN_OR_RETURN(
      Bytes plain,
      paillier::HybridDecrypt(keys_.private_key, keys_.public_key, record));
  ENCLAVON_ASSIGN_OR_RETURN(User user, ParseUserRecord(plain));
  users_.push_back(std::move(user));
  return absl::OkStatus();
}

absl::StatusOr<double> CleanRoomState::LaplaceMechanism(
    const UserPredicate& predicate) {
  double count = static_cast<double>(Count(predicate));
  ENCLAVON_ASSIGN_OR_RETURN(double noise,
                            LaplaceSample(entropy_, 1 / epsilon_));
  return count + noise;
}

absl::StatusOr<CleanRoomApi> RegisterCleanRoom(runtime::App& app,
                                               const CleanRoomConfig& config) {
  if (app.in_enclave() && config.entropy == nullptr) {
    return MakeError(ErrorKind::kUsage, "clean room needs enclave entropy");
  }
  using State = std::unique_ptr<CleanRoomState>;
  runtime::EnclaveRef<State> ref = app.NewRef<State>(nullptr);
  auto state = [ref]() -> absl::StatusOr<CleanRoomState*> {
    ENCLAVON_ASSIGN_OR_RETURN(State * cell, ref.Mutable());
    if (*cell == nullptr) {
      return MakeError(ErrorKind::kUsage, "clean room not initialised");
    }
    return cell->get();
  };
  CleanRoomApi api;
  ENCLAVON_ASSIGN_OR_RETURN(
      api.init,
      app.InEnclave<wire::Unit()>(
          "init", [ref, config]() -> absl::StatusOr<wire::Unit> {
            ENCLAVON_ASSIGN_OR_RETURN(State * cell, ref.Mutable());
            ENCLAVON_ASSIGN_OR_RETURN(
                *cell, CleanRoomState::Create(config.epsilon, *config.entropy,
                                              config.key_bits));
            return wire::Unit{};
          }));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.get_public_key,
      app.InEnclave<paillier::PublicKey()>(
          "get_public_key", [state]() -> absl::StatusOr<paillier::PublicKey> {
            ENCLAVON_ASSIGN_OR_RETURN(CleanRoomState * s, state());
            return s->public_key();
          }));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.provision_user,
      app.InEnclave<int64_t(paillier::HybridCiphertext)>(
          "provision_user",
          [state](
              const paillier::HybridCiphertext& ct) -> absl::StatusOr<int64_t> {
            ENCLAVON_ASSIGN_OR_RETURN(CleanRoomState * s, state());
            ENCLAVON_RETURN_IF_ERROR(s->Provision(ct));
            return static_cast<int64_t>(s->users().size());
          }));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.laplace_mechanism,
      app.InEnclave<double(int64_t, int64_t)>(
          "laplace_mechanism",
          [state](int64_t lo, int64_t hi) -> absl::StatusOr<double> {
            ENCLAVON_ASSIGN_OR_RETURN(CleanRoomState * s, state());
            return s->LaplaceMechanism(SalaryWithin(lo, hi));
          }));
  return api;
}

absl::StatusOr<CleanRoomRun> RunCleanRoomClient(
    runtime::Client& client, const CleanRoomApi& api,
    const std::vector<User>& users, int64_t lo, int64_t hi,
    ifc::EntropySource& client_entropy) {
  ENCLAVON_RETURN_IF_ERROR(client.Gateway(api.init).status());
  ENCLAVON_ASSIGN_OR_RETURN(paillier::PublicKey key,
                            client.Gateway(api.get_public_key));
  CleanRoomRun run;
  for (const User& user : users) {
    paillier::HybridCiphertext ct =
        paillier::HybridEncrypt(key, SerializeUserRecord(user), client_entropy);
    ENCLAVON_ASSIGN_OR_RETURN(run.provisioned,
                              client.Gateway(Apply(api.provision_user, ct)));
  }
  ENCLAVON_ASSIGN_OR_RETURN(
      run.result, client.Gateway(Apply(api.laplace_mechanism, lo, hi)));
  return run;
}

}  // namespace enclavon::cleanroom
