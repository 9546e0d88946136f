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

#ifndef ENCLAVON_FEDAGG_FEDAGG_H_
#define ENCLAVON_FEDAGG_FEDAGG_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/paillier/paillier.h"
#include "enclavon/runtime/app.h"

namespace enclavon::fedagg {

using Epoch = int64_t;
using EncryptedWeights = std::vector<paillier::Ciphertext>;

// Enclave-side aggregation state. Weights are plaintext here; clients only
// ever see them encrypted.
class AggregatorState {
 public:
  // kUsage unless num_clients > 0. `entropy` must outlive the state.
  static absl::StatusOr<std::unique_ptr<AggregatorState>> Create(
      int num_clients, ifc::EntropySource& entropy,
      int key_bits = paillier::kDefaultKeyBits);

  const paillier::PublicKey& public_key() const { return keys_.public_key; }
  const paillier::PrivateKey& private_key() const { return keys_.private_key; }
  const std::vector<double>& upd_wts() const { return upd_wts_; }
  int num_clients() const { return num_clients_; }
  const std::map<Epoch, std::vector<EncryptedWeights>>& wts_dict() const {
    return wts_dict_;
  }

  // Records one submission for `epoch` and returns absent until
  // num_clients submissions arrived. The submission that completes the
  // epoch triggers aggregation: element-wise homomorphic sum, decryption,
  // division by num_clients on the fixed-point plaintext, re-encryption.
  // From then on every call for the epoch returns the encrypted average.
  // An empty `weights` only polls. kBadArgument for a length mismatch,
  // an invalid ciphertext or a submission beyond num_clients.
  absl::StatusOr<std::optional<EncryptedWeights>> AggregateModel(
      Epoch epoch, const EncryptedWeights& weights);

  paillier::Ciphertext ReEncrypt(const paillier::Ciphertext& c) {
    return paillier::ReEncrypt(keys_.private_key, keys_.public_key, c,
                               entropy_);
  }

 private:
  AggregatorState(int num_clients, paillier::KeyPair keys,
                  ifc::EntropySource& entropy)
      : num_clients_(num_clients), keys_(std::move(keys)), entropy_(entropy) {}

  absl::StatusOr<EncryptedWeights> Aggregate(Epoch epoch);

  int num_clients_;
  paillier::KeyPair keys_;
  ifc::EntropySource& entropy_;
  std::vector<double> upd_wts_;
  std::map<Epoch, std::vector<EncryptedWeights>> wts_dict_;
  std::map<Epoch, EncryptedWeights> averages_;
};

struct FedAggApi {
  runtime::Secure<paillier::PublicKey()> get_public_key;
  runtime::Secure<std::optional<EncryptedWeights>(Epoch, EncryptedWeights)>
      aggregate_model;
  runtime::Secure<paillier::Ciphertext(paillier::Ciphertext)> re_encrypt;
  // Verification step standing in for accuracy and loss: reveals the
  // plaintext average of `epoch`, absent until it exists.
  runtime::Secure<std::optional<std::vector<double>>(Epoch)> validate_model;
};

struct FedAggConfig {
  int num_clients = 3;
  int key_bits = paillier::kDefaultKeyBits;
  // Enclave randomness; required in the enclave role.
  std::shared_ptr<ifc::EntropySource> entropy;
};

absl::StatusOr<FedAggApi> RegisterFedAgg(runtime::App& app,
                                         const FedAggConfig& config);

// Encrypts `weights` element-wise under `pk` as fixed-point values.
absl::StatusOr<EncryptedWeights> EncryptWeights(
    const paillier::PublicKey& pk, const std::vector<double>& weights,
    ifc::EntropySource& entropy);

struct PollPolicy {
  int max_polls = 20;
  std::chrono::milliseconds delay{10};
};

// Polls aggregate_model with empty submissions. kTransportTimeout once the
// poll budget is spent.
absl::StatusOr<EncryptedWeights> PollAggregate(runtime::Client& client,
                                               const FedAggApi& api,
                                               Epoch epoch,
                                               const PollPolicy& policy);

struct FedSumReport {
  // Plaintext means of the quantized local weights, per epoch.
  std::vector<std::vector<double>> expected;
  // What validate_model revealed, per epoch.
  std::vector<std::vector<double>> revealed;
  // For each epoch, how many submissions got an absent reply.
  std::vector<int> absent_replies;
  // The encrypted averages each client ended up holding in the last epoch.
  std::vector<EncryptedWeights> final_holdings;
};

// `local_weights[epoch][client]` is what each logical client submits. The
// clients run one after another over a single connection.
absl::StatusOr<FedSumReport> RunFedSumClient(
    runtime::Client& client, const FedAggApi& api,
    const std::vector<std::vector<std::vector<double>>>& local_weights,
    ifc::EntropySource& client_entropy, const PollPolicy& policy = {});

// Seeded local weights in [-5, 5] with six decimals.
std::vector<std::vector<std::vector<double>>> GenerateLocalWeights(
    uint64_t seed, int epochs, int clients, int length);

}  // namespace enclavon::fedagg

#endif  // ENCLAVON_FEDAGG_FEDAGG_H_
