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

#include "enclavon/fedagg/fedagg.h"

#include <cmath>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::fedagg {

absl::StatusOr<std::unique_ptr<AggregatorState>> AggregatorState::Create(
    int num_clients, ifc::EntropySource& entropy, int key_bits) {
  if (num_clients <= 0) {
    return MakeError(ErrorKind::kUsage, "need at least one client");
  }
  ENCLAVON_ASSIGN_OR_RETURN(paillier::KeyPair keys,
                            paillier::GenerateKeyPair(key_bits, entropy));
  return std::unique_ptr<AggregatorState>(
      new AggregatorState(num_clients, std::move(keys), entropy));
}

absl::StatusOr<std::optional<EncryptedWeights>> AggregatorState::AggregateModel(
    Epoch epoch, const EncryptedWeights& weights) {
  if (!weights.empty()) {
    std::vector<EncryptedWeights>& received = wts_dict_[epoch];
    if (received.size() >= static_cast<size_t>(num_clients_)) {
      return MakeError(ErrorKind::kBadArgument,
                       absl::StrCat("epoch ", epoch, " already has ",
                                    num_clients_, " submissions"));
    }
    if (!received.empty() && received.front().size() != weights.size()) {
      return MakeError(
          ErrorKind::kBadArgument,
          absl::StrCat("epoch ", epoch, " expects vectors of length ",
                       received.front().size(), ", got ", weights.size()));
    }
    for (const paillier::Ciphertext& c : weights) {
      if (!paillier::IsValidCiphertext(keys_.public_key, c)) {
        return MakeError(ErrorKind::kBadArgument, "invalid ciphertext");
      }
    }
    received.push_back(weights);
    if (received.size() == static_cast<size_t>(num_clients_)) {
      ENCLAVON_ASSIGN_OR_RETURN(averages_[epoch], Aggregate(epoch));
    }
  }
  auto it = averages_.find(epoch);
  if (it == averages_.end()) return std::optional<EncryptedWeights>();
  return std::optional<EncryptedWeights>(it->second);
}

absl::StatusOr<EncryptedWeights> AggregatorState::Aggregate(Epoch epoch) {
  const std::vector<EncryptedWeights>& received = wts_dict_.at(epoch);
  const paillier::PublicKey& pk = keys_.public_key;
  EncryptedWeights sum = received.front();
  for (size_t i = 1; i < received.size(); ++i) {
    for (size_t j = 0; j < sum.size(); ++j) {
      sum[j] = paillier::HomAdd(pk, sum[j], received[i][j]);
    }
  }
  std::vector<double> average(sum.size());
  EncryptedWeights out(sum.size());
  for (size_t j = 0; j < sum.size(); ++j) {
    double total = paillier::DecodeFixed(
        pk, paillier::Decrypt(keys_.private_key, pk, sum[j]));
    average[j] = total / num_clients_;
    ENCLAVON_ASSIGN_OR_RETURN(mpz_class m,
                              paillier::EncodeFixed(pk, average[j]));
    ENCLAVON_ASSIGN_OR_RETURN(out[j], paillier::Encrypt(pk, m, entropy_));
  }
  upd_wts_ = std::move(average);
  return out;
}

absl::StatusOr<FedAggApi> RegisterFedAgg(runtime::App& app,
                                         const FedAggConfig& config) {
  if (app.in_enclave() && config.entropy == nullptr) {
    return MakeError(ErrorKind::kUsage, "aggregator needs enclave entropy");
  }
  using State = std::unique_ptr<AggregatorState>;
  runtime::EnclaveRef<State> ref = app.NewRef<State>(nullptr);
  // Created on first use so the client role never generates keys.
  auto state = [ref, config]() -> absl::StatusOr<AggregatorState*> {
    ENCLAVON_ASSIGN_OR_RETURN(State * cell, ref.Mutable());
    if (*cell == nullptr) {
      ENCLAVON_ASSIGN_OR_RETURN(
          *cell, AggregatorState::Create(config.num_clients, *config.entropy,
                                         config.key_bits));
    }
    return cell->get();
  };
  FedAggApi api;
  ENCLAVON_ASSIGN_OR_RETURN(
      api.get_public_key,
      app.InEnclave<paillier::PublicKey()>(
          "get_public_key", [state]() -> absl::StatusOr<paillier::PublicKey> {
            ENCLAVON_ASSIGN_OR_RETURN(AggregatorState * s, state());
            return s->public_key();
          }));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.aggregate_model,
      (app.InEnclave<std::optional<EncryptedWeights>(Epoch, EncryptedWeights)>(
          "aggregate_model",
          [state](Epoch epoch, const EncryptedWeights& weights)
              -> absl::StatusOr<std::optional<EncryptedWeights>> {
            ENCLAVON_ASSIGN_OR_RETURN(AggregatorState * s, state());
            return s->AggregateModel(epoch, weights);
          })));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.re_encrypt,
      app.InEnclave<paillier::Ciphertext(paillier::Ciphertext)>(
          "re_encrypt",
          [state](const paillier::Ciphertext& c)
              -> absl::StatusOr<paillier::Ciphertext> {
            ENCLAVON_ASSIGN_OR_RETURN(AggregatorState * s, state());
            if (!paillier::IsValidCiphertext(s->public_key(), c)) {
              return MakeError(ErrorKind::kBadArgument, "invalid ciphertext");
            }
            return s->ReEncrypt(c);
          }));
  ENCLAVON_ASSIGN_OR_RETURN(
      api.validate_model,
      app.InEnclave<std::optional<std::vector<double>>(Epoch)>(
          "validate_model",
          [state](Epoch epoch)
              -> absl::StatusOr<std::optional<std::vector<double>>> {
            ENCLAVON_ASSIGN_OR_RETURN(AggregatorState * s, state());
            ENCLAVON_ASSIGN_OR_RETURN(std::optional<EncryptedWeights> avg,
                                      s->AggregateModel(epoch, {}));
            if (!avg.has_value()) return std::optional<std::vector<double>>();
            std::vector<double> plain;
            for (const paillier::Ciphertext& c : *avg) {
              plain.push_back(paillier::DecodeFixed(
                  s->public_key(),
                  paillier::Decrypt(s->private_key(), s->public_key(), c)));
            }
            return std::optional<std::vector<double>>(std::move(plain));
          }));
  return api;
}

absl::StatusOr<EncryptedWeights> EncryptWeights(
    const paillier::PublicKey& pk, const std::vector<double>& weights,
    ifc::EntropySource& entropy) {
  EncryptedWeights out;
  out.reserve(weights.size());
  for (double w : weights) {
    ENCLAVON_ASSIGN_OR_RETURN(mpz_class m, paillier::EncodeFixed(pk, w));
    ENCLAVON_ASSIGN_OR_RETURN(paillier::Ciphertext c,
                              paillier::Encrypt(pk, m, entropy));
    out.push_back(std::move(c));
  }
  return out;
}

absl::StatusOr<EncryptedWeights> PollAggregate(runtime::Client& client,
                                               const FedAggApi& api,
                                               Epoch epoch,
                                               const PollPolicy& policy) {
  for (int i = 0; i < policy.max_polls; ++i) {
    ENCLAVON_ASSIGN_OR_RETURN(
        std::optional<EncryptedWeights> avg,
        client.Gateway(Apply(api.aggregate_model, epoch, EncryptedWeights())));
    if (avg.has_value()) return *std::move(avg);
    std::this_thread::sleep_for(policy.delay);
  }
  return MakeError(ErrorKind::kTransportTimeout,
                   absl::StrCat("epoch ", epoch, " not aggregated after ",
                                policy.max_polls, " polls"));
}

absl::StatusOr<FedSumReport> RunFedSumClient(
    runtime::Client& client, const FedAggApi& api,
    const std::vector<std::vector<std::vector<double>>>& local_weights,
    ifc::EntropySource& client_entropy, const PollPolicy& policy) {
  ENCLAVON_ASSIGN_OR_RETURN(paillier::PublicKey pk,
                            client.Gateway(api.get_public_key));
  FedSumReport report;
  for (size_t epoch = 0; epoch < local_weights.size(); ++epoch) {
    const auto& clients = local_weights[epoch];
    int absent = 0;
    for (const std::vector<double>& weights : clients) {
      ENCLAVON_ASSIGN_OR_RETURN(EncryptedWeights enc,
                                EncryptWeights(pk, weights, client_entropy));
      ENCLAVON_ASSIGN_OR_RETURN(
          std::optional<EncryptedWeights> reply,
          client.Gateway(
              Apply(api.aggregate_model, static_cast<Epoch>(epoch), enc)));
      if (!reply.has_value()) ++absent;
    }
    report.absent_replies.push_back(absent);
    report.final_holdings.clear();
    for (size_t c = 0; c < clients.size(); ++c) {
      ENCLAVON_ASSIGN_OR_RETURN(
          EncryptedWeights avg,
          PollAggregate(client, api, static_cast<Epoch>(epoch), policy));
      report.final_holdings.push_back(std::move(avg));
    }
    std::vector<double> expected(clients.front().size(), 0.0);
    for (size_t j = 0; j < expected.size(); ++j) {
      long long sum = 0;
      for (const auto& weights : clients) sum += std::llround(weights[j] * 1e6);
      expected[j] =
          static_cast<double>(sum) / 1e6 / static_cast<double>(clients.size());
    }
    report.expected.push_back(std::move(expected));
    ENCLAVON_ASSIGN_OR_RETURN(
        std::optional<std::vector<double>> revealed,
        client.Gateway(Apply(api.validate_model, static_cast<Epoch>(epoch))));
    if (!revealed.has_value()) {
      return MakeError(ErrorKind::kInternal, "epoch was not aggregated");
    }
    report.revealed.push_back(*std::move(revealed));
  }
  return report;
}

std::vector<std::vector<std::vector<double>>> GenerateLocalWeights(
    uint64_t seed, int epochs, int clients, int length) {
  ifc::SeededEntropy e(seed);
  std::vector<std::vector<std::vector<double>>> out(epochs);
  for (auto& epoch : out) {
    epoch.resize(clients);
    for (auto& weights : epoch) {
      for (int j = 0; j < length; ++j) {
        weights.push_back(
            static_cast<double>(*ifc::RandomInRange(e, -5000000, 5000000)) /
            1e6);
      }
    }
  }
  return out;
}

}  // namespace enclavon::fedagg
