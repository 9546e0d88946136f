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

#ifndef ENCLAVON_IFC_UNTRUSTED_H_
#define ENCLAVON_IFC_UNTRUSTED_H_

#include <cstddef>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace enclavon::ifc {

// Append-only record of endorsements. Thread-safe.
class AuditLog {
 public:
  AuditLog() = default;
  // Also appends every line to `path`.
  explicit AuditLog(const std::string& path);

  AuditLog(const AuditLog&) = delete;
  AuditLog& operator=(const AuditLog&) = delete;

  // Adds "<UTC timestamp> trust <label>".
  void Record(std::string_view label);

  size_t size() const;
  std::vector<std::string> lines() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> lines_;
  std::ofstream file_;
};

template <typename T>
class Untrusted;

template <typename T>
T Trust(Untrusted<T> u, AuditLog& log, std::string_view label);

// Data from outside the trusted boundary. The payload can only be reached
// through Trust, which leaves an audit line behind.
template <typename T>
class Untrusted {
 public:
  explicit Untrusted(T payload) : payload_(std::move(payload)) {}

 private:
  friend T Trust<T>(Untrusted<T> u, AuditLog& log, std::string_view label);

  T payload_;
};

template <typename T>
T Trust(Untrusted<T> u, AuditLog& log, std::string_view label) {
  log.Record(label);
  return std::move(u.payload_);
}

}  // namespace enclavon::ifc

#endif  // ENCLAVON_IFC_UNTRUSTED_H_
