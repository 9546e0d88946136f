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

#ifndef ENCLAVON_IFC_SECURE_STORE_H_
#define ENCLAVON_IFC_SECURE_STORE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "enclavon/ifc/entropy.h"
#include "enclavon/ifc/seal.h"
#include "enclavon/ifc/untrusted.h"

namespace enclavon::ifc {

// A file name inside the secure store. No separators, no "." or "..".
class SecurePath {
 public:
  static absl::StatusOr<SecurePath> Create(std::string_view name);

  const std::string& name() const { return name_; }

 private:
  explicit SecurePath(std::string name) : name_(std::move(name)) {}

  std::string name_;
};

// Sealed files in one directory. Data read back is implicitly endorsed:
// decrypting successfully is the proof of origin.
class SecureStore {
 public:
  SecureStore(std::filesystem::path dir, RootSealKey key,
              EntropySource& entropy);

  // Directory from HASTEE_SECURE_DIR (default "./secure_store/"), key from
  // HASTEE_RSK.
  static absl::StatusOr<SecureStore> FromEnvironment(EntropySource& entropy);

  // Seals `text` and atomically replaces the file (temp file, then rename).
  absl::Status WriteSecure(const SecurePath& path, std::string_view text);

  // kAbsentFile if the file is missing, kIntegrity if it fails to unseal,
  // kEncoding if the plaintext is not UTF-8.
  absl::StatusOr<std::string> ReadSecure(const SecurePath& path) const;

  bool DoesSecureFileExist(const SecurePath& path) const;

  // Removes the sealed file; a missing file is not an error.
  absl::Status DeleteSecure(const SecurePath& path);

  std::filesystem::path FileFor(const SecurePath& path) const {
    return dir_ / path.name();
  }

 private:
  std::filesystem::path dir_;
  RootSealKey key_;
  EntropySource* entropy_;
};

// Reads a host file without endorsing it. kAbsentFile if missing, kEncoding
// if not UTF-8, kIo for other failures.
absl::StatusOr<Untrusted<std::string>> UntrustedReadFile(
    const std::filesystem::path& path);

// Reads a whole file. kAbsentFile if missing, kIo on other failures.
absl::StatusOr<Bytes> ReadFileBytes(const std::filesystem::path& path);

// The effects enclave code may use: randomness, untrusted file reads with
// explicit endorsement, and the sealed store.
class RestrictedIO {
 public:
  RestrictedIO(EntropySource& entropy, AuditLog& audit, SecureStore* store)
      : entropy_(entropy), audit_(audit), store_(store) {}

  EntropySource& entropy() { return entropy_; }
  AuditLog& audit() { return audit_; }

  absl::StatusOr<Untrusted<std::string>> UntrustedReadFile(
      const std::filesystem::path& path) {
    return ifc::UntrustedReadFile(path);
  }

  template <typename T>
  T Trust(Untrusted<T> u, std::string_view label) {
    return ifc::Trust(std::move(u), audit_, label);
  }

  // kUsage when no store was configured.
  absl::StatusOr<SecureStore*> store();

 private:
  EntropySource& entropy_;
  AuditLog& audit_;
  SecureStore* store_;
};

}  // namespace enclavon::ifc

#endif  // ENCLAVON_IFC_SECURE_STORE_H_
