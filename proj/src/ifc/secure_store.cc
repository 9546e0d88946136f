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

#include "enclavon/ifc/secure_store.h"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::ifc {
namespace fs = std::filesystem;

absl::StatusOr<SecurePath> SecurePath::Create(std::string_view name) {
  if (name.empty() || name == "." || name == ".." ||
      name.find('/') != std::string_view::npos ||
      name.find('\\') != std::string_view::npos ||
      name.find('\0') != std::string_view::npos) {
    return MakeError(
        ErrorKind::kUsage,
        absl::StrCat("invalid secure file name '",
                     absl::string_view(name.data(), name.size()), "'"));
  }
  return SecurePath(std::string(name));
}

SecureStore::SecureStore(fs::path dir, RootSealKey key, EntropySource& entropy)
    : dir_(std::move(dir)), key_(std::move(key)), entropy_(&entropy) {}

absl::StatusOr<SecureStore> SecureStore::FromEnvironment(
    EntropySource& entropy) {
  ENCLAVON_ASSIGN_OR_RETURN(RootSealKey key, RootSealKey::FromEnvironment());
  const char* dir = std::getenv("HASTEE_SECURE_DIR");
  return SecureStore(dir != nullptr ? fs::path(dir) : fs::path("secure_store"),
                     std::move(key), entropy);
}

absl::Status SecureStore::WriteSecure(const SecurePath& path,
                                      std::string_view text) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) {
    return MakeError(
        ErrorKind::kIo,
        absl::StrCat("cannot create ", dir_.string(), ": ", ec.message()));
  }
  Bytes blob = key_.Seal(
      ByteSpan(reinterpret_cast<const uint8_t*>(text.data()), text.size()),
      *entropy_);
  fs::path target = FileFor(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(blob.data()),
              static_cast<std::streamsize>(blob.size()));
    out.flush();
    if (!out) {
      return MakeError(ErrorKind::kIo,
                       absl::StrCat("cannot write ", temp.string()));
    }
  }
  fs::rename(temp, target, ec);
  if (ec) {
    return MakeError(
        ErrorKind::kIo,
        absl::StrCat("cannot replace ", target.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> SecureStore::ReadSecure(
    const SecurePath& path) const {
  ENCLAVON_ASSIGN_OR_RETURN(Bytes blob, ReadFileBytes(FileFor(path)));
  ENCLAVON_ASSIGN_OR_RETURN(Bytes plain, key_.Unseal(blob));
  if (!IsValidUtf8(plain)) {
    return MakeError(ErrorKind::kEncoding, "sealed text is not UTF-8");
  }
  return ToString(plain);
}

bool SecureStore::DoesSecureFileExist(const SecurePath& path) const {
  std::error_code ec;
  return fs::is_regular_file(FileFor(path), ec);
}

absl::Status SecureStore::DeleteSecure(const SecurePath& path) {
  std::error_code ec;
  fs::remove(FileFor(path), ec);
  if (ec) {
    return MakeError(ErrorKind::kIo,
                     absl::StrCat("cannot delete: ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<Bytes> ReadFileBytes(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    return MakeError(ErrorKind::kAbsentFile,
                     absl::StrCat("no such file: ", path.string()));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIo,
                     absl::StrCat("cannot open ", path.string()));
  }
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  if (in.bad()) {
    return MakeError(ErrorKind::kIo,
                     absl::StrCat("cannot read ", path.string()));
  }
  return data;
}

absl::StatusOr<Untrusted<std::string>> UntrustedReadFile(const fs::path& path) {
  ENCLAVON_ASSIGN_OR_RETURN(Bytes data, ReadFileBytes(path));
  if (!IsValidUtf8(data)) {
    return MakeError(ErrorKind::kEncoding,
                     absl::StrCat(path.string(), " is not UTF-8"));
  }
  return Untrusted<std::string>(ToString(data));
}

absl::StatusOr<SecureStore*> RestrictedIO::store() {
  if (store_ == nullptr) {
    return MakeError(ErrorKind::kUsage, "no secure store configured");
  }
  return store_;
}

}  // namespace enclavon::ifc
