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

// Built twice by ctest: with ENCLAVON_CONTROL it must compile, without it
// the compiler must reject serializing the private key.

#include "enclavon/paillier/paillier.h"

int main() {
  enclavon::paillier::PrivateKey sk(mpz_class(1), mpz_class(1));
  enclavon::paillier::PublicKey pk =
      enclavon::paillier::PublicKey::FromModulus(mpz_class(15));
#ifdef ENCLAVON_CONTROL
  enclavon::Bytes b = enclavon::wire::EncodeValue(pk);
#else
  enclavon::Bytes b = enclavon::wire::EncodeValue(sk);
#endif
  return static_cast<int>(b.size() + sk.lambda().get_si());
}
