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

#ifndef ENCLAVON_SEMANTICS_PROPERTIES_H_
#define ENCLAVON_SEMANTICS_PROPERTIES_H_

#include <cstdint>
#include <string>

namespace enclavon::semantics {

struct PropertyReport {
  int cases = 0;
  int failures = 0;
  // Description of the first failing case, empty if none failed.
  std::string first_failure;
};

// Every check runs seeds first_seed .. first_seed + count - 1.

// Generated enclave-free programs: EvalTwoPass agrees with EvalReference
// under ObservablyEqual. Program budgets cycle through 10 .. 10 + spread - 1.
PropertyReport CheckEnclaveFreeOracle(uint64_t first_seed, int count,
                                      int spread = 50);

// Generated (f, a, b): gateway over left- and right-nested EnclaveApp give
// the same value and client environment.
PropertyReport CheckAssociation(uint64_t first_seed, int count,
                                int budget = 30);

// Generated gateway-free (context, e1, e2) triples pass the
// non-interference check.
PropertyReport CheckNoninterferenceCases(uint64_t first_seed, int count,
                                         int budget = 30);

}  // namespace enclavon::semantics

#endif  // ENCLAVON_SEMANTICS_PROPERTIES_H_
