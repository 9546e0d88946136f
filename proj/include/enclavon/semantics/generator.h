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

#ifndef ENCLAVON_SEMANTICS_GENERATOR_H_
#define ENCLAVON_SEMANTICS_GENERATOR_H_

#include <cstdint>

#include "enclavon/calculus/exp.h"

namespace enclavon::semantics {

struct GeneratorOptions {
  uint64_t seed = 0;
  // Approximate node count; 1 yields a single literal.
  int budget = 20;
  bool allow_gateway = true;
  // When false, no InEnclave, Gateway or EnclaveApp node is produced.
  bool allow_enclave = true;
  // Probability that a slot receives an expression of the wrong shape, so
  // that Err values are exercised.
  double ill_typed_rate = 0.05;
};

// Closed, well-scoped program of integer type, deterministic in the options.
//
// The shapes are restricted so that the two-pass evaluator and the lexical
// reference agree, the fresh-name sequences of both passes coincide, and
// well-typed gateways reach their closure:
//   * every binder name is unique in the program;
//   * App occurs only in tail position, so its resulting environment is
//     never consumed; with enclave nodes enabled its head is a Fun literal
//     and its arguments contain no InEnclave;
//   * no InEnclave occurs under a Fun;
//   * functions placed in the enclave contain no Gateway and read no
//     variable holding a gateway result or a secure handle.
calculus::ExpPtr GenerateProgram(const GeneratorOptions& options);

// Shorthand for GenerateProgram with default rates.
calculus::ExpPtr GenRandomProgram(uint64_t seed, int budget,
                                  bool allow_gateway);

// A closed Fun of the given arity with a gateway-free, enclave-free body.
calculus::ExpPtr GenerateClosedFun(uint64_t seed, int budget, int arity);

// A closed expression built from literals and Plus only.
calculus::ExpPtr GenerateClosedArith(uint64_t seed, int budget);

// Inputs for the association check: f is an InEnclave over a two-parameter
// Fun, and a and b are closed, enclave-free integer expressions.
struct AssociationCase {
  calculus::ExpPtr f;
  calculus::ExpPtr a;
  calculus::ExpPtr b;
};
AssociationCase GenerateAssociationCase(uint64_t seed, int budget);

}  // namespace enclavon::semantics

#endif  // ENCLAVON_SEMANTICS_GENERATOR_H_
