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

#ifndef ENCLAVON_SEMANTICS_EVALUATOR_H_
#define ENCLAVON_SEMANTICS_EVALUATOR_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/calculus/value.h"

namespace enclavon::semantics {

using calculus::Env;
using calculus::Exp;
using calculus::Name;
using calculus::Value;

// State threaded through one evaluation pass.
struct EvalState {
  uint64_t var_counter = 0;
  // The enclave memory produced by the first pass; read by Gateway during
  // the second.
  Env enclave_memory;
  // Every fresh name handed out, in order.
  std::vector<Name> generated_names;
};

struct EvalLimits {
  // Recursion depth past which evaluation stops with ResourceExhausted.
  int max_depth = 10000;
};

struct EvalResult {
  Value value;
  Env env;
};

// "EncVar" + decimal(counter), then increments the counter.
Name GenEncVar(EvalState& state);

// Evaluator of the trusted memory. InEnclave stores its value under a fresh
// name and yields Dummy; Gateway is a pass-through and EnclaveApp evaluates
// both operands for their environment effects only.
//
// Calculus failures come back as Err values. The status is non-OK only when
// the depth limit is exceeded.
absl::StatusOr<EvalResult> EvalEnclave(const Exp& e, const Env& env,
                                       EvalState& state,
                                       const EvalLimits& limits = {});

// Evaluator of the untrusted memory. InEnclave yields SecureClosure(name, [])
// and binds name to Dummy; Gateway runs the named enclave closure with
// EvalEnclave against state.enclave_memory and discards whatever that call
// does to the enclave environment; EnclaveApp accumulates arguments.
absl::StatusOr<EvalResult> EvalClient(const Exp& e, const Env& env,
                                      EvalState& state,
                                      const EvalLimits& limits = {});

struct TwoPassResult {
  Value value;      // result of the client pass
  Env client_env;   // final client environment
  Env enclave_env;  // enclave memory loaded by the first pass
  std::vector<Name> enclave_pass_names;
  std::vector<Name> client_pass_names;
};

// Pass 1 runs EvalEnclave from an empty environment with counter 0; pass 2
// runs EvalClient from an empty environment with the counter reset to 0 and
// the pass-1 environment as enclave memory. Resetting the counter is what
// makes the fresh names of both passes coincide.
absl::StatusOr<TwoPassResult> EvalTwoPass(const Exp& e,
                                          const EvalLimits& limits = {});

}  // namespace enclavon::semantics

#endif  // ENCLAVON_SEMANTICS_EVALUATOR_H_
