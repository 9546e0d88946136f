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

#ifndef ENCLAVON_SEMANTICS_REFERENCE_H_
#define ENCLAVON_SEMANTICS_REFERENCE_H_

#include "absl/status/statusor.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/calculus/value.h"

namespace enclavon::semantics {

// Plain call-by-value evaluator with lexical scope and a single environment.
// Written independently of the two-pass evaluator and used as its oracle on
// enclave-free programs. Error shapes follow the same rules: failures are
// Err values, Plus over anything but two integers is ENotIntLit, applying a
// non-closure is ENotClosure, and surplus or missing arguments are dropped
// the way zip drops them.
//
// Returns kUsage if `e` contains InEnclave, Gateway or EnclaveApp, and
// kResourceExhausted past `max_depth` nested evaluations.
absl::StatusOr<calculus::Value> EvalReference(const calculus::Exp& e,
                                              int max_depth = 10000);

// Equality as far as a program can tell: closures match when their
// parameters and bodies match and their captured environments agree on
// every variable the body mentions. The two-pass evaluator threads leftover
// bindings into captured environments that the lexical reference never has;
// those bindings cannot be reached from the body.
bool ObservablyEqual(const calculus::Value& a, const calculus::Value& b);

}  // namespace enclavon::semantics

#endif  // ENCLAVON_SEMANTICS_REFERENCE_H_
