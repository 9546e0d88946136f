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

#ifndef ENCLAVON_CALCULUS_SYNTAX_H_
#define ENCLAVON_CALCULUS_SYNTAX_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/calculus/value.h"

namespace enclavon::calculus {

// Surface grammar (S-expressions, `;` starts a line comment):
//
//   e ::= INT | SYM | (fun (SYM*) e) | (app e e*) | (let SYM e e)
//       | (+ e e) | (inEnclave e) | (gateway e) | (<@> e e)
//
// The head keywords are reserved and cannot be used as variable names.
// Errors carry ErrorKind::kParse and a "line:column: " prefix.
absl::StatusOr<ExpPtr> ParseProgram(std::string_view text);

// Inverse of ParseProgram on every well-formed tree.
std::string PrintProgram(const Exp& e);

// "IntVal 5", "Dummy", "SecureClosure \"EncVar0\" []", "Err ENotIntLit",
// "ArgList [IntVal 1, IntVal 2]",
// "Closure [\"x\"] (+ x m) [m ↦ IntVal 3]".
std::string PrintValue(const Value& v);

// "[m ↦ IntVal 3, f ↦ ...]", oldest binding first (the order in which the
// program introduced them).
std::string PrintEnv(const Env& env);

bool IsReservedWord(std::string_view word);

}  // namespace enclavon::calculus

#endif  // ENCLAVON_CALCULUS_SYNTAX_H_
