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

#ifndef ENCLAVON_SEMANTICS_NONINTERFERENCE_H_
#define ENCLAVON_SEMANTICS_NONINTERFERENCE_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/semantics/evaluator.h"

namespace enclavon::semantics {

// The hole of a context is the variable named HOLE.
inline constexpr std::string_view kHoleName = "HOLE";

// A gateway-free program with exactly one hole, sitting directly under an
// InEnclave.
class HoleContext {
 public:
  // kUsage if the program contains a Gateway, if HOLE occurs other than
  // exactly once, or if its occurrence is not the body of an InEnclave.
  static absl::StatusOr<HoleContext> Create(calculus::ExpPtr with_hole);

  // The program with the hole replaced by `filler`.
  calculus::ExpPtr Fill(const calculus::ExpPtr& filler) const;

  const calculus::ExpPtr& exp() const { return exp_; }

 private:
  explicit HoleContext(calculus::ExpPtr exp) : exp_(std::move(exp)) {}

  calculus::ExpPtr exp_;
};

struct NoninterferenceVerdict {
  bool pass = false;
  calculus::ExpPtr program1;
  calculus::ExpPtr program2;
  TwoPassResult run1;
  TwoPassResult run2;

  // Both programs with their client-visible outcomes.
  std::string Report() const;
};

// Runs both fillings through EvalTwoPass and compares what the client can
// observe: the final value and the final client environment, structurally.
// kUsage if either filler is not closed.
absl::StatusOr<NoninterferenceVerdict> CheckNoninterference(
    const HoleContext& context, const calculus::ExpPtr& e1,
    const calculus::ExpPtr& e2, const EvalLimits& limits = {});

// Fillers are closed Funs or closed Lit/Plus expressions. Fillers that bind
// variables outside a Fun (a bare Let) are not admissible: the client pass
// still evaluates the hole for its environment effect and those bindings
// become observable.
struct NoninterferenceCase {
  HoleContext context;
  calculus::ExpPtr e1;
  calculus::ExpPtr e2;
};
NoninterferenceCase GenerateNoninterferenceCase(uint64_t seed, int budget);

}  // namespace enclavon::semantics

#endif  // ENCLAVON_SEMANTICS_NONINTERFERENCE_H_
