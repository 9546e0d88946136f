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

#include "enclavon/semantics/properties.h"

#include "absl/strings/str_cat.h"
#include "enclavon/calculus/exp.h"
#include "enclavon/calculus/syntax.h"
#include "enclavon/semantics/evaluator.h"
#include "enclavon/semantics/generator.h"
#include "enclavon/semantics/noninterference.h"
#include "enclavon/semantics/reference.h"

namespace enclavon::semantics {
namespace {

void Fail(PropertyReport& report, std::string what) {
  if (report.failures++ == 0) report.first_failure = std::move(what);
}

}  // namespace

PropertyReport CheckEnclaveFreeOracle(uint64_t first_seed, int count,
                                      int spread) {
  if (spread < 1) spread = 1;
  PropertyReport report;
  for (int i = 0; i < count; ++i) {
    uint64_t seed = first_seed + static_cast<uint64_t>(i);
    GeneratorOptions options;
    options.seed = seed;
    options.budget =
        10 + static_cast<int>(seed % static_cast<uint64_t>(spread));
    options.allow_enclave = false;
    calculus::ExpPtr e = GenerateProgram(options);
    ++report.cases;
    auto two = EvalTwoPass(*e);
    auto ref = EvalReference(*e);
    if (!two.ok() || !ref.ok() || !ObservablyEqual(two->value, *ref)) {
      Fail(report,
           absl::StrCat("seed ", seed, ": ", calculus::PrintProgram(*e)));
    }
  }
  return report;
}

PropertyReport CheckAssociation(uint64_t first_seed, int count, int budget) {
  PropertyReport report;
  for (int i = 0; i < count; ++i) {
    uint64_t seed = first_seed + static_cast<uint64_t>(i);
    AssociationCase c = GenerateAssociationCase(seed, budget);
    calculus::ExpPtr left =
        calculus::MakeEnclaveApp(calculus::MakeEnclaveApp(c.f, c.a), c.b);
    calculus::ExpPtr right =
        calculus::MakeEnclaveApp(c.f, calculus::MakeEnclaveApp(c.a, c.b));
    ++report.cases;
    auto l = EvalTwoPass(*calculus::MakeGateway(left));
    auto r = EvalTwoPass(*calculus::MakeGateway(right));
    if (!l.ok() || !r.ok() || !(l->value == r->value) ||
        !(l->client_env == r->client_env)) {
      Fail(report,
           absl::StrCat("seed ", seed, ": ", calculus::PrintProgram(*left)));
    }
  }
  return report;
}

PropertyReport CheckNoninterferenceCases(uint64_t first_seed, int count,
                                         int budget) {
  PropertyReport report;
  for (int i = 0; i < count; ++i) {
    uint64_t seed = first_seed + static_cast<uint64_t>(i);
    NoninterferenceCase c = GenerateNoninterferenceCase(seed, budget);
    ++report.cases;
    auto v = CheckNoninterference(c.context, c.e1, c.e2);
    if (!v.ok()) {
      Fail(report, absl::StrCat("seed ", seed, ": ",
                                std::string(v.status().message())));
    } else if (!v->pass) {
      Fail(report, absl::StrCat("seed ", seed, ":\n", v->Report()));
    }
  }
  return report;
}

}  // namespace enclavon::semantics
