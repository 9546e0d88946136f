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

#include "enclavon/semantics/noninterference.h"

#include <algorithm>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "enclavon/calculus/syntax.h"
#include "enclavon/common/status.h"
#include "enclavon/semantics/generator.h"

namespace enclavon::semantics {
namespace {

namespace c = ::enclavon::calculus;

using Rewriter = std::function<c::ExpPtr(const c::ExpPtr&)>;

// Pre-order rewrite: where `fn` returns non-null the subtree is replaced and
// not descended into.
c::ExpPtr Rewrite(const c::ExpPtr& e, const Rewriter& fn) {
  if (c::ExpPtr replaced = fn(e)) return replaced;
  const c::Exp& n = *e;
  if (const auto* f = n.As<c::Fun>()) {
    return c::MakeFun(f->params, Rewrite(f->body, fn));
  }
  if (const auto* a = n.As<c::App>()) {
    std::vector<c::ExpPtr> args;
    for (const c::ExpPtr& arg : a->args) args.push_back(Rewrite(arg, fn));
    return c::MakeApp(Rewrite(a->fn, fn), std::move(args));
  }
  if (const auto* l = n.As<c::Let>()) {
    return c::MakeLet(l->name, Rewrite(l->bound, fn), Rewrite(l->body, fn));
  }
  if (const auto* p = n.As<c::Plus>()) {
    return c::MakePlus(Rewrite(p->left, fn), Rewrite(p->right, fn));
  }
  if (const auto* i = n.As<c::InEnclave>()) {
    return c::MakeInEnclave(Rewrite(i->body, fn));
  }
  if (const auto* g = n.As<c::Gateway>()) {
    return c::MakeGateway(Rewrite(g->body, fn));
  }
  if (const auto* ea = n.As<c::EnclaveApp>()) {
    return c::MakeEnclaveApp(Rewrite(ea->left, fn), Rewrite(ea->right, fn));
  }
  return e;
}

bool IsHole(const c::ExpPtr& e) {
  const auto* v = e->As<c::Var>();
  return v != nullptr && v->name == kHoleName;
}

struct HoleCount {
  int total = 0;
  int under_enclave = 0;
};

HoleCount CountHoles(const c::ExpPtr& e) {
  HoleCount count;
  Rewrite(e, [&](const c::ExpPtr& n) -> c::ExpPtr {
    if (IsHole(n)) ++count.total;
    if (const auto* in = n->As<c::InEnclave>()) {
      if (IsHole(in->body)) ++count.under_enclave;
    }
    return nullptr;
  });
  return count;
}

std::string Outcome(const TwoPassResult& r) {
  return absl::StrCat("value ", c::PrintValue(r.value), "\n  client env ",
                      c::PrintEnv(r.client_env), "\n  enclave env ",
                      c::PrintEnv(r.enclave_env));
}

}  // namespace

absl::StatusOr<HoleContext> HoleContext::Create(c::ExpPtr with_hole) {
  if (c::ContainsGateway(*with_hole)) {
    return MakeError(ErrorKind::kUsage, "context must not contain a gateway");
  }
  HoleCount count = CountHoles(with_hole);
  if (count.total != 1) {
    return MakeError(
        ErrorKind::kUsage,
        absl::StrCat("context must contain exactly one hole, found ",
                     count.total));
  }
  if (count.under_enclave != 1) {
    return MakeError(ErrorKind::kUsage,
                     "the hole must be the body of an inEnclave");
  }
  return HoleContext(std::move(with_hole));
}

c::ExpPtr HoleContext::Fill(const c::ExpPtr& filler) const {
  return Rewrite(exp_, [&](const c::ExpPtr& n) -> c::ExpPtr {
    return IsHole(n) ? filler : nullptr;
  });
}

std::string NoninterferenceVerdict::Report() const {
  return absl::StrCat(
      pass ? "PASS" : "FAIL", "\nprogram 1: ", c::PrintProgram(*program1),
      "\n  ", Outcome(run1), "\nprogram 2: ", c::PrintProgram(*program2),
      "\n  ", Outcome(run2), "\n");
}

absl::StatusOr<NoninterferenceVerdict> CheckNoninterference(
    const HoleContext& context, const c::ExpPtr& e1, const c::ExpPtr& e2,
    const EvalLimits& limits) {
  if (!c::IsClosed(*e1) || !c::IsClosed(*e2)) {
    return MakeError(ErrorKind::kUsage, "hole fillers must be closed");
  }
  NoninterferenceVerdict verdict;
  verdict.program1 = context.Fill(e1);
  verdict.program2 = context.Fill(e2);
  ENCLAVON_ASSIGN_OR_RETURN(verdict.run1,
                            EvalTwoPass(*verdict.program1, limits));
  ENCLAVON_ASSIGN_OR_RETURN(verdict.run2,
                            EvalTwoPass(*verdict.program2, limits));
  verdict.pass = verdict.run1.value == verdict.run2.value &&
                 verdict.run1.client_env == verdict.run2.client_env;
  return verdict;
}

NoninterferenceCase GenerateNoninterferenceCase(uint64_t seed, int budget) {
  std::mt19937_64 rng(seed);
  GeneratorOptions options;
  options.seed = rng();
  options.budget = budget;
  options.allow_gateway = false;
  c::ExpPtr program = GenerateProgram(options);

  int enclaves = 0;
  Rewrite(program, [&](const c::ExpPtr& n) -> c::ExpPtr {
    if (n->As<c::InEnclave>() != nullptr) ++enclaves;
    return nullptr;
  });

  int arity = 1;
  c::ExpPtr with_hole;
  if (enclaves == 0) {
    with_hole = c::MakeLet("hole_binder", c::MakeInEnclave(c::MakeVar("HOLE")),
                           program);
  } else {
    int target = static_cast<int>(rng() % enclaves);
    int seen = 0;
    with_hole = Rewrite(program, [&](const c::ExpPtr& n) -> c::ExpPtr {
      const auto* in = n->As<c::InEnclave>();
      if (in == nullptr || seen++ != target) return nullptr;
      if (const auto* fun = in->body->As<c::Fun>()) {
        arity = static_cast<int>(fun->params.size());
      }
      return c::MakeInEnclave(c::MakeVar(std::string(kHoleName)));
    });
  }

  auto filler = [&]() -> c::ExpPtr {
    int size = 1 + static_cast<int>(rng() % std::max(1, budget / 2));
    if (rng() % 4 == 0) return GenerateClosedArith(rng(), size);
    return GenerateClosedFun(rng(), size, arity);
  };
  c::ExpPtr e1 = filler();
  c::ExpPtr e2 = filler();
  auto context = HoleContext::Create(std::move(with_hole));
  return NoninterferenceCase{*std::move(context), std::move(e1), std::move(e2)};
}

}  // namespace enclavon::semantics
