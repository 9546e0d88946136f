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

#include "enclavon/semantics/evaluator.h"

#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "enclavon/common/status.h"

namespace enclavon::semantics {
namespace {

using calculus::ArgList;
using calculus::Closure;
using calculus::Dummy;
using calculus::EnclaveApp;
using calculus::Err;
using calculus::ErrState;
using calculus::ExpPtr;
using calculus::Fun;
using calculus::Gateway;
using calculus::InEnclave;
using calculus::IntVal;
using calculus::Let;
using calculus::Lit;
using calculus::LookupVar;
using calculus::Plus;
using calculus::SecureClosure;
using calculus::Var;

enum class Memory { kEnclave, kClient };

int64_t WrappingAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) +
                              static_cast<uint64_t>(b));
}

// One evaluator for both memories: the six lambda-calculus clauses are shared
// and only the three enclave operators differ.
class Machine {
 public:
  Machine(EvalState& state, const EvalLimits& limits)
      : state_(state), limits_(limits) {}

  EvalResult Eval(Memory memory, const Exp& e, const Env& env) {
    if (exhausted_) return {Dummy{}, env};
    if (++depth_ > limits_.max_depth) {
      exhausted_ = true;
      --depth_;
      return {Dummy{}, env};
    }
    EvalResult result = Step(memory, e, env);
    --depth_;
    return result;
  }

  absl::StatusOr<EvalResult> Finish(EvalResult result) const {
    if (exhausted_) {
      return MakeError(
          ErrorKind::kResourceExhausted,
          absl::StrCat("evaluation exceeded depth limit ", limits_.max_depth));
    }
    return result;
  }

 private:
  EvalResult Step(Memory memory, const Exp& e, const Env& env) {
    if (const auto* lit = e.As<Lit>()) return {IntVal{lit->value}, env};
    if (const auto* var = e.As<Var>()) return {LookupVar(var->name, env), env};
    if (const auto* fun = e.As<Fun>()) {
      return {Closure{fun->params, fun->body, env}, env};
    }
    if (const auto* let = e.As<Let>()) {
      EvalResult bound = Eval(memory, *let->bound, env);
      return Eval(memory, *let->body,
                  bound.env.Prepend(let->name, std::move(bound.value)));
    }
    if (const auto* app = e.As<calculus::App>()) {
      EvalResult head = Eval(memory, *app->fn, env);
      std::vector<Value> vals;
      Env cur = head.env;
      for (const ExpPtr& arg : app->args) {
        EvalResult r = Eval(memory, *arg, cur);
        vals.push_back(std::move(r.value));
        cur = std::move(r.env);
      }
      if (const auto* closure = head.value.As<Closure>()) {
        return Eval(memory, *closure->body,
                    closure->captured.PrependZipped(closure->params, vals));
      }
      return {Err{ErrState::kNotClosure}, cur};
    }
    if (const auto* plus = e.As<Plus>()) {
      EvalResult left = Eval(memory, *plus->left, env);
      EvalResult right = Eval(memory, *plus->right, left.env);
      const auto* a = left.value.As<IntVal>();
      const auto* b = right.value.As<IntVal>();
      if (a != nullptr && b != nullptr) {
        return {IntVal{WrappingAdd(a->value, b->value)}, right.env};
      }
      return {Err{ErrState::kNotIntLit}, right.env};
    }
    return memory == Memory::kEnclave ? EnclaveStep(e, env)
                                      : ClientStep(e, env);
  }

  EvalResult EnclaveStep(const Exp& e, const Env& env) {
    if (const auto* in = e.As<InEnclave>()) {
      EvalResult body = Eval(Memory::kEnclave, *in->body, env);
      Name name = GenEncVar(state_);
      return {Dummy{},
              body.env.Prepend(std::move(name), std::move(body.value))};
    }
    if (const auto* gw = e.As<Gateway>()) {
      return Eval(Memory::kEnclave, *gw->body, env);
    }
    const auto& ea = *e.As<EnclaveApp>();
    EvalResult left = Eval(Memory::kEnclave, *ea.left, env);
    EvalResult right = Eval(Memory::kEnclave, *ea.right, left.env);
    return {Dummy{}, right.env};
  }

  EvalResult ClientStep(const Exp& e, const Env& env) {
    if (const auto* in = e.As<InEnclave>()) {
      EvalResult body = Eval(Memory::kClient, *in->body, env);
      Name name = GenEncVar(state_);
      Env next = body.env.Prepend(name, Dummy{});
      return {SecureClosure{std::move(name), {}}, std::move(next)};
    }
    if (const auto* gw = e.As<Gateway>()) {
      EvalResult target = Eval(Memory::kClient, *gw->body, env);
      const auto* secure = target.value.As<SecureClosure>();
      if (secure == nullptr) return {Err{ErrState::kNotSecClos}, target.env};
      Value func = LookupVar(secure->name, state_.enclave_memory);
      const auto* closure = func.As<Closure>();
      if (closure == nullptr) return {Err{ErrState::kNotClosure}, target.env};
      // The enclave environment the call ends in is dropped: the next
      // gateway starts again from the pass-1 memory.
      EvalResult call =
          Eval(Memory::kEnclave, *closure->body,
               closure->captured.PrependZipped(closure->params, secure->args));
      return {std::move(call.value), target.env};
    }
    const auto& ea = *e.As<EnclaveApp>();
    EvalResult left = Eval(Memory::kClient, *ea.left, env);
    EvalResult right = Eval(Memory::kClient, *ea.right, left.env);
    if (const auto* secure = left.value.As<SecureClosure>()) {
      std::vector<Value> args = secure->args;
      if (const auto* list = right.value.As<ArgList>()) {
        args.insert(args.end(), list->values.begin(), list->values.end());
      } else {
        args.push_back(std::move(right.value));
      }
      return {SecureClosure{secure->name, std::move(args)}, right.env};
    }
    return {ArgList{{std::move(left.value), std::move(right.value)}},
            right.env};
  }

  EvalState& state_;
  const EvalLimits& limits_;
  int depth_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Name GenEncVar(EvalState& state) {
  Name name = absl::StrCat("EncVar", state.var_counter);
  ++state.var_counter;
  state.generated_names.push_back(name);
  return name;
}

absl::StatusOr<EvalResult> EvalEnclave(const Exp& e, const Env& env,
                                       EvalState& state,
                                       const EvalLimits& limits) {
  Machine machine(state, limits);
  return machine.Finish(machine.Eval(Memory::kEnclave, e, env));
}

absl::StatusOr<EvalResult> EvalClient(const Exp& e, const Env& env,
                                      EvalState& state,
                                      const EvalLimits& limits) {
  Machine machine(state, limits);
  return machine.Finish(machine.Eval(Memory::kClient, e, env));
}

absl::StatusOr<TwoPassResult> EvalTwoPass(const Exp& e,
                                          const EvalLimits& limits) {
  EvalState first;
  ENCLAVON_ASSIGN_OR_RETURN(EvalResult loaded,
                            EvalEnclave(e, Env(), first, limits));

  EvalState second;
  second.enclave_memory = loaded.env;
  ENCLAVON_ASSIGN_OR_RETURN(EvalResult run,
                            EvalClient(e, Env(), second, limits));

  TwoPassResult result;
  result.value = std::move(run.value);
  result.client_env = std::move(run.env);
  result.enclave_env = std::move(loaded.env);
  result.enclave_pass_names = std::move(first.generated_names);
  result.client_pass_names = std::move(second.generated_names);
  return result;
}

}  // namespace enclavon::semantics
