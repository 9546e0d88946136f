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

#include "enclavon/semantics/reference.h"

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "enclavon/common/status.h"

namespace enclavon::semantics {
namespace {

namespace c = ::enclavon::calculus;

// Scope is a vector searched from the back; a closure copies the visible
// prefix of it as an Env so results stay comparable with the main evaluator.
struct Scope {
  std::vector<std::pair<c::Name, c::Value>> frames;

  const c::Value* Find(const c::Name& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  c::Env Snapshot() const {
    c::Env env;
    for (const auto& [name, value] : frames) env = env.Prepend(name, value);
    return env;
  }

  static Scope FromEnv(const c::Env& env) {
    Scope scope;
    auto bindings = env.Bindings();
    for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
      scope.frames.push_back(std::move(*it));
    }
    return scope;
  }
};

class Reference {
 public:
  explicit Reference(int max_depth) : max_depth_(max_depth) {}

  bool exhausted() const { return exhausted_; }

  c::Value Eval(const c::Exp& e, Scope& scope) {
    if (exhausted_ || depth_ >= max_depth_) {
      exhausted_ = true;
      return c::Dummy{};
    }
    ++depth_;
    c::Value v =
        std::visit([&](const auto& n) { return Visit(n, scope); }, e.node());
    --depth_;
    return v;
  }

 private:
  c::Value Visit(const c::Lit& n, Scope&) { return c::IntVal{n.value}; }

  c::Value Visit(const c::Var& n, Scope& scope) {
    const c::Value* v = scope.Find(n.name);
    if (v == nullptr) return c::Err{c::ErrState::kVarNotFound};
    return *v;
  }

  c::Value Visit(const c::Fun& n, Scope& scope) {
    return c::Closure{n.params, n.body, scope.Snapshot()};
  }

  c::Value Visit(const c::Let& n, Scope& scope) {
    c::Value bound = Eval(*n.bound, scope);
    scope.frames.emplace_back(n.name, std::move(bound));
    c::Value result = Eval(*n.body, scope);
    scope.frames.pop_back();
    return result;
  }

  c::Value Visit(const c::App& n, Scope& scope) {
    c::Value head = Eval(*n.fn, scope);
    std::vector<c::Value> args;
    for (const c::ExpPtr& a : n.args) args.push_back(Eval(*a, scope));
    const auto* closure = head.As<c::Closure>();
    if (closure == nullptr) return c::Err{c::ErrState::kNotClosure};
    Scope inner = Scope::FromEnv(closure->captured);
    size_t bound = std::min(closure->params.size(), args.size());
    // The first parameter must win over later duplicates, so push in reverse.
    for (size_t i = bound; i > 0; --i) {
      inner.frames.emplace_back(closure->params[i - 1], args[i - 1]);
    }
    return Eval(*closure->body, inner);
  }

  c::Value Visit(const c::Plus& n, Scope& scope) {
    c::Value a = Eval(*n.left, scope);
    c::Value b = Eval(*n.right, scope);
    const auto* x = a.As<c::IntVal>();
    const auto* y = b.As<c::IntVal>();
    if (x == nullptr || y == nullptr) return c::Err{c::ErrState::kNotIntLit};
    uint64_t sum =
        static_cast<uint64_t>(x->value) + static_cast<uint64_t>(y->value);
    return c::IntVal{static_cast<int64_t>(sum)};
  }

  c::Value Visit(const c::InEnclave&, Scope&) { return c::Dummy{}; }
  c::Value Visit(const c::Gateway&, Scope&) { return c::Dummy{}; }
  c::Value Visit(const c::EnclaveApp&, Scope&) { return c::Dummy{}; }

  int max_depth_;
  int depth_ = 0;
  bool exhausted_ = false;
};

void MentionedNames(const c::Exp& e, std::vector<c::Name>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, c::Var>) {
          out.push_back(n.name);
        } else if constexpr (std::is_same_v<T, c::Fun>) {
          MentionedNames(*n.body, out);
        } else if constexpr (std::is_same_v<T, c::App>) {
          MentionedNames(*n.fn, out);
          for (const c::ExpPtr& a : n.args) MentionedNames(*a, out);
        } else if constexpr (std::is_same_v<T, c::Let>) {
          MentionedNames(*n.bound, out);
          MentionedNames(*n.body, out);
        } else if constexpr (std::is_same_v<T, c::Plus> ||
                             std::is_same_v<T, c::EnclaveApp>) {
          MentionedNames(*n.left, out);
          MentionedNames(*n.right, out);
        } else if constexpr (std::is_same_v<T, c::InEnclave> ||
                             std::is_same_v<T, c::Gateway>) {
          MentionedNames(*n.body, out);
        }
      },
      e.node());
}

bool AllObservablyEqual(const std::vector<c::Value>& a,
                        const std::vector<c::Value>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!ObservablyEqual(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool ObservablyEqual(const calculus::Value& a, const calculus::Value& b) {
  const auto* x = a.As<c::Closure>();
  const auto* y = b.As<c::Closure>();
  if (x != nullptr && y != nullptr) {
    if (x->params != y->params || !c::SameExp(x->body, y->body)) return false;
    std::vector<c::Name> names;
    MentionedNames(*x->body, names);
    for (const c::Name& n : names) {
      if (!ObservablyEqual(c::LookupVar(n, x->captured),
                           c::LookupVar(n, y->captured))) {
        return false;
      }
    }
    return true;
  }
  const auto* sx = a.As<c::SecureClosure>();
  const auto* sy = b.As<c::SecureClosure>();
  if (sx != nullptr && sy != nullptr) {
    return sx->name == sy->name && AllObservablyEqual(sx->args, sy->args);
  }
  const auto* lx = a.As<c::ArgList>();
  const auto* ly = b.As<c::ArgList>();
  if (lx != nullptr && ly != nullptr) {
    return AllObservablyEqual(lx->values, ly->values);
  }
  return a == b;
}

absl::StatusOr<calculus::Value> EvalReference(const calculus::Exp& e,
                                              int max_depth) {
  if (c::ContainsEnclaveNode(e)) {
    return MakeError(ErrorKind::kUsage,
                     "reference evaluator accepts enclave-free programs only");
  }
  Reference ref(max_depth);
  Scope scope;
  c::Value v = ref.Eval(e, scope);
  if (ref.exhausted()) {
    return MakeError(ErrorKind::kResourceExhausted,
                     "reference evaluation exceeded depth limit");
  }
  return v;
}

}  // namespace enclavon::semantics
