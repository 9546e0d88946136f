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

#include "enclavon/calculus/value.h"

#include <algorithm>

namespace enclavon::calculus {

std::string_view ErrStateName(ErrState state) {
  switch (state) {
    case ErrState::kNotClosure:
      return "ENotClosure";
    case ErrState::kVarNotFound:
      return "EVarNotFound";
    case ErrState::kNotSecClos:
      return "ENotSecClos";
    case ErrState::kNotIntLit:
      return "ENotIntLit";
  }
  return "?";
}

std::string_view ErrStateDescription(ErrState state) {
  switch (state) {
    case ErrState::kNotClosure:
      return "Closure not found";
    case ErrState::kVarNotFound:
      return "Variable not in environment";
    case ErrState::kNotSecClos:
      return "Secure Closure not found";
    case ErrState::kNotIntLit:
      return "Not an integer literal";
  }
  return "?";
}

// Long environments would otherwise be released recursively, one stack frame
// per binding.
Env::~Env() {
  std::shared_ptr<const Node> node = std::move(head_);
  while (node != nullptr && node.use_count() == 1) {
    std::shared_ptr<const Node> next = std::move(const_cast<Node&>(*node).next);
    node = std::move(next);
  }
}

Env Env::FromBindings(std::vector<std::pair<Name, Value>> bindings) {
  Env env;
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
    env = env.Prepend(std::move(it->first), std::move(it->second));
  }
  return env;
}

Env Env::Prepend(Name name, Value value) const {
  return Env(std::make_shared<const Node>(
      Node{std::move(name), std::move(value), head_}));
}

Env Env::PrependZipped(const std::vector<Name>& names,
                       const std::vector<Value>& values) const {
  size_t n = std::min(names.size(), values.size());
  Env env = *this;
  for (size_t i = n; i-- > 0;) {
    env = env.Prepend(names[i], values[i]);
  }
  return env;
}

const Value* Env::Find(std::string_view name) const {
  for (const Node* node = head_.get(); node != nullptr;
       node = node->next.get()) {
    if (node->name == name) return &node->value;
  }
  return nullptr;
}

size_t Env::size() const {
  size_t n = 0;
  for (const Node* node = head_.get(); node != nullptr;
       node = node->next.get()) {
    ++n;
  }
  return n;
}

std::vector<std::pair<Name, Value>> Env::Bindings() const {
  std::vector<std::pair<Name, Value>> out;
  for (const Node* node = head_.get(); node != nullptr;
       node = node->next.get()) {
    out.emplace_back(node->name, node->value);
  }
  return out;
}

bool operator==(const Env& a, const Env& b) {
  const Env::Node* x = a.head_.get();
  const Env::Node* y = b.head_.get();
  while (x != nullptr && y != nullptr) {
    if (x == y) return true;  // shared tail
    if (x->name != y->name || !(x->value == y->value)) return false;
    x = x->next.get();
    y = y->next.get();
  }
  return x == y;
}

bool operator==(const Value& a, const Value& b) {
  if (a.node_.index() != b.node_.index()) return false;
  if (const auto* x = a.As<IntVal>()) return x->value == b.As<IntVal>()->value;
  if (const auto* x = a.As<Closure>()) {
    const Closure& y = *b.As<Closure>();
    return x->params == y.params && SameExp(x->body, y.body) &&
           x->captured == y.captured;
  }
  if (const auto* x = a.As<SecureClosure>()) {
    const SecureClosure& y = *b.As<SecureClosure>();
    return x->name == y.name && x->args == y.args;
  }
  if (const auto* x = a.As<ArgList>()) {
    return x->values == b.As<ArgList>()->values;
  }
  if (a.Is<Dummy>()) return true;
  return a.As<Err>()->state == b.As<Err>()->state;
}

Value LookupVar(std::string_view name, const Env& env) {
  if (const Value* v = env.Find(name)) return *v;
  return Err{ErrState::kVarNotFound};
}

}  // namespace enclavon::calculus
