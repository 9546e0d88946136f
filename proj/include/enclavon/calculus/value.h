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

#ifndef ENCLAVON_CALCULUS_VALUE_H_
#define ENCLAVON_CALCULUS_VALUE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "enclavon/calculus/exp.h"

namespace enclavon::calculus {

enum class ErrState {
  kNotClosure,
  kVarNotFound,
  kNotSecClos,
  kNotIntLit,
};

// Constructor name as rendered by the printer, e.g. "ENotClosure".
std::string_view ErrStateName(ErrState state);
// Human-readable description, e.g. "Closure not found".
std::string_view ErrStateDescription(ErrState state);

class Value;

// Immutable association list from names to values. Prepending shadows; the
// front binding wins on lookup. Copies share structure, so capturing an
// environment in a closure is O(1) and never aliases later extensions.
class Env {
 public:
  Env() = default;
  Env(const Env&) = default;
  Env(Env&&) noexcept = default;
  Env& operator=(const Env&) = default;
  Env& operator=(Env&&) noexcept = default;
  ~Env();

  // Builds an environment whose front is bindings[0].
  static Env FromBindings(std::vector<std::pair<Name, Value>> bindings);

  Env Prepend(Name name, Value value) const;
  // (names[i] |-> values[i]) ++ *this, truncated to the shorter list.
  Env PrependZipped(const std::vector<Name>& names,
                    const std::vector<Value>& values) const;

  // Front-most binding for `name`, or nullptr.
  const Value* Find(std::string_view name) const;

  bool empty() const { return head_ == nullptr; }
  size_t size() const;

  // Front (most recent) first.
  std::vector<std::pair<Name, Value>> Bindings() const;

  friend bool operator==(const Env& a, const Env& b);

 private:
  struct Node;
  explicit Env(std::shared_ptr<const Node> head) : head_(std::move(head)) {}

  std::shared_ptr<const Node> head_;
};

struct IntVal {
  int64_t value;
};
struct Closure {
  std::vector<Name> params;
  ExpPtr body;
  Env captured;
};
// Names an enclave-resident function. Never carries the body.
struct SecureClosure {
  Name name;
  std::vector<Value> args;
};
struct ArgList {
  std::vector<Value> values;
};
struct Dummy {};
struct Err {
  ErrState state;
};

class Value {
 public:
  using Node =
      std::variant<IntVal, Closure, SecureClosure, ArgList, Dummy, Err>;

  Value() : node_(Dummy{}) {}
  Value(IntVal v) : node_(std::move(v)) {}         // NOLINT
  Value(Closure v) : node_(std::move(v)) {}        // NOLINT
  Value(SecureClosure v) : node_(std::move(v)) {}  // NOLINT
  Value(ArgList v) : node_(std::move(v)) {}        // NOLINT
  Value(Dummy v) : node_(v) {}                     // NOLINT
  Value(Err v) : node_(v) {}                       // NOLINT

  const Node& node() const { return node_; }

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }
  template <typename T>
  bool Is() const {
    return std::holds_alternative<T>(node_);
  }

  friend bool operator==(const Value& a, const Value& b);

 private:
  Node node_;
};

struct Env::Node {
  Name name;
  Value value;
  std::shared_ptr<const Node> next;
};

// Front-most binding of `name` in `env`, or Err(EVarNotFound).
Value LookupVar(std::string_view name, const Env& env);

}  // namespace enclavon::calculus

#endif  // ENCLAVON_CALCULUS_VALUE_H_
