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

#ifndef ENCLAVON_CALCULUS_EXP_H_
#define ENCLAVON_CALCULUS_EXP_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace enclavon::calculus {

using Name = std::string;

class Exp;
using ExpPtr = std::shared_ptr<const Exp>;

struct Lit {
  int64_t value;
};
struct Var {
  Name name;
};
// Parameter names are pairwise distinct.
struct Fun {
  std::vector<Name> params;
  ExpPtr body;
};
// Always saturated: every argument is supplied at once.
struct App {
  ExpPtr fn;
  std::vector<ExpPtr> args;
};
struct Let {
  Name name;
  ExpPtr bound;
  ExpPtr body;
};
struct Plus {
  ExpPtr left;
  ExpPtr right;
};
struct InEnclave {
  ExpPtr body;
};
struct Gateway {
  ExpPtr body;
};
// The `<@>` operator.
struct EnclaveApp {
  ExpPtr left;
  ExpPtr right;
};

// Immutable expression node. Subtrees are shared, never mutated.
class Exp {
 public:
  using Node = std::variant<Lit, Var, Fun, App, Let, Plus, InEnclave, Gateway,
                            EnclaveApp>;

  explicit Exp(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

// Structural equality (shared subtrees are compared by content).
bool operator==(const Exp& a, const Exp& b);
bool SameExp(const ExpPtr& a, const ExpPtr& b);

ExpPtr MakeLit(int64_t value);
ExpPtr MakeVar(Name name);
ExpPtr MakeFun(std::vector<Name> params, ExpPtr body);
ExpPtr MakeApp(ExpPtr fn, std::vector<ExpPtr> args);
ExpPtr MakeLet(Name name, ExpPtr bound, ExpPtr body);
ExpPtr MakePlus(ExpPtr left, ExpPtr right);
ExpPtr MakeInEnclave(ExpPtr body);
ExpPtr MakeGateway(ExpPtr body);
ExpPtr MakeEnclaveApp(ExpPtr left, ExpPtr right);

// Number of nodes in the tree.
size_t ExpSize(const Exp& e);

// True if any node of type T occurs anywhere in `e`.
bool ContainsGateway(const Exp& e);
bool ContainsEnclaveNode(const Exp& e);  // InEnclave, Gateway or EnclaveApp

// True if every Var in `e` is bound by an enclosing Fun or Let.
bool IsClosed(const Exp& e);

// The canonical two-memory example:
//   (let m 3 (let f (fun (x) (+ x m)) (let y (inEnclave f)
//     (gateway (<@> y 2)))))
// Evaluates to IntVal 5.
ExpPtr SampleGatewayProgram();

}  // namespace enclavon::calculus

#endif  // ENCLAVON_CALCULUS_EXP_H_
