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

#include "enclavon/calculus/exp.h"

#include <algorithm>
#include <utility>

namespace enclavon::calculus {
namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool SameList(const std::vector<ExpPtr>& a, const std::vector<ExpPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!SameExp(a[i], b[i])) return false;
  }
  return true;
}

template <typename Pred>
bool AnyNode(const Exp& e, const Pred& pred) {
  if (pred(e)) return true;
  return std::visit(
      Overloaded{
          [](const Lit&) { return false; },
          [](const Var&) { return false; },
          [&](const Fun& f) { return AnyNode(*f.body, pred); },
          [&](const App& a) {
            if (AnyNode(*a.fn, pred)) return true;
            for (const ExpPtr& arg : a.args) {
              if (AnyNode(*arg, pred)) return true;
            }
            return false;
          },
          [&](const Let& l) {
            return AnyNode(*l.bound, pred) || AnyNode(*l.body, pred);
          },
          [&](const Plus& p) {
            return AnyNode(*p.left, pred) || AnyNode(*p.right, pred);
          },
          [&](const InEnclave& i) { return AnyNode(*i.body, pred); },
          [&](const Gateway& g) { return AnyNode(*g.body, pred); },
          [&](const EnclaveApp& ea) {
            return AnyNode(*ea.left, pred) || AnyNode(*ea.right, pred);
          },
      },
      e.node());
}

bool ClosedUnder(const Exp& e, std::vector<Name>& bound) {
  auto bound_here = [&](const Name& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  return std::visit(
      Overloaded{
          [](const Lit&) { return true; },
          [&](const Var& v) { return bound_here(v.name); },
          [&](const Fun& f) {
            bound.insert(bound.end(), f.params.begin(), f.params.end());
            bool ok = ClosedUnder(*f.body, bound);
            bound.resize(bound.size() - f.params.size());
            return ok;
          },
          [&](const App& a) {
            if (!ClosedUnder(*a.fn, bound)) return false;
            for (const ExpPtr& arg : a.args) {
              if (!ClosedUnder(*arg, bound)) return false;
            }
            return true;
          },
          [&](const Let& l) {
            if (!ClosedUnder(*l.bound, bound)) return false;
            bound.push_back(l.name);
            bool ok = ClosedUnder(*l.body, bound);
            bound.pop_back();
            return ok;
          },
          [&](const Plus& p) {
            return ClosedUnder(*p.left, bound) && ClosedUnder(*p.right, bound);
          },
          [&](const InEnclave& i) { return ClosedUnder(*i.body, bound); },
          [&](const Gateway& g) { return ClosedUnder(*g.body, bound); },
          [&](const EnclaveApp& ea) {
            return ClosedUnder(*ea.left, bound) &&
                   ClosedUnder(*ea.right, bound);
          },
      },
      e.node());
}

}  // namespace

bool SameExp(const ExpPtr& a, const ExpPtr& b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return *a == *b;
}

bool operator==(const Exp& a, const Exp& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const Lit& x) { return x.value == b.As<Lit>()->value; },
          [&](const Var& x) { return x.name == b.As<Var>()->name; },
          [&](const Fun& x) {
            const Fun& y = *b.As<Fun>();
            return x.params == y.params && SameExp(x.body, y.body);
          },
          [&](const App& x) {
            const App& y = *b.As<App>();
            return SameExp(x.fn, y.fn) && SameList(x.args, y.args);
          },
          [&](const Let& x) {
            const Let& y = *b.As<Let>();
            return x.name == y.name && SameExp(x.bound, y.bound) &&
                   SameExp(x.body, y.body);
          },
          [&](const Plus& x) {
            const Plus& y = *b.As<Plus>();
            return SameExp(x.left, y.left) && SameExp(x.right, y.right);
          },
          [&](const InEnclave& x) {
            return SameExp(x.body, b.As<InEnclave>()->body);
          },
          [&](const Gateway& x) {
            return SameExp(x.body, b.As<Gateway>()->body);
          },
          [&](const EnclaveApp& x) {
            const EnclaveApp& y = *b.As<EnclaveApp>();
            return SameExp(x.left, y.left) && SameExp(x.right, y.right);
          },
      },
      a.node());
}

ExpPtr MakeLit(int64_t value) { return std::make_shared<Exp>(Lit{value}); }
ExpPtr MakeVar(Name name) {
  return std::make_shared<Exp>(Var{std::move(name)});
}
ExpPtr MakeFun(std::vector<Name> params, ExpPtr body) {
  return std::make_shared<Exp>(Fun{std::move(params), std::move(body)});
}
ExpPtr MakeApp(ExpPtr fn, std::vector<ExpPtr> args) {
  return std::make_shared<Exp>(App{std::move(fn), std::move(args)});
}
ExpPtr MakeLet(Name name, ExpPtr bound, ExpPtr body) {
  return std::make_shared<Exp>(
      Let{std::move(name), std::move(bound), std::move(body)});
}
ExpPtr MakePlus(ExpPtr left, ExpPtr right) {
  return std::make_shared<Exp>(Plus{std::move(left), std::move(right)});
}
ExpPtr MakeInEnclave(ExpPtr body) {
  return std::make_shared<Exp>(InEnclave{std::move(body)});
}
ExpPtr MakeGateway(ExpPtr body) {
  return std::make_shared<Exp>(Gateway{std::move(body)});
}
ExpPtr MakeEnclaveApp(ExpPtr left, ExpPtr right) {
  return std::make_shared<Exp>(EnclaveApp{std::move(left), std::move(right)});
}

size_t ExpSize(const Exp& e) {
  return std::visit(
      Overloaded{
          [](const Lit&) -> size_t { return 1; },
          [](const Var&) -> size_t { return 1; },
          [](const Fun& f) { return 1 + ExpSize(*f.body); },
          [](const App& a) {
            size_t n = 1 + ExpSize(*a.fn);
            for (const ExpPtr& arg : a.args) n += ExpSize(*arg);
            return n;
          },
          [](const Let& l) { return 1 + ExpSize(*l.bound) + ExpSize(*l.body); },
          [](const Plus& p) {
            return 1 + ExpSize(*p.left) + ExpSize(*p.right);
          },
          [](const InEnclave& i) { return 1 + ExpSize(*i.body); },
          [](const Gateway& g) { return 1 + ExpSize(*g.body); },
          [](const EnclaveApp& ea) {
            return 1 + ExpSize(*ea.left) + ExpSize(*ea.right);
          },
      },
      e.node());
}

bool ContainsGateway(const Exp& e) {
  return AnyNode(e, [](const Exp& n) { return n.As<Gateway>() != nullptr; });
}

bool ContainsEnclaveNode(const Exp& e) {
  return AnyNode(e, [](const Exp& n) {
    return n.As<InEnclave>() != nullptr || n.As<Gateway>() != nullptr ||
           n.As<EnclaveApp>() != nullptr;
  });
}

bool IsClosed(const Exp& e) {
  std::vector<Name> bound;
  return ClosedUnder(e, bound);
}

ExpPtr SampleGatewayProgram() {
  return MakeLet(
      "m", MakeLit(3),
      MakeLet("f", MakeFun({"x"}, MakePlus(MakeVar("x"), MakeVar("m"))),
              MakeLet("y", MakeInEnclave(MakeVar("f")),
                      MakeGateway(MakeEnclaveApp(MakeVar("y"), MakeLit(2))))));
}

}  // namespace enclavon::calculus
