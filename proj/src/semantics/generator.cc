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

#include "enclavon/semantics/generator.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"

namespace enclavon::semantics {
namespace {

using calculus::ExpPtr;
using calculus::Name;

constexpr int kMaxArity = 3;

// Int, a function from `arity` integers to Int, or a secure handle still
// waiting for `arity` arguments before a gateway can run it.
struct Type {
  enum Kind { kInt, kFn, kSecure } kind;
  int arity = 0;

  bool operator==(const Type& o) const {
    return kind == o.kind && arity == o.arity;
  }
};

struct Binding {
  Name name;
  Type type;
  // Holds a gateway result, a secure handle, or a closure over one. Such a
  // variable is Dummy (or worse) in the enclave memory, so enclave code must
  // not read it.
  bool client_only;
};

struct Context {
  // The environment this expression ends in is never consumed, so App may
  // appear here.
  bool tail = true;
  // InEnclave may not be emitted: inside Fun bodies, and in App heads and
  // arguments.
  bool no_alloc = false;
  // Code that will run inside the enclave: no Gateway and no client-only
  // variables.
  bool enclave_code = false;

  Context NonTail() const { return {false, no_alloc, enclave_code}; }
  Context WithTail(bool t) const { return {t, no_alloc, enclave_code}; }
};

class Generator {
 public:
  explicit Generator(const GeneratorOptions& options)
      : options_(options), rng_(options.seed) {}

  ExpPtr Program() {
    return Gen(Type{Type::kInt}, std::max(options_.budget, 1), Context{});
  }

  ExpPtr ClosedFun(int budget, int arity) {
    return GenFun(arity, budget, Context{});
  }

  ExpPtr Arith(int budget) {
    if (budget <= 1 || Chance(0.3)) return calculus::MakeLit(SmallInt());
    int left = Uniform(1, budget - 1);
    return calculus::MakePlus(Arith(left), Arith(budget - 1 - left));
  }

 private:
  int Uniform(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool Chance(double p) {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }
  int64_t SmallInt() { return Uniform(-20, 100); }

  Name Fresh(const char* prefix) { return absl::StrCat(prefix, next_name_++); }

  bool Visible(const Binding& b, const Context& ctx) const {
    return !(ctx.enclave_code && b.client_only);
  }

  std::vector<Name> VarsOf(const Type& t, const Context& ctx) const {
    std::vector<Name> out;
    for (const Binding& b : scope_) {
      if (b.type == t && Visible(b, ctx)) out.push_back(b.name);
    }
    return out;
  }

  Name Pick(const std::vector<Name>& names) {
    return names[Uniform(0, static_cast<int>(names.size()) - 1)];
  }

  // Largest arity among visible secure variables, or -1.
  int MaxSecureVar(const Context& ctx) const {
    int best = -1;
    for (const Binding& b : scope_) {
      if (b.type.kind == Type::kSecure && Visible(b, ctx)) {
        best = std::max(best, b.type.arity);
      }
    }
    return best;
  }

  bool CanMake(const Type& t, const Context& ctx) const {
    if (t.kind != Type::kSecure) return true;
    if (!options_.allow_enclave) return false;
    return !ctx.no_alloc || MaxSecureVar(ctx) >= t.arity;
  }

  Type RandomType(const Context& ctx) {
    for (;;) {
      int pick = Uniform(0, 9);
      Type t = pick < 4   ? Type{Type::kInt}
               : pick < 7 ? Type{Type::kFn, Uniform(0, kMaxArity)}
                          : Type{Type::kSecure, Uniform(0, 2)};
      if (CanMake(t, ctx)) return t;
    }
  }

  bool MentionsClientOnly(const calculus::Exp& e) const {
    std::set<Name> tainted;
    for (const Binding& b : scope_) {
      if (b.client_only) tainted.insert(b.name);
    }
    bool found = false;
    Walk(e, [&](const calculus::Exp& n) {
      if (const auto* v = n.As<calculus::Var>()) {
        found = found || tainted.count(v->name) > 0;
      }
    });
    return found;
  }

  template <typename F>
  static void Walk(const calculus::Exp& e, const F& f) {
    f(e);
    if (const auto* n = e.As<calculus::Fun>()) Walk(*n->body, f);
    if (const auto* n = e.As<calculus::App>()) {
      Walk(*n->fn, f);
      for (const ExpPtr& a : n->args) Walk(*a, f);
    }
    if (const auto* n = e.As<calculus::Let>()) {
      Walk(*n->bound, f);
      Walk(*n->body, f);
    }
    if (const auto* n = e.As<calculus::Plus>()) {
      Walk(*n->left, f);
      Walk(*n->right, f);
    }
    if (const auto* n = e.As<calculus::InEnclave>()) Walk(*n->body, f);
    if (const auto* n = e.As<calculus::Gateway>()) Walk(*n->body, f);
    if (const auto* n = e.As<calculus::EnclaveApp>()) {
      Walk(*n->left, f);
      Walk(*n->right, f);
    }
  }

  ExpPtr Gen(Type t, int budget, Context ctx) {
    if (!mutating_ && options_.ill_typed_rate > 0 &&
        Chance(options_.ill_typed_rate)) {
      Type wrong = RandomType(ctx);
      if (!(wrong == t)) {
        mutating_ = true;
        ExpPtr e = Gen(wrong, budget, ctx);
        mutating_ = false;
        return e;
      }
    }
    switch (t.kind) {
      case Type::kInt:
        return GenInt(budget, ctx);
      case Type::kFn:
        return GenFnValue(t.arity, budget, ctx);
      case Type::kSecure:
        return GenSecure(t.arity, budget, ctx);
    }
    return calculus::MakeLit(0);
  }

  ExpPtr GenIntLeaf(const Context& ctx) {
    std::vector<Name> vars = VarsOf(Type{Type::kInt}, ctx);
    if (!vars.empty() && Chance(0.6)) return calculus::MakeVar(Pick(vars));
    return calculus::MakeLit(SmallInt());
  }

  ExpPtr GenInt(int budget, Context ctx) {
    if (budget <= 1) return GenIntLeaf(ctx);
    bool gateway_ok = options_.allow_gateway && !ctx.enclave_code &&
                      CanMake(Type{Type::kSecure, 0}, ctx);
    int w_leaf = 1, w_plus = 3, w_let = 4, w_app = ctx.tail ? 3 : 0,
        w_gw = gateway_ok ? 3 : 0;
    int pick = Uniform(0, w_leaf + w_plus + w_let + w_app + w_gw - 1);
    if ((pick -= w_leaf) < 0) return GenIntLeaf(ctx);
    if ((pick -= w_plus) < 0) {
      int left = Uniform(1, budget - 1);
      ExpPtr l = Gen(Type{Type::kInt}, left, ctx.NonTail());
      ExpPtr r = Gen(Type{Type::kInt}, budget - 1 - left, ctx);
      return calculus::MakePlus(std::move(l), std::move(r));
    }
    if ((pick -= w_let) < 0) return GenLet(budget, ctx);
    if ((pick -= w_app) < 0) return GenApp(budget, ctx);
    return calculus::MakeGateway(Gen(Type{Type::kSecure, 0}, budget - 1, ctx));
  }

  ExpPtr GenLet(int budget, Context ctx) {
    Type bound_type = RandomType(ctx);
    int bound_budget = Uniform(1, std::max(1, budget - 2));
    ExpPtr bound = Gen(bound_type, bound_budget, ctx.NonTail());
    bool client_only = bound_type.kind == Type::kSecure ||
                       calculus::ContainsGateway(*bound) ||
                       MentionsClientOnly(*bound);
    Name name = Fresh("v");
    scope_.push_back(Binding{name, bound_type, client_only});
    ExpPtr body =
        Gen(Type{Type::kInt}, std::max(1, budget - 1 - bound_budget), ctx);
    scope_.pop_back();
    return calculus::MakeLet(std::move(name), std::move(bound),
                             std::move(body));
  }

  // With enclave nodes enabled the head is always a Fun literal and the
  // arguments allocate nothing in the enclave. A tail App hands back the
  // callee's environment, so an enclave binding made after the callee was
  // captured would vanish from the first-pass memory.
  ExpPtr GenApp(int budget, Context ctx) {
    int arity = Uniform(0, kMaxArity);
    int nargs = arity;
    if (!mutating_ && Chance(options_.ill_typed_rate)) {
      nargs = std::max(0, arity + (Chance(0.5) ? 1 : -1));
    }
    int share = std::max(1, (budget - 1) / (nargs + 1));
    Context sub{false, true, ctx.enclave_code};
    ExpPtr fn;
    if (!options_.allow_enclave) {
      fn = Gen(Type{Type::kFn, arity}, share, sub);
    } else if (!mutating_ && Chance(options_.ill_typed_rate)) {
      fn = GenIntLeaf(ctx);
    } else {
      fn = GenFun(arity, share, ctx);
    }
    std::vector<ExpPtr> args;
    for (int i = 0; i < nargs; ++i) {
      args.push_back(Gen(Type{Type::kInt}, share,
                         sub.WithTail(i + 1 == nargs && ctx.tail)));
    }
    return calculus::MakeApp(std::move(fn), std::move(args));
  }

  ExpPtr GenFun(int arity, int budget, const Context& ctx) {
    std::vector<Name> params;
    for (int i = 0; i < arity; ++i) params.push_back(Fresh("p"));
    for (const Name& p : params) {
      scope_.push_back(Binding{p, Type{Type::kInt}, false});
    }
    ExpPtr body = Gen(Type{Type::kInt}, std::max(1, budget - 1),
                      Context{true, true, ctx.enclave_code});
    scope_.resize(scope_.size() - params.size());
    return calculus::MakeFun(std::move(params), std::move(body));
  }

  ExpPtr GenFnValue(int arity, int budget, const Context& ctx) {
    std::vector<Name> vars = VarsOf(Type{Type::kFn, arity}, ctx);
    if (!vars.empty() && (budget <= 2 || Chance(0.3))) {
      return calculus::MakeVar(Pick(vars));
    }
    return GenFun(arity, budget, ctx);
  }

  // Applies `count` integer arguments to a secure expression, left-nested.
  ExpPtr Saturate(ExpPtr handle, int count, int budget, const Context& ctx) {
    for (int i = 0; i < count; ++i) {
      ExpPtr arg = Gen(Type{Type::kInt}, std::max(1, budget / (count + 1)),
                       ctx.NonTail());
      handle = calculus::MakeEnclaveApp(std::move(handle), std::move(arg));
    }
    return handle;
  }

  ExpPtr GenSecure(int arity, int budget, Context ctx) {
    std::vector<std::pair<Name, int>> vars;
    for (const Binding& b : scope_) {
      if (b.type.kind == Type::kSecure && b.type.arity >= arity &&
          Visible(b, ctx)) {
        vars.emplace_back(b.name, b.type.arity);
      }
    }
    bool fresh_ok = !ctx.no_alloc;
    if (!vars.empty() && (!fresh_ok || budget <= 2 || Chance(0.4))) {
      const auto& [name, have] = vars[Uniform(0, vars.size() - 1)];
      return Saturate(calculus::MakeVar(name), have - arity, budget, ctx);
    }
    if (!fresh_ok) return GenIntLeaf(ctx);
    if (budget > 3 && arity + 2 <= kMaxArity && Chance(0.2)) {
      // Two arguments supplied at once as a right-nested pair.
      int share = std::max(1, (budget - 2) / 3);
      ExpPtr handle = GenSecure(arity + 2, share, ctx.NonTail());
      ExpPtr a = Gen(Type{Type::kInt}, share, ctx.NonTail());
      ExpPtr b = Gen(Type{Type::kInt}, share, ctx);
      return calculus::MakeEnclaveApp(
          std::move(handle),
          calculus::MakeEnclaveApp(std::move(a), std::move(b)));
    }
    if (budget > 2 && arity + 1 <= kMaxArity && Chance(0.3)) {
      int share = std::max(1, (budget - 1) / 2);
      ExpPtr handle = GenSecure(arity + 1, share, ctx.NonTail());
      ExpPtr arg = Gen(Type{Type::kInt}, share, ctx);
      return calculus::MakeEnclaveApp(std::move(handle), std::move(arg));
    }
    Context inside{ctx.tail, ctx.no_alloc, true};
    return calculus::MakeInEnclave(
        Gen(Type{Type::kFn, arity}, std::max(1, budget - 1), inside));
  }

  const GeneratorOptions& options_;
  std::mt19937_64 rng_;
  std::vector<Binding> scope_;
  int next_name_ = 0;
  bool mutating_ = false;
};

}  // namespace

ExpPtr GenerateProgram(const GeneratorOptions& options) {
  Generator gen(options);
  return gen.Program();
}

ExpPtr GenRandomProgram(uint64_t seed, int budget, bool allow_gateway) {
  GeneratorOptions options;
  options.seed = seed;
  options.budget = budget;
  options.allow_gateway = allow_gateway;
  return GenerateProgram(options);
}

ExpPtr GenerateClosedFun(uint64_t seed, int budget, int arity) {
  GeneratorOptions options;
  options.seed = seed;
  options.allow_gateway = false;
  options.allow_enclave = false;
  Generator gen(options);
  return gen.ClosedFun(budget, arity);
}

ExpPtr GenerateClosedArith(uint64_t seed, int budget) {
  GeneratorOptions options;
  options.seed = seed;
  Generator gen(options);
  return gen.Arith(budget);
}

AssociationCase GenerateAssociationCase(uint64_t seed, int budget) {
  GeneratorOptions options;
  options.seed = seed;
  options.allow_gateway = false;
  options.allow_enclave = false;
  int share = std::max(1, budget / 3);
  AssociationCase c;
  c.f = calculus::MakeInEnclave(Generator(options).ClosedFun(share, 2));
  options.seed = seed ^ 0x9e3779b97f4a7c15ULL;
  options.budget = share;
  c.a = GenerateProgram(options);
  options.seed = seed ^ 0xc2b2ae3d27d4eb4fULL;
  c.b = GenerateProgram(options);
  return c;
}

}  // namespace enclavon::semantics
