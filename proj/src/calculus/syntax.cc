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

#include "enclavon/calculus/syntax.h"

#include <charconv>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "enclavon/common/status.h"

namespace enclavon::calculus {
namespace {

constexpr int kMaxNesting = 2000;

enum class TokenType { kOpen, kClose, kAtom, kEnd };

struct Token {
  TokenType type;
  std::string_view text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    SkipSpaceAndComments();
    Token token{TokenType::kEnd, {}, line_, column_};
    if (pos_ >= text_.size()) return token;
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      token.type = c == '(' ? TokenType::kOpen : TokenType::kClose;
      token.text = text_.substr(pos_, 1);
      Advance();
      return token;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) Advance();
    token.type = TokenType::kAtom;
    token.text = text_.substr(start, pos_ - start);
    return token;
  }

 private:
  static bool IsDelimiter(char c) {
    return c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' ||
           c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
                 c == '\v') {
        Advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool LooksNumeric(std::string_view atom) {
  size_t i = (atom.size() > 1 && atom[0] == '-') ? 1 : 0;
  return i < atom.size() && atom[i] >= '0' && atom[i] <= '9';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { Shift(); }

  absl::StatusOr<ExpPtr> ParseAll() {
    absl::StatusOr<ExpPtr> e = ParseExp(0);
    if (!e.ok()) return e;
    if (current_.type != TokenType::kEnd) {
      return Error(current_, "unexpected input after the program");
    }
    return e;
  }

 private:
  void Shift() { current_ = lexer_.Next(); }

  static absl::Status Error(const Token& at, std::string_view message) {
    return MakeError(
        ErrorKind::kParse,
        absl::StrCat(at.line, ":", at.column, ": ",
                     absl::string_view(message.data(), message.size())));
  }

  absl::StatusOr<Name> ParseSymbol(std::string_view what) {
    Token t = current_;
    if (t.type != TokenType::kAtom) {
      return Error(t, absl::StrCat("expected ", std::string(what)));
    }
    if (LooksNumeric(t.text)) {
      return Error(
          t, absl::StrCat("expected ", std::string(what), ", found number '",
                          std::string(t.text), "'"));
    }
    if (IsReservedWord(t.text)) {
      return Error(t, absl::StrCat("'", std::string(t.text),
                                   "' is reserved and cannot name a variable"));
    }
    Shift();
    return Name(t.text);
  }

  absl::Status Expect(TokenType type, std::string_view what) {
    if (current_.type != type) {
      return Error(current_, absl::StrCat("expected ", std::string(what)));
    }
    Shift();
    return absl::OkStatus();
  }

  absl::StatusOr<ExpPtr> ParseAtom() {
    Token t = current_;
    if (LooksNumeric(t.text)) {
      int64_t value = 0;
      const char* first = t.text.data();
      const char* last = first + t.text.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec == std::errc::result_out_of_range) {
        return Error(t, "integer literal out of 64-bit range");
      }
      if (ec != std::errc() || ptr != last) {
        return Error(t, absl::StrCat("malformed integer literal '",
                                     std::string(t.text), "'"));
      }
      Shift();
      return MakeLit(value);
    }
    ENCLAVON_ASSIGN_OR_RETURN(Name name, ParseSymbol("a variable"));
    return MakeVar(std::move(name));
  }

  absl::StatusOr<ExpPtr> ParseExp(int depth) {
    if (depth > kMaxNesting) {
      return Error(current_, "expression nested too deeply");
    }
    switch (current_.type) {
      case TokenType::kEnd:
        return Error(current_, "unexpected end of input");
      case TokenType::kClose:
        return Error(current_, "unexpected ')'");
      case TokenType::kAtom:
        return ParseAtom();
      case TokenType::kOpen:
        break;
    }
    Token open = current_;
    Shift();
    Token head = current_;
    if (head.type != TokenType::kAtom || !IsReservedWord(head.text)) {
      return Error(head,
                   "expected a form keyword (fun, app, let, +, inEnclave, "
                   "gateway, <@>)");
    }
    Shift();
    ExpPtr result;
    if (head.text == "fun") {
      ENCLAVON_RETURN_IF_ERROR(
          Expect(TokenType::kOpen, "'(' before parameters"));
      std::vector<Name> params;
      std::set<Name> seen;
      while (current_.type != TokenType::kClose) {
        Token at = current_;
        ENCLAVON_ASSIGN_OR_RETURN(Name p, ParseSymbol("a parameter name"));
        if (!seen.insert(p).second) {
          return Error(at, absl::StrCat("duplicate parameter '", p, "'"));
        }
        params.push_back(std::move(p));
      }
      Shift();
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr body, ParseExp(depth + 1));
      result = MakeFun(std::move(params), std::move(body));
    } else if (head.text == "app") {
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr fn, ParseExp(depth + 1));
      std::vector<ExpPtr> args;
      while (current_.type != TokenType::kClose &&
             current_.type != TokenType::kEnd) {
        ENCLAVON_ASSIGN_OR_RETURN(ExpPtr arg, ParseExp(depth + 1));
        args.push_back(std::move(arg));
      }
      result = MakeApp(std::move(fn), std::move(args));
    } else if (head.text == "let") {
      ENCLAVON_ASSIGN_OR_RETURN(Name name, ParseSymbol("a binder name"));
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr bound, ParseExp(depth + 1));
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr body, ParseExp(depth + 1));
      result = MakeLet(std::move(name), std::move(bound), std::move(body));
    } else if (head.text == "+" || head.text == "<@>") {
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr left, ParseExp(depth + 1));
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr right, ParseExp(depth + 1));
      result = head.text == "+"
                   ? MakePlus(std::move(left), std::move(right))
                   : MakeEnclaveApp(std::move(left), std::move(right));
    } else {
      ENCLAVON_ASSIGN_OR_RETURN(ExpPtr body, ParseExp(depth + 1));
      result = head.text == "inEnclave" ? MakeInEnclave(std::move(body))
                                        : MakeGateway(std::move(body));
    }
    if (current_.type != TokenType::kClose) {
      return Error(current_, absl::StrCat("expected ')' closing the form "
                                          "opened at ",
                                          open.line, ":", open.column));
    }
    Shift();
    return result;
  }

  Lexer lexer_;
  Token current_{};
};

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void PrintInto(const Exp& e, std::string& out) {
  std::visit(Overloaded{
                 [&](const Lit& x) { absl::StrAppend(&out, x.value); },
                 [&](const Var& x) { out += x.name; },
                 [&](const Fun& x) {
                   absl::StrAppend(&out, "(fun (", absl::StrJoin(x.params, " "),
                                   ") ");
                   PrintInto(*x.body, out);
                   out += ")";
                 },
                 [&](const App& x) {
                   out += "(app ";
                   PrintInto(*x.fn, out);
                   for (const ExpPtr& arg : x.args) {
                     out += " ";
                     PrintInto(*arg, out);
                   }
                   out += ")";
                 },
                 [&](const Let& x) {
                   absl::StrAppend(&out, "(let ", x.name, " ");
                   PrintInto(*x.bound, out);
                   out += " ";
                   PrintInto(*x.body, out);
                   out += ")";
                 },
                 [&](const Plus& x) {
                   out += "(+ ";
                   PrintInto(*x.left, out);
                   out += " ";
                   PrintInto(*x.right, out);
                   out += ")";
                 },
                 [&](const InEnclave& x) {
                   out += "(inEnclave ";
                   PrintInto(*x.body, out);
                   out += ")";
                 },
                 [&](const Gateway& x) {
                   out += "(gateway ";
                   PrintInto(*x.body, out);
                   out += ")";
                 },
                 [&](const EnclaveApp& x) {
                   out += "(<@> ";
                   PrintInto(*x.left, out);
                   out += " ";
                   PrintInto(*x.right, out);
                   out += ")";
                 },
             },
             e.node());
}

std::string PrintValues(const std::vector<Value>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (const Value& v : values) parts.push_back(PrintValue(v));
  return absl::StrCat("[", absl::StrJoin(parts, ", "), "]");
}

}  // namespace

bool IsReservedWord(std::string_view word) {
  return word == "fun" || word == "app" || word == "let" || word == "+" ||
         word == "inEnclave" || word == "gateway" || word == "<@>";
}

absl::StatusOr<ExpPtr> ParseProgram(std::string_view text) {
  return Parser(text).ParseAll();
}

std::string PrintProgram(const Exp& e) {
  std::string out;
  PrintInto(e, out);
  return out;
}

std::string PrintValue(const Value& v) {
  return std::visit(
      Overloaded{
          [](const IntVal& x) { return absl::StrCat("IntVal ", x.value); },
          [](const Closure& x) {
            std::vector<std::string> quoted;
            for (const Name& p : x.params) {
              quoted.push_back(absl::StrCat("\"", p, "\""));
            }
            return absl::StrCat("Closure [", absl::StrJoin(quoted, ","), "] ",
                                PrintProgram(*x.body), " ",
                                PrintEnv(x.captured));
          },
          [](const SecureClosure& x) {
            return absl::StrCat("SecureClosure \"", x.name, "\" ",
                                PrintValues(x.args));
          },
          [](const ArgList& x) {
            return absl::StrCat("ArgList ", PrintValues(x.values));
          },
          [](const Dummy&) { return std::string("Dummy"); },
          [](const Err& x) {
            return absl::StrCat("Err ", std::string(ErrStateName(x.state)));
          },
      },
      v.node());
}

std::string PrintEnv(const Env& env) {
  std::vector<std::pair<Name, Value>> bindings = env.Bindings();
  std::vector<std::string> parts;
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
    parts.push_back(absl::StrCat(it->first, " ↦ ", PrintValue(it->second)));
  }
  return absl::StrCat("[", absl::StrJoin(parts, ", "), "]");
}

}  // namespace enclavon::calculus
