// Copyright 2026 The qid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qid/dsl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "qid/errors.hpp"

namespace qid {

namespace {

enum class Tok { kNumber, kIdent, kSymbol, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

std::vector<Token> lex(std::string_view s, int line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && s[j] == '/') {
        size_t k = j + 1;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j + 1) throw ParseError(line, static_cast<int>(k) + 1, "digit", "incomplete rational");
        j = k;
      }
      out.push_back({Tok::kNumber, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::string_view("()_^*+-").find(c) != std::string_view::npos) {
      out.push_back({Tok::kSymbol, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(line, col, "", std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", static_cast<int>(s.size()) + 1});
  return out;
}

mpq_class parse_number(const Token& t, int line) {
  const std::string& s = t.text;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0 || den == 0) {
      throw ParseError(line, t.column, "number", "malformed rational '" + s + "'");
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  std::string digits = s;
  long scale = 0;
  if (dot != std::string::npos) {
    if (s.find('.', dot + 1) != std::string::npos || s.size() == 1) {
      throw ParseError(line, t.column, "number", "malformed number '" + s + "'");
    }
    digits = s.substr(0, dot) + s.substr(dot + 1);
    scale = static_cast<long>(s.size() - dot - 1);
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

class Parser {
 public:
  Parser(std::string_view text, int line, bool symbols) : toks_(lex(text, line)), line_(line), symbols_(symbols) {}

  TermTemplate term() {
    TermTemplate t;
    factor(t);
    while (accept("*")) factor(t);
    if (peek().kind != Tok::kEnd) fail("\"*\" or end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool is(const char* sym) const {
    return (peek().kind == Tok::kSymbol || peek().kind == Tok::kIdent) && peek().text == sym;
  }
  bool accept(const char* sym) {
    if (!is(sym)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(line_, t.column, expected, "unexpected " + got);
  }
  void expect(const char* sym) {
    if (!accept(sym)) fail(std::string("\"") + sym + "\"");
  }
  void require_symbols(const char* what) const {
    if (!symbols_) {
      throw ParseError(line_, peek().column, "number, \"x\", \"q\" or \"poch\"",
                       std::string("the symbol ") + what + " is only allowed in templates");
    }
  }

  long integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::kNumber || peek().text.find_first_of("./") != std::string::npos) fail("integer");
    long v = std::stol(next().text);
    return neg ? -v : v;
  }

  IndexExpr index(bool allow_inf) {
    IndexExpr e;
    if (allow_inf && accept("inf")) {
      e.infinite = true;
      return e;
    }
    if (is("n")) {
      require_symbols("n");
      ++pos_;
      e.symbolic = true;
      if (accept("+")) {
        e.offset = integer();
      } else if (accept("-")) {
        e.offset = -integer();
      }
      return e;
    }
    if (peek().kind != Tok::kNumber && !is("-")) fail(allow_inf ? "integer, \"n\" or \"inf\"" : "integer or \"n\"");
    e.offset = integer();
    return e;
  }

  void add_index(IndexExpr& into, const IndexExpr& e) {
    if (into.symbolic && e.symbolic) fail("an index linear in n");
    into.symbolic = into.symbolic || e.symbolic;
    into.offset += e.offset;
  }

  // number | "q" ["^" index] | "a" ["^" signedint]; returns false if none applies
  bool atom(TemplateMonomial& m) {
    if (peek().kind == Tok::kNumber || is("-")) {
      bool neg = accept("-");
      if (peek().kind != Tok::kNumber) fail("number");
      mpq_class v = parse_number(next(), line_);
      m.s *= neg ? mpq_class(-v) : v;
      return true;
    }
    if (accept("q")) {
      IndexExpr e;
      e.offset = 1;
      if (accept("^")) e = index(false);
      add_index(m.qpow, e);
      return true;
    }
    if (is("a")) {
      require_symbols("a");
      ++pos_;
      m.a_pow += accept("^") ? integer() : 1;
      return true;
    }
    return false;
  }

  void factor(TermTemplate& t) {
    if (accept("x")) {
      IndexExpr e;
      e.offset = 1;
      if (accept("^")) e = index(false);
      add_index(t.power, e);
      return;
    }
    if (accept("poch")) {
      poch(t);
      return;
    }
    if (!atom(t.coeff)) fail("number, \"x\", \"q\", \"a\" or \"poch\"");
  }

  void poch(TermTemplate& t) {
    expect("(");
    TemplateFactor f;
    f.with_x = false;
    bool any = false;
    while (true) {
      if (accept("x")) {
        f.with_x = true;
        break;
      }
      if (!atom(f.alpha)) {
        if (!any) fail("number, \"q\", \"a\" or \"x\"");
        break;
      }
      any = true;
      if (!accept("*") && !is("x")) break;
    }
    expect(")");
    expect("_");
    f.n = index(true);
    if (accept("^")) {
      long e = integer();
      if (e != 1 && e != -1) fail("exponent 1 or -1");
      f.eps = static_cast<int>(e);
    }
    t.factors.push_back(f);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int line_;
  bool symbols_;
};

QMonomial instantiate(const TemplateMonomial& m, long n, const std::optional<ComplexHP>& a,
                      const std::optional<mpq_class>& a_exact, const NumericContext& ctx) {
  long j = m.qpow.symbolic ? n + m.qpow.offset : m.qpow.offset;
  if (m.a_pow == 0) return QMonomial::rational(m.s, j);
  if (a_exact) {
    mpq_class p = 1;
    for (long i = 0; i < std::abs(m.a_pow); ++i) p *= *a_exact;
    return QMonomial::rational(m.a_pow > 0 ? mpq_class(m.s * p) : mpq_class(m.s / p), j);
  }
  if (!a) throw UsageError("the template uses a, but no value for a was given");
  return QMonomial::complex(ComplexHP::from_rational(m.s, ctx.work_bits()) * ctx.lift(*a).pow(m.a_pow), j);
}

std::string print_monomial(const mpq_class& s, long j, bool alone) {
  std::vector<std::string> parts;
  if (s != 1 || (alone && j == 0)) parts.push_back(s.get_str());
  if (j == 1) parts.push_back("q");
  if (j != 0 && j != 1) parts.push_back("q^" + std::to_string(j));
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

std::string print_scalar(const QMonomial& m, bool alone) {
  if (m.exact) return print_monomial(*m.exact, m.qpow, alone);
  std::string v = m.value.re().to_exact_string();
  if (m.qpow == 0) return v;
  return v + "*" + print_monomial(1, m.qpow, false);
}

}  // namespace

PochIndex IndexExpr::at(long n) const {
  if (infinite) return PochIndex::infinity();
  return symbolic ? n + offset : offset;
}

std::string IndexExpr::to_string() const {
  if (infinite) return "inf";
  if (!symbolic) return std::to_string(offset);
  if (offset == 0) return "n";
  return offset > 0 ? "n+" + std::to_string(offset) : "n-" + std::to_string(-offset);
}

bool TermTemplate::uses_n() const {
  if (coeff.qpow.symbolic || power.symbolic) return true;
  for (const auto& f : factors) {
    if (f.alpha.qpow.symbolic || f.n.symbolic) return true;
  }
  return false;
}

bool TermTemplate::uses_a() const {
  if (coeff.a_pow != 0) return true;
  for (const auto& f : factors) {
    if (f.alpha.a_pow != 0) return true;
  }
  return false;
}

TermExpr TermTemplate::instantiate(long n, const std::optional<ComplexHP>& a, const std::optional<mpq_class>& a_exact,
                                   const NumericContext& ctx) const {
  TermExpr t;
  t.coeff = qid::instantiate(coeff, n, a, a_exact, ctx);
  t.power = power.symbolic ? n + power.offset : power.offset;
  for (const auto& f : factors) {
    PochFactor pf;
    pf.alpha = qid::instantiate(f.alpha, n, a, a_exact, ctx);
    pf.n = f.n.at(n);
    pf.eps = f.eps;
    pf.with_x = f.with_x;
    t.factors.push_back(pf);
  }
  return t;
}

TermTemplate parse_template(std::string_view text, int line) { return Parser(text, line, true).term(); }

TermExpr parse_term(std::string_view text) {
  NumericContext ctx;
  return Parser(text, 1, false).term().instantiate(0, std::nullopt, std::nullopt, ctx);
}

std::string print_term(const TermExpr& t) {
  std::vector<std::string> parts;
  bool unit = t.coeff.exact && *t.coeff.exact == 1 && t.coeff.qpow == 0;
  if (!unit) parts.push_back(print_scalar(t.coeff, true));
  if (t.power == 1) parts.push_back("x");
  if (t.power != 0 && t.power != 1) parts.push_back("x^" + std::to_string(t.power));
  for (const auto& f : t.factors) {
    std::string arg = print_scalar(f.alpha, !f.with_x);
    if (f.with_x) arg += arg.empty() ? "x" : "*x";
    std::string s = "poch(" + arg + ")_" + f.n.to_string();
    if (f.eps < 0) s += "^-1";
    parts.push_back(s);
  }
  if (parts.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? " * " : "") + parts[i];
  return out;
}

DCheckSpec parse_dcheck(std::string_view content) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(content)};
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string::npos) lines.pop_back();
  if (lines.size() != 3) {
    throw ParseError(static_cast<int>(lines.size()) + 1, 1, "3 lines", "a dcheck spec has exactly three lines");
  }
  auto rhs_of = [&](int line, std::string_view head) {
    const std::string& l = lines[static_cast<size_t>(line - 1)];
    size_t start = l.find_first_not_of(" \t");
    if (start == std::string::npos || l.compare(start, head.size(), head) != 0) {
      throw ParseError(line, static_cast<int>(start == std::string::npos ? 1 : start + 1),
                       "\"" + std::string(head) + "\"", "unexpected line start");
    }
    size_t body = start + head.size();
    // pad so columns refer to the original line
    return std::string(body, ' ') + l.substr(body);
  };
  DCheckSpec spec;
  spec.T = parse_template(rhs_of(1, "T(n) :="), 1);
  spec.S = parse_template(rhs_of(2, "S :="), 2);
  if (spec.S.uses_n()) throw ParseError(2, 1, "", "S must not depend on n");
  std::string sup = rhs_of(3, "support :=");
  size_t b = sup.find_first_not_of(" \t\r");
  size_t e = sup.find_last_not_of(" \t\r");
  std::string word = b == std::string::npos ? "" : sup.substr(b, e - b + 1);
  if (word == "unilateral") {
    spec.support = Support::kUnilateral;
  } else if (word == "bilateral") {
    spec.support = Support::kBilateral;
  } else {
    throw ParseError(3, static_cast<int>(b == std::string::npos ? sup.size() + 1 : b + 1),
                     "\"unilateral\" or \"bilateral\"", "unknown support '" + word + "'");
  }
  return spec;
}

}  // namespace qid
