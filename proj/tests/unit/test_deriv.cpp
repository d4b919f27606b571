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


#include <cmath>
#include <random>

#include "doctest.h"
#include "qid/deriv.hpp"
#include "qid/dsl.hpp"
#include "qid/errors.hpp"
#include "qid/qcore.hpp"
#include "support.hpp"

using namespace qid;
using qid::test::rel;

namespace {

PochFactor pf(const ComplexHP& alpha, PochIndex n, int eps = 1) {
  PochFactor f;
  f.alpha = QMonomial::complex(alpha);
  f.n = n;
  f.eps = eps;
  return f;
}

TermExpr x_poch(long n) {
  TermExpr t;
  PochFactor f;
  f.n = n;
  t.factors.push_back(f);
  return t;
}

// infinite products are truncated at tol, so precision checks run with a tight tol
NumericContext tight() { return NumericContext::with_digits(60, 1e-58); }
NumericContext tight_wide() { return NumericContext::with_digits(120, 1e-115); }

ComplexHP cnum(const NumericContext& ctx, std::complex<double> z) { return ctx.num(z.real(), z.imag()); }

// Random term with no factor close to vanishing at x.
TermExpr random_term(std::mt19937_64& rng, const NumericContext& ctx, std::complex<double> x, std::complex<double> q) {
  std::uniform_int_distribution<int> nf(1, 3), pw(-2, 3), idx(-3, 7), sgn(0, 1);
  while (true) {
    TermExpr t;
    t.coeff = QMonomial::complex(cnum(ctx, qid::test::rand_disk(rng, 0.5, 2.0)));
    t.power = pw(rng);
    bool ok = true;
    for (int i = nf(rng); i > 0; --i) {
      std::complex<double> a = qid::test::rand_disk(rng, 0.1, 0.9);
      int n = idx(rng);
      PochIndex pn = n == 7 ? PochIndex::infinity() : PochIndex(n);
      for (int k = -3; k < 8; ++k) {
        std::complex<double> w = a * x * std::pow(q, k);
        if (std::abs(1.0 - w) < 0.3 * std::max(1.0, std::abs(w))) ok = false;
      }
      t.factors.push_back(pf(cnum(ctx, a), pn, sgn(rng) ? 1 : -1));
    }
    if (ok) return t;
  }
}

}  // namespace

TEST_CASE("eval_term") {
  NumericContext ctx = tight();
  CHECK(rel(eval_term(x_poch(1), ctx.num(0.4), ctx.num(0.3), ctx), ctx.num(0.6)) < 1e-59);
  TermExpr t;
  t.power = 2;
  t.factors.push_back(pf(ctx.integer(1), PochIndex::infinity(), -1));
  ComplexHP want = ctx.num(0.2).pow(2) / poch_inf(ctx.num(0.2), ctx.num(0.3), ctx);
  CHECK(rel(eval_term(t, ctx.num(0.2), ctx.num(0.3), ctx), want) < 1e-55);
  TermExpr c;
  c.coeff = QMonomial::rational(mpq_class(7, 3));
  CHECK(rel(eval_term(c, ctx.num(0.9), ctx.num(0.3), ctx), ComplexHP::from_rational(mpq_class(7, 3), 300)) < 1e-59);
  CHECK_THROWS_AS(eval_term(t, ctx.integer(1), ctx.num(0.3), ctx), PoleError);
}

TEST_CASE("log_deriv_poch") {
  NumericContext ctx = tight();
  ComplexHP a = ctx.num(0.7, 0.2), x = ctx.num(0.5), q = ctx.num(0.3);
  ComplexHP one = ctx.integer(1);
  CHECK(rel(log_deriv_poch(a, 1, x, q, ctx), -a / (one - a * x)) < 1e-58);
  ComplexHP want = ctx.integer(0);
  for (int k = 0; k < 3; ++k) want -= q.pow(k) / (one - x * q.pow(k));
  CHECK(rel(log_deriv_poch(one, 3, x, q, ctx), want) < 1e-58);

  // central difference of log poch
  NumericContext wide = tight_wide();
  double h = std::pow(10.0, -ctx.digits / 3.0);
  ComplexHP H = wide.num(h);
  for (PochIndex n : {PochIndex(5), PochIndex(-3), PochIndex::infinity()}) {
    ComplexHP fp = poch(a * (x + H), q, n, wide), fm = poch(a * (x - H), q, n, wide);
    // log(fp/fm) / 2h, with log(1+e) ~ e for the small ratio offset
    ComplexHP r = fp / fm - wide.integer(1);
    ComplexHP approx = (r - r * r / wide.integer(2) + r * r * r / wide.integer(3)) / (H * 2);
    CHECK(rel(log_deriv_poch(a, n, x, q, ctx), approx) < 1e3 * h * h);
  }
  CHECK_THROWS_AS(log_deriv_poch(one, 3, one, q, ctx), PoleError);
}

TEST_CASE("deriv_term matches finite differences at 100 regular points") {
  NumericContext ctx = tight();
  NumericContext wide = tight_wide();
  const double h = std::pow(10.0, -ctx.digits / 3.0);
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    std::complex<double> xc = qid::test::rand_disk(rng, 0.4, 0.9), qc = qid::test::rand_disk(rng, 0.2, 0.6);
    TermExpr t = random_term(rng, ctx, xc, qc);
    ComplexHP x = wide.num(xc.real(), xc.imag()), q = wide.num(qc.real(), qc.imag()), H = wide.num(h);
    ComplexHP fp = eval_term(t, x + H, q, wide), f0 = eval_term(t, x, q, wide), fm = eval_term(t, x - H, q, wide);
    ComplexHP d1 = (fp - fm) / (H * 2);
    ComplexHP d2 = (fp - f0 * 2 + fm) / (H * H);
    ComplexHP x60 = ctx.num(xc.real(), xc.imag()), q60 = ctx.num(qc.real(), qc.imag());
    // relative to the size of the function and its derivatives
    auto scaled = [&](const ComplexHP& got, const ComplexHP& want) {
      double den = std::max({got.abs_double(), want.abs_double(), f0.abs_double(), 1.0});
      return (got - want).abs_double() / den;
    };
    CHECK(scaled(deriv_term(t, x60, q60, ctx, 1), d1) < 1e3 * h * h);
    CHECK(scaled(deriv_term(t, x60, q60, ctx, 2), d2) < 1e3 * h * h);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("derivative of (x;q)_n at x = 1") {
  NumericContext ctx;
  ComplexHP q = ctx.num(0.35, -0.2);
  ComplexHP one = ctx.integer(1);
  for (long n = 1; n <= 10; ++n) {
    ComplexHP want = -poch_finite(q, q, n - 1, ctx);
    XPoint exact = XPoint::formal(FormalParam::qpow(0), q, ctx);
    CHECK(rel(deriv_term(x_poch(n), exact, q, ctx, 1), want) < 1e-58);
    CHECK(rel(deriv_term(x_poch(n), one, q, ctx, 1), want) < 1e-58);
    // second derivative: 2 (q;q)_{n-1} sum_{k=1}^{n-1} q^k/(1-q^k)
    ComplexHP s = ctx.integer(0);
    for (long k = 1; k < n; ++k) s += q.pow(k) / (one - q.pow(k));
    CHECK(rel(deriv_term(x_poch(n), exact, q, ctx, 2), poch_finite(q, q, n - 1, ctx) * s * 2) < 1e-55);
  }
  TermExpr lin = x_poch(1);
  for (double xv : {0.0, 0.3, 1.0, -2.0}) CHECK(rel(deriv_term(lin, ctx.num(xv), q, ctx, 1), -one) < 1e-59);
}

TEST_CASE("singular points") {
  NumericContext ctx = tight();
  NumericContext wide = tight_wide();
  ComplexHP q = ctx.num(0.4, 0.1), one = ctx.integer(1);
  // (x;q)_3 at x = q^-1: one factor vanishes
  XPoint x0 = XPoint::formal(FormalParam::qpow(-1), q, ctx);
  ComplexHP want = -q * (one - one / q) * (one - q);
  CHECK(rel(deriv_term(x_poch(3), x0, q, ctx, 1), want) < 1e-58);

  // two vanishing factors: (x;q)_2^2 at x = 1
  TermExpr sq = term_product(x_poch(2), x_poch(2));
  XPoint x1 = XPoint::formal(FormalParam::qpow(0), q, ctx);
  CHECK(deriv_term(sq, x1, q, ctx, 1).is_zero());
  ComplexHP w2 = (one - q) * (one - q) * 2;
  CHECK(rel(deriv_term(sq, x1, q, ctx, 2), w2) < 1e-58);

  // second derivative at a simple zero against finite differences
  TermExpr t = x_poch(4);
  t.factors.push_back(pf(ctx.num(0.3), PochIndex::infinity(), -1));
  double h = 1e-20;
  ComplexHP Q = wide.lift(q), X = wide.lift(x0.value), H = wide.num(h);
  ComplexHP d2 = (eval_term(t, X + H, Q, wide) - eval_term(t, X, Q, wide) * 2 + eval_term(t, X - H, Q, wide)) / (H * H);
  CHECK(rel(deriv_term(t, x0, q, ctx, 2), d2) < 1e-36);

  // an inverted factor vanishing is a pole
  TermExpr inv;
  inv.factors.push_back(pf(one, 3, -1));
  CHECK_THROWS_AS(deriv_term(inv, x1, q, ctx, 1), PoleError);
  // x^2 at x = 0
  TermExpr sq0;
  sq0.power = 2;
  CHECK(rel(deriv_term(sq0, ctx.integer(0), q, ctx, 2), ctx.integer(2)) == 0.0);
  CHECK(deriv_term(sq0, ctx.integer(0), q, ctx, 1).is_zero());
}

TEST_CASE("Leibniz rule for merged factor lists") {
  NumericContext ctx = tight();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i) {
    std::complex<double> xc = qid::test::rand_disk(rng, 0.1, 0.9), qc = qid::test::rand_disk(rng, 0.1, 0.7);
    TermExpr f = random_term(rng, ctx, xc, qc), g = random_term(rng, ctx, xc, qc);
    ComplexHP x = ctx.num(xc.real(), xc.imag()), q = ctx.num(qc.real(), qc.imag());
    ComplexHP lhs = deriv_term(term_product(f, g), x, q, ctx, 1);
    ComplexHP rhs = deriv_term(f, x, q, ctx, 1) * eval_term(g, x, q, ctx) + eval_term(f, x, q, ctx) * deriv_term(g, x, q, ctx, 1);
    double scale = std::max({lhs.abs_double(), rhs.abs_double(), (eval_term(f, x, q, ctx) * eval_term(g, x, q, ctx)).abs_double(), 1.0});
    CHECK((lhs - rhs).abs_double() / scale < 1e-50);
  }
}

TEST_CASE("q_deriv") {
  NumericContext ctx;
  ComplexHP x = ctx.num(0.7, 0.2), q = ctx.num(0.4);
  ComplexHP one = ctx.integer(1);
  Evaluatable cube = [](const ComplexHP& z) { return z.pow(3); };
  for (long n : {1L, 3L, 5L}) {
    Evaluatable f = [n](const ComplexHP& z) { return z.pow(n); };
    ComplexHP want = x.pow(n - 1) * (one - q.pow(n)) / (one - q);
    CHECK(rel(q_deriv(f, x, q, ctx), want) < 1e-58);
  }
  Evaluatable c = [&](const ComplexHP&) { return ctx.num(2.5); };
  CHECK(q_deriv(c, x, q, ctx).is_zero());
  ComplexHP near1 = one - ctx.num(1e-10);
  CHECK(rel(q_deriv(cube, x, near1, ctx), x * x * 3) < 1e-8);
  CHECK_THROWS_AS(q_deriv(cube, ctx.integer(0), q, ctx), DomainError);
  CHECK_THROWS_AS(q_deriv(cube, x, one, ctx), DomainError);
}

TEST_CASE("apply_prop13 on the 1phi0 sum") {
  NumericContext ctx;
  ComplexHP a = ctx.num(2.5), q = ctx.num(0.3);
  // T_n = (a;q)_n x^n / (q;q)_n, S = 1/(x;q)_inf
  SeriesFamily T;
  T.term_at = [&](long n) {
    TermExpr t;
    t.power = n;
    PochFactor fa;
    fa.alpha = QMonomial::complex(a);
    fa.n = n;
    fa.with_x = false;
    PochFactor fq;
    fq.alpha = QMonomial::rational(1, 1);
    fq.n = n;
    fq.eps = -1;
    fq.with_x = false;
    t.factors = {fa, fq};
    return t;
  };
  Evaluatable S = [&](const ComplexHP& x) { return ctx.integer(1) / poch_inf(x, q, ctx); };
  Prop13Result r0 = apply_prop13(T, S, a, q, 0, ctx);
  CHECK(r0.pass);
  CHECK(r0.discrepancy < 1e-30);
  // m = 1 puts x0 = 1/(aq) outside the unit disk: the derivative series diverges
  CHECK_THROWS_AS(apply_prop13(T, S, a, q, 1, ctx), TruncationError);
  ComplexHP a5 = ctx.num(5.0);
  for (long m : {1L, 2L}) {
    ComplexHP am = m == 1 ? a5 : ctx.num(25.0);
    SeriesFamily Tm = T;
    Tm.term_at = [&, am](long n) {
      TermExpr t = T.term_at(n);
      t.factors[0].alpha = QMonomial::complex(am);
      return t;
    };
    Prop13Result r = apply_prop13(Tm, S, am, q, m, ctx);
    CHECK(r.pass);
    CHECK(r.discrepancy < 1e-30);
  }
  Evaluatable zero_at = [&](const ComplexHP& x) { return (a * x).one_minus(); };
  CHECK_THROWS_AS(apply_prop13(T, zero_at, a, q, 0, ctx), PrecondError);
}

TEST_CASE("parse_term") {
  TermExpr t = parse_term("poch(x)_3");
  CHECK(t.factors.size() == 1);
  CHECK(t.factors[0].n == PochIndex(3));
  CHECK(t.factors[0].eps == 1);
  CHECK(*t.factors[0].alpha.exact == 1);
  CHECK(*t.coeff.exact == 1);
  CHECK(t.power == 0);

  TermExpr u = parse_term("2 * x^2 * poch(0.5*x)_inf^-1");
  CHECK(*u.coeff.exact == 2);
  CHECK(u.power == 2);
  CHECK(*u.factors[0].alpha.exact == mpq_class(1, 2));
  CHECK(u.factors[0].n.is_infinite());
  CHECK(u.factors[0].eps == -1);

  try {
    parse_term("poch(x");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
    CHECK(e.expected() == "\")\"");
  }
  CHECK_THROWS_AS(parse_term("poch(a*x)_2"), ParseError);
  CHECK_THROWS_AS(parse_term("x^n"), ParseError);
  CHECK_THROWS_AS(parse_term("poch(x)_3^2"), ParseError);
  CHECK_THROWS_AS(parse_term("3 $"), ParseError);
  CHECK(parse_term("poch(q^-2*x)_-3").factors[0].alpha.qpow == -2);
  CHECK(*parse_term("-3/6 * q").coeff.exact == mpq_class(-1, 2));
}

TEST_CASE("print_term round trips") {
  for (const char* s : {"poch(x)_3", "2 * x^2 * poch(1/2*x)_inf^-1", "-7/3*q^-2 * x * poch(q)_5 * poch(3*q^2*x)_-4^-1",
                        "poch(1)_2", "q", "1"}) {
    TermExpr t = parse_term(s);
    CHECK(print_term(t) == s);
    CHECK(parse_term(print_term(t)) == t);
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int i = 0; i < 50; ++i) {
    TermExpr t;
    t.coeff = QMonomial::rational(mpq_class(d(rng) == 0 ? 1 : d(rng), 1 + std::abs(d(rng))), d(rng));
    if (*t.coeff.exact == 0) t.coeff = QMonomial::rational(1, d(rng));
    t.power = d(rng);
    for (int k = 0; k < 3; ++k) {
      PochFactor f;
      long s = d(rng);
      f.alpha = QMonomial::rational(s == 0 ? 1 : s, d(rng));
      long n = d(rng);
      f.n = n == 6 ? PochIndex::infinity() : PochIndex(n);
      f.eps = d(rng) > 0 ? 1 : -1;
      f.with_x = d(rng) != 0;
      t.factors.push_back(f);
    }
    CHECK(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("templates and dcheck specs") {
  NumericContext ctx;
  DCheckSpec spec = parse_dcheck("T(n) := poch(a)_n * x^n * poch(q)_n^-1\nS := poch(x)_inf^-1\nsupport := unilateral\n");
  CHECK(spec.T.uses_n());
  CHECK(spec.T.uses_a());
  CHECK_FALSE(spec.S.uses_n());
  CHECK(spec.support == Support::kUnilateral);
  TermExpr t3 = spec.T.instantiate(3, std::nullopt, mpq_class(5, 2), ctx);
  CHECK(t3.power == 3);
  CHECK(*t3.factors[0].alpha.exact == mpq_class(5, 2));
  CHECK_FALSE(t3.factors[0].with_x);
  CHECK(t3.factors[1].n == PochIndex(3));
  CHECK_THROWS_AS(spec.T.instantiate(3, std::nullopt, std::nullopt, ctx), UsageError);

  TermTemplate q = parse_template("q^n-1 * poch(a*q^n+2*x)_n");
  TermExpr q4 = q.instantiate(4, ctx.num(0.5), std::nullopt, ctx);
  CHECK(q4.coeff.qpow == 3);
  CHECK(q4.factors[0].alpha.qpow == 6);
  CHECK_FALSE(q4.factors[0].alpha.is_exact());

  try {
    parse_dcheck("T(n) := x^n\nS := poch(x)_inf^-1\nsupport := sideways\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
  try {
    parse_dcheck("T(n) := x^n\nS := poch(x_inf\nsupport := bilateral\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse_dcheck("T(n) := x^n\nS := x^n\nsupport := bilateral\n"), ParseError);
  CHECK_THROWS_AS(parse_dcheck("T(n) := x^n\n"), ParseError);
}
