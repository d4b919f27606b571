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

// The identity records. Each side is evaluated exactly as displayed; no side
// is derived from the other.

#include <cmath>
#include <complex>

#include "qid/errors.hpp"
#include "qid/qcore.hpp"
#include "qid/registry.hpp"
#include "qid/series.hpp"

namespace qid {

namespace {

using C = ComplexHP;
using cd = std::complex<double>;
using LS = LaurentSeriesQ;

constexpr int K = 60;  // q-power range screened for near-vanishing factors

class Ev {
 public:
  Ev(const ParamAssignment& p, const NumericContext& c) : p_(p), ctx(c), q(p.num("q", c)) {}

  C operator()(const std::string& name) const { return p_.num(name, ctx); }
  long n(const std::string& name) const { return p_.integer(name); }
  C k(long v) const { return ctx.integer(v); }

  C inf(std::initializer_list<C> args) const { return inf_base(q, args); }
  C inf_base(const C& base, std::initializer_list<C> args) const {
    C r = k(1);
    for (const C& a : args) r *= poch_inf(a, base, ctx);
    return r;
  }
  C fin(long n, std::initializer_list<C> args) const { return fin_base(q, n, args); }
  C fin_base(const C& base, long n, std::initializer_list<C> args) const {
    C r = k(1);
    for (const C& a : args) r *= poch_finite(a, base, n, ctx);
    return r;
  }
  C phi(std::vector<C> num, std::vector<C> den, const C& x) const {
    return eval_phi(PhiSpec{std::move(num), std::move(den), q, x}, ctx);
  }
  C psi(std::vector<C> num, std::vector<C> den, const C& x) const {
    return eval_psi(PsiSpec{std::move(num), std::move(den), q, x}, ctx);
  }
  C sum(long start, const std::function<C(long)>& term) const {
    return sum_adaptive(term, start, 1, ctx).value;
  }
  C bisum(const std::function<C(long)>& term) const { return sum_bilateral(term, ctx).value; }

 private:
  const ParamAssignment& p_;

 public:
  const NumericContext& ctx;
  const C q;
};

C pt(cd z) { return ComplexHP::from_double(z.real(), z.imag(), 53); }

DenomFactor den(cd v, int kmin = 0, int kmax = K) { return {v, kmin, kmax}; }
// a lone factor 1 - v
DenomFactor one_minus(cd v) { return {v, 0, 0}; }

bool in_disk(cd q) { return std::abs(q) < 1.0 && std::abs(q) > 0.0; }

cd ap(const ParamAssignment& a, const char* name) { return a.approx(name); }

ParamAssignment with_q(Draw& d, double lo = 0.2, double hi = 0.5) {
  ParamAssignment a;
  a.set("q", pt(d.cpx(lo, hi)));
  return a;
}

FormalParam qp(long j, mpq_class s = 1) { return FormalParam::qpow(j, std::move(s)); }
LS mono(const mpq_class& c, long e, long order = LS::kExact) { return LS::monomial(c, e, order); }
LS P(const FormalParam& a, PochIndex n, long order, long step = 1) { return poch_series(a, n, order, step); }
LS Pr(const FormalParam& a, PochIndex n, long order, long step = 1) {
  return poch_series_recip(a, n, order, step);
}
LS one_minus_qpow(long e, long order = LS::kExact) { return mono(1, 0, order) - mono(1, e, order); }
// x^n for formal x = s q^j
LS fpow(const FormalParam& x, long n, long order) {
  mpq_class s = 1;
  for (long i = 0; i < n; ++i) s *= x.s;
  return mono(s, x.j * n, order);
}
long binom2(long n) { return n * (n - 1) / 2; }
mpq_class sgn(long n) { return n % 2 == 0 ? 1 : -1; }

std::vector<ParamAssignment> no_params() { return {ParamAssignment{}}; }

std::vector<ParamAssignment> forms(long count) {
  std::vector<ParamAssignment> out;
  for (long f = 0; f < count; ++f) {
    ParamAssignment a;
    a.set("form", f);
    out.push_back(a);
  }
  return out;
}

std::vector<ParamAssignment> formal_x(std::initializer_list<FormalParam> xs) {
  std::vector<ParamAssignment> out;
  for (const auto& x : xs) {
    ParamAssignment a;
    a.set("x", x);
    out.push_back(a);
  }
  return out;
}

IdentityRecord make(std::string id, std::string anchor, std::string quote, std::vector<ParamInfo> params,
                    std::vector<Mode> modes) {
  IdentityRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.quote = std::move(quote);
  r.params = std::move(params);
  r.modes = std::move(modes);
  return r;
}

const ParamInfo kQ{"q", "0 < |q| < 1"};
const std::vector<Mode> kNum{Mode::kNumeric};
const std::vector<Mode> kFor{Mode::kFormal};

// Terminating phi whose terms can dwarf the sum. Parameters are rebuilt at the
// raised precision so that exact zeros stay exact.
C phi_escalated(const std::function<PhiSpec(const NumericContext&)>& build, const NumericContext& ctx,
                double extra) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    NumericContext w = ctx.widened(static_cast<long>(std::ceil(extra)));
    SeriesResult r = eval_phi_detailed(build(w), w);
    double lost = r.cancellation_digits();
    if (lost + 10.0 <= extra + static_cast<double>(ctx.guard_digits)) return r.value.with_bits(ctx.work_bits());
    extra = lost + 20.0;
  }
  throw TruncationError("cancellation exceeds the precision escalation budget");
}

// ---- q-exponential and its derivatives ----

void euler_family(std::vector<IdentityRecord>& out) {
  auto draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("x", pt(d.cpx(0.05, 0.9)));
    return a;
  };
  auto domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && std::abs(ap(a, "x")) < 1.0; };
  auto dens = [](const ParamAssignment& a) { return std::vector<DenomFactor>{den(ap(a, "x"))}; };

  IdentityRecord r = make("euler-exp", "Eq. (1.1) (eqx), Example 1.1", "Consider the basic q-identity",
                          {kQ, {"x", "|x| < 1"}}, {Mode::kNumeric, Mode::kFormal});
  r.draw = draw;
  r.domain = domain;
  r.denominators = dens;
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.phi({e.k(0)}, {}, e("x"));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.k(1) / e.inf({e("x")});
  };
  r.lhs_formal = [](const ParamAssignment& p, long N) {
    FormalParam x = p.formal("x");
    if (x.j < 1) throw DomainError("formal x must have positive q-valuation");
    LS s = LS::zero(N);
    for (long n = 0; n * x.j <= N; ++n) s = s + fpow(x, n, N) * Pr(qp(1), n, N);
    return s.truncated(N);
  };
  r.rhs_formal = [](const ParamAssignment& p, long N) { return Pr(p.formal("x"), PochIndex::infinity(), N); };
  r.formal_cases = [] { return formal_x({qp(1), qp(1, 2), qp(1, mpq_class(-1, 3)), qp(2)}); };
  out.push_back(r);

  r = make("euler-exp-dx", "Eq. (1.2) (cankaoct), Example 1.1", "Action of D_x", {kQ, {"x", "|x| < 1"}}, kNum);
  r.draw = draw;
  r.domain = domain;
  r.denominators = dens;
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C x = e("x"), t = e.k(1), qn = e.k(1);
    // t = x^(n-1) / (q;q)_n
    return e.sum(1, [&](long n) {
      qn *= e.q;
      t = (n == 1 ? t : t * x) / qn.one_minus();
      return t * n;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C x = e("x"), qn = e.k(1);
    C s = e.sum(0, [&](long n) {
      if (n > 0) qn *= e.q;
      return qn / (x * qn).one_minus();
    });
    return s / e.inf({x});
  };
  out.push_back(r);

  r = make("euler-exp-dqx", "Eq. (1.3') (cankao), Example 1.1", "Action of D_{q,x}", {kQ, {"x", "|x| < 1"}}, kNum);
  r.draw = draw;
  r.domain = domain;
  r.denominators = dens;
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C x = e("x"), qq = e.k(1), qn = e.k(1), xp = e.k(1);
    C one_q = e.q.one_minus();
    return e.sum(1, [&](long n) {
      qn *= e.q;
      qq *= qn.one_minus();
      if (n > 1) xp *= x;
      return qn.one_minus() / one_q * xp / qq;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.k(1) / (e.q.one_minus() * e.inf({e("x")}));
  };
  out.push_back(r);
}

// ---- q-binomial theorem family ----

void qbinomial_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("qbinom-thm", "Section 2.1, Lemma, Eq. (2.1) (xanxan)", "The q-binomial theorem",
                          {kQ, {"n", "integer 0 <= n <= 20"}, {"x", "any complex"}},
                          {Mode::kExactPoly, Mode::kNumeric});
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("n", d.integer(0, 20));
    a.set("x", pt(d.cpx(0.1, 3.0)));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && a.integer("n") >= 0; };
  r.denominators = [](const ParamAssignment&) { return std::vector<DenomFactor>{}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.fin(e.n("n"), {e("x")});
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C x = e("x"), s = e.k(0);
    for (long k = 0; k <= n; ++k) {
      s += qbinom_num(n, k, e.q, ctx) * e.q.pow(binom2(k)) * x.pow(k) * (k % 2 == 0 ? 1 : -1);
    }
    return s;
  };
  r.lhs_formal = [](const ParamAssignment& p, long) { return P(p.formal("x"), p.integer("n"), LS::kExact); };
  r.rhs_formal = [](const ParamAssignment& p, long) {
    long n = p.integer("n");
    FormalParam x = p.formal("x");
    LS s;
    for (long k = 0; k <= n; ++k) s = s + gauss_binom_poly(n, k) * fpow(x, k, LS::kExact) * mono(sgn(k), binom2(k));
    return s;
  };
  r.formal_cases = [] {
    std::vector<ParamAssignment> out;
    for (long n = 0; n <= 20; ++n) {
      for (const FormalParam& x : {qp(2), qp(0), qp(-1, mpq_class(-3, 2)), qp(1, mpq_class(2, 5))}) {
        ParamAssignment a;
        a.set("n", n);
        a.set("x", x);
        out.push_back(a);
      }
    }
    return out;
  };
  out.push_back(r);

  r = make("qbinom-dx-at-qm", "Corollary (fffggg), displayed as (2.2)", "For any integers n-1 >= m >= 0",
           {{"n", "integer 1 <= n <= 12"}, {"m", "integer 0 <= m <= n-1"}}, {Mode::kExactPoly});
  r.notes = "The proof closes with 'Identity (2.2) is thereby proved', citing the corollary by its number.";
  r.lhs_formal = [](const ParamAssignment& p, long) {
    long n = p.integer("n"), m = p.integer("m");
    LS s;
    for (long k = 1; k <= n; ++k) s = s + gauss_binom_poly(n, k) * mono(sgn(k) * k, binom2(k) - m * k);
    return s;
  };
  r.rhs_formal = [](const ParamAssignment& p, long) {
    long n = p.integer("n"), m = p.integer("m");
    return mono(sgn(m + 1), -binom2(m + 1)) * P(qp(1), m, LS::kExact) * P(qp(1), n - m - 1, LS::kExact);
  };
  r.formal_cases = [] {
    std::vector<ParamAssignment> out;
    for (long n = 1; n <= 12; ++n) {
      for (long m = 0; m <= n - 1; ++m) {
        ParamAssignment a;
        a.set("n", n);
        a.set("m", m);
        out.push_back(a);
      }
    }
    return out;
  };
  out.push_back(r);

  r = make("qbinom-dx-sum", "Eq. (2.4) (eq244)", "another form of the q-binomial theorem",
           {kQ, {"n", "integer n >= 1"}, {"a", "any complex"}, {"x", "any complex"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("n", d.integer(1, 20));
    a.set("a", pt(d.cpx(0.2, 2.0)));
    a.set("x", pt(d.cpx(0.2, 2.0)));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && a.integer("n") >= 1; };
  r.denominators = [](const ParamAssignment& a) {
    return std::vector<DenomFactor>{den(ap(a, "a") * ap(a, "x"), 0, static_cast<int>(a.integer("n")))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C max = -(e("a") * e("x")), s = e.k(0);
    for (long k = 1; k <= n; ++k) s += qbinom_num(n, k, e.q, ctx) * e.q.pow(binom2(k)) * max.pow(k - 1) * k;
    return s;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C ax = e("a") * e("x"), s = e.k(0);
    for (long k = 0; k < n; ++k) s += e.q.pow(k) / (ax * e.q.pow(k)).one_minus();
    return e.fin(n, {ax}) * s;
  };
  out.push_back(r);

  r = make("eisenstein", "Section 2.1, Corollary", "the number of divisors of n", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long k = 1; k * (k + 1) / 2 <= N; ++k) {
      s = s + mono(sgn(k) * k, k * (k + 1) / 2, N) * Pr(qp(1), k, N);
    }
    return s;
  };
  r.rhs_formal = [](const ParamAssignment&, long N) {
    std::vector<mpq_class> d(static_cast<size_t>(N) + 1, 0);
    for (long k = 1; k <= N; ++k) d[static_cast<size_t>(k)] = divisor_count(k);
    return -(P(qp(1), PochIndex::infinity(), N) * LS::from_coeffs(0, d, N));
  };
  r.formal_cases = no_params;
  out.push_back(r);

  r = make("lambert", "Lambert's theorem (cited Thm. 36)", "use of Lambert's theorem", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long k = 1; k <= N; ++k) s = s + ps_div(mono(1, k, N), one_minus_qpow(k), N);
    return s;
  };
  r.rhs_formal = [](const ParamAssignment&, long N) {
    std::vector<mpq_class> d(static_cast<size_t>(N) + 1, 0);
    for (long k = 1; k <= N; ++k) d[static_cast<size_t>(k)] = divisor_count(k);
    return LS::from_coeffs(0, d, N);
  };
  r.formal_cases = no_params;
  out.push_back(r);

  r = make("qbinom-d2", "Eq. (2.5) (idd14)", "second-order derivatives of both sides",
           {{"q", "exact rational, 0 < |q| < 1"}, {"n", "integer 1 <= n <= 12"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a;
    a.set("q", d.rational(0.1, 0.8));
    a.set("n", d.integer(1, 12));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && a.integer("n") >= 1; };
  r.denominators = [](const ParamAssignment&) { return std::vector<DenomFactor>{}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C s = e.k(0);
    for (long k = 2; k <= n; ++k) s += qbinom_num(n, k, e.q, ctx) * e.q.pow(binom2(k)) * (binom2(k) * (k % 2 ? -1 : 1));
    return s;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C s = e.k(0);
    for (long k = 1; k < n; ++k) s += e.q.pow(k) / e.q.pow(k).one_minus();
    return e.fin(n - 1, {e.q}) * s;
  };
  out.push_back(r);

  r = make("qbinom-d2-inf", "Eq. (2.6) (idd14-14)", "In particular", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long k = 2; binom2(k) <= N; ++k) s = s + mono(sgn(k) * binom2(k), binom2(k), N) * Pr(qp(1), k, N);
    return s;
  };
  r.rhs_formal = [](const ParamAssignment&, long N) {
    LS l = LS::zero(N);
    for (long k = 1; k <= N; ++k) l = l + ps_div(mono(1, k, N), one_minus_qpow(k), N);
    return P(qp(1), PochIndex::infinity(), N) * l;
  };
  r.formal_cases = no_params;
  out.push_back(r);
}

// ---- 1phi0, 1phi1, q-Gauss ----

void phi_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("phi10", "Eq. (2.7) (eq288)", "Treated as an analytic function",
                          {kQ, {"a", "any complex"}, {"x", "|x| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("a", pt(d.cpx(0.2, 3.0)));
    a.set("x", pt(d.cpx(0.05, 0.9)));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && std::abs(ap(a, "x")) < 1.0; };
  r.denominators = [](const ParamAssignment& a) { return std::vector<DenomFactor>{den(ap(a, "x"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.phi({e("a")}, {}, e("x"));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.inf({e("a") * e("x")}) / e.inf({e("x")});
  };
  out.push_back(r);

  // sum_n n (a;q)_n / (q;q)_n w^n
  auto n_weighted = [](const Ev& e, const C& a, const C& w) {
    C t = e.k(1), qn = e.k(1), aq = a;
    return e.sum(0, [&](long n) {
      if (n > 0) {
        qn *= e.q;
        t *= aq.one_minus() * w / qn.one_minus();
        aq *= e.q;
      }
      return t * n;
    });
  };

  r = make("phi10-dx", "Eq. (2.8)", "with |1/aq^m|<1", {kQ, {"m", "integer 0 <= m <= 3"}, {"a", "|1/(a q^m)| < 1"}},
           kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    long m = d.integer(0, 3);
    a.set("m", m);
    cd w = d.cpx(0.2, 0.8);
    a.set("a", pt(1.0 / (w * std::pow(ap(a, "q"), static_cast<double>(m)))));
    return a;
  };
  r.domain = [](const ParamAssignment& a) {
    cd q = ap(a, "q");
    return in_disk(q) && a.integer("m") >= 0 &&
           std::abs(1.0 / (ap(a, "a") * std::pow(q, static_cast<double>(a.integer("m"))))) < 1.0;
  };
  r.denominators = [](const ParamAssignment& a) {
    cd q = ap(a, "q");
    return std::vector<DenomFactor>{den(1.0 / (ap(a, "a") * std::pow(q, static_cast<double>(a.integer("m")))))};
  };
  r.lhs_num = [n_weighted](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a");
    return n_weighted(e, a, e.k(1) / (a * e.q.pow(e.n("m"))));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long m = e.n("m");
    C w = e.k(1) / (e("a") * e.q.pow(m));
    C v = e.q.pow(-m * (m + 1) / 2) * e.fin(m, {e.q}) * e.inf({e.q}) / e.inf({w});
    return (m + 1) % 2 == 0 ? v : -v;
  };
  r.notes = "Sampled with |1/(a q^m)| in [0.2, 0.8].";
  out.push_back(r);

  r = make("cauchy-1phi1", "Lemma, Eq. (2.9) (CCCC)", "Cauchy's formula is more basic",
           {kQ, {"a", "a != 0"}, {"c", "(c;q)_inf != 0"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("a", pt(d.cpx(0.5, 2.0)));
    a.set("c", pt(d.cpx(0.2, 1.5)));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && std::abs(ap(a, "a")) > 0.0; };
  r.denominators = [](const ParamAssignment& a) { return std::vector<DenomFactor>{den(ap(a, "c"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.phi({e("a")}, {e("c")}, e("c") / e("a"));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.inf({e("c") / e("a")}) / e.inf({e("c")});
  };
  out.push_back(r);

  r = make("cauchy-dx", "Eq. (2.10) (eq8)", "For complex number |c|>1", {kQ, {"c", "|c| > 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment a = with_q(d);
    a.set("c", pt(d.cpx(1.2, 3.0)));
    return a;
  };
  r.domain = [](const ParamAssignment& a) { return in_disk(ap(a, "q")) && std::abs(ap(a, "c")) > 1.0; };
  r.denominators = [](const ParamAssignment& a) { return std::vector<DenomFactor>{den(ap(a, "c"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C c = e("c"), qb = e.k(1), qq = e.k(1), qn = e.k(1), inner = e.k(0), cq = c;
    return e.sum(1, [&](long n) {
      // qb = q^C(n,2), qq = (q;q)_n, inner = sum_{k<n} 1/(1 - c q^k)
      if (n > 1) qb *= qn;
      qn *= e.q;
      qq *= qn.one_minus();
      inner += e.k(1) / cq.one_minus();
      cq *= e.q;
      C t = qb / qq * inner;
      return n % 2 == 1 ? t : -t;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.inf({e.q}) / e.inf({e("c")});
  };
  out.push_back(r);

  r = make("qgauss", "Lemma, Eq. (2.11) (wangjinyijian)", "The famous q-Gauss formula states",
           {kQ, {"a", "a != 0"}, {"b", "b != 0"}, {"c", "|c/(ab)| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    cd a = d.cpx(0.5, 2.0), b = d.cpx(0.5, 2.0);
    p.set("a", pt(a));
    p.set("b", pt(b));
    p.set("c", pt(a * b * d.cpx(0.1, 0.8)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "c") / (ap(p, "a") * ap(p, "b"))) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c");
    return std::vector<DenomFactor>{den(c), den(c / (a * b))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c");
    return e.phi({a, b}, {c}, c / (a * b));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c");
    return e.inf({c / a, c / b}) / e.inf({c, c / (a * b)});
  };
  out.push_back(r);

  r = make("qgauss-da-c", "Section 2.4, first corollary", "with respect to a at a=c",
           {kQ, {"b", "|b| > 1"}, {"c", "(c;q)_inf != 0"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("b", pt(d.cpx(1.2, 3.0)));
    p.set("c", pt(d.cpx(0.2, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "b")) > 1.0; };
  r.denominators = [](const ParamAssignment& p) {
    return std::vector<DenomFactor>{den(ap(p, "c")), den(1.0 / ap(p, "b"))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), t = e.k(1), qn = e.k(1), bq = b, cq = c, inner = e.k(0);
    return e.sum(1, [&](long) {
      // t = (b;q)_n / (q;q)_n b^-n
      qn *= e.q;
      t *= bq.one_minus() / (qn.one_minus() * b);
      bq *= e.q;
      inner += e.k(1) / cq.one_minus();
      cq *= e.q;
      return t * inner;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c");
    return -(e.inf({e.q, c / b}) / e.inf({c, e.k(1) / b}));
  };
  out.push_back(r);

  r = make("qgauss-da-1", "Section 2.4, second corollary", "with respect to a at a=1",
           {kQ, {"b", "b != 0"}, {"c", "|c/b| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    cd b = d.cpx(0.5, 2.0);
    p.set("b", pt(b));
    p.set("c", pt(b * d.cpx(0.1, 0.8)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "c") / ap(p, "b")) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) { return std::vector<DenomFactor>{den(ap(p, "c"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), w = c / b, t = e.k(1), qn = e.k(1), bq = b, cq = c;
    return e.sum(1, [&](long) {
      // t = (b;q)_n / (c;q)_n (c/b)^n
      t *= bq.one_minus() * w / cq.one_minus();
      bq *= e.q;
      cq *= e.q;
      qn *= e.q;
      return t / qn.one_minus();
    });
  };
  r.rhs_num = [n_weighted](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c");
    return e.inf({c / b}) / e.inf({c}) * n_weighted(e, b, c / b);
  };
  out.push_back(r);
}

// ---- Ramanujan's 1psi1 and its consequences ----

void psi_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("ramanujan-1psi1", "Lemma, Eq. (2.12) (ramanujan)", "Ramanujan's famous 1psi1 formula",
                          {kQ, {"a", "a != 0"}, {"b", "b != 0"}, {"x", "|b/a| < |x| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    cd a = d.cpx(0.5, 2.0), ba = d.cpx(0.05, 0.5);
    p.set("a", pt(a));
    p.set("b", pt(a * ba));
    p.set("x", pt(d.cpx(std::max(1.3 * std::abs(ba), 0.1), 0.85)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    double x = std::abs(ap(p, "x"));
    return in_disk(ap(p, "q")) && std::abs(ap(p, "b") / ap(p, "a")) < x && x < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), x = ap(p, "x"), q = ap(p, "q");
    return std::vector<DenomFactor>{den(b), den(a, -K, -1), den(q / a), den(x), den(b / (a * x))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.psi({e("a")}, {e("b")}, e("x"));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), x = e("x"), q = e.q;
    return e.inf({q, b / a, a * x, q / (a * x)}) / e.inf({b, q / a, x, b / (a * x)});
  };
  out.push_back(r);

  auto ab_draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(0.2, 0.9)));
    p.set("b", pt(d.cpx(0.2, 0.9)));
    return p;
  };
  r = make("r1psi1-dx", "Eq. (2.13) (danbian-gen-gen)", "For |a|,|b|<1, we have",
           {kQ, {"a", "|a| < 1"}, {"b", "|b| < 1"}}, kNum);
  r.draw = ab_draw;
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "a")) < 1.0 && std::abs(ap(p, "b")) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    return std::vector<DenomFactor>{den(ap(p, "a")), den(ap(p, "b"))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b");
    return e.inf({e.q}).pow(3) * e.inf({a * b}) / (e.inf({a}).pow(2) * e.inf({b}).pow(2));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b");
    // u = (q/a;q)_n a^n / (b;q)_(n+1), v = (q/b;q)_n b^n / (a;q)_(n+1)
    C u = e.k(1) / b.one_minus(), v = e.k(1) / a.one_minus(), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        C prev = qn;
        qn *= e.q;
        u *= (e.q / a * prev).one_minus() * a / (b * qn).one_minus();
        v *= (e.q / b * prev).one_minus() * b / (a * qn).one_minus();
      }
      return u * n + v * (n + 1);
    });
  };
  out.push_back(r);

  r = make("r1psi1-a=b", "Section 2.5, Example", "Evidently, for a=b in", {kQ, {"a", "|a| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(0.2, 0.9)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "a")) < 1.0; };
  r.denominators = [](const ParamAssignment& p) { return std::vector<DenomFactor>{den(ap(p, "a"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), u = e.k(1) / a.one_minus(), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        C prev = qn;
        qn *= e.q;
        u *= (e.q / a * prev).one_minus() * a / (a * qn).one_minus();
      }
      return u * (2 * n + 1);
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a");
    return e.inf({e.q}).pow(3) * e.inf({a * a}) / e.inf({a}).pow(4);
  };
  out.push_back(r);

  r = make("jacobi-cubed", "Section 2.5, Example", "the following well-known q-identity", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long n = 0; n * (n + 1) / 2 <= N; ++n) s = s + mono(sgn(n) * (2 * n + 1), n * (n + 1) / 2, N);
    return s;
  };
  r.rhs_formal = [](const ParamAssignment&, long N) { return ps_pow(P(qp(1), PochIndex::infinity(), N), 3); };
  r.formal_cases = no_params;
  out.push_back(r);

  r = make("danbian-gen", "Eq. (2.14) (danbian-gen)", "take a,b such that ab=q", {kQ, {"b", "0 < |q| < |b| < 1"}},
           kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("b", pt(d.cpx(1.3 * std::abs(ap(p, "q")), 0.9)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    double b = std::abs(ap(p, "b"));
    return in_disk(ap(p, "q")) && std::abs(ap(p, "q")) < b && b < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b"), q = ap(p, "q");
    return std::vector<DenomFactor>{den(b), den(q / b), den(1.0 / b, -K, K)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b");
    return e.bisum([&](long n) { return b.pow(n) * n / (e.q.pow(n + 1) / b).one_minus(); });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b");
    return e.inf({e.q}).pow(4) / (e.inf({b}).pow(2) * e.inf({e.q / b}).pow(2));
  };
  out.push_back(r);

  r = make("danbian-gen-000", "Eq. (2.14') (danbian-gen-000)", "replace q with q^2 and let b=-q", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long n = -(N + 1); n <= N; ++n) {
      if (n == 0) continue;
      LS d = mono(1, 0) + mono(1, 2 * n + 1);
      s = s + ps_div(mono(sgn(n) * n, n, N + 2 * std::abs(n) + 2), d, N);
    }
    return s.truncated(N);
  };
  r.rhs_formal = [](const ParamAssignment&, long N) {
    return ps_pow(P(qp(1), PochIndex::infinity(), N, 2), 4) * ps_pow(P(qp(4), PochIndex::infinity(), N, 4), 4);
  };
  r.formal_cases = no_params;
  out.push_back(r);
}

// ---- quintuple and triple products ----

ThetaSumSpec theta(long A, long B, bool sign = false) {
  ThetaSumSpec s;
  s.A = A;
  s.B = B;
  s.sign = sign;
  return s;
}

ThetaSumSpec theta_linear(long A, long B, long w0, long w1) {
  ThetaSumSpec s = theta(A, B);
  s.weight = ThetaWeight::kLinear;
  s.w0 = w0;
  s.w1 = w1;
  return s;
}

void product_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("quintuple", "Lemma, Eq. (2.15) (quintuplee)", "The quintuple product identity",
                          {kQ, {"x", "x != 0"}}, {Mode::kNumeric, Mode::kFormal});
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("x", pt(d.cpx(0.4, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "x")) > 0.0; };
  r.denominators = [](const ParamAssignment&) { return std::vector<DenomFactor>{}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C x = e("x");
    ThetaSumSpec s1 = theta(3, 1), s2 = theta(3, 2);
    s1.x = x.pow(3);
    s2.x = x.pow(3);
    return eval_theta_sum(s1, e.q, ctx) - x * eval_theta_sum(s2, e.q, ctx);
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C x = e("x"), q = e.q, q2 = q * q;
    return e.inf({q, x, q / x}) * e.inf_base(q2, {q * x * x, q / (x * x)});
  };
  r.lhs_formal = [](const ParamAssignment& p, long N) {
    FormalParam x = p.formal("x");
    FormalParam x3 = x * x * x;
    return theta_series(theta(3, 1), x3, N) - LS::from_param(x, N) * theta_series(theta(3, 2), x3, N);
  };
  r.rhs_formal = [](const ParamAssignment& p, long N) {
    FormalParam x = p.formal("x"), q = qp(1);
    auto I = PochIndex::infinity();
    return P(q, I, N) * P(x, I, N) * P(q / x, I, N) * P(q * x * x, I, N, 2) * P(q / (x * x), I, N, 2);
  };
  r.formal_cases = [] {
    return formal_x({qp(0, 2), qp(0, -1), qp(0, mpq_class(1, 2)), qp(0, mpq_class(-3, 2))});
  };
  out.push_back(r);

  r = make("quintuple-dx", "Eq. (2.16) (216); intermediate Eq. (tttt)",
           "$6\\sum nq^{3{n\\choose 2}+2n}$; Substituting this in",
           {{"form", "0: the corollary, 1: the intermediate identity"}}, kFor);
  r.lhs_formal = [](const ParamAssignment& p, long N) {
    FormalParam one = qp(0);
    if (p.integer("form") == 0) return theta_series(theta_linear(3, 2, 0, 6), one, N);
    return theta_series(theta_linear(3, 2, 1, 3), one, N) - theta_series(theta_linear(3, 1, 0, 3), one, N);
  };
  r.rhs_formal = [](const ParamAssignment& p, long N) {
    auto I = PochIndex::infinity();
    LS main = ps_pow(P(qp(1), I, N), 3) * ps_pow(P(qp(1), I, N, 2), 2);
    if (p.integer("form") == 1) return main;
    return main - P(qp(1, -1), I, N, 3) * P(qp(2, -1), I, N, 3) * P(qp(3), I, N, 3);
  };
  r.formal_cases = [] { return forms(2); };
  out.push_back(r);

  r = make("jacobi-triple", "Eq. (2.17) (shuangbian)", "Jacobi's triple product identity", {kQ, {"x", "x != 0"}},
           {Mode::kNumeric, Mode::kFormal});
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("x", pt(d.cpx(0.3, 2.5)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "x")) > 0.0; };
  r.denominators = [](const ParamAssignment&) { return std::vector<DenomFactor>{}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    ThetaSumSpec s = theta(1, 0, true);
    s.x = e("x");
    return eval_theta_sum(s, e.q, ctx);
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return triple_product(e("x"), e.q, ctx);
  };
  r.lhs_formal = [](const ParamAssignment& p, long N) { return theta_series(theta(1, 0, true), p.formal("x"), N); };
  r.rhs_formal = [](const ParamAssignment& p, long N) {
    FormalParam x = p.formal("x"), q = qp(1);
    auto I = PochIndex::infinity();
    return P(x, I, N) * P(q / x, I, N) * P(q, I, N);
  };
  r.formal_cases = [] { return formal_x({qp(0, 2), qp(0, -1), qp(0, mpq_class(1, 3)), qp(1, -2)}); };
  out.push_back(r);
}

// ---- q-Clausen ----

void clausen_family(std::vector<IdentityRecord>& out) {
  auto draw = [](bool with_x) {
    return [with_x](Draw& d) {
      ParamAssignment p = with_q(d, 0.3, 0.6);
      p.set("n", d.integer(1, 4));
      p.set("b", pt(d.cpx(0.3, 2.0)));
      if (with_x) p.set("x", pt(d.cpx(0.3, 2.0)));
      return p;
    };
  };
  auto dens = [](const ParamAssignment& p) {
    cd q = ap(p, "q"), b = ap(p, "b");
    int n = static_cast<int>(p.integer("n"));
    cd a = std::pow(q, -static_cast<double>(n));
    cd ab = a * b, sq = std::sqrt(q);
    std::vector<DenomFactor> out{den(ab * sq, 0, 2 * n), den(-ab * sq, 0, 2 * n), den(-ab, 0, 2 * n),
                                 den(ab * ab, 0, 2 * n)};
    for (int k = 0; k <= 2 * n; ++k) out.push_back(one_minus(ab * ab * q * std::pow(q, 2.0 * k)));
    return out;
  };
  auto domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && p.integer("n") >= 1; };

  IdentityRecord r = make("qclausen", "Lemma, Eq. (3.1) (kkkk)", "q-Clausen product formula due to",
                          {kQ, {"n", "a = q^-n, integer n >= 0"}, {"b", "any complex"}, {"x", "x != 0"}}, kNum);
  r.draw = draw(true);
  r.domain = domain;
  r.denominators = dens;
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e.q.pow(-e.n("n")), b = e("b"), x = e("x"), ab = a * b, sq = e.q.sqrt();
    C f = e.phi({a, b, ab * x, ab / x}, {ab * sq, -(ab * sq), -ab}, e.q);
    return f * f;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e.q.pow(-e.n("n")), b = e("b"), x = e("x"), ab = a * b, sq = e.q.sqrt();
    return e.phi({a * a, b * b, ab, ab * x, ab / x}, {ab * sq, -(ab * sq), -ab, ab * ab}, e.q);
  };
  out.push_back(r);

  r = make("qclausen-dx", "Eq. (3.2) (212)", "at least one is of form q^{-n}",
           {kQ, {"n", "a = q^-n, integer n >= 1"}, {"b", "any complex"}}, kNum);
  r.draw = draw(false);
  r.domain = domain;
  r.denominators = dens;
  // sum_{k=1}^{top} (u1,u2,u3;q)_k / ((-ab;q)_k (a^2b^2q;q^2)_k) q^k/(1-q^k)
  auto part = [](const Ev& e, const C& a, const C& b, std::initializer_list<C> u, long top) {
    C s = e.k(0), q2 = e.q * e.q, ab = a * b;
    for (long k = 1; k <= top; ++k) {
      C t = e.fin(k, u) / (e.fin(k, {-ab}) * e.fin_base(q2, k, {ab * ab * e.q}));
      s += t * e.q.pow(k) / e.q.pow(k).one_minus();
    }
    return s;
  };
  r.lhs_num = [part](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C a = e.q.pow(-n), b = e("b");
    return part(e, a, b, {a, b, a * a * b * b}, n) * 2;
  };
  r.rhs_num = [part](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C a = e.q.pow(-n), b = e("b");
    return part(e, a, b, {a * a, b * b, a * b}, 2 * n);
  };
  out.push_back(r);
}

// ---- Rogers' 6phi5 and consequences ----

// (1 - q^(2n-1)) / ((1 - q^(n-1))(1 - q^n)) times ratio(n), summed from n = 2,
// where ratio(n) is advanced by step(n) from ratio(1).
C zzzz_sum(const Ev& e, C ratio, const std::function<C(long)>& step) {
  return e.sum(2, [&](long n) {
    ratio *= step(n);
    C qn = e.q.pow(n);
    return (qn * qn / e.q).one_minus() / ((qn / e.q).one_minus() * qn.one_minus()) * ratio;
  });
}

void rogers_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("rogers65", "Lemma, Eq. (3.3) (rogers65)", "For |aq/(bcd)|<1, it holds",
                          {kQ, {"a", "a != 0"}, {"b", ""}, {"c", ""}, {"d", "|aq/(bcd)| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(0.3, 0.9)));
    for (const char* s : {"b", "c", "d"}) p.set(s, pt(d.cpx(1.0, 2.5)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) &&
           std::abs(ap(p, "a") * ap(p, "q") / (ap(p, "b") * ap(p, "c") * ap(p, "d"))) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), q = ap(p, "q"), sa = std::sqrt(a);
    return std::vector<DenomFactor>{den(sa),        den(-sa),       den(a * q / b),          den(a * q / c),
                                    den(a * q / d), one_minus(sa), den(a * q / (b * c * d))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), q = e.q, sa = a.sqrt();
    return e.phi({a, q * sa, -(q * sa), b, c, d}, {sa, -sa, a * q / b, a * q / c, a * q / d}, a * q / (b * c * d));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), q = e.q, aq = a * q;
    return e.inf({aq, aq / (b * c), aq / (b * d), aq / (c * d)}) / e.inf({aq / b, aq / c, aq / d, aq / (b * c * d)});
  };
  out.push_back(r);

  r = make("3psi3", "Corollary, Eq. (3.4) (PPPPP)", "written in terms of bilateral series",
           {kQ, {"b", ""}, {"c", ""}, {"d", "|q/(bcd)| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    for (const char* s : {"b", "c", "d"}) p.set(s, pt(d.cpx(1.0, 2.5)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "q") / (ap(p, "b") * ap(p, "c") * ap(p, "d"))) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), q = ap(p, "q");
    return std::vector<DenomFactor>{den(q / b),     den(q / c),     den(q / d),     den(q / (b * c * d)),
                                    den(b, -K, -1), den(c, -K, -1), den(d, -K, -1)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), q = e.q;
    return e.psi({b, c, d}, {q / b, q / c, q / d}, q / (b * c * d));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), q = e.q;
    return e.inf({q, q / (b * c), q / (b * d), q / (c * d)}) / e.inf({q / b, q / c, q / d, q / (b * c * d)});
  };
  out.push_back(r);

  r = make("rogers65-da", "Eq. (3.5) (zzzz)", "where the constant",
           {kQ, {"b", ""}, {"c", ""}, {"d", "|1/(bcd)| < 1"}}, kNum);
  r.notes = "The constant C0 is part of the left side evaluator.";
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    for (const char* s : {"b", "c", "d"}) p.set(s, pt(d.cpx(1.1, 3.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "b") * ap(p, "c") * ap(p, "d")) > 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d");
    return std::vector<DenomFactor>{den(1.0 / b), den(1.0 / c), den(1.0 / d), den(1.0 / (b * c * d)),
                                    one_minus(b),  one_minus(c),  one_minus(d)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), q = e.q, bcd = b * c * d;
    C c0 = (bcd * q * 2 - bcd - b * c * q - b * d * q - c * d * q + b + c + d + q - e.k(2)) /
           (q.one_minus() * b.one_minus() * c.one_minus() * d.one_minus());
    C ratio = e.fin(1, {b, c, d}) / (e.fin(1, {e.k(1) / b, e.k(1) / c, e.k(1) / d}) * bcd);
    C s = zzzz_sum(e, ratio, [&](long n) {
      C qn = q.pow(n - 1);
      return (b * qn).one_minus() * (c * qn).one_minus() * (d * qn).one_minus() /
             ((qn / b).one_minus() * (qn / c).one_minus() * (qn / d).one_minus() * bcd);
    });
    return c0 + s;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), one = e.k(1);
    return e.inf({e.q, one / (b * c), one / (b * d), one / (c * d)}) /
           e.inf({one / b, one / c, one / d, one / (b * c * d)});
  };
  out.push_back(r);

  r = make("zzzz-bcd", "Eq. (3.6) (zzzz-old)", "with b=c=d and b,c,d->infinity", {kQ, {"b", "|b| > 1"}}, kNum);
  r.notes = "Checked numerically as printed; it holds.";
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("b", pt(d.cpx(1.1, 3.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "b")) > 1.0; };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b");
    return std::vector<DenomFactor>{den(1.0 / b), den(1.0 / (b * b * b)), one_minus(b)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), q = e.q, b3 = b.pow(3);
    C ratio = (b.one_minus() / (e.k(1) / b).one_minus()).pow(3) / b3;
    return zzzz_sum(e, ratio, [&](long n) {
      C qn = q.pow(n - 1);
      return ((b * qn).one_minus() / (qn / b).one_minus()).pow(3) / b3;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), q = e.q, one = e.k(1);
    C prod = e.inf({q}) * e.inf({-(one / b)}).pow(3) * e.inf_base(q * q, {q / (b * b)}).pow(3) / e.inf({one / b.pow(3)});
    return prod + (b - b * q * 2 - q + e.k(2)) / (b.one_minus() * q.one_minus());
  };
  out.push_back(r);

  r = make("zzzz-limit", "Eq. (3.7) (zzzz-special)", "b,c,d->infinity", {}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long n = 2; 3 * n * (n - 1) / 2 <= N; ++n) {
      LS w = ps_div(one_minus_qpow(2 * n - 1), one_minus_qpow(n - 1) * one_minus_qpow(n), N);
      s = s + w * mono(sgn(n), 3 * n * (n - 1) / 2, N);
    }
    return s;
  };
  r.rhs_formal = [](const ParamAssignment&, long N) {
    return P(qp(1), PochIndex::infinity(), N) - ps_div(mono(1, 0) - mono(2, 1), one_minus_qpow(1), N);
  };
  r.formal_cases = no_params;
  out.push_back(r);
}

// ---- Watson, the 5psi5 transformation and the finite Rogers-Ramanujan ----

void watson_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("watson", "Lemma, Eq. (3.8) (whipplethm)", "q-analog of Whipple's theorem",
                          {kQ, {"n", "integer n >= 0"}, {"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}, {"e", ""}},
                          kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d, 0.3, 0.6);
    p.set("n", d.integer(0, 4));
    for (const char* s : {"a", "b", "c", "d", "e"}) p.set(s, pt(d.cpx(0.3, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && p.integer("n") >= 0; };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), e = ap(p, "e"), q = ap(p, "q");
    int n = static_cast<int>(p.integer("n"));
    cd sa = std::sqrt(a), aq = a * q;
    return std::vector<DenomFactor>{den(sa, 0, n),     den(-sa, 0, n),    den(aq / b, 0, n),
                                    den(aq / c, 0, n), den(aq / d, 0, n), den(aq / e, 0, n),
                                    den(aq * std::pow(q, static_cast<double>(n)), 0, n),
                                    den(d * e * std::pow(q, -static_cast<double>(n)) / a, 0, n)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q, sa = a.sqrt(), aq = a * q;
    return e.phi({a, q * sa, -(q * sa), b, c, d, ee, q.pow(-n)},
                 {sa, -sa, aq / b, aq / c, aq / d, aq / ee, aq * q.pow(n)}, a * a * q.pow(2 + n) / (b * c * d * ee));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q, aq = a * q;
    C pre = e.fin(n, {aq, aq / (d * ee)}) / e.fin(n, {aq / d, aq / ee});
    return pre * e.phi({q.pow(-n), d, ee, aq / (b * c)}, {aq / b, aq / c, d * ee * q.pow(-n) / a}, q);
  };
  out.push_back(r);

  auto psi_dens = [](const ParamAssignment& p, cd c) {
    cd b = ap(p, "b"), d = ap(p, "d"), e = ap(p, "e"), q = ap(p, "q");
    int n = static_cast<int>(p.integer("n"));
    std::vector<DenomFactor> out;
    for (cd v : {b, c, d, e}) {
      out.push_back(den(q / v, 0, n));
      out.push_back(den(v, -n, -1));
    }
    out.push_back(den(d * e * std::pow(q, -static_cast<double>(n)), 0, n));
    out.push_back(den(q / (b * d * e), 0, n));
    return out;
  };
  auto bcde_draw = [](bool with_c) {
    return [with_c](Draw& d) {
      ParamAssignment p = with_q(d, 0.3, 0.6);
      p.set("n", d.integer(0, 4));
      for (const char* s : {"b", "c", "d", "e"}) {
        if (with_c || std::string(s) != "c") p.set(s, pt(d.cpx(0.3, 2.0)));
      }
      return p;
    };
  };
  auto balanced_c = [](const Ev& e) {
    return e.q.pow(e.n("n") + 1) / (e("b") * e("d") * e("e"));
  };
  auto balanced_c_approx = [](const ParamAssignment& p) {
    return std::pow(ap(p, "q"), static_cast<double>(p.integer("n") + 1)) / (ap(p, "b") * ap(p, "d") * ap(p, "e"));
  };

  r = make("5psi5-transform", "Corollary, Eq. (3.9) (need)", "we now reformulate",
           {kQ, {"n", "integer n >= 0"}, {"b", ""}, {"c", ""}, {"d", ""}, {"e", ""}}, kNum);
  r.draw = bcde_draw(true);
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && p.integer("n") >= 0; };
  r.denominators = [psi_dens](const ParamAssignment& p) { return psi_dens(p, ap(p, "c")); };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    return e.psi({b, c, d, ee, q.pow(-n)}, {q / b, q / c, q / d, q / ee, q.pow(n + 1)}, q.pow(2 + n) / (b * c * d * ee));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    C pre = e.fin(n, {q, q / (d * ee)}) / e.fin(n, {q / d, q / ee});
    return pre * e.phi({q.pow(-n), d, ee, q / (b * c)}, {q / b, q / c, d * ee * q.pow(-n)}, q);
  };
  out.push_back(r);

  auto saal_rhs = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C b = e("b"), d = e("d"), ee = e("e"), q = e.q;
    return e.fin(n, {q, q / (b * d), q / (b * ee), q / (d * ee)}) / e.fin(n, {q / b, q / d, q / ee, q / (b * d * ee)});
  };

  r = make("5psi5-sum", "Eq. (3.10) (final-one)", "when bcde q^{-n}=q",
           {kQ, {"n", "integer n >= 0"}, {"b", ""}, {"d", ""}, {"e", ""}, {"c", "c = q^(n+1)/(bde)"}}, kNum);
  r.draw = bcde_draw(false);
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && p.integer("n") >= 0; };
  r.denominators = [psi_dens, balanced_c_approx](const ParamAssignment& p) {
    return psi_dens(p, balanced_c_approx(p));
  };
  r.lhs_num = [balanced_c](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C b = e("b"), c = balanced_c(e), d = e("d"), ee = e("e"), q = e.q;
    return e.psi({b, c, d, ee, q.pow(-n)}, {q / b, q / c, q / d, q / ee, q.pow(n + 1)}, q);
  };
  r.rhs_num = saal_rhs;
  out.push_back(r);

  r = make("pfaff-saalschutz", "Section 3.3, proof", "the q-Pfaff-Saalschutz 3phi2 formula",
           {kQ, {"n", "integer n >= 0"}, {"b", ""}, {"d", ""}, {"e", ""}, {"c", "c = q^(n+1)/(bde)"}}, kNum);
  r.draw = bcde_draw(false);
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && p.integer("n") >= 0; };
  r.denominators = [psi_dens, balanced_c_approx](const ParamAssignment& p) {
    return psi_dens(p, balanced_c_approx(p));
  };
  r.lhs_num = [balanced_c](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    long n = e.n("n");
    C b = e("b"), c = balanced_c(e), d = e("d"), ee = e("e"), q = e.q;
    C pre = e.fin(n, {q, q / (d * ee)}) / e.fin(n, {q / d, q / ee});
    return pre * e.phi({q.pow(-n), d, ee}, {q / b, q / c}, q);
  };
  r.rhs_num = saal_rhs;
  out.push_back(r);

  auto rr_lhs = [](const ParamAssignment& p, long) {
    long n = p.integer("n");
    LS s;
    for (long k = -n; k <= n; ++k) s = s + gauss_binom_poly(2 * n, n + k) * mono(sgn(k), (5 * k - 1) * k / 2);
    return s;
  };
  auto rr_sum = [](long n) {
    LS s;
    for (long k = 0; k <= n; ++k) s = s + gauss_binom_poly(n, k) * mono(1, k * k);
    return gauss_binom_poly(2 * n, n) * s;
  };
  auto rr_cases = [] {
    std::vector<ParamAssignment> out;
    for (long n = 1; n <= 8; ++n) {
      ParamAssignment a;
      a.set("n", n);
      out.push_back(a);
    }
    return out;
  };

  r = make("rr-finite", "Corollary, Eq. (3.11) (eq29)", "a finite form of the famous Rogers-Ramanujan",
           {{"n", "integer n >= 0"}}, {Mode::kExactPoly});
  r.expected = Expected::kExpectedFail;
  r.companion = "rr-finite-corrected";
  r.notes = "As printed the right side lacks a factor (q;q)_n: at n=1 the left side is 1+q-q^2-q^3 and the "
            "right side is (1+q)^2.";
  r.lhs_formal = rr_lhs;
  r.rhs_formal = [rr_sum](const ParamAssignment& p, long) { return rr_sum(p.integer("n")); };
  r.formal_cases = rr_cases;
  out.push_back(r);

  r = make("rr-finite-corrected", "Corollary, Eq. (3.11) with the factor (q;q)_n",
           "a finite form of the famous Rogers-Ramanujan", {{"n", "integer n >= 0"}}, {Mode::kExactPoly});
  r.notes = "Right side multiplied by (q;q)_n, as the limit of the 5psi5 transformation gives.";
  r.lhs_formal = rr_lhs;
  r.rhs_formal = [rr_sum](const ParamAssignment& p, long) {
    long n = p.integer("n");
    return rr_sum(n) * P(qp(1), n, LS::kExact);
  };
  r.formal_cases = rr_cases;
  out.push_back(r);

  r = make("rogers-ramanujan", "Example, Eq. (3.12) (ramanujanid)", "we recover the Rogers-Ramanujan identity",
           {{"form", "0: 1/(q,q^4;q^5)_inf, 1: (q^2,q^3,q^5;q^5)_inf/(q;q)_inf"}}, kFor);
  r.lhs_formal = [](const ParamAssignment&, long N) {
    LS s = LS::zero(N);
    for (long k = 0; k * k <= N; ++k) s = s + mono(1, k * k, N) * Pr(qp(1), k, N);
    return s;
  };
  r.rhs_formal = [](const ParamAssignment& p, long N) {
    auto I = PochIndex::infinity();
    if (p.integer("form") == 0) return Pr(qp(1), I, N, 5) * Pr(qp(4), I, N, 5);
    return P(qp(2), I, N, 5) * P(qp(3), I, N, 5) * P(qp(5), I, N, 5) * Pr(qp(1), I, N);
  };
  r.formal_cases = [] { return forms(2); };
  out.push_back(r);
}

// ---- Bailey's 8phi7 and its derivative ----

void bailey_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("bailey87", "Lemma, Eq. (3.13) (wwww-1)", "Bailey's nonterminating extension of Jackson's",
                          {kQ, {"a", ""}, {"b", ""}, {"c", ""}, {"d", ""}, {"e", ""}, {"f", "f = a^2 q/(bcde)"}},
                          kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    for (const char* s : {"a", "b", "c", "d", "e"}) p.set(s, pt(d.cpx(0.3, 0.9)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")); };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), e = ap(p, "e"), q = ap(p, "q");
    cd f = a * a * q / (b * c * d * e), sa = std::sqrt(a), aq = a * q, bq = b * q;
    std::vector<DenomFactor> out{den(sa), den(-sa), den(b / sa), den(-b / sa), den(b * b * q / a)};
    for (cd v : {b, c, d, e, f}) out.push_back(den(aq / v));
    for (cd v : {c, d, e, f}) {
      out.push_back(den(b * v / a));
      out.push_back(den(bq / v));
    }
    out.push_back(den(bq / a));
    return out;
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    C f = a * a * q / (b * c * d * ee), sa = a.sqrt(), aq = a * q, bq = b * q;
    C w1 = e.phi({a, q * sa, -(q * sa), b, c, d, ee, f}, {sa, -sa, aq / b, aq / c, aq / d, aq / ee, aq / f}, q);
    C pre = b / a * e.inf({aq, c, d, ee, f, bq / a, bq / c, bq / d, bq / ee, bq / f}) /
            e.inf({aq / b, aq / c, aq / d, aq / ee, aq / f, b * c / a, b * d / a, b * ee / a, b * f / a, b * bq / a});
    C sb = b / sa;
    C w2 = e.phi({b * b / a, q * sb, -(q * sb), b, b * c / a, b * d / a, b * ee / a, b * f / a},
                 {sb, -sb, bq / a, bq / c, bq / d, bq / ee, bq / f}, q);
    return w1 - pre * w2;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    C f = a * a * q / (b * c * d * ee), aq = a * q;
    return e.inf({aq, b / a, aq / (c * d), aq / (c * ee), aq / (c * f), aq / (d * ee), aq / (d * f), aq / (ee * f)}) /
           e.inf({aq / c, aq / d, aq / ee, aq / f, b * c / a, b * d / a, b * ee / a, b * f / a});
  };
  out.push_back(r);

  r = make("bailey-da", "Corollary, Eq. (3.14) (wwww)", "b,c,d,e,f: bcdef=q",
           {kQ, {"b", ""}, {"c", ""}, {"d", ""}, {"e", ""}, {"f", "f = q/(bcde)"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    for (const char* s : {"b", "c", "d", "e"}) p.set(s, pt(d.cpx(0.3, 0.9)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")); };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), e = ap(p, "e"), q = ap(p, "q");
    cd f = q / (b * c * d * e);
    std::vector<DenomFactor> out{one_minus(-b), den(b * b * q)};
    for (cd v : {b, c, d, e, f}) {
      out.push_back(den(q / v));
      out.push_back(den(v, -K, -1));
    }
    for (cd v : {c, d, e, f}) {
      out.push_back(den(b * v));
      out.push_back(den(b * q / v));
    }
    return out;
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    C f = q / (b * c * d * ee), bq = b * q;
    C psi = e.psi({b, c, d, ee, f}, {q / b, q / c, q / d, q / ee, q / f}, q);
    C pre = b / (b + 1) * e.inf({q, bq, c, d, ee, f, bq / c, bq / d, bq / ee, bq / f}) /
            e.inf({q / b, q / c, q / d, q / ee, q / f, b * c, b * d, b * ee, b * f, b * bq});
    std::vector<C> num{b * b, b * c, b * d, b * ee, b * f}, dn{q, bq / c, bq / d, bq / ee, bq / f};
    C t = e.k(1), qn = e.k(1);
    C s = e.sum(0, [&](long n) {
      if (n > 0) {
        for (size_t i = 0; i < num.size(); ++i) t *= (num[i] * qn).one_minus() / (dn[i] * qn).one_minus();
        qn *= q;
        t *= q;
      }
      return t * (b * qn + 1);
    });
    return psi - pre * s;
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), ee = e("e"), q = e.q;
    C f = q / (b * c * d * ee);
    return e.inf({q, b, q / (c * d), q / (c * ee), q / (c * f), q / (d * ee), q / (d * f), q / (ee * f)}) /
           e.inf({q / c, q / d, q / ee, q / f, b * c, b * d, b * ee, b * f});
  };
  out.push_back(r);

  r = make("bailey-da-special", "Corollary, Eq. (3.15) (BCA)", "def=1, b != 0",
           {kQ, {"b", "b != 0"}, {"d", ""}, {"e", ""}, {"f", "f = 1/(de)"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("b", pt(d.cpx(0.3, 0.9)));
    p.set("d", pt(d.cpx(0.5, 2.0)));
    p.set("e", pt(d.cpx(0.5, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "b")) > 0.0; };
  r.denominators = [](const ParamAssignment& p) {
    cd b = ap(p, "b"), d = ap(p, "d"), e = ap(p, "e"), q = ap(p, "q"), f = 1.0 / (d * e);
    return std::vector<DenomFactor>{den(b * q / d), den(b * q / e), den(b * q / f), one_minus(d), one_minus(e),
                                    one_minus(f)};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), d = e("d"), ee = e("e"), q = e.q, f = e.k(1) / (d * ee);
    std::vector<C> num{b * d, b * ee, b * f}, dn{b * q / d, b * q / ee, b * q / f};
    C t = e.k(1), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        for (size_t i = 0; i < num.size(); ++i) t *= (num[i] * qn).one_minus() / (dn[i] * qn).one_minus();
        qn *= q;
        t *= q;
      }
      return t * (b * qn + 1);
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), d = e("d"), ee = e("e"), q = e.q, f = e.k(1) / (d * ee);
    C top = e.inf({b * d, b * ee, b * f}) - e.inf({b / d, b / ee, b / f});
    return top / (b * d.one_minus() * ee.one_minus() * f.one_minus() * e.inf({b * q / d, b * q / ee, b * q / f}));
  };
  out.push_back(r);
}

// ---- Liu's double series transformation ----

// 4phi3[q^-n, u q^n, beta, gamma; q/b, q/c, beta gamma u b c/q; q, q], the
// inner terminating series of both Liu identities (u = a, or u = 1 for the
// bilateral form). Its terms reach about |q|^(-n^2/2) times its value.
C liu_inner(const ParamAssignment& p, const NumericContext& ctx, long n, bool unilateral) {
  double lq = -std::log10(std::abs(p.approx("q")));
  double extra = 0.5 * static_cast<double>(n * n) * lq + 10.0;
  return phi_escalated(
      [&](const NumericContext& w) {
        C q = p.num("q", w), b = p.num("b", w), c = p.num("c", w), be = p.num("beta", w), ga = p.num("gamma", w);
        C u = unilateral ? p.num("a", w) : w.integer(1);
        return PhiSpec{{q.pow(-n), u * q.pow(n), be, ga}, {q / b, q / c, be * ga * u * b * c / q}, q, q};
      },
      ctx, extra);
}

void liu_family(std::vector<IdentityRecord>& out) {
  auto common_dens = [](const ParamAssignment& p, cd u) {
    cd b = ap(p, "b"), c = ap(p, "c"), d = ap(p, "d"), q = ap(p, "q"), be = ap(p, "beta"), ga = ap(p, "gamma");
    return std::vector<DenomFactor>{den(q / b), den(q / c), den(be * ga * u * b * c / q), den(u * b), den(u * c),
                                    den(u * d), den(be * u * b * c * d / (q * q)), den(ga * u * b * c * d / (q * q))};
  };

  IdentityRecord r = make("liu", "Lemma, Eq. (3.16) (KKK-1)", "double q-series transformation formula",
                          {kQ, {"a", ""}, {"b", ""}, {"c", ""}, {"d", "|abcd/q^2| < 1"}, {"beta", ""}, {"gamma", ""}},
                          kNum);
  r.notes = "Sampled with |q| in [0.3, 0.45] and |a|,|b|,|c|,|d| in [0.2, 0.4].";
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d, 0.3, 0.45);
    for (const char* s : {"a", "b", "c", "d"}) p.set(s, pt(d.cpx(0.2, 0.4)));
    p.set("beta", pt(d.cpx(0.3, 2.0)));
    p.set("gamma", pt(d.cpx(0.3, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    cd q = ap(p, "q");
    return in_disk(q) && std::abs(ap(p, "a") * ap(p, "b") * ap(p, "c") * ap(p, "d") / (q * q)) < 1.0;
  };
  r.denominators = [common_dens](const ParamAssignment& p) {
    auto out = common_dens(p, ap(p, "a"));
    out.push_back(one_minus(ap(p, "a")));
    return out;
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), q = e.q;
    C z = a * b * c * d / (q * q);
    std::vector<C> num{a, q / b, q / c, q / d}, dn{q, a * b, a * c, a * d};
    C t = e.k(1), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        for (size_t i = 0; i < num.size(); ++i) t *= (num[i] * qn).one_minus() / (dn[i] * qn).one_minus();
        t *= z;
        qn *= q;
      }
      return (a * qn * qn).one_minus() / a.one_minus() * t * liu_inner(p, ctx, n, true);
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), d = e("d"), q = e.q, be = e("beta"), ga = e("gamma");
    C abc = a * b * c / q, abcd = a * b * c * d / (q * q);
    return e.inf({a * q, be * abc, ga * abc, a * b * d / q, a * c * d / q, be * ga * abcd}) /
           e.inf({a * b, a * c, a * d, be * ga * abc, be * abcd, ga * abcd});
  };
  out.push_back(r);

  r = make("liu-bilateral", "Corollary, Eq. (3.17) (KKK)", "extend it to bilateral series",
           {kQ, {"b", ""}, {"c", ""}, {"d", "|bcd/q^2| < 1"}, {"beta", ""}, {"gamma", ""}}, kNum);
  r.notes = "G(n;beta,gamma) is evaluated literally for negative n, where it equals G(-n;beta,gamma).";
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d, 0.3, 0.45);
    for (const char* s : {"b", "c", "d"}) p.set(s, pt(d.cpx(0.2, 0.4)));
    p.set("beta", pt(d.cpx(0.3, 2.0)));
    p.set("gamma", pt(d.cpx(0.3, 2.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    cd q = ap(p, "q");
    return in_disk(q) && std::abs(ap(p, "b") * ap(p, "c") * ap(p, "d") / (q * q)) < 1.0;
  };
  r.denominators = [common_dens](const ParamAssignment& p) {
    auto out = common_dens(p, 1.0);
    cd q = ap(p, "q");
    for (const char* s : {"b", "c", "d"}) out.push_back(den(q / ap(p, s), -K, -1));
    return out;
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), q = e.q;
    C x = b * c * d / (q * q);
    return e.bisum([&](long n) {
      C ratio = e.fin(n, {q / b, q / c, q / d}) / e.fin(n, {b, c, d});
      return ratio * x.pow(n) * liu_inner(p, ctx, n, false);
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C b = e("b"), c = e("c"), d = e("d"), q = e.q, be = e("beta"), ga = e("gamma");
    C bc = b * c / q, bcd = b * c * d / (q * q);
    return e.inf({q, be * bc, ga * bc, b * d / q, c * d / q, be * ga * bcd}) /
           e.inf({b, c, d, be * ga * bc, be * bcd, ga * bcd});
  };
  out.push_back(r);
}

// ---- the 2phi1 three-term relation ----

void threeterm_family(std::vector<IdentityRecord>& out) {
  IdentityRecord r = make("2phi1-threeterm", "Lemma, Eq. (3.18) (QQQQ)", "For |x|<1, it holds",
                          {kQ, {"a", ""}, {"b", ""}, {"c", ""}, {"x", "|x| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(1.0, 2.0)));
    p.set("b", pt(d.cpx(1.0, 2.0)));
    p.set("c", pt(d.cpx(0.2, 0.9)));
    p.set("x", pt(d.cpx(0.1, 0.8)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "x")) < 1.0; };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c"), x = ap(p, "x"), q = ap(p, "q");
    return std::vector<DenomFactor>{den(c),         den(c / (a * b)), den(a * b / c),
                                    den(x),         den(q * a * b / c), den(q * c / (a * b))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return e.phi({e("a"), e("b")}, {e("c")}, e("x"));
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), x = e("x"), q = e.q, ab = a * b, zero = e.k(0);
    C first = e.inf({c / a, c / b}) / e.inf({c, c / ab}) * e.phi({a, b, ab * x / c}, {q * ab / c, zero}, q);
    C second = e.inf({a, b, ab * x / c}) / e.inf({c, ab / c, x}) * e.phi({c / a, c / b, x}, {q * c / ab, zero}, q);
    return first + second;
  };
  out.push_back(r);

  r = make("2phi1-threeterm-dx", "Corollary, Eq. (3.19) (QQQQ-new)", "For |c/ab|<1, it holds",
           {kQ, {"a", ""}, {"b", ""}, {"c", "|c/(ab)| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(1.0, 2.0)));
    p.set("b", pt(d.cpx(1.0, 2.0)));
    p.set("c", pt(d.cpx(0.2, 0.9)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) {
    return in_disk(ap(p, "q")) && std::abs(ap(p, "c") / (ap(p, "a") * ap(p, "b"))) < 1.0;
  };
  r.denominators = [](const ParamAssignment& p) {
    cd a = ap(p, "a"), b = ap(p, "b"), c = ap(p, "c"), q = ap(p, "q");
    return std::vector<DenomFactor>{den(c), den(c / (a * b)), den(a * b / c), den(q * a * b / c),
                                    den(q * c / (a * b))};
  };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), q = e.q, w = c / (a * b), t = e.k(1), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        t *= (a * qn).one_minus() * (b * qn).one_minus() * w / ((c * qn).one_minus() * (qn * q).one_minus());
        qn *= q;
      }
      return t * n;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), b = e("b"), c = e("c"), q = e.q, ab = a * b;
    C t = e.k(1), qn = e.k(1);
    C s1 = e.sum(1, [&](long) {
      // t = (a,b;q)_n / (qab/c;q)_n q^n
      t *= (a * qn).one_minus() * (b * qn).one_minus() * q / (q * ab / c * qn).one_minus();
      qn *= q;
      return t / qn.one_minus();
    });
    C u = e.k(1), qm = e.k(1);
    C s2 = e.sum(0, [&](long n) {
      if (n > 0) {
        u *= (c / a * qm).one_minus() * (c / b * qm).one_minus() * q / (qm * q).one_minus();
        qm *= q;
      }
      return u / (c * qm / ab).one_minus();
    });
    C first = e.inf({c / a, c / b}) / e.inf({c, c / ab}) * s1;
    C second = e.inf({a, b, q}) / e.inf({c, ab / c, c * q / ab}) * s2;
    return -first - second;
  };
  out.push_back(r);

  r = make("2phi1-dx-b=c", "Section 3.5, Example", "special case of (2.8) with m=0", {kQ, {"a", "|1/a| < 1"}}, kNum);
  r.draw = [](Draw& d) {
    ParamAssignment p = with_q(d);
    p.set("a", pt(d.cpx(1.3, 4.0)));
    return p;
  };
  r.domain = [](const ParamAssignment& p) { return in_disk(ap(p, "q")) && std::abs(ap(p, "a")) > 1.0; };
  r.denominators = [](const ParamAssignment& p) { return std::vector<DenomFactor>{den(1.0 / ap(p, "a"))}; };
  r.lhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    C a = e("a"), t = e.k(1), qn = e.k(1);
    return e.sum(0, [&](long n) {
      if (n > 0) {
        t *= (a * qn).one_minus() / (a * (qn * e.q).one_minus());
        qn *= e.q;
      }
      return t * n;
    });
  };
  r.rhs_num = [](const ParamAssignment& p, const NumericContext& ctx) {
    Ev e(p, ctx);
    return -(e.inf({e.q}) / e.inf({e.k(1) / e("a")}));
  };
  out.push_back(r);
}

std::vector<IdentityRecord> build() {
  std::vector<IdentityRecord> out;
  euler_family(out);
  qbinomial_family(out);
  phi_family(out);
  psi_family(out);
  product_family(out);
  clausen_family(out);
  rogers_family(out);
  watson_family(out);
  bailey_family(out);
  liu_family(out);
  threeterm_family(out);
  return out;
}

}  // namespace

const std::vector<IdentityRecord>& catalog() {
  static const std::vector<IdentityRecord> records = build();
  return records;
}

}  // namespace qid
