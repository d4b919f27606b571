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


#include "qid/deriv.hpp"

#include <algorithm>
#include <cmath>

#include "qid/errors.hpp"
#include "qid/series.hpp"

namespace qid {

namespace {

struct Split {
  long zeros = 0;
  ComplexHP scale;  // coefficient times the slopes of the vanishing factors
  ComplexHP rest;   // everything else, evaluated at x
  ComplexHP l1;     // D log(rest)
  ComplexHP l2;     // D^2 log(rest)
};

struct SubFactor {
  long exponent;
  int sign;  // +1 numerator, -1 denominator
};

// Linear factors 1 - alpha x q^e making up (alpha x; q)_n^eps.
std::vector<SubFactor> sub_factors(const ComplexHP& alpha_x, const ComplexHP& alpha, const ComplexHP& q,
                                   PochIndex n, int eps, const NumericContext& ctx) {
  std::vector<SubFactor> out;
  if (n.is_infinite()) {
    if (alpha.is_zero()) return out;
    double lq = q.log2_abs();
    long len = std::max(poch_inf_length(alpha_x.log2_abs(), lq, ctx), poch_inf_length(alpha.log2_abs() + 1.0, lq, ctx));
    for (long k = 0; k < len; ++k) out.push_back({k, eps});
  } else if (n.value() >= 0) {
    for (long k = 0; k < n.value(); ++k) out.push_back({k, eps});
  } else {
    detail::require_unit_disk(q, "(a;q)_n with n < 0");
    for (long i = 1; i <= -n.value(); ++i) out.push_back({-i, -eps});
  }
  return out;
}

bool vanishes(const PochFactor& f, const XPoint& x, long exponent, const ComplexHP& u, const ComplexHP& w,
              const NumericContext& ctx) {
  if (f.alpha.is_exact() && x.exact) {
    return *f.alpha.exact * x.exact->s == 1 && f.alpha.qpow + x.exact->j + exponent == 0;
  }
  return ctx.is_pole(u, w);
}

Split split(const TermExpr& t, const XPoint& x, const ComplexHP& q, const NumericContext& ctx) {
  const ComplexHP X = ctx.lift(x.value);
  const ComplexHP Q = ctx.lift(q);
  const ComplexHP one = ctx.integer(1);
  const bool x_zero = x.exact ? x.exact->is_zero() : X.is_zero();
  Split s;
  s.scale = t.coeff.eval(Q, ctx);
  s.rest = one;
  s.l1 = ctx.integer(0);
  s.l2 = ctx.integer(0);

  if (t.power != 0) {
    if (x_zero) {
      if (t.power < 0) throw PoleError("x^" + std::to_string(t.power) + " at x = 0");
      s.zeros += t.power;
    } else {
      s.rest *= X.pow(t.power);
      ComplexHP inv = one / X;
      s.l1 += inv * t.power;
      s.l2 -= inv * inv * t.power;
    }
  }

  for (const auto& f : t.factors) {
    const ComplexHP alpha = f.alpha.eval(Q, ctx);
    if (!f.with_x) {
      if (f.eps > 0) {
        s.rest *= f.n.is_infinite() ? detail::poch_inf_raw(alpha, Q, ctx)
                                    : detail::poch_finite_raw(alpha, Q, f.n.value(), ctx);
      } else {
        s.rest *= poch_recip(alpha, Q, f.n, ctx);
      }
      continue;
    }
    const ComplexHP ax = alpha * X;
    const ComplexHP qinv = f.n.is_infinite() || f.n.value() >= 0 ? one : one / Q;
    for (const SubFactor& sf : sub_factors(ax, alpha, Q, f.n, f.eps, ctx)) {
      ComplexHP w = alpha * (sf.exponent >= 0 ? Q.pow(sf.exponent) : qinv.pow(-sf.exponent));
      ComplexHP u = (w * X).one_minus();
      if (vanishes(f, x, sf.exponent, u, w * X, ctx)) {
        if (sf.sign < 0) throw PoleError("an inverted factor vanishes at the evaluation point");
        ++s.zeros;
        s.scale *= -w;
        continue;
      }
      ComplexHP d = -w / u;
      if (sf.sign > 0) {
        s.rest *= u;
        s.l1 += d;
        s.l2 -= d * d;
      } else {
        s.rest /= u;
        s.l1 -= d;
        s.l2 += d * d;
      }
    }
  }
  return s;
}

}  // namespace

QMonomial QMonomial::rational(const mpq_class& c, long j) {
  QMonomial m;
  m.exact = c;
  m.exact->canonicalize();
  m.value = ComplexHP::from_rational(c, 64);
  m.qpow = j;
  return m;
}

QMonomial QMonomial::complex(const ComplexHP& c, long j) {
  QMonomial m;
  m.value = c;
  m.qpow = j;
  return m;
}

ComplexHP QMonomial::scalar(const NumericContext& ctx) const {
  return exact ? ComplexHP::from_rational(*exact, ctx.work_bits()) : ctx.lift(value);
}

ComplexHP QMonomial::eval(const ComplexHP& q, const NumericContext& ctx) const {
  ComplexHP s = scalar(ctx);
  return qpow == 0 ? s : s * ctx.lift(q).pow(qpow);
}

std::optional<FormalParam> QMonomial::formal() const {
  if (!exact) return std::nullopt;
  return FormalParam{*exact, qpow};
}

QMonomial QMonomial::operator*(const QMonomial& o) const {
  if (exact && o.exact) return rational(*exact * *o.exact, qpow + o.qpow);
  Bits bits = std::max(value.bits(), o.value.bits());
  ComplexHP a = exact ? ComplexHP::from_rational(*exact, bits) : value;
  ComplexHP b = o.exact ? ComplexHP::from_rational(*o.exact, bits) : o.value;
  return complex(a * b, qpow + o.qpow);
}

bool operator==(const QMonomial& a, const QMonomial& b) {
  if (a.qpow != b.qpow || a.exact.has_value() != b.exact.has_value()) return false;
  return a.exact ? *a.exact == *b.exact : a.value == b.value;
}

TermExpr term_product(const TermExpr& a, const TermExpr& b) {
  TermExpr r;
  r.coeff = a.coeff * b.coeff;
  r.power = a.power + b.power;
  r.factors = a.factors;
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

ComplexHP eval_term(const TermExpr& t, const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx) {
  const ComplexHP X = ctx.lift(x);
  const ComplexHP Q = ctx.lift(q);
  ComplexHP v = t.coeff.eval(Q, ctx);
  if (t.power != 0) v *= X.pow(t.power);
  for (const auto& f : t.factors) {
    ComplexHP arg = f.alpha.eval(Q, ctx);
    if (f.with_x) arg *= X;
    if (f.eps > 0) {
      v *= f.n.is_infinite() ? detail::poch_inf_raw(arg, Q, ctx) : detail::poch_finite_raw(arg, Q, f.n.value(), ctx);
    } else {
      v *= poch_recip(arg, Q, f.n, ctx);
    }
  }
  return ctx.round(v);
}

ComplexHP log_deriv_poch(const ComplexHP& alpha, PochIndex n, const ComplexHP& x, const ComplexHP& q,
                         const NumericContext& ctx) {
  PochFactor f;
  f.alpha = QMonomial::complex(alpha);
  f.n = n;
  TermExpr t;
  t.factors.push_back(f);
  Split s = split(t, XPoint::numeric(x), q, ctx);
  if (s.zeros > 0) throw PoleError("log-derivative of a vanishing product");
  return ctx.round(s.l1);
}

ComplexHP deriv_term(const TermExpr& t, const XPoint& x, const ComplexHP& q, const NumericContext& ctx, int order) {
  if (order < 0 || order > 2) throw DomainError("deriv_term supports orders 0, 1 and 2");
  Split s = split(t, x, q, ctx);
  if (s.zeros > order) return ctx.round(ctx.integer(0));
  // D^j (S (x - x0)^k R) at x0 = j!/(j-k)! S R^(j-k)(x0)
  long rest_order = order - s.zeros;
  ComplexHP r = s.rest;
  if (rest_order == 1) r *= s.l1;
  if (rest_order == 2) r *= s.l1 * s.l1 + s.l2;
  long falling = 1;
  for (long i = 0; i < s.zeros; ++i) falling *= order - i;
  return ctx.round(s.scale * r * falling);
}

ComplexHP q_deriv(const Evaluatable& f, const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx) {
  const ComplexHP X = ctx.lift(x);
  const ComplexHP Q = ctx.lift(q);
  if (X.is_zero()) throw DomainError("q-derivative requires x != 0");
  if (Q == ctx.integer(1)) throw DomainError("q-derivative requires q != 1");
  ComplexHP qx = Q * X;
  return ctx.round((f(qx) - f(X)) / (qx - X));
}

Real relative_discrepancy(const ComplexHP& l, const ComplexHP& r) {
  Real den = std::max({l.abs(), r.abs(), Real::from_long(1, std::max(l.bits(), r.bits()))});
  return (l - r).abs() / den;
}

Prop13Result apply_prop13(const SeriesFamily& T, const Evaluatable& S, const ComplexHP& a, const ComplexHP& q,
                          long m, const NumericContext& ctx, std::optional<mpq_class> a_exact) {
  if (m < 0) throw DomainError("apply_prop13 requires m >= 0");
  if (a.is_zero()) throw DomainError("apply_prop13 requires a != 0");
  detail::require_unit_disk(q, "apply_prop13");
  // sum the left side well below tol so the comparison has headroom
  NumericContext ectx = ctx;
  ectx.tol = std::max(ctx.tol * 1e-5, std::pow(10.0, -static_cast<double>(ctx.digits)));

  const ComplexHP Q = ctx.lift(q);
  const ComplexHP A = ctx.lift(a);
  Prop13Result res;
  res.x0.value = Q.pow(-m) / A;
  if (a_exact) res.x0.exact = FormalParam{1 / *a_exact, -m};

  ComplexHP s0 = S(res.x0.value);
  if (ctx.is_pole(s0, ctx.integer(1))) {
    throw PrecondError("S vanishes at x = q^-" + std::to_string(m) + "/a");
  }
  auto term = [&](long n) { return deriv_term(T.term_at(n), res.x0, Q, ectx, 1); };
  SeriesResult sum = T.support == Support::kUnilateral ? sum_adaptive(term, 0, 1, ectx)
                                                       : sum_bilateral(term, ectx);
  res.lhs = ctx.round(sum.value);
  res.terms = sum.terms;

  ComplexHP rhs = A * Q.pow(-m * (m - 1) / 2) * poch_finite(Q, Q, m, ectx) * poch_inf(Q, Q, ectx) * s0;
  if (m % 2 == 0) rhs = -rhs;
  res.rhs = ctx.round(rhs);
  res.discrepancy = relative_discrepancy(res.lhs, res.rhs);
  res.pass = res.discrepancy < ctx.tol;
  return res;
}

}  // namespace qid
