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

#include "qid/qcore.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qid/errors.hpp"

namespace qid {

namespace detail {

void require_unit_disk(const ComplexHP& q, const char* what) {
  if (!(q.log2_abs() < 0.0)) throw DomainError(std::string(what) + " requires |q| < 1");
}

ComplexHP poch_finite_raw(const ComplexHP& a, const ComplexHP& q, long n, const NumericContext& ctx) {
  ComplexHP A = ctx.lift(a);
  ComplexHP Q = ctx.lift(q);
  ComplexHP prod = ctx.integer(1);
  if (n >= 0) {
    ComplexHP term = A;  // a q^k
    for (long k = 0; k < n; ++k) {
      prod *= term.one_minus();
      if (prod.is_zero()) return prod;
      term *= Q;
    }
    return prod;
  }
  detail::require_unit_disk(q, "(a;q)_n with n < 0");
  if (Q.is_zero()) throw DomainError("(a;q)_n with n < 0 requires q != 0");
  ComplexHP qinv = ctx.integer(1) / Q;
  ComplexHP term = A * qinv;  // a q^-k
  for (long k = 1; k <= -n; ++k) {
    ComplexHP f = term.one_minus();
    if (ctx.is_pole(f, A)) {
      throw PoleError("(a;q)_" + std::to_string(n) + ": factor 1 - a q^-" + std::to_string(k) +
                      " vanishes");
    }
    prod *= f;
    term *= qinv;
  }
  return ctx.integer(1) / prod;
}

ComplexHP poch_inf_raw(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx) {
  detail::require_unit_disk(q, "(a;q)_inf");
  if (a.is_zero()) return ctx.integer(1);
  long len = poch_inf_length(a.log2_abs(), q.log2_abs(), ctx);
  ComplexHP Q = ctx.lift(q);
  ComplexHP term = ctx.lift(a);
  ComplexHP prod = ctx.integer(1);
  for (long k = 0; k < len; ++k) {
    prod *= term.one_minus();
    if (prod.is_zero()) return prod;
    term *= Q;
  }
  return prod;
}

}  // namespace detail

long poch_inf_length(double log2_a, double log2_q, const NumericContext& ctx) {
  if (!(log2_q < 0.0)) throw DomainError("(a;q)_inf requires |q| < 1");
  if (log2_a == -std::numeric_limits<double>::infinity()) return 0;
  constexpr long kGuardBatch = 8;
  if (log2_q == -std::numeric_limits<double>::infinity()) return 1 + kGuardBatch;
  // smallest M with |a| |q|^M / (1 - |q|) < tol/4
  double abs_q = std::exp2(log2_q);
  double target = std::log2(ctx.tol / 4.0) + std::log2(1.0 - abs_q) - log2_a;
  double m = std::floor(target / log2_q) + 1.0;
  if (m < 0.0) m = 0.0;
  if (m + kGuardBatch > static_cast<double>(ctx.max_terms)) {
    throw TruncationError("(a;q)_inf needs more than max_terms = " + std::to_string(ctx.max_terms) +
                          " factors");
  }
  return static_cast<long>(m) + kGuardBatch;
}

ComplexHP poch_finite(const ComplexHP& a, const ComplexHP& q, long n, const NumericContext& ctx) {
  return ctx.round(detail::poch_finite_raw(a, q, n, ctx));
}

ComplexHP poch_inf(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx) {
  return ctx.round(detail::poch_inf_raw(a, q, ctx));
}

ComplexHP poch(const ComplexHP& a, const ComplexHP& q, PochIndex n, const NumericContext& ctx) {
  return n.is_infinite() ? poch_inf(a, q, ctx) : poch_finite(a, q, n.value(), ctx);
}

ComplexHP poch_recip(const ComplexHP& a, const ComplexHP& q, PochIndex n, const NumericContext& ctx) {
  if (n.is_infinite() || n.value() >= 0) {
    ComplexHP p = n.is_infinite() ? detail::poch_inf_raw(a, q, ctx)
                                  : detail::poch_finite_raw(a, q, n.value(), ctx);
    if (ctx.is_pole(p, a)) throw PoleError("1/(a;q)_" + n.to_string() + ": the product vanishes");
    return ctx.round(ctx.integer(1) / p);
  }
  detail::require_unit_disk(q, "(a;q)_n with n < 0");
  ComplexHP Q = ctx.lift(q);
  ComplexHP qinv = ctx.integer(1) / Q;
  ComplexHP term = ctx.lift(a) * qinv;
  ComplexHP prod = ctx.integer(1);
  for (long k = 1; k <= -n.value(); ++k) {
    prod *= term.one_minus();
    term *= qinv;
  }
  return ctx.round(prod);
}

ComplexHP poch_multi(std::span<const ComplexHP> args, const ComplexHP& q, PochIndex n,
                     const NumericContext& ctx) {
  ComplexHP prod = ctx.integer(1);
  for (const auto& a : args) {
    prod *= n.is_infinite() ? detail::poch_inf_raw(a, q, ctx)
                            : detail::poch_finite_raw(a, q, n.value(), ctx);
  }
  return ctx.round(prod);
}

ComplexHP qbinom_num(long n, long k, const ComplexHP& q, const NumericContext& ctx) {
  if (n < 0) throw DomainError("qbinom_num requires n >= 0");
  detail::require_unit_disk(q, "qbinom_num");
  if (k < 0 || k > n) return ctx.round(ctx.integer(0));
  if (k > n - k) k = n - k;
  // prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)
  ComplexHP Q = ctx.lift(q);
  ComplexHP top = Q.pow(n - k + 1);
  ComplexHP bottom = Q;
  ComplexHP num = ctx.integer(1);
  ComplexHP den = ctx.integer(1);
  for (long i = 1; i <= k; ++i) {
    num *= top.one_minus();
    den *= bottom.one_minus();
    top *= Q;
    bottom *= Q;
  }
  if (ctx.is_pole(den, ctx.integer(1))) throw PoleError("qbinom_num: (q;q)_k vanishes");
  return ctx.round(num / den);
}

long divisor_count(long n) {
  if (n < 1) throw DomainError("divisor_count requires n >= 1");
  long count = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  }
  return count;
}

ComplexHP lambert_sum(const ComplexHP& q, const NumericContext& ctx) {
  detail::require_unit_disk(q, "lambert_sum");
  if (q.is_zero()) return ctx.round(ctx.integer(0));
  ComplexHP Q = ctx.lift(q);
  double log2_q = q.log2_abs();
  double abs_q = std::exp2(log2_q);
  double log2_tol = std::log2(ctx.tol / 4.0);
  ComplexHP sum = ctx.integer(0);
  ComplexHP qk = Q;
  for (long k = 1; k <= ctx.max_terms; ++k) {
    ComplexHP den = qk.one_minus();
    if (ctx.is_pole(den, qk)) throw PoleError("lambert_sum: 1 - q^k vanishes");
    sum += qk / den;
    // tail after k: sum_{j>k} |q|^j/(1-|q|^j) <= |q|^{k+1} / ((1-|q|)(1-|q|^{k+1}))
    double tail = (k + 1) * log2_q - std::log2(1.0 - abs_q) -
                  std::log2(1.0 - std::exp2((k + 1) * log2_q));
    if (tail < log2_tol + sum.log2_abs()) return ctx.round(sum);
    qk *= Q;
  }
  throw TruncationError("lambert_sum reached max_terms");
}

ComplexHP triple_product(const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx) {
  if (x.is_zero()) throw DomainError("triple_product requires x != 0");
  detail::require_unit_disk(q, "triple_product");
  ComplexHP X = ctx.lift(x);
  ComplexHP Q = ctx.lift(q);
  ComplexHP prod = detail::poch_inf_raw(X, Q, ctx);
  prod *= detail::poch_inf_raw(Q / X, Q, ctx);
  prod *= detail::poch_inf_raw(Q, Q, ctx);
  return ctx.round(prod);
}

}  // namespace qid
