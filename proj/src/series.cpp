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


#include "qid/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qid/errors.hpp"
#include "qid/qcore.hpp"

namespace qid {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long lcm_den(const mpq_class& a, const mpq_class& b) {
  long da = a.get_den().get_si();
  long db = b.get_den().get_si();
  return std::lcm(da, db);
}

// Multiplies `t` by (-q^n)^e.
void apply_theta(ComplexHP& t, const ComplexHP& qn, long e) {
  for (long i = 0; i < e; ++i) t *= -qn;
  for (long i = 0; i > e; --i) t /= -qn;
}

}  // namespace

double SeriesResult::cancellation_digits() const {
  double s = value.log2_abs();
  if (s == kNegInf || max_term_log2 == kNegInf) return 0.0;
  return std::max(0.0, (max_term_log2 - s) * 0.30102999566398120);
}

mpq_class ThetaSumSpec::weight_at(long n) const {
  switch (weight) {
    case ThetaWeight::kOne:
      return 1;
    case ThetaWeight::kN:
      return n;
    case ThetaWeight::kLinear:
      return w0 + w1 * n;
  }
  return 1;
}

ThetaSumSpec ThetaSumSpec::reflected() const {
  ThetaSumSpec r = *this;
  r.B = A - B;
  if (x) r.x = ComplexHP::from_long(1, x->bits()) / *x;
  switch (weight) {
    case ThetaWeight::kOne:
      break;
    case ThetaWeight::kN:
      r.weight = ThetaWeight::kLinear;
      r.w0 = 0;
      r.w1 = -1;
      break;
    case ThetaWeight::kLinear:
      r.w1 = -w1;
      break;
  }
  return r;
}

std::optional<long> termination_index(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx) {
  if (a.is_zero() || q.is_zero()) return std::nullopt;
  double lq = q.log2_abs();
  if (!(lq < 0.0)) return std::nullopt;
  double guess = -a.log2_abs() / lq;
  if (guess < -1.0 || guess > static_cast<double>(ctx.max_terms)) return std::nullopt;
  long n0 = std::lround(guess);
  ComplexHP A = ctx.lift(a);
  ComplexHP Q = ctx.lift(q);
  for (long n = std::max(0L, n0 - 1); n <= n0 + 1; ++n) {
    if (ctx.is_pole((A * Q.pow(n)).one_minus(), A)) return n;
  }
  return std::nullopt;
}

SeriesResult sum_adaptive(const std::function<ComplexHP(long)>& term, long start, long step,
                          const NumericContext& ctx, const SumOptions& opts) {
  SeriesResult res;
  res.value = ctx.integer(0);
  const double log2_tol = std::log2(ctx.tol) - 2.0;  // tol/4
  long small_run = 0;
  double run_first = 0.0;
  long growth_run = 0;
  double prev_lt = -INFINITY, first_lt = -INFINITY;
  for (long i = 0;; ++i) {
    long n = start + step * i;
    if (opts.last && (step > 0 ? n > *opts.last : n < *opts.last)) {
      res.terminated = true;
      break;
    }
    if (i >= ctx.max_terms) {
      throw TruncationError("series did not converge within max_terms = " +
                            std::to_string(ctx.max_terms) + " terms");
    }
    ComplexHP t = term(n);
    res.value += t;
    ++res.terms;
    double lt = t.log2_abs();
    res.max_term_log2 = std::max(res.max_term_log2, lt);
    if (opts.last) continue;
    if (std::isinf(first_lt)) first_lt = lt;
    growth_run = lt > prev_lt ? growth_run + 1 : 0;
    prev_lt = lt;
    // sustained growth past the working precision: the series diverges
    if (growth_run >= 256 && lt - first_lt > ctx.work_bits()) {
      throw TruncationError("series diverges: terms grew for " + std::to_string(growth_run) +
                            " consecutive indices");
    }
    bool armed = !opts.arm_after || (step > 0 ? n > *opts.arm_after : n < *opts.arm_after);
    double threshold = log2_tol + std::max(0.0, res.value.log2_abs());
    if (armed && lt < threshold) {
      if (small_run == 0) run_first = lt;
      ++small_run;
      // the run must not be growing: eventually |t_{n+1}/t_n| < 1
      if (small_run >= 5 && lt <= run_first) break;
    } else {
      small_run = 0;
    }
  }
  return res;
}

SeriesResult sum_bilateral(const std::function<ComplexHP(long)>& term, const NumericContext& ctx,
                           const SumOptions& forward, const SumOptions& backward) {
  NumericContext half = ctx;
  half.tol = ctx.tol / 2.0;
  SeriesResult pos = sum_adaptive(term, 0, 1, half, forward);
  if (backward.last && *backward.last > -1) return pos;
  SeriesResult neg = sum_adaptive(term, -1, -1, half, backward);
  SeriesResult res;
  res.value = pos.value + neg.value;
  res.terms = pos.terms + neg.terms;
  res.max_term_log2 = std::max(pos.max_term_log2, neg.max_term_log2);
  res.terminated = pos.terminated && neg.terminated;
  return res;
}

SeriesResult eval_phi_detailed(const PhiSpec& spec, const NumericContext& ctx) {
  detail::require_unit_disk(spec.q, "eval_phi");
  const long r = static_cast<long>(spec.numerators.size());
  const long s = static_cast<long>(spec.denominators.size());
  const long e = s + 1 - r;

  SumOptions opts;
  for (const auto& a : spec.numerators) {
    if (auto n = termination_index(a, spec.q, ctx)) opts.last = std::min(opts.last.value_or(*n), *n);
  }
  if (!opts.last) {
    if (e < 0) throw DomainError("non-terminating r-phi-s with s < r - 1 diverges");
    if (e == 0 && !(spec.x.log2_abs() < 0.0)) {
      throw DomainError("non-terminating r-phi-(r-1) requires |x| < 1");
    }
  }

  std::vector<ComplexHP> A, B;
  for (const auto& a : spec.numerators) A.push_back(ctx.lift(a));
  for (const auto& b : spec.denominators) B.push_back(ctx.lift(b));
  const ComplexHP Q = ctx.lift(spec.q);
  const ComplexHP X = ctx.lift(spec.x);
  ComplexHP t = ctx.integer(1);
  ComplexHP qn = ctx.integer(1);  // q^(n-1) before advancing
  auto term = [&](long n) -> ComplexHP {
    if (n == 0) return t;
    // t_n = t_{n-1} * ratio at index n-1
    ComplexHP num = X;
    ComplexHP den = (qn * Q).one_minus();
    for (const auto& a : A) num *= (a * qn).one_minus();
    for (const auto& b : B) {
      ComplexHP f = (b * qn).one_minus();
      if (ctx.is_pole(f, b)) {
        throw PoleError("r-phi-s denominator factor vanishes at index " + std::to_string(n - 1));
      }
      den *= f;
    }
    apply_theta(num, qn, e);
    t *= num / den;
    qn *= Q;
    return t;
  };
  SeriesResult res = sum_adaptive(term, 0, 1, ctx, opts);
  return res;
}

ComplexHP eval_phi(const PhiSpec& spec, const NumericContext& ctx) {
  return ctx.round(eval_phi_detailed(spec, ctx).value);
}

SeriesResult eval_psi_detailed(const PsiSpec& spec, const NumericContext& ctx) {
  if (spec.numerators.size() != spec.denominators.size()) {
    throw DomainError("r-psi-r needs as many numerator as denominator parameters");
  }
  detail::require_unit_disk(spec.q, "eval_psi");
  if (spec.q.is_zero()) throw DomainError("eval_psi requires q != 0");
  if (spec.x.is_zero()) throw DomainError("eval_psi requires x != 0");

  SumOptions fwd, bwd;
  for (const auto& a : spec.numerators) {
    if (auto n = termination_index(a, spec.q, ctx)) fwd.last = std::min(fwd.last.value_or(*n), *n);
  }
  const ComplexHP one = ctx.integer(1);
  for (const auto& b : spec.denominators) {
    if (b.is_zero()) continue;
    // b = q^m, m >= 1: 1/(b;q)_{-k} = prod_{i<=k} (1 - b q^-i) vanishes from k = m on
    if (auto m = termination_index(one / ctx.lift(b), spec.q, ctx); m && *m >= 1) {
      long last = -(*m - 1);
      bwd.last = std::max(bwd.last.value_or(last), last);
    }
  }
  double lx = spec.x.log2_abs();
  if (!fwd.last && !(lx < 0.0)) throw DomainError("r-psi-r requires |x| < 1");
  if (!bwd.last) {
    double lb = 0.0, la = 0.0;
    for (const auto& b : spec.denominators) lb += b.log2_abs();
    for (const auto& a : spec.numerators) la += a.log2_abs();
    if (la == kNegInf || !(lb - la < lx)) {
      throw DomainError("r-psi-r requires |b_1...b_r / (a_1...a_r)| < |x|");
    }
  }

  std::vector<ComplexHP> A, B;
  for (const auto& a : spec.numerators) A.push_back(ctx.lift(a));
  for (const auto& b : spec.denominators) B.push_back(ctx.lift(b));
  const ComplexHP Q = ctx.lift(spec.q);
  const ComplexHP X = ctx.lift(spec.x);
  const ComplexHP Qinv = one / Q;
  const ComplexHP Xinv = one / X;

  ComplexHP tp = one;
  ComplexHP qn = one;
  auto forward = [&](long n) -> ComplexHP {
    if (n == 0) return tp;
    ComplexHP num = X;
    ComplexHP den = one;
    for (const auto& a : A) num *= (a * qn).one_minus();
    for (const auto& b : B) {
      ComplexHP f = (b * qn).one_minus();
      if (ctx.is_pole(f, b)) {
        throw PoleError("r-psi-r denominator factor vanishes at index " + std::to_string(n - 1));
      }
      den *= f;
    }
    tp *= num / den;
    qn *= Q;
    return tp;
  };
  ComplexHP tn = one;
  ComplexHP qk = one;  // q^-(k-1)
  auto backward = [&](long n) -> ComplexHP {
    // t_{-k} = t_{-(k-1)} * prod (1 - b q^-k) / (1 - a q^-k) / x
    qk *= Qinv;
    ComplexHP num = Xinv;
    ComplexHP den = one;
    for (const auto& b : B) num *= (b * qk).one_minus();
    for (const auto& a : A) {
      ComplexHP f = (a * qk).one_minus();
      if (ctx.is_pole(f, a)) {
        throw PoleError("r-psi-r factor (a;q)_n vanishes at index " + std::to_string(n));
      }
      den *= f;
    }
    tn *= num / den;
    return tn;
  };

  NumericContext half = ctx;
  half.tol = ctx.tol / 2.0;
  SeriesResult res = sum_adaptive(forward, 0, 1, half, fwd);
  if (!(bwd.last && *bwd.last > -1)) {
    SeriesResult neg = sum_adaptive(backward, -1, -1, half, bwd);
    res.value += neg.value;
    res.terms += neg.terms;
    res.max_term_log2 = std::max(res.max_term_log2, neg.max_term_log2);
    res.terminated = res.terminated && neg.terminated;
  }
  return res;
}

ComplexHP eval_psi(const PsiSpec& spec, const NumericContext& ctx) {
  return ctx.round(eval_psi_detailed(spec, ctx).value);
}

ComplexHP eval_theta_sum(const ThetaSumSpec& spec, const ComplexHP& q, const NumericContext& ctx) {
  if (spec.A <= 0) throw DomainError("theta sum requires A > 0");
  detail::require_unit_disk(q, "eval_theta_sum");
  if (q.is_zero()) throw DomainError("eval_theta_sum requires q != 0");
  if (spec.x && spec.x->is_zero()) throw DomainError("eval_theta_sum requires x != 0");

  const long d = lcm_den(spec.A, spec.B);
  const ComplexHP Q = ctx.lift(q);
  const ComplexHP base = d == 1 ? Q : Q.root(static_cast<unsigned long>(d));
  const ComplexHP X = spec.x ? ctx.lift(*spec.x) : ctx.integer(1);
  const Bits bits = ctx.work_bits();

  auto term = [&](long n) -> ComplexHP {
    mpq_class w = spec.weight_at(n);
    if (w == 0) return ctx.integer(0);
    mpq_class e = spec.A * mpq_class(n) * mpq_class(n - 1) / 2 + spec.B * n;
    mpz_class scaled = mpz_class(e * d);  // exact: d clears all denominators
    ComplexHP t = base.pow(scaled.get_si()) * X.pow(n) * ComplexHP::from_rational(w, bits);
    if (spec.sign && (n % 2 != 0)) t = -t;
    return t;
  };

  // magnitude peaks near n*, arm the stopping rule only past it
  double lq = q.log2_abs();
  double lx = spec.x ? spec.x->log2_abs() : 0.0;
  double A = spec.A.get_d();
  double B = spec.B.get_d();
  double peak = -((B - A / 2.0) * lq + lx) / (A * lq);
  SumOptions fwd, bwd;
  fwd.arm_after = static_cast<long>(std::ceil(peak)) + 1;
  bwd.arm_after = static_cast<long>(std::floor(peak)) - 1;
  return ctx.round(sum_bilateral(term, ctx, fwd, bwd).value);
}

}  // namespace qid
