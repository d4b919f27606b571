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
#include <complex>
#include <random>

#include "doctest.h"
#include "qid/errors.hpp"
#include "qid/qcore.hpp"
#include "qid/series.hpp"
#include "support.hpp"

using namespace qid;
using qid::test::num;
using qid::test::rel;

namespace {

ComplexHP inf(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx) {
  return poch_inf(a, q, ctx);
}

}  // namespace

TEST_CASE("eval_phi: 1phi0 and 0phi0 against products") {
  auto ctx = qid::test::ctx60();
  ComplexHP q = num(ctx, 0.3), a = num(ctx, 0.4), x = num(ctx, 0.2);
  PhiSpec s{{a}, {}, q, x};
  CHECK(rel(eval_phi(s, ctx), inf(a * x, q, ctx) / inf(x, q, ctx)) < ctx.tol);

  PhiSpec e{{}, {}, q, num(ctx, 0.5)};
  CHECK(rel(eval_phi(e, ctx), inf(num(ctx, 0.5), q, ctx)) < ctx.tol);

  // complex parameters, brute-force double oracle
  std::complex<double> qc(0.3, 0.35), ac(0.9, -0.4), xc(-0.5, 0.6);
  std::complex<double> t = 1.0, sum = 0.0;
  for (int n = 0; n < 200; ++n) {
    sum += t;
    std::complex<double> qn = std::pow(qc, n);
    t *= (1.0 - ac * qn) / (1.0 - qn * qc) * xc;
  }
  PhiSpec c{{ctx.num(ac.real(), ac.imag())}, {}, ctx.num(qc.real(), qc.imag()), ctx.num(xc.real(), xc.imag())};
  CHECK(std::abs(qid::test::to_c(eval_phi(c, ctx)) - sum) < 1e-12);
}

TEST_CASE("eval_phi: termination") {
  auto ctx = qid::test::ctx60();
  ComplexHP q = num(ctx, 0.45);
  PhiSpec s{{q.pow(-2), num(ctx, 0.7)}, {num(ctx, 0.2)}, q, num(ctx, 3.0)};
  SeriesResult r = eval_phi_detailed(s, ctx);
  CHECK(r.terms == 3);
  CHECK(r.terminated);

  // r > s + 1 is fine when terminating
  PhiSpec big{{q.pow(-3), num(ctx, 2), num(ctx, 3)}, {}, q, num(ctx, 5)};
  CHECK_NOTHROW(eval_phi(big, ctx));
  PhiSpec diverge{{num(ctx, 0.5), num(ctx, 2), num(ctx, 3)}, {}, q, num(ctx, 0.1)};
  CHECK_THROWS_AS(eval_phi(diverge, ctx), DomainError);
  PhiSpec outside{{num(ctx, 0.5)}, {}, q, num(ctx, 1.5)};
  CHECK_THROWS_AS(eval_phi(outside, ctx), DomainError);
  // denominator q^{-1} with no terminating numerator
  PhiSpec pole{{num(ctx, 0.5)}, {q.pow(-1)}, q, num(ctx, 0.5)};
  CHECK_THROWS_AS(eval_phi(pole, ctx), PoleError);
  // ... but q^{-2} terminates before the pole at index 2
  PhiSpec ok{{q.pow(-1)}, {q.pow(-2)}, q, num(ctx, 0.5)};
  CHECK_NOTHROW(eval_phi(ok, ctx));
}

TEST_CASE("eval_phi: terminating series equals the exact rational sum") {
  // 2phi1(q^-4, 1/3; 2/5; q, 3/4) at q = 1/2, summed in exact rationals
  auto ctx = qid::test::ctx60();
  mpq_class qr(1, 2), a1 = 16, a2(1, 3), b1(2, 5), xr(3, 4);
  mpq_class t = 1, sum = 0, qn = 1;
  for (int n = 0; n <= 4; ++n) {
    sum += t;
    t *= (1 - a1 * qn) * (1 - a2 * qn) / ((1 - b1 * qn) * (1 - qn * qr)) * xr;
    qn *= qr;
  }
  auto r = [&](const mpq_class& v) { return ComplexHP::from_rational(v, ctx.work_bits()); };
  PhiSpec s{{r(a1), r(a2)}, {r(b1)}, r(qr), r(xr)};
  CHECK(rel(eval_phi(s, ctx), r(sum)) < 1e-58);
}

TEST_CASE("eval_phi: precision reaches tolerance") {
  auto ctx = qid::test::ctx60();
  auto wide = NumericContext::with_digits(150);
  PhiSpec s{{ctx.num(0.3, 0.2), ctx.num(-0.6)}, {ctx.num(0.1, 0.5)}, ctx.num(0.5, 0.1), ctx.num(0.8, -0.3)};
  ComplexHP got = eval_phi(s, ctx);
  ComplexHP ref = eval_phi(s, wide);
  CHECK(qid::test::log10_rel(got, ref) < -30);
}

TEST_CASE("eval_psi: Ramanujan 1psi1 sum") {
  auto ctx = qid::test::ctx60();
  ComplexHP a = num(ctx, 0.5), b = num(ctx, 0.1), x = num(ctx, 0.7), q = num(ctx, 0.3);
  PsiSpec s{{a}, {b}, q, x};
  ComplexHP rhs = inf(q, q, ctx) * inf(b / a, q, ctx) * inf(a * x, q, ctx) * inf(q / (a * x), q, ctx) /
                  (inf(b, q, ctx) * inf(q / a, q, ctx) * inf(x, q, ctx) * inf(b / (a * x), q, ctx));
  CHECK(rel(eval_psi(s, ctx), rhs) < ctx.tol);

  PsiSpec bad{{a}, {b}, q, num(ctx, 1.2)};
  CHECK_THROWS_AS(eval_psi(bad, ctx), DomainError);
  PsiSpec bad2{{a}, {b}, q, num(ctx, 0.1)};
  CHECK_THROWS_AS(eval_psi(bad2, ctx), DomainError);
}

TEST_CASE("eval_psi: two-sided termination") {
  auto ctx = qid::test::ctx60();
  ComplexHP q = num(ctx, 0.4), x = num(ctx, 2.5);
  PsiSpec s{{q.pow(-1)}, {q.pow(2)}, q, x};
  SeriesResult r = eval_psi_detailed(s, ctx);
  CHECK(r.terms == 3);
  CHECK(r.terminated);
  // n = -1, 0, 1 by hand
  ComplexHP a = q.pow(-1), b = q.pow(2), one = ctx.integer(1);
  ComplexHP tm1 = (one - b / q) / (one - a / q) / x;
  ComplexHP t1 = (one - a) / (one - b) * x;
  CHECK(rel(r.value, tm1 + one + t1) < 1e-58);
}

TEST_CASE("eval_psi with denominator q reduces to a unilateral series") {
  // 1/(q;q)_n vanishes for n < 0
  auto ctx = qid::test::ctx60();
  ComplexHP q = ctx.num(0.35, 0.2), a = ctx.num(0.6, -0.3), x = ctx.num(0.4, 0.1);
  PsiSpec s{{a}, {q}, q, x};
  PhiSpec p{{a}, {}, q, x};
  CHECK(rel(eval_psi(s, ctx), eval_phi(p, ctx)) < ctx.tol);
}

TEST_CASE("eval_theta_sum") {
  auto ctx = qid::test::ctx60();
  ThetaSumSpec t;
  t.sign = true;
  t.x = ctx.integer(1);
  CHECK(eval_theta_sum(t, num(ctx, 0.3), ctx).abs_double() < 1e-55);

  ThetaSumSpec u;
  u.B = 1;
  u.sign = true;
  CHECK(eval_theta_sum(u, num(ctx, 0.25), ctx).abs_double() < 1e-55);

  // 6 sum n q^{3C(n,2)+2n} against the product side
  ThetaSumSpec w;
  w.A = 3;
  w.B = 2;
  w.weight = ThetaWeight::kN;
  ComplexHP q = num(ctx, 0.2);
  ComplexHP q3 = q.pow(3);
  ComplexHP lhs = eval_theta_sum(w, q, ctx) * 6;
  ComplexHP rhs = inf(q, q, ctx).pow(3) * inf(q, q * q, ctx).pow(2) -
                  inf(-q, q3, ctx) * inf(-(q * q), q3, ctx) * inf(q3, q3, ctx);
  CHECK(rel(lhs, rhs) < ctx.tol);

  // against the triple product at a generic point
  ThetaSumSpec j;
  j.sign = true;
  j.x = ctx.num(-0.8, 0.9);
  ComplexHP qc = ctx.num(0.1, 0.45);
  CHECK(rel(eval_theta_sum(j, qc, ctx), triple_product(*j.x, qc, ctx)) < ctx.tol);
}

TEST_CASE("eval_theta_sum: reflection leaves the value unchanged") {
  auto ctx = qid::test::ctx60();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 6; ++i) {
    ThetaSumSpec t;
    t.A = mpq_class(1 + i % 3, 1 + i % 2);
    t.B = mpq_class(i - 2, 2);
    t.sign = i % 2 == 0;
    t.weight = static_cast<ThetaWeight>(i % 3);
    t.w0 = 2;
    t.w1 = -3;
    auto xc = qid::test::rand_disk(rng, 0.5, 2.0);
    t.x = ctx.num(xc.real(), xc.imag());
    ComplexHP q = ctx.num(0.3, -0.25);
    CHECK(rel(eval_theta_sum(t, q, ctx), eval_theta_sum(t.reflected(), q, ctx)) < ctx.tol);
  }
}

TEST_CASE("sum_adaptive terminates and respects max_terms") {
  auto ctx = qid::test::ctx60();
  ctx.max_terms = 50;
  auto harmonic = [&](long n) { return ctx.integer(1) / ctx.integer(n + 1); };
  CHECK_THROWS_AS(sum_adaptive(harmonic, 0, 1, ctx), TruncationError);
  ctx.max_terms = 100000;
  ComplexHP h = ctx.num(0.5);
  auto geo = [&](long n) { return h.pow(n); };
  SeriesResult r = sum_adaptive(geo, 0, 1, ctx);
  CHECK(rel(r.value, ctx.integer(2)) < ctx.tol);
}
