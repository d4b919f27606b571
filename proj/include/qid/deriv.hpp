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

#pragma once

// Terms c * x^p * prod (alpha x; q)_n^eps, their ordinary derivatives, the
// Jackson q-derivative and the differentiate-and-specialize procedure.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qid/context.hpp"
#include "qid/formal.hpp"
#include "qid/qcore.hpp"
#include "qid/real.hpp"

namespace qid {

/// c * q^j where c is either an exact rational or a complex number.
struct QMonomial {
  std::optional<mpq_class> exact;
  ComplexHP value;
  long qpow = 0;

  static QMonomial rational(const mpq_class& c, long j = 0);
  static QMonomial complex(const ComplexHP& c, long j = 0);
  static QMonomial one() { return rational(1); }

  bool is_exact() const { return exact.has_value(); }
  ComplexHP eval(const ComplexHP& q, const NumericContext& ctx) const;
  /// The scalar part without the q-power.
  ComplexHP scalar(const NumericContext& ctx) const;
  std::optional<FormalParam> formal() const;
  QMonomial operator*(const QMonomial& o) const;

  friend bool operator==(const QMonomial& a, const QMonomial& b);
};

/// (alpha x; q)_n^eps, or (alpha; q)_n^eps when with_x is false.
struct PochFactor {
  QMonomial alpha = QMonomial::one();
  PochIndex n;
  int eps = 1;
  bool with_x = true;

  friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

struct TermExpr {
  QMonomial coeff = QMonomial::one();
  long power = 0;
  std::vector<PochFactor> factors;

  friend bool operator==(const TermExpr&, const TermExpr&) = default;
};

/// Product of the factor lists; coefficients multiply and powers add.
TermExpr term_product(const TermExpr& a, const TermExpr& b);

/// A point x, optionally tagged as the exact value s * q^j.
struct XPoint {
  ComplexHP value;
  std::optional<FormalParam> exact;

  static XPoint numeric(ComplexHP v) { return {std::move(v), std::nullopt}; }
  static XPoint formal(const FormalParam& p, const ComplexHP& q, const NumericContext& ctx) {
    return {p.value(q, ctx), p};
  }
};

ComplexHP eval_term(const TermExpr& t, const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx);

/// D_x log (alpha x; q)_n.
ComplexHP log_deriv_poch(const ComplexHP& alpha, PochIndex n, const ComplexHP& x, const ComplexHP& q,
                         const NumericContext& ctx);

/// First or second derivative in x, including removable zeros of the
/// non-inverted factors.
ComplexHP deriv_term(const TermExpr& t, const XPoint& x, const ComplexHP& q, const NumericContext& ctx,
                     int order);
inline ComplexHP deriv_term(const TermExpr& t, const ComplexHP& x, const ComplexHP& q,
                            const NumericContext& ctx, int order) {
  return deriv_term(t, XPoint::numeric(x), q, ctx, order);
}

using Evaluatable = std::function<ComplexHP(const ComplexHP&)>;

/// (f(qx) - f(x)) / (qx - x).
ComplexHP q_deriv(const Evaluatable& f, const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx);

enum class Support { kUnilateral, kBilateral };

struct SeriesFamily {
  std::function<TermExpr(long)> term_at;
  Support support = Support::kUnilateral;
};

struct Prop13Result {
  ComplexHP lhs;
  ComplexHP rhs;
  XPoint x0;
  /// |lhs - rhs| / max(|lhs|, |rhs|, 1)
  Real discrepancy;
  long terms = 0;
  bool pass = false;
};

/// Checks sum_n D_{x=q^-m/a} T_n(x) = a (-1)^(m-1) q^(-m(m-1)/2) (q;q)_m (q;q)_inf S(q^-m/a)
/// for a family with sum_n T_n(x) = (ax;q)_inf S(x). `a_exact` tags a as a rational.
Prop13Result apply_prop13(const SeriesFamily& T, const Evaluatable& S, const ComplexHP& a, const ComplexHP& q,
                          long m, const NumericContext& ctx, std::optional<mpq_class> a_exact = std::nullopt);

/// |l - r| / max(|l|, |r|, 1).
Real relative_discrepancy(const ComplexHP& l, const ComplexHP& r);

}  // namespace qid
