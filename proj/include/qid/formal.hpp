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

// Truncated Laurent series in q over the rationals.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qid/context.hpp"
#include "qid/qcore.hpp"
#include "qid/real.hpp"
#include "qid/series.hpp"

namespace qid {

/// s * q^j with exact rational s.
struct FormalParam {
  mpq_class s = 0;
  long j = 0;

  static FormalParam zero() { return {0, 0}; }
  static FormalParam qpow(long j, mpq_class s = 1) { return {std::move(s), j}; }
  bool is_zero() const { return s == 0; }
  FormalParam operator*(const FormalParam& o) const { return {s * o.s, j + o.j}; }
  FormalParam operator/(const FormalParam& o) const;
  /// Numeric value at base q.
  ComplexHP value(const ComplexHP& q, const NumericContext& ctx) const;
  std::string to_string() const;
  friend bool operator==(const FormalParam& a, const FormalParam& b) {
    return a.s == b.s && (a.s == 0 || a.j == b.j);
  }
};

/// sum_e c_e q^e known modulo q^(order+1). Exact polynomials carry the
/// order kExact and never lose knowledge.
class LaurentSeriesQ {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  /// The exact zero polynomial.
  LaurentSeriesQ() = default;
  static LaurentSeriesQ zero(long order = kExact);
  static LaurentSeriesQ constant(const mpq_class& c, long order = kExact);
  static LaurentSeriesQ monomial(const mpq_class& c, long exponent, long order = kExact);
  static LaurentSeriesQ from_param(const FormalParam& p, long order = kExact);
  /// coeffs[i] is the coefficient of q^(offset + i).
  static LaurentSeriesQ from_coeffs(long offset, std::vector<mpq_class> coeffs, long order = kExact);

  long offset() const { return offset_; }
  long order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Exponent of the first nonzero coefficient; order + 1 for a zero series.
  long valuation() const;
  /// Largest exponent with a nonzero coefficient (offset - 1 when zero).
  long degree() const { return offset_ + static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of q^e. Throws DomainError past the known order.
  mpq_class coeff(long e) const;
  /// Coefficients for exponents lo..hi (each must be known).
  std::vector<mpq_class> coeff_range(long lo, long hi) const;
  /// Nonzero coefficients only, from offset().
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  LaurentSeriesQ truncated(long order) const;
  std::string to_string(long max_terms = 12) const;

  /// Coefficient-exact equality over the common known range.
  friend bool operator==(const LaurentSeriesQ& a, const LaurentSeriesQ& b);

 private:
  void normalize();

  long offset_ = 0;
  std::vector<mpq_class> coeffs_;
  long order_ = kExact;
};

LaurentSeriesQ ps_add(const LaurentSeriesQ& a, const LaurentSeriesQ& b);
LaurentSeriesQ ps_sub(const LaurentSeriesQ& a, const LaurentSeriesQ& b);
LaurentSeriesQ ps_neg(const LaurentSeriesQ& a);
LaurentSeriesQ ps_scale(const LaurentSeriesQ& a, const mpq_class& c);
LaurentSeriesQ ps_mul(const LaurentSeriesQ& a, const LaurentSeriesQ& b);
/// Multiplicative inverse; `cap` bounds the order when the result would
/// otherwise be an infinite series. Throws NotInvertible for a zero series.
LaurentSeriesQ ps_inv(const LaurentSeriesQ& a, long cap = LaurentSeriesQ::kExact);
LaurentSeriesQ ps_div(const LaurentSeriesQ& a, const LaurentSeriesQ& b, long cap = LaurentSeriesQ::kExact);
LaurentSeriesQ ps_pow(const LaurentSeriesQ& a, long k, long cap = LaurentSeriesQ::kExact);
/// a(q^m).
LaurentSeriesQ ps_subst_qpow(const LaurentSeriesQ& a, long m);
/// Multiplies by q^k.
LaurentSeriesQ ps_shift(const LaurentSeriesQ& a, long k);

inline LaurentSeriesQ operator+(const LaurentSeriesQ& a, const LaurentSeriesQ& b) { return ps_add(a, b); }
inline LaurentSeriesQ operator-(const LaurentSeriesQ& a, const LaurentSeriesQ& b) { return ps_sub(a, b); }
inline LaurentSeriesQ operator-(const LaurentSeriesQ& a) { return ps_neg(a); }
inline LaurentSeriesQ operator*(const LaurentSeriesQ& a, const LaurentSeriesQ& b) { return ps_mul(a, b); }
inline LaurentSeriesQ operator*(const LaurentSeriesQ& a, const mpq_class& c) { return ps_scale(a, c); }

/// Exponent of the first coefficient where a and b differ, within the common
/// known range.
std::optional<long> first_mismatch(const LaurentSeriesQ& a, const LaurentSeriesQ& b);

/// (s q^j; q^step)_n to the given order (exact for finite n >= 0 when order is kExact).
LaurentSeriesQ poch_series(const FormalParam& alpha, PochIndex n, long order, long step = 1);
/// 1 / (s q^j; q^step)_n. Throws NonFormalUnit when a factor 1 - q^0 must be inverted.
LaurentSeriesQ poch_series_recip(const FormalParam& alpha, PochIndex n, long order, long step = 1);

/// Gaussian binomial [n, k]_q as an exact polynomial.
LaurentSeriesQ gauss_binom_poly(long n, long k);

/// sum_n weight(n) (-1)^(sign n) q^(A C(n,2) + B n) x^n with x = s q^j, to order.
LaurentSeriesQ theta_series(const ThetaSumSpec& spec, const FormalParam& x, long order);

/// Numeric value of the known part at base q (exact for polynomials).
ComplexHP ps_eval(const LaurentSeriesQ& a, const ComplexHP& q, const NumericContext& ctx);

}  // namespace qid
