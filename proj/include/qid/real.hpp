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

// Arbitrary-precision real and complex scalars backed by MPFR.
//
// Every value carries its own precision (in bits). The result of a binary
// operation has the larger of the two operand precisions, so a computation
// seeded with values at the working precision stays there without any
// process-wide default.

#include <mpfr.h>

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace qid {

using Bits = mpfr_prec_t;

/// Decimal digits -> bits, rounded up, with a small pad.
Bits digits_to_bits(long digits);

class Real {
 public:
  /// Zero with 64 bits of precision.
  Real();
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real zero(Bits bits);
  static Real from_double(double v, Bits bits);
  static Real from_long(long v, Bits bits);
  /// Parses a decimal literal; throws DomainError when malformed.
  static Real from_string(std::string_view text, Bits bits);
  static Real from_rational(const mpq_class& v, Bits bits);
  /// 10^e at the given precision.
  static Real pow10(long e, Bits bits);

  Bits bits() const { return mpfr_get_prec(v_); }
  /// Copy re-rounded to `bits` (exact when widening).
  Real with_bits(Bits bits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  /// log2|x|, -inf for zero. Never overflows even when the value would not
  /// fit in a double.
  double log2_abs() const;
  double log10_abs() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits, e.g. "1.25e-3".
  std::string to_string(int digits) const;
  /// Enough digits to read the value back exactly at its own precision.
  std::string to_exact_string() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long b);
  friend Real operator+(Real a, long b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real hypot(const Real& a, const Real& b);
  friend Real atan2(const Real& y, const Real& x);
  friend Real cos(const Real& a);
  friend Real sin(const Real& a);
  /// Positive real n-th root.
  friend Real rootn(const Real& a, unsigned long n);

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  explicit Real(Bits bits);
  void ensure_init(Bits bits);

  mpfr_t v_;
};

/// Complex scalar with arbitrary-precision parts. Division by an exact zero
/// raises PoleError instead of producing an infinity.
class ComplexHP {
 public:
  ComplexHP() = default;
  ComplexHP(Real re, Real im);
  explicit ComplexHP(Real re);

  static ComplexHP from_double(double re, double im, Bits bits);
  static ComplexHP from_long(long v, Bits bits);
  static ComplexHP from_rational(const mpq_class& v, Bits bits);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Bits bits() const;
  ComplexHP with_bits(Bits bits) const;

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Real abs() const;
  Real norm() const;
  double log2_abs() const;
  double log10_abs() const;
  double abs_double() const;

  ComplexHP conj() const;
  /// Principal square root (branch cut on the negative real axis).
  ComplexHP sqrt() const;
  /// Principal d-th root.
  ComplexHP root(unsigned long d) const;
  /// Integer power by repeated squaring; negative exponents invert.
  ComplexHP pow(long n) const;

  ComplexHP operator-() const;
  ComplexHP& operator+=(const ComplexHP& o);
  ComplexHP& operator-=(const ComplexHP& o);
  ComplexHP& operator*=(const ComplexHP& o);
  ComplexHP& operator/=(const ComplexHP& o);
  ComplexHP& operator*=(const Real& o);

  friend ComplexHP operator+(ComplexHP a, const ComplexHP& b) { return a += b; }
  friend ComplexHP operator-(ComplexHP a, const ComplexHP& b) { return a -= b; }
  friend ComplexHP operator*(ComplexHP a, const ComplexHP& b) { return a *= b; }
  friend ComplexHP operator/(ComplexHP a, const ComplexHP& b) { return a /= b; }
  friend ComplexHP operator*(ComplexHP a, const Real& b) { return a *= b; }
  friend ComplexHP operator*(ComplexHP a, long b);
  friend ComplexHP operator+(ComplexHP a, long b);
  friend ComplexHP operator-(long a, const ComplexHP& b);

  /// 1 - z, the ubiquitous q-factor.
  ComplexHP one_minus() const;

  friend bool operator==(const ComplexHP& a, const ComplexHP& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "re" or "re+imi" / "re-imi" with `digits` significant digits per part.
  std::string to_string(int digits) const;

 private:
  Real re_;
  Real im_;
};

/// Parses "1.5", "-0.2+0.3i", "2i", "-i", "1/3". Throws DomainError.
ComplexHP parse_complex(std::string_view text, Bits bits);

}  // namespace qid
