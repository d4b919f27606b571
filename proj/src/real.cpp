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

#include "qid/real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "qid/errors.hpp"

namespace qid {

Bits digits_to_bits(long digits) {
  return static_cast<Bits>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 8;
}

Real::Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
Real::Real(Bits bits) { mpfr_init2(v_, std::max<Bits>(bits, MPFR_PREC_MIN)); }

Real::Real(const Real& other) {
  mpfr_init2(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  ensure_init(other.bits());
  mpfr_set_prec(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

void Real::ensure_init(Bits bits) {
  if (v_[0]._mpfr_d == nullptr) mpfr_init2(v_, bits);
}

Real Real::zero(Bits bits) {
  Real r(bits);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::from_double(double v, Bits bits) {
  Real r(bits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::from_long(long v, Bits bits) {
  Real r(bits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::from_string(std::string_view text, Bits bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  if (s.empty()) throw DomainError("empty number");
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw DomainError("malformed number '" + s + "'");
  return r;
}

Real Real::from_rational(const mpq_class& v, Bits bits) {
  Real r(bits);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::pow10(long e, Bits bits) {
  Real r(bits);
  mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
  return r;
}

Real Real::with_bits(Bits bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double Real::log2_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  if (!mpfr_number_p(v_)) return std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

double Real::log10_abs() const { return log2_abs() * 0.30102999566398120; }

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  digits = std::max(digits, 1);
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

std::string Real::to_exact_string() const {
  int digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120)) + 2;
  return to_string(digits);
}

Real Real::operator-() const {
  Real r(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {

// Widen `dst` to at least `bits` before an in-place op.
void widen(mpfr_ptr dst, Bits bits) {
  if (mpfr_get_prec(dst) < bits) mpfr_prec_round(dst, bits, MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(v_, o.bits());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  widen(v_, o.bits());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  widen(v_, o.bits());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.is_zero()) throw PoleError("real division by zero");
  widen(v_, o.bits());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator*(Real a, long b) {
  mpfr_mul_si(a.v_, a.v_, b, MPFR_RNDN);
  return a;
}

Real operator+(Real a, long b) {
  mpfr_add_si(a.v_, a.v_, b, MPFR_RNDN);
  return a;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real abs(const Real& a) {
  Real r(a.bits());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a.bits());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(std::max(a.bits(), b.bits()));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.bits(), x.bits()));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(a.bits());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sin(const Real& a) {
  Real r(a.bits());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real rootn(const Real& a, unsigned long n) {
  Real r(a.bits());
  mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

ComplexHP::ComplexHP(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  if (im_.bits() < re_.bits()) im_ = im_.with_bits(re_.bits());
  if (re_.bits() < im_.bits()) re_ = re_.with_bits(im_.bits());
}

ComplexHP::ComplexHP(Real re) : re_(std::move(re)), im_(Real::zero(re_.bits())) {}

ComplexHP ComplexHP::from_double(double re, double im, Bits bits) {
  return {Real::from_double(re, bits), Real::from_double(im, bits)};
}

ComplexHP ComplexHP::from_long(long v, Bits bits) {
  return ComplexHP(Real::from_long(v, bits));
}

ComplexHP ComplexHP::from_rational(const mpq_class& v, Bits bits) {
  return ComplexHP(Real::from_rational(v, bits));
}

Bits ComplexHP::bits() const { return std::max(re_.bits(), im_.bits()); }

ComplexHP ComplexHP::with_bits(Bits bits) const {
  return {re_.with_bits(bits), im_.with_bits(bits)};
}

Real ComplexHP::abs() const { return hypot(re_, im_); }

Real ComplexHP::norm() const { return re_ * re_ + im_ * im_; }

double ComplexHP::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return abs().log2_abs();
}

double ComplexHP::log10_abs() const { return log2_abs() * 0.30102999566398120; }

double ComplexHP::abs_double() const { return abs().to_double(); }

ComplexHP ComplexHP::conj() const { return {re_, -im_}; }

ComplexHP ComplexHP::sqrt() const {
  if (is_zero()) return *this;
  // sqrt(z) = sqrt((|z|+re)/2) + i sign(im) sqrt((|z|-re)/2)
  Real r = abs();
  Real two = Real::from_long(2, bits());
  Real u = qid::sqrt((r + re_) / two);
  Real v = qid::sqrt((r - re_) / two);
  if (im_.sign() < 0) v = -v;
  return {u, v};
}

ComplexHP ComplexHP::root(unsigned long d) const {
  if (d == 0) throw DomainError("zeroth root");
  if (d == 1 || is_zero()) return *this;
  Real r = rootn(abs(), d);
  Real theta = atan2(im_, re_);
  theta /= Real::from_long(static_cast<long>(d), bits());
  return {r * cos(theta), r * sin(theta)};
}

ComplexHP ComplexHP::pow(long n) const {
  ComplexHP result = from_long(1, bits());
  ComplexHP base = *this;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  if (n < 0) return from_long(1, bits()) / result;
  return result;
}

ComplexHP ComplexHP::operator-() const { return {-re_, -im_}; }

ComplexHP& ComplexHP::operator+=(const ComplexHP& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexHP& ComplexHP::operator-=(const ComplexHP& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexHP& ComplexHP::operator*=(const ComplexHP& o) {
  if (o.im_.is_zero()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  if (im_.is_zero()) {
    Real a = re_;
    re_ = a * o.re_;
    im_ = a * o.im_;
    return *this;
  }
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexHP& ComplexHP::operator/=(const ComplexHP& o) {
  if (o.is_zero()) throw PoleError("complex division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Real den = o.norm();
  Real re = (re_ * o.re_ + im_ * o.im_) / den;
  Real im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexHP& ComplexHP::operator*=(const Real& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

ComplexHP operator*(ComplexHP a, long b) {
  a.re_ = a.re_ * b;
  a.im_ = a.im_ * b;
  return a;
}

ComplexHP operator+(ComplexHP a, long b) {
  a.re_ = a.re_ + b;
  return a;
}

ComplexHP operator-(long a, const ComplexHP& b) { return (-b) + a; }

ComplexHP ComplexHP::one_minus() const { return (-*this) + 1; }

std::string ComplexHP::to_string(int digits) const {
  if (im_.is_zero()) return re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (re_.is_zero()) return im + "i";
  if (im.front() != '-') im = "+" + im;
  return re_.to_string(digits) + im + "i";
}

namespace {

Real parse_real_part(std::string_view s, Bits bits) {
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string num(s.substr(0, slash));
    std::string den(s.substr(slash + 1));
    try {
      mpq_class q(num + "/" + den);
      if (q.get_den() == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
      q.canonicalize();
      return Real::from_rational(q, bits);
    } catch (const std::invalid_argument&) {
      throw DomainError("malformed rational '" + std::string(s) + "'");
    }
  }
  if (s == "+" || s == "") return Real::from_long(1, bits);
  if (s == "-") return Real::from_long(-1, bits);
  std::string t(s);
  if (t.front() == '+') t.erase(0, 1);
  return Real::from_string(t, bits);
}

}  // namespace

ComplexHP parse_complex(std::string_view text, Bits bits) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return ComplexHP(parse_real_part(s, bits));
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    return {Real::zero(bits), parse_real_part(s, bits)};
  }
  return {parse_real_part(std::string_view(s).substr(0, split), bits),
          parse_real_part(std::string_view(s).substr(split), bits)};
}

}  // namespace qid
