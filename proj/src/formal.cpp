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


#include "qid/formal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qid/errors.hpp"

namespace qid {

namespace {

constexpr long kExact = LaurentSeriesQ::kExact;

long clamp_order(long v) { return v >= kExact ? kExact : v; }

long order_add(long order, long v) {
  if (order >= kExact || v >= kExact) return kExact;
  return clamp_order(order + v);
}

LaurentSeriesQ one_minus(const mpq_class& s, long e) {
  if (e == 0) return LaurentSeriesQ::constant(1 - s);
  return ps_sub(LaurentSeriesQ::constant(1), LaurentSeriesQ::monomial(s, e));
}

struct Factors {
  std::vector<long> exps;  // one entry per factor 1 - s q^e
  long neg_valuation = 0;  // sum of the negative exponents
};

Factors finite_factors(const FormalParam& a, long first, long count, long step) {
  Factors f;
  for (long k = 0; k < count; ++k) {
    long e = a.j + step * (first + k);
    f.exps.push_back(e);
    if (e < 0) f.neg_valuation += e;
  }
  return f;
}

LaurentSeriesQ product(const mpq_class& s, const Factors& f, long order) {
  long work = order >= kExact ? kExact : order - f.neg_valuation;
  LaurentSeriesQ p = LaurentSeriesQ::constant(1);
  for (long e : f.exps) {
    p = ps_mul(p, one_minus(s, e));
    if (work < kExact) p = p.truncated(work);
    if (p.is_zero() && p.is_exact()) break;
  }
  return order >= kExact ? p : p.truncated(order);
}

// Factors of (s q^j; q^step)_inf whose exponents can influence the result below `order`.
Factors infinite_factors(const FormalParam& a, long order, long step) {
  if (step < 1) throw DomainError("(a;q^step)_inf needs step >= 1");
  if (order >= kExact) throw DomainError("an infinite product needs a finite order");
  Factors f;
  for (long k = 0; a.j + step * k < 0; ++k) f.neg_valuation += a.j + step * k;
  for (long k = 0; a.j + step * k <= order - f.neg_valuation; ++k) f.exps.push_back(a.j + step * k);
  return f;
}

void require_units(const mpq_class& s, const Factors& f, const char* what) {
  for (long e : f.exps) {
    if (e == 0 && s == 1) throw NonFormalUnit(std::string(what) + ": factor 1 - q^0 is not invertible");
  }
}

}  // namespace

FormalParam FormalParam::operator/(const FormalParam& o) const {
  if (o.s == 0) throw PoleError("division by the zero parameter");
  return {s / o.s, j - o.j};
}

ComplexHP FormalParam::value(const ComplexHP& q, const NumericContext& ctx) const {
  if (s == 0) return ctx.integer(0);
  return ComplexHP::from_rational(s, ctx.work_bits()) * ctx.lift(q).pow(j);
}

std::string FormalParam::to_string() const {
  if (s == 0) return "0";
  if (j == 0) return s.get_str();
  std::string qp = j == 1 ? "q" : "q^" + std::to_string(j);
  if (s == 1) return qp;
  if (s == -1) return "-" + qp;
  return s.get_str() + "*" + qp;
}

LaurentSeriesQ LaurentSeriesQ::zero(long order) {
  LaurentSeriesQ z;
  z.order_ = clamp_order(order);
  return z;
}

LaurentSeriesQ LaurentSeriesQ::constant(const mpq_class& c, long order) { return monomial(c, 0, order); }

LaurentSeriesQ LaurentSeriesQ::monomial(const mpq_class& c, long exponent, long order) {
  return from_coeffs(exponent, {c}, order);
}

LaurentSeriesQ LaurentSeriesQ::from_param(const FormalParam& p, long order) {
  return monomial(p.s, p.j, order);
}

LaurentSeriesQ LaurentSeriesQ::from_coeffs(long offset, std::vector<mpq_class> coeffs, long order) {
  LaurentSeriesQ r;
  r.offset_ = offset;
  r.coeffs_ = std::move(coeffs);
  r.order_ = clamp_order(order);
  r.normalize();
  return r;
}

void LaurentSeriesQ::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  long keep = static_cast<long>(coeffs_.size());
  if (order_ < kExact) keep = std::clamp(order_ - offset_ + 1, 0L, keep);
  coeffs_.resize(static_cast<size_t>(keep));
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    offset_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    offset_ += static_cast<long>(lead);
  }
}

long LaurentSeriesQ::valuation() const {
  if (coeffs_.empty()) return order_add(order_, 1);
  return offset_;
}

mpq_class LaurentSeriesQ::coeff(long e) const {
  if (e > order_) {
    throw DomainError("coefficient of q^" + std::to_string(e) + " is beyond the known order " +
                      std::to_string(order_));
  }
  if (e < offset_ || e > degree()) return 0;
  return coeffs_[static_cast<size_t>(e - offset_)];
}

std::vector<mpq_class> LaurentSeriesQ::coeff_range(long lo, long hi) const {
  std::vector<mpq_class> out;
  for (long e = lo; e <= hi; ++e) out.push_back(coeff(e));
  return out;
}

LaurentSeriesQ LaurentSeriesQ::truncated(long order) const {
  LaurentSeriesQ r = *this;
  r.order_ = std::min(order_, clamp_order(order));
  r.normalize();
  return r;
}

std::string LaurentSeriesQ::to_string(long max_terms) const {
  std::ostringstream os;
  long shown = 0;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const mpq_class& c = coeffs_[i];
    if (c == 0) continue;
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    long e = offset_ + static_cast<long>(i);
    mpq_class mag = abs(c);
    if (shown == 0) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = mag == 1 && e != 0;
    if (!unit) os << mag.get_str();
    if (e != 0) {
      if (!unit) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!is_exact()) os << " + O(q^" << order_ + 1 << ")";
  return os.str();
}

bool operator==(const LaurentSeriesQ& a, const LaurentSeriesQ& b) { return !first_mismatch(a, b); }

std::optional<long> first_mismatch(const LaurentSeriesQ& a, const LaurentSeriesQ& b) {
  long hi = std::min(a.order(), b.order());
  if (a.is_zero() && b.is_zero()) return std::nullopt;
  long lo = std::min(a.is_zero() ? b.offset() : a.offset(), b.is_zero() ? a.offset() : b.offset());
  long top = std::min(hi, std::max(a.degree(), b.degree()));
  for (long e = lo; e <= top; ++e) {
    if (a.coeff(e) != b.coeff(e)) return e;
  }
  return std::nullopt;
}

LaurentSeriesQ ps_add(const LaurentSeriesQ& a, const LaurentSeriesQ& b) {
  long order = std::min(a.order(), b.order());
  if (a.is_zero()) return b.truncated(order);
  if (b.is_zero()) return a.truncated(order);
  long lo = std::min(a.offset(), b.offset());
  long hi = std::min(order, std::max(a.degree(), b.degree()));
  if (hi < lo) return LaurentSeriesQ::zero(order);
  std::vector<mpq_class> c(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < a.coeffs().size() && a.offset() + static_cast<long>(i) <= hi; ++i) {
    c[static_cast<size_t>(a.offset() - lo) + i] += a.coeffs()[i];
  }
  for (size_t i = 0; i < b.coeffs().size() && b.offset() + static_cast<long>(i) <= hi; ++i) {
    c[static_cast<size_t>(b.offset() - lo) + i] += b.coeffs()[i];
  }
  return LaurentSeriesQ::from_coeffs(lo, std::move(c), order);
}

LaurentSeriesQ ps_neg(const LaurentSeriesQ& a) { return ps_scale(a, -1); }

LaurentSeriesQ ps_sub(const LaurentSeriesQ& a, const LaurentSeriesQ& b) { return ps_add(a, ps_neg(b)); }

LaurentSeriesQ ps_scale(const LaurentSeriesQ& a, const mpq_class& c) {
  std::vector<mpq_class> v = a.coeffs();
  for (auto& x : v) x *= c;
  return LaurentSeriesQ::from_coeffs(a.offset(), std::move(v), a.order());
}

LaurentSeriesQ ps_shift(const LaurentSeriesQ& a, long k) {
  return LaurentSeriesQ::from_coeffs(a.offset() + k, a.coeffs(), order_add(a.order(), k));
}

LaurentSeriesQ ps_mul(const LaurentSeriesQ& a, const LaurentSeriesQ& b) {
  long order = std::min(order_add(a.order(), b.valuation()), order_add(b.order(), a.valuation()));
  if (a.is_zero() || b.is_zero()) return LaurentSeriesQ::zero(order);
  long lo = a.offset() + b.offset();
  long hi = std::min(order, a.degree() + b.degree());
  if (hi < lo) return LaurentSeriesQ::zero(order);
  std::vector<mpq_class> c(static_cast<size_t>(hi - lo + 1));
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0) continue;
    long room = hi - lo - static_cast<long>(i);
    if (room < 0) break;
    size_t jmax = std::min(bc.size(), static_cast<size_t>(room) + 1);
    for (size_t j = 0; j < jmax; ++j) c[i + j] += ac[i] * bc[j];
  }
  return LaurentSeriesQ::from_coeffs(lo, std::move(c), order);
}

LaurentSeriesQ ps_inv(const LaurentSeriesQ& a, long cap) {
  if (a.is_zero()) throw NotInvertible("series has no nonzero known coefficient");
  const long v = a.offset();
  const mpq_class c0 = a.coeffs().front();
  if (a.is_exact() && a.coeffs().size() == 1) {
    return LaurentSeriesQ::monomial(1 / c0, -v).truncated(cap);
  }
  long order = a.is_exact() ? clamp_order(cap) : std::min(clamp_order(cap), a.order() - 2 * v);
  if (order >= kExact) throw DomainError("inverse of a polynomial needs an order cap");
  long count = order + v + 1;  // exponents -v .. order
  if (count <= 0) return LaurentSeriesQ::zero(order);
  const auto& u = a.coeffs();
  std::vector<mpq_class> b(static_cast<size_t>(count));
  mpq_class inv0 = 1 / c0;
  b[0] = inv0;
  for (size_t k = 1; k < b.size(); ++k) {
    mpq_class acc = 0;
    size_t imax = std::min(k, u.size() - 1);
    for (size_t i = 1; i <= imax; ++i) acc += u[i] * b[k - i];
    b[k] = -inv0 * acc;
  }
  return LaurentSeriesQ::from_coeffs(-v, std::move(b), order);
}

LaurentSeriesQ ps_div(const LaurentSeriesQ& a, const LaurentSeriesQ& b, long cap) {
  if (a.is_zero() && a.is_exact()) return a;
  long icap = cap >= kExact ? kExact : cap - a.valuation();
  return ps_mul(a, ps_inv(b, icap)).truncated(cap);
}

LaurentSeriesQ ps_pow(const LaurentSeriesQ& a, long k, long cap) {
  if (k < 0) return ps_inv(ps_pow(a, -k), cap);
  LaurentSeriesQ result = LaurentSeriesQ::constant(1);
  LaurentSeriesQ base = a;
  long work = cap >= kExact ? kExact : cap - (k > 0 ? (k - 1) * std::min(0L, a.valuation()) : 0);
  while (k > 0) {
    if (k & 1) result = ps_mul(result, base).truncated(work);
    k >>= 1;
    if (k > 0) base = ps_mul(base, base).truncated(work);
  }
  return result.truncated(cap);
}

LaurentSeriesQ ps_subst_qpow(const LaurentSeriesQ& a, long m) {
  if (m < 1) throw DomainError("ps_subst_qpow requires m >= 1");
  long order = a.is_exact() ? kExact : m * a.order() + m - 1;
  if (a.is_zero()) return LaurentSeriesQ::zero(order);
  std::vector<mpq_class> c(static_cast<size_t>(m) * (a.coeffs().size() - 1) + 1);
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i * static_cast<size_t>(m)] = a.coeffs()[i];
  return LaurentSeriesQ::from_coeffs(m * a.offset(), std::move(c), order);
}

LaurentSeriesQ poch_series(const FormalParam& alpha, PochIndex n, long order, long step) {
  if (alpha.is_zero()) return LaurentSeriesQ::constant(1, order);
  if (n.is_infinite()) return product(alpha.s, infinite_factors(alpha, order, step), order);
  if (n.value() >= 0) return product(alpha.s, finite_factors(alpha, 0, n.value(), step), order);
  // (a;q)_{-k} = 1 / prod_{i=1}^{k} (1 - a q^{-i})
  Factors f = finite_factors(alpha, n.value(), -n.value(), step);
  require_units(alpha.s, f, "(a;q)_n with n < 0");
  LaurentSeriesQ p = product(alpha.s, f, kExact);
  return ps_inv(p, order);
}

LaurentSeriesQ poch_series_recip(const FormalParam& alpha, PochIndex n, long order, long step) {
  if (alpha.is_zero()) return LaurentSeriesQ::constant(1, order);
  if (!n.is_infinite() && n.value() < 0) {
    Factors f = finite_factors(alpha, n.value(), -n.value(), step);
    return product(alpha.s, f, order);
  }
  Factors f = n.is_infinite() ? infinite_factors(alpha, order, step) : finite_factors(alpha, 0, n.value(), step);
  require_units(alpha.s, f, "1/(a;q)_n");
  long v = f.neg_valuation;
  LaurentSeriesQ p = product(alpha.s, f, order >= kExact ? kExact : order + 2 * v);
  if (n.is_infinite()) {
    // the infinite product's neglected factors are 1 + O(q^(order - v + 1))
    p = p.truncated(order + 2 * v);
  }
  return ps_inv(p, order);
}

LaurentSeriesQ gauss_binom_poly(long n, long k) {
  if (n < 0 || k < 0 || k > n) return LaurentSeriesQ::zero();
  std::vector<LaurentSeriesQ> row(static_cast<size_t>(k) + 1, LaurentSeriesQ::zero());
  row[0] = LaurentSeriesQ::constant(1);
  // [i, t] = [i-1, t-1] + q^t [i-1, t]
  for (long i = 1; i <= n; ++i) {
    for (long t = std::min(i, k); t >= 1; --t) {
      row[static_cast<size_t>(t)] = ps_add(row[static_cast<size_t>(t) - 1], ps_shift(row[static_cast<size_t>(t)], t));
    }
  }
  return row[static_cast<size_t>(k)];
}

LaurentSeriesQ theta_series(const ThetaSumSpec& spec, const FormalParam& x, long order) {
  if (spec.A <= 0) throw DomainError("theta sum requires A > 0");
  if (x.is_zero()) throw DomainError("theta sum requires x != 0");
  if (order >= kExact) throw DomainError("theta_series needs a finite order");
  mpq_class lin = spec.B + x.j;
  mpq_class e2 = spec.A + 2 * lin;
  if (lin.get_den() != 1 || e2.get_den() != 1) {
    throw DomainError("theta_series needs integral exponents A C(n,2) + (B + j) n");
  }
  auto expo = [&](long n) {
    mpq_class e = spec.A * mpq_class(n) * mpq_class(n - 1) / 2 + lin * n;
    return mpz_class(e).get_si();
  };
  auto coeff = [&](long n) {
    mpq_class c = spec.weight_at(n);
    mpq_class p = 1;
    mpq_class base = spec.sign ? mpq_class(-x.s) : x.s;
    for (long i = 0; i < std::abs(n); ++i) p *= base;
    return n >= 0 ? mpq_class(c * p) : mpq_class(c / p);
  };
  double peak = 0.5 - lin.get_d() / spec.A.get_d();
  long start = static_cast<long>(std::floor(peak));
  std::vector<std::pair<long, mpq_class>> terms;
  // E(n) is convex with its minimum at `peak`, so each direction stops at the first overshoot
  for (long n = start; expo(n) <= order; --n) terms.emplace_back(expo(n), coeff(n));
  for (long n = start + 1; expo(n) <= order; ++n) terms.emplace_back(expo(n), coeff(n));
  if (terms.empty()) return LaurentSeriesQ::zero(order);
  long lo = terms.front().first;
  for (const auto& t : terms) lo = std::min(lo, t.first);
  std::vector<mpq_class> c(static_cast<size_t>(order - lo + 1));
  for (const auto& t : terms) c[static_cast<size_t>(t.first - lo)] += t.second;
  return LaurentSeriesQ::from_coeffs(lo, std::move(c), order);
}

ComplexHP ps_eval(const LaurentSeriesQ& a, const ComplexHP& q, const NumericContext& ctx) {
  ComplexHP sum = ctx.integer(0);
  if (a.is_zero()) return sum;
  const ComplexHP Q = ctx.lift(q);
  ComplexHP p = Q.pow(a.offset());
  const Bits bits = ctx.work_bits();
  for (const auto& c : a.coeffs()) {
    if (c != 0) sum += p * ComplexHP::from_rational(c, bits);
    p *= Q;
  }
  return ctx.round(sum);
}

}  // namespace qid
