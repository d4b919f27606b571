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

// q-shifted factorials and the other foundational q-objects.

#include <compare>
#include <span>
#include <string>

#include "qid/context.hpp"
#include "qid/real.hpp"

namespace qid {

/// An integer index or the distinguished value INFINITY, as in (a;q)_n and
/// (a;q)_inf.
class PochIndex {
 public:
  constexpr PochIndex() = default;
  constexpr PochIndex(long n) : n_(n) {}  // NOLINT: integers convert implicitly
  static constexpr PochIndex infinity() {
    PochIndex p;
    p.inf_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr long value() const { return n_; }
  std::string to_string() const { return inf_ ? "inf" : std::to_string(n_); }

  friend constexpr bool operator==(const PochIndex&, const PochIndex&) = default;

 private:
  long n_ = 0;
  bool inf_ = false;
};

struct PochSpec {
  ComplexHP a;
  ComplexHP q;
  PochIndex n;
};

/// (a;q)_n for any integer n. Negative n uses 1/prod_{k=1}^{-n}(1 - a q^-k).
ComplexHP poch_finite(const ComplexHP& a, const ComplexHP& q, long n, const NumericContext& ctx);

/// (a;q)_inf, truncated by the geometric tail rule plus a guard batch.
ComplexHP poch_inf(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx);

ComplexHP poch(const ComplexHP& a, const ComplexHP& q, PochIndex n, const NumericContext& ctx);
inline ComplexHP poch(const PochSpec& s, const NumericContext& ctx) { return poch(s.a, s.q, s.n, ctx); }

/// 1/(a;q)_n. For n < 0 this is the finite product prod_{k=1}^{-n}(1 - a q^-k),
/// which may legitimately be zero; for n >= 0 a vanishing factor is a pole.
ComplexHP poch_recip(const ComplexHP& a, const ComplexHP& q, PochIndex n, const NumericContext& ctx);

/// (a_1, ..., a_m; q)_n.
ComplexHP poch_multi(std::span<const ComplexHP> args, const ComplexHP& q, PochIndex n,
                     const NumericContext& ctx);

/// Gaussian binomial [n, k]_q evaluated at a point; 0 when k is outside [0, n].
ComplexHP qbinom_num(long n, long k, const ComplexHP& q, const NumericContext& ctx);

/// Number of positive divisors of n.
long divisor_count(long n);

/// sum_{k>=1} q^k / (1 - q^k).
ComplexHP lambert_sum(const ComplexHP& q, const NumericContext& ctx);

/// (x, q/x, q; q)_inf.
ComplexHP triple_product(const ComplexHP& x, const ComplexHP& q, const NumericContext& ctx);

/// Number of factors poch_inf multiplies for |a| = 2^log2_a, |q| = 2^log2_q,
/// guard batch included. Throws TruncationError past ctx.max_terms.
long poch_inf_length(double log2_a, double log2_q, const NumericContext& ctx);

namespace detail {

// Unrounded variants used when composing larger expressions.
ComplexHP poch_finite_raw(const ComplexHP& a, const ComplexHP& q, long n, const NumericContext& ctx);
ComplexHP poch_inf_raw(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx);
void require_unit_disk(const ComplexHP& q, const char* what);

}  // namespace detail

}  // namespace qid
