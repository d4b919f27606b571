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

#include <optional>

#include "qid/real.hpp"

namespace qid {

/// Precision and truncation policy shared by every numeric evaluation.
///
/// Evaluations run at `digits + guard_digits` decimal digits and public
/// results are rounded back to `digits`. `tol` is a relative error budget;
/// the default is 10^(-digits/2).
struct NumericContext {
  long digits = 60;
  double tol = 1e-30;
  long max_terms = 100000;
  long guard_digits = 20;

  /// Context with the given digits and the default tolerance for it.
  static NumericContext with_digits(long digits, std::optional<double> tol = std::nullopt);

  /// Throws UsageError when an invariant is violated.
  void validate() const;

  /// Working precision in bits.
  Bits work_bits() const { return digits_to_bits(digits + guard_digits); }
  Bits result_bits() const { return digits_to_bits(digits); }

  /// Magnitude below which a factor counts as an exact zero:
  /// 10^-(digits - guard_digits) * (1 + |a|).
  double pole_log2_threshold(const ComplexHP& a) const;
  bool is_pole(const ComplexHP& factor, const ComplexHP& a) const;

  Real tol_real() const { return Real::from_double(tol, work_bits()); }
  ComplexHP lift(const ComplexHP& z) const;
  ComplexHP num(double re, double im = 0.0) const {
    return ComplexHP::from_double(re, im, work_bits());
  }
  ComplexHP integer(long v) const { return ComplexHP::from_long(v, work_bits()); }
  ComplexHP round(const ComplexHP& z) const { return z.with_bits(result_bits()); }

  /// Same policy with `extra` more digits of working precision.
  NumericContext widened(long extra) const;
};

}  // namespace qid
