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

#include "qid/context.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qid/errors.hpp"

namespace qid {

NumericContext NumericContext::with_digits(long digits, std::optional<double> tol) {
  NumericContext ctx;
  ctx.digits = digits;
  ctx.tol = tol.value_or(std::pow(10.0, -static_cast<double>(digits) / 2.0));
  ctx.validate();
  return ctx;
}

void NumericContext::validate() const {
  if (digits < 15) throw UsageError("digits must be >= 15 (got " + std::to_string(digits) + ")");
  if (max_terms < 16) throw UsageError("max_terms must be >= 16");
  if (!(tol > 0.0 && tol < 1.0)) throw UsageError("tol must lie in (0, 1)");
  if (guard_digits < 0) throw UsageError("guard_digits must be non-negative");
}

double NumericContext::pole_log2_threshold(const ComplexHP& a) const {
  double scale = std::log2(1.0 + std::exp2(std::min(a.log2_abs(), 1000.0)));
  // never looser than half the digits, so small contexts keep a usable threshold
  long exact = std::max(digits - guard_digits, digits / 2);
  return -static_cast<double>(exact) * 3.3219280948873623 + scale;
}

bool NumericContext::is_pole(const ComplexHP& factor, const ComplexHP& a) const {
  return factor.log2_abs() < pole_log2_threshold(a);
}

ComplexHP NumericContext::lift(const ComplexHP& z) const {
  return z.bits() >= work_bits() ? z : z.with_bits(work_bits());
}

NumericContext NumericContext::widened(long extra) const {
  NumericContext w = *this;
  w.digits += extra;
  return w;
}

}  // namespace qid
