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

#include <complex>
#include <cstdint>
#include <random>

#include "qid/context.hpp"
#include "qid/real.hpp"

namespace qid::test {

inline NumericContext ctx60() { return NumericContext{}; }

inline ComplexHP num(const NumericContext& ctx, double re, double im = 0.0) { return ctx.num(re, im); }

/// |a - b| / max(|a|, |b|, 1) as a double.
inline double rel(const ComplexHP& a, const ComplexHP& b) {
  ComplexHP d = a - b;
  double den = std::max({a.abs_double(), b.abs_double(), 1.0});
  return d.abs_double() / den;
}

/// log10 of the relative discrepancy, robust to underflow of doubles.
inline double log10_rel(const ComplexHP& a, const ComplexHP& b) {
  ComplexHP d = a - b;
  double den = std::max({a.log10_abs(), b.log10_abs(), 0.0});
  return d.log10_abs() - den;
}

inline std::complex<double> to_c(const ComplexHP& z) { return {z.re().to_double(), z.im().to_double()}; }

/// Random point in the annulus lo <= |z| <= hi.
inline std::complex<double> rand_disk(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> r(lo, hi), t(0.0, 6.283185307179586);
  return std::polar(r(rng), t(rng));
}

}  // namespace qid::test
