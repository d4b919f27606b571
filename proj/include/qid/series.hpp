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

// Unilateral r-phi-s, bilateral r-psi-r and quadratic-exponent theta sums.

#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qid/context.hpp"
#include "qid/real.hpp"

namespace qid {

struct PhiSpec {
  std::vector<ComplexHP> numerators;
  std::vector<ComplexHP> denominators;
  ComplexHP q;
  ComplexHP x;
};

struct PsiSpec {
  std::vector<ComplexHP> numerators;
  std::vector<ComplexHP> denominators;
  ComplexHP q;
  ComplexHP x;
};

enum class ThetaWeight { kOne, kN, kLinear };

/// sum_n weight(n) (-1)^(sign*n) q^(A n(n-1)/2 + B n) x^n over all integers n.
struct ThetaSumSpec {
  mpq_class A = 1;
  mpq_class B = 0;
  bool sign = false;
  ThetaWeight weight = ThetaWeight::kOne;
  /// Linear weight w0 + w1*n (used when weight == kLinear).
  mpq_class w0 = 0;
  mpq_class w1 = 0;
  std::optional<ComplexHP> x;

  /// The same sum with n -> -n: (A, B) -> (A, A - B), x -> 1/x, weight(n) -> weight(-n).
  ThetaSumSpec reflected() const;
  mpq_class weight_at(long n) const;
};

/// A summed series together with what is needed to judge cancellation.
struct SeriesResult {
  ComplexHP value;
  long terms = 0;
  /// log2 of the largest |term| seen.
  double max_term_log2 = -1e300;
  /// True when the sum ended at an exact (symbolic) termination index.
  bool terminated = false;

  /// Decimal digits lost to cancellation, max|t| / |sum|.
  double cancellation_digits() const;
};

ComplexHP eval_phi(const PhiSpec& spec, const NumericContext& ctx);
SeriesResult eval_phi_detailed(const PhiSpec& spec, const NumericContext& ctx);

ComplexHP eval_psi(const PsiSpec& spec, const NumericContext& ctx);
SeriesResult eval_psi_detailed(const PsiSpec& spec, const NumericContext& ctx);

ComplexHP eval_theta_sum(const ThetaSumSpec& spec, const ComplexHP& q, const NumericContext& ctx);

/// If a = q^-N for some integer N >= 0 (within the pole threshold), returns N.
std::optional<long> termination_index(const ComplexHP& a, const ComplexHP& q, const NumericContext& ctx);

/// Options for the adaptive summation driver.
struct SumOptions {
  /// Last index to sum (inclusive) when the series is known to terminate.
  std::optional<long> last;
  /// The stopping rule is not armed before this index is passed.
  std::optional<long> arm_after;
};

/// Sums term(n) for n = start, start + step, ... (step = +1 or -1) and stops
/// after 5 consecutive terms below tol * max(1, |partial sum|) / 4 whose
/// magnitudes do not increase. `term` is called exactly once per index, in
/// order, so it may carry incremental state.
SeriesResult sum_adaptive(const std::function<ComplexHP(long)>& term, long start, long step,
                          const NumericContext& ctx, const SumOptions& opts = {});

/// Both tails of a bilateral sum (n >= 0 and n < 0), each to tol/2.
SeriesResult sum_bilateral(const std::function<ComplexHP(long)>& term, const NumericContext& ctx,
                           const SumOptions& forward = {}, const SumOptions& backward = {});

}  // namespace qid
