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

// Sampling, verification runs and reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qid/context.hpp"
#include "qid/dsl.hpp"
#include "qid/registry.hpp"

namespace qid {

inline constexpr const char* kToolVersion = "0.1.0";

struct SampleSpec {
  std::uint64_t seed = 1;
  long count = 20;
  Strategy strategy = Strategy::kUniform;
};

enum class Status { kPass, kFail, kExpectedFailConfirmed, kError };
std::string to_string(Status s);

struct SampleEntry {
  long index = 0;
  std::map<std::string, std::string> params;
  std::string lhs;
  std::string rhs;
  /// Relative discrepancy; 0 or 1 for formal comparisons.
  Real discrepancy;
  Status status = Status::kPass;
  /// Error text, or the mismatch description for formal failures.
  std::string detail;
};

struct VerificationReport {
  std::string id;
  Mode mode = Mode::kNumeric;
  Expected expected = Expected::kPass;
  std::vector<SampleEntry> samples;
  Status aggregate = Status::kPass;
  double seconds = 0.0;
  std::uint64_t seed = 0;
};

/// Domain-respecting assignments, deterministic in (record id, seed).
/// Throws SamplingExhausted when 100 redraws do not give a usable point.
std::vector<ParamAssignment> sample_params(const IdentityRecord& record, const SampleSpec& spec);

/// Candidate rejected for sitting within 1e-3 (relative) of a denominator zero.
bool near_pole(const IdentityRecord& record, const ParamAssignment& a);

/// Sampled check at `ctx`; explicit assignments replace sampling when given.
VerificationReport verify_numeric(const std::string& id, const SampleSpec& spec, const NumericContext& ctx,
                                  const std::vector<ParamAssignment>& explicit_points = {});

/// Coefficient-exact comparison to order N over the record's formal cases (or
/// the given ones). EXACT-POLY records compare full polynomials.
VerificationReport verify_formal(const std::string& id, long order,
                                 const std::vector<ParamAssignment>& explicit_cases = {});

/// Exact description of a polynomial mismatch: both sides and, when it exists,
/// the exact quotient lhs/rhs.
std::string polynomial_witness(const LaurentSeriesQ& lhs, const LaurentSeriesQ& rhs);

struct SuiteOptions {
  SampleSpec sample;
  NumericContext ctx;
  long order = 100;
  unsigned threads = 1;
};

/// Every matching record in every supported mode, sorted by (id, mode).
std::vector<VerificationReport> run_suite(const std::string& filter, const SuiteOptions& opts);

/// 0 when every report is PASS or EXPECTED-FAIL-CONFIRMED, else 1.
int exit_code(const std::vector<VerificationReport>& reports);

std::string report_json(const VerificationReport& r, bool timing = true);
std::string suite_json(const std::vector<VerificationReport>& reports, const SuiteOptions& opts, bool timing = true);
std::string suite_text(const std::vector<VerificationReport>& reports);

struct DCheckOptions {
  std::vector<long> ms{0};
  /// Fixed a; sampled when absent.
  std::optional<ComplexHP> a;
  std::optional<mpq_class> a_exact;
  std::optional<ComplexHP> q;
  long samples = 5;
  std::uint64_t seed = 1;
};

struct DCheckEntry {
  long m = 0;
  ComplexHP a;
  ComplexHP q;
  Prop13Result result;
  Status status = Status::kPass;
  std::string detail;
};

/// Differentiates sum_n T(n) = (ax;q)_inf S(x) at x = q^-m/a for each m and
/// sampled (a, q) with |q| in [0.2, 0.5] and |q^-m/a| in [0.3, 0.7].
std::vector<DCheckEntry> run_dcheck(const DCheckSpec& spec, const DCheckOptions& opts, const NumericContext& ctx);

}  // namespace qid
