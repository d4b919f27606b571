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

// The identity catalog.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qid/context.hpp"
#include "qid/formal.hpp"
#include "qid/real.hpp"

namespace qid {

enum class Mode { kNumeric, kFormal, kExactPoly };
enum class Expected { kPass, kExpectedFail };
enum class Side { kLhs, kRhs };
enum class Strategy { kUniform, kBoundaryBiased };

std::string to_string(Mode m);
std::string to_string(Expected e);
std::optional<Mode> parse_mode(const std::string& s);

/// A parameter value: an integer (n, m), an exact rational, a complex point or
/// a formal s*q^j.
using ParamValue = std::variant<long, mpq_class, ComplexHP, FormalParam>;

struct ParamAssignment {
  std::map<std::string, ParamValue> values;

  bool has(const std::string& name) const { return values.count(name) != 0; }
  void set(const std::string& name, ParamValue v) { values[name] = std::move(v); }
  /// Numeric value at ctx precision. Integers and rationals are exact; formal
  /// parameters are evaluated at the assignment's q.
  ComplexHP num(const std::string& name, const NumericContext& ctx) const;
  /// Double-precision value for domain and pole screening.
  std::complex<double> approx(const std::string& name) const;
  long integer(const std::string& name) const;
  FormalParam formal(const std::string& name) const;
  /// name=value pairs, values printed exactly (17 significant digits for points).
  std::map<std::string, std::string> describe() const;
};

/// Factors 1 - v q^k for k in [kmin, kmax] that appear in a denominator.
struct DenomFactor {
  std::complex<double> v;
  int kmin = 0;
  int kmax = 0;
};

/// Uniform draws in double precision. Sequences depend only on the seed.
class Draw {
 public:
  Draw(std::uint64_t seed, Strategy strategy) : rng_(seed), strategy_(strategy) {}

  /// Uniform in [0, 1).
  double unit();
  /// Uniform in [lo, hi], pushed toward the ends under the boundary-biased strategy.
  double real(double lo, double hi);
  /// Modulus in [lo, hi] and a uniform argument.
  std::complex<double> cpx(double lo, double hi);
  long integer(long lo, long hi);
  /// p/r with 2 <= r <= 12 and lo <= |p/r| <= hi.
  mpq_class rational(double lo, double hi);

 private:
  std::mt19937_64 rng_;
  Strategy strategy_;
};

struct ParamInfo {
  std::string name;
  std::string constraint;
};

using NumericSide = std::function<ComplexHP(const ParamAssignment&, const NumericContext&)>;
using FormalSide = std::function<LaurentSeriesQ(const ParamAssignment&, long order)>;

struct IdentityRecord {
  std::string id;
  std::string anchor;
  std::string quote;
  std::vector<ParamInfo> params;
  std::vector<Mode> modes;
  Expected expected = Expected::kPass;
  std::string companion;
  std::string notes;

  NumericSide lhs_num, rhs_num;
  FormalSide lhs_formal, rhs_formal;

  /// One candidate assignment (numeric records).
  std::function<ParamAssignment(Draw&)> draw;
  /// Domain hypotheses, checked in double precision.
  std::function<bool(const ParamAssignment&)> domain;
  /// Denominator factors to keep away from zero.
  std::function<std::vector<DenomFactor>(const ParamAssignment&)> denominators;
  /// Assignments checked in FORMAL / EXACT-POLY mode.
  std::function<std::vector<ParamAssignment>()> formal_cases;

  bool supports(Mode m) const;
};

/// The full catalog, in catalog order.
const std::vector<IdentityRecord>& catalog();

/// Throws NotFound for an unknown id.
const IdentityRecord& lookup(const std::string& id);

/// Records whose id matches the glob (`*`, `?`); an empty filter matches all.
std::vector<const IdentityRecord*> list(const std::string& filter = "");

bool glob_match(const std::string& pattern, const std::string& text);

using SideValue = std::variant<ComplexHP, LaurentSeriesQ>;

/// One side of a record. Evaluation errors are rethrown as RecordError.
SideValue evaluate_side(const std::string& id, Side side, const ParamAssignment& assignment, Mode mode,
                        const NumericContext& ctx, long order = 100);

/// JSON array with id, citation, quote, params, modes, expected (and companion when set).
std::string catalog_json(const std::vector<const IdentityRecord*>& records);

}  // namespace qid
