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

// Term expressions in text form.
//
//   term      := factor { "*" factor }
//   factor    := number | "x" ["^" index] | "q" ["^" index] | "a" ["^" signedint]
//              | "poch" "(" coeffexpr ["*"] ["x"] ")" "_" (index | "inf") ["^" signedint]
//   coeffexpr := atom { "*" atom },  atom := number | "q" ["^" index] | "a" ["^" signedint]
//   index     := signedint | "n" [("+" | "-") int]
//
// Numbers are decimal or rational "p/r" and are kept exact. The symbols n and
// a are only allowed in templates.

#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qid/deriv.hpp"

namespace qid {

/// n + offset when symbolic, else the constant offset; or infinity.
struct IndexExpr {
  bool symbolic = false;
  long offset = 0;
  bool infinite = false;

  PochIndex at(long n) const;
  std::string to_string() const;
  friend bool operator==(const IndexExpr&, const IndexExpr&) = default;
};

/// s * a^a_pow * q^qpow.
struct TemplateMonomial {
  mpq_class s = 1;
  long a_pow = 0;
  IndexExpr qpow;
};

struct TemplateFactor {
  TemplateMonomial alpha;
  IndexExpr n;
  int eps = 1;
  bool with_x = true;
};

struct TermTemplate {
  TemplateMonomial coeff;
  IndexExpr power;
  std::vector<TemplateFactor> factors;

  bool uses_n() const;
  bool uses_a() const;
  /// The term at index n with a bound to `a` (exact when `a_exact` is set).
  TermExpr instantiate(long n, const std::optional<ComplexHP>& a, const std::optional<mpq_class>& a_exact,
                       const NumericContext& ctx) const;
};

TermTemplate parse_template(std::string_view text, int line = 1);
TermExpr parse_term(std::string_view text);
std::string print_term(const TermExpr& t);

/// An identity sum_n T(n) = (ax;q)_inf S(x), to be differentiated at x = q^-m/a.
struct DCheckSpec {
  TermTemplate T;
  TermTemplate S;
  Support support = Support::kUnilateral;
};

DCheckSpec parse_dcheck(std::string_view content);

}  // namespace qid
