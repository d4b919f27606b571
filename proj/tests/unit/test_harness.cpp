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

#include "doctest.h"
#include "json.hpp"
#include "qid/errors.hpp"
#include "qid/harness.hpp"
#include "support.hpp"

using namespace qid;
using LS = LaurentSeriesQ;

namespace {

LS poly(std::vector<long> c) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return LS::from_coeffs(0, v);
}

const char* kPhi10Spec =
    "T(n) := poch(a)_n * x^n * poch(q)_n^-1\n"
    "S := poch(x)_inf^-1\n"
    "support := unilateral\n";

}  // namespace

TEST_CASE("sample_params respects the 1psi1 window and replays") {
  SampleSpec spec;
  spec.seed = 1;
  spec.count = 3;
  const IdentityRecord& r = lookup("ramanujan-1psi1");
  auto pts = sample_params(r, spec);
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) {
    double x = std::abs(p.approx("x"));
    CHECK(std::abs(p.approx("b") / p.approx("a")) < x);
    CHECK(x < 1.0);
    CHECK_FALSE(near_pole(r, p));
  }
  auto again = sample_params(r, spec);
  for (size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].describe() == again[i].describe());
  spec.seed = 2;
  CHECK(sample_params(r, spec)[0].describe() != pts[0].describe());
}

TEST_CASE("contradictory constraints exhaust the sampler") {
  IdentityRecord r = lookup("phi10");
  r.domain = [](const ParamAssignment& a) { return std::abs(a.approx("x")) < 1.0 && std::abs(a.approx("x")) > 1.0; };
  CHECK_THROWS_AS(sample_params(r, SampleSpec{}), SamplingExhausted);

  IdentityRecord pole = lookup("phi10");
  pole.denominators = [](const ParamAssignment&) { return std::vector<DenomFactor>{{1.0, 0, 0}}; };
  CHECK_THROWS_AS(sample_params(pole, SampleSpec{}), SamplingExhausted);
}

TEST_CASE("verify_numeric") {
  NumericContext ctx;
  SampleSpec spec;
  spec.count = 5;
  VerificationReport q = verify_numeric("quintuple", spec, ctx);
  CHECK(q.aggregate == Status::kPass);
  CHECK(q.samples.size() == 5);
  for (const auto& s : q.samples) CHECK(s.discrepancy < 1e-30);

  // x = 0: both sides are exactly 1
  ParamAssignment zero;
  zero.set("q", ctx.num(0.3));
  zero.set("x", ctx.num(0.0));
  VerificationReport e = verify_numeric("euler-exp", spec, ctx, {zero});
  REQUIRE(e.samples.size() == 1);
  CHECK(e.aggregate == Status::kPass);
  CHECK(e.samples[0].lhs.rfind("1", 0) == 0);
  CHECK(e.samples[0].discrepancy.is_zero());

  // a domain violation is an ERROR, not a FAIL
  ParamAssignment outside = zero;
  outside.set("x", ctx.num(2.0));
  VerificationReport bad = verify_numeric("euler-exp", spec, ctx, {outside});
  CHECK(bad.aggregate == Status::kError);
  CHECK(bad.samples[0].detail.find("DomainError") != std::string::npos);

  CHECK_THROWS_AS(verify_numeric("eisenstein", spec, ctx), UsageError);
}

TEST_CASE("verify_formal") {
  VerificationReport rr = verify_formal("rogers-ramanujan", 100);
  CHECK(rr.aggregate == Status::kPass);
  CHECK(rr.samples.size() == 2);
  CHECK(verify_formal("eisenstein", 100).aggregate == Status::kPass);
  CHECK(verify_formal("quintuple-dx", 60).aggregate == Status::kPass);

  ParamAssignment n1;
  n1.set("n", 1L);
  VerificationReport typo = verify_formal("rr-finite", 0, {n1});
  CHECK(typo.aggregate == Status::kExpectedFailConfirmed);
  REQUIRE(typo.samples.size() == 1);
  CHECK(typo.samples[0].status == Status::kFail);
  CHECK(typo.samples[0].detail.find("lhs = 1 + q - q^2 - q^3") != std::string::npos);
  CHECK(typo.samples[0].detail.find("rhs = 1 + 2*q + q^2") != std::string::npos);
  CHECK(typo.samples[0].detail.find("lhs/rhs = 1 - q") != std::string::npos);

  VerificationReport fixed = verify_formal("rr-finite-corrected", 0);
  CHECK(fixed.aggregate == Status::kPass);
  CHECK(fixed.samples.size() == 8);
}

TEST_CASE("polynomial witness") {
  CHECK(polynomial_witness(poly({1, 1, -1, -1}), poly({1, 2, 1})).find("lhs/rhs = 1 - q") != std::string::npos);
  // no exact quotient
  CHECK(polynomial_witness(poly({1, 1}), poly({1, 0, 1})).find("lhs/rhs") == std::string::npos);
}

TEST_CASE("run_suite filters, exit codes and determinism") {
  SuiteOptions o;
  o.sample.count = 3;
  o.order = 30;
  auto reports = run_suite("qbinom-*", o);
  // five records, qbinom-thm in two modes
  REQUIRE(reports.size() == 6);
  CHECK(exit_code(reports) == 0);
  for (size_t i = 1; i < reports.size(); ++i) CHECK(reports[i - 1].id <= reports[i].id);

  auto none = run_suite("no-such-*", o);
  CHECK(none.empty());
  CHECK(exit_code(none) == 0);

  std::string serial = suite_json(run_suite("c*", o), o, false);
  o.threads = 4;
  std::string parallel = suite_json(run_suite("c*", o), o, false);
  CHECK(serial == parallel);
  CHECK(serial == suite_json(run_suite("c*", o), o, false));

  auto j = nlohmann::json::parse(serial);
  CHECK(j["tool_version"] == kToolVersion);
  REQUIRE(j["reports"].size() == 2);
  auto first = j["reports"][0];
  CHECK(first["identity"] == "cauchy-1phi1");
  CHECK(first["mode"] == "NUMERIC");
  CHECK(first["aggregate"] == "PASS");
  CHECK(first["seed"] == 1);
  CHECK(first["samples"].size() == 3);
  CHECK(first["samples"][0]["discrepancy"].is_string());
  CHECK(first["samples"][0]["params"].contains("a"));

  reports[0].aggregate = Status::kFail;
  CHECK(exit_code(reports) == 1);
  reports[0].aggregate = Status::kError;
  CHECK(exit_code(reports) == 1);
}

TEST_CASE("dcheck reproduces the derivative of the 1phi0 sum") {
  DCheckSpec spec = parse_dcheck(kPhi10Spec);
  DCheckOptions o;
  o.ms = {0, 1, 2, 3};
  o.samples = 2;
  auto entries = run_dcheck(spec, o, NumericContext{});
  REQUIRE(entries.size() == 8);
  for (const auto& e : entries) {
    CAPTURE(e.m);
    CAPTURE(e.detail);
    CHECK(e.status == Status::kPass);
    CHECK(e.result.discrepancy < 1e-30);
  }
}
