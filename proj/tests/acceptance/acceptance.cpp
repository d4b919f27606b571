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

// Acceptance run: one line per criterion.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "qid/errors.hpp"
#include "qid/harness.hpp"
#include "qid/qcore.hpp"

using namespace qid;
using LS = LaurentSeriesQ;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

void print(int n, const std::string& title, const Outcome& o, const std::string& summary) {
  std::cout << "criterion " << n << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << "  " << summary;
  if (!o.note.empty()) std::cout << "  (" << o.note << ")";
  std::cout << std::endl;
}

double secs(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LS poly(std::vector<long> c) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return LS::from_coeffs(0, v);
}

SuiteOptions defaults(long digits, double tol) {
  SuiteOptions o;
  o.sample.seed = 1;
  o.sample.count = 20;
  o.ctx = NumericContext::with_digits(digits, tol);
  o.order = 100;
  o.threads = std::max(1u, std::thread::hardware_concurrency());
  return o;
}

const VerificationReport* find(const std::vector<VerificationReport>& rs, const std::string& id, Mode m) {
  for (const auto& r : rs) {
    if (r.id == id && r.mode == m) return &r;
  }
  return nullptr;
}

Outcome criterion1(const std::vector<VerificationReport>& reports, double seconds) {
  Outcome o;
  o.require(exit_code(reports) == 0, "exit code " + std::to_string(exit_code(reports)));
  std::set<std::string> ids;
  for (const auto& r : reports) {
    ids.insert(r.id);
    bool want_fail = r.id == "rr-finite";
    Status want = want_fail ? Status::kExpectedFailConfirmed : Status::kPass;
    o.require(r.aggregate == want, r.id + " " + to_string(r.mode) + " is " + to_string(r.aggregate));
    if (r.mode == Mode::kNumeric) o.require(r.samples.size() == 20, r.id + " has " + std::to_string(r.samples.size()) + " samples");
  }
  o.require(ids.size() == 48, std::to_string(ids.size()) + " records");
  o.require(seconds < 300.0, "runtime over 5 minutes");
  return o;
}

Outcome criterion2() {
  Outcome o;
  VerificationReport c = verify_formal("qbinom-dx-at-qm", 0);
  o.require(c.aggregate == Status::kPass, "qbinom-dx-at-qm " + to_string(c.aggregate));
  std::set<std::pair<long, long>> seen;
  for (const auto& s : c.samples) seen.insert({std::stol(s.params.at("n")), std::stol(s.params.at("m"))});
  bool all = true;
  for (long n = 1; n <= 12; ++n) {
    for (long m = 0; m < n; ++m) all = all && seen.count({n, m});
  }
  o.require(all, "not every (n, m) with 1 <= n <= 12, 0 <= m < n was checked");
  ParamAssignment nm;
  nm.set("n", 2L);
  nm.set("m", 0L);
  NumericContext ctx;
  auto l = std::get<LS>(evaluate_side("qbinom-dx-at-qm", Side::kLhs, nm, Mode::kExactPoly, ctx));
  auto r = std::get<LS>(evaluate_side("qbinom-dx-at-qm", Side::kRhs, nm, Mode::kExactPoly, ctx));
  o.require(l == poly({-1, 1}) && r == poly({-1, 1}), "n=2, m=0 is not q-1 on both sides");

  VerificationReport qb = verify_formal("qbinom-thm", 0);
  o.require(qb.aggregate == Status::kPass, "qbinom-thm " + to_string(qb.aggregate));
  long top = 0;
  for (const auto& s : qb.samples) top = std::max(top, std::stol(s.params.at("n")));
  o.require(top == 20, "q-binomial checked only to n=" + std::to_string(top));
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (auto [id, order] : {std::pair<const char*, long>{"eisenstein", 100}, {"qbinom-d2-inf", 100},
                           {"rogers-ramanujan", 100}, {"quintuple-dx", 60}}) {
    VerificationReport r = verify_formal(id, order);
    o.require(r.aggregate == Status::kPass, std::string(id) + " " + to_string(r.aggregate));
  }
  NumericContext ctx;
  auto e = std::get<LS>(evaluate_side("eisenstein", Side::kLhs, {}, Mode::kFormal, ctx, 3)).truncated(3);
  o.require(e == poly({0, -1, -1, 1}).truncated(3), "eisenstein to q^3 is " + e.to_string());
  ParamAssignment f0;
  f0.set("form", 0L);
  auto rr = std::get<LS>(evaluate_side("rogers-ramanujan", Side::kLhs, f0, Mode::kFormal, ctx, 100));
  // partitions into parts congruent to 1 or 4 mod 5
  std::vector<long> count(101, 0);
  count[0] = 1;
  for (long p = 1; p <= 100; ++p) {
    if (p % 5 == 1 || p % 5 == 4) {
      for (long s = p; s <= 100; ++s) count[s] += count[s - p];
    }
  }
  bool match = true;
  for (long k = 0; k <= 100; ++k) match = match && rr.coeff(k) == count[k];
  o.require(match, "Rogers-Ramanujan coefficients differ from the partition count");
  std::vector<long> head{1, 1, 1, 1, 2, 2, 3};
  for (long k = 0; k < 7; ++k) match = match && rr.coeff(k) == head[k];
  o.require(match, "Rogers-Ramanujan sequence does not start 1,1,1,1,2,2,3");
  return o;
}

Outcome criterion4() {
  Outcome o;
  ParamAssignment n1;
  n1.set("n", 1L);
  NumericContext ctx;
  auto l = std::get<LS>(evaluate_side("rr-finite", Side::kLhs, n1, Mode::kExactPoly, ctx));
  auto r = std::get<LS>(evaluate_side("rr-finite", Side::kRhs, n1, Mode::kExactPoly, ctx));
  o.require(l == poly({1, 1, -1, -1}), "n=1 left side is " + l.to_string());
  o.require(r == poly({1, 2, 1}), "n=1 right side is " + r.to_string());
  o.require(r * poly({1, -1}) == l, "ratio is not 1-q");
  VerificationReport typo = verify_formal("rr-finite", 0, {n1});
  o.require(typo.aggregate == Status::kExpectedFailConfirmed, "rr-finite is " + to_string(typo.aggregate));
  o.require(!typo.samples.empty() && typo.samples[0].detail.find("lhs/rhs = 1 - q") != std::string::npos,
            "witness does not report lhs/rhs = 1 - q");
  VerificationReport fixed = verify_formal("rr-finite-corrected", 0);
  o.require(fixed.aggregate == Status::kPass && fixed.samples.size() == 8, "corrected form " + to_string(fixed.aggregate));
  return o;
}

Outcome criterion5() {
  Outcome o;
  NumericContext ctx = NumericContext::with_digits(60, 1e-58);
  NumericContext wide = NumericContext::with_digits(120, 1e-115);
  const double h = std::pow(10.0, -ctx.digits / 3.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto disk = [&](double lo, double hi) { return std::polar(lo + (hi - lo) * u(rng), 2.0 * M_PI * u(rng)); };
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    std::complex<double> xc = disk(0.4, 0.9), qc = disk(0.2, 0.6);
    // a random term whose factors stay away from zero near x
    TermExpr t;
    while (true) {
      t = TermExpr{};
      std::complex<double> c = disk(0.5, 2.0);
      t.coeff = QMonomial::complex(ctx.num(c.real(), c.imag()));
      t.power = static_cast<long>(u(rng) * 6) - 2;
      bool ok = true;
      for (int f = 1 + static_cast<int>(u(rng) * 3); f > 0; --f) {
        std::complex<double> a = disk(0.1, 0.9);
        int n = static_cast<int>(u(rng) * 11) - 3;
        for (int k = -3; k < 8; ++k) {
          std::complex<double> w = a * xc * std::pow(qc, k);
          if (std::abs(1.0 - w) < 0.3 * std::max(1.0, std::abs(w))) ok = false;
        }
        PochFactor pf;
        pf.alpha = QMonomial::complex(ctx.num(a.real(), a.imag()));
        pf.n = n == 7 ? PochIndex::infinity() : PochIndex(n);
        pf.eps = u(rng) < 0.5 ? 1 : -1;
        t.factors.push_back(pf);
      }
      if (ok) break;
    }
    ComplexHP x = wide.num(xc.real(), xc.imag()), q = wide.num(qc.real(), qc.imag()), H = wide.num(h);
    ComplexHP fp = eval_term(t, x + H, q, wide), f0 = eval_term(t, x, q, wide), fm = eval_term(t, x - H, q, wide);
    ComplexHP d1 = (fp - fm) / (H * 2), d2 = (fp - f0 * 2 + fm) / (H * H);
    ComplexHP x60 = ctx.num(xc.real(), xc.imag()), q60 = ctx.num(qc.real(), qc.imag());
    auto scaled = [&](const ComplexHP& got, const ComplexHP& want) {
      double den = std::max({got.abs_double(), want.abs_double(), f0.abs_double(), 1.0});
      return (got - want).abs_double() / den;
    };
    if (scaled(deriv_term(t, x60, q60, ctx, 1), d1) >= 1e3 * h * h) ++bad;
    if (scaled(deriv_term(t, x60, q60, ctx, 2), d2) >= 1e3 * h * h) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " finite-difference mismatches");

  ComplexHP q = ctx.num(0.35, -0.2);
  for (long n = 1; n <= 10; ++n) {
    TermExpr t;
    PochFactor f;
    f.n = n;
    t.factors.push_back(f);
    ComplexHP got = deriv_term(t, XPoint::formal(FormalParam::qpow(0), q, ctx), q, ctx, 1);
    ComplexHP want = -poch_finite(q, q, n - 1, ctx);
    o.require(relative_discrepancy(got, want) < 1e-55, "D(x;q)_" + std::to_string(n) + " at x=1");
    // exact: product rule over polynomials in q; only the k=0 factor vanishes at x=1
    LS exact = -poch_series(FormalParam::qpow(1), n - 1, LS::kExact);
    LS prod_rule;
    for (long k = 0; k < n; ++k) {
      LS term = -LS::monomial(1, k);
      for (long j = 0; j < n; ++j) {
        if (j != k) term = term * (LS::constant(1) - LS::monomial(1, j));
      }
      prod_rule = prod_rule + term;
    }
    o.require(prod_rule == exact, "exact product rule for n=" + std::to_string(n));
  }
  return o;
}

Outcome criterion6(const std::string& spec_path, std::string& summary) {
  Outcome o;
  std::ifstream in(spec_path);
  if (!in) {
    o.require(false, "cannot read " + spec_path);
    return o;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  DCheckSpec spec = parse_dcheck(buf.str());
  DCheckOptions opts;
  opts.ms = {0, 1, 2, 3};
  opts.samples = 5;
  NumericContext ctx;
  auto entries = run_dcheck(spec, opts, ctx);
  o.require(entries.size() == 20, std::to_string(entries.size()) + " points");
  double worst = 0.0, worst_cross = 0.0;
  for (const auto& e : entries) {
    if (e.status != Status::kPass) {
      o.require(false, "m=" + std::to_string(e.m) + " " + to_string(e.status) + " " + e.detail);
      continue;
    }
    worst = std::max(worst, e.result.discrepancy.to_double());
    // the summed derivative times x0 is the n-weighted sum; its closed form is the phi10-dx record
    ParamAssignment p;
    p.set("q", e.q);
    p.set("a", e.a);
    p.set("m", e.m);
    auto closed = std::get<ComplexHP>(evaluate_side("phi10-dx", Side::kRhs, p, Mode::kNumeric, ctx));
    double cross = relative_discrepancy(e.result.lhs * e.result.x0.value, closed).to_double();
    worst_cross = std::max(worst_cross, cross);
    o.require(cross < 1e-30, "m=" + std::to_string(e.m) + " differs from the closed form by " + std::to_string(cross));
  }
  char line[160];
  std::snprintf(line, sizeof line, "20 points, max discrepancy %.2e, vs closed form %.2e", worst, worst_cross);
  summary = line;
  return o;
}

Outcome criterion7(const std::vector<VerificationReport>& r60, const std::vector<VerificationReport>& r120,
                   std::string& summary) {
  Outcome o;
  o.require(r60.size() == r120.size(), "report counts differ");
  double min_gain = 1e300;
  std::string min_id;
  for (const auto& a : r60) {
    const VerificationReport* b = find(r120, a.id, a.mode);
    if (!b) {
      o.require(false, a.id + " missing at 120 digits");
      continue;
    }
    o.require(a.aggregate == b->aggregate, a.id + " flips " + to_string(a.aggregate) + " -> " + to_string(b->aggregate));
    if (a.mode != Mode::kNumeric || a.aggregate != Status::kPass) continue;
    for (size_t i = 0; i < a.samples.size() && i < b->samples.size(); ++i) {
      o.require(a.samples[i].params == b->samples[i].params, a.id + " samples differ");
      // a zero discrepancy counts as the 60-digit rounding floor
      double d60 = std::max(a.samples[i].discrepancy.log10_abs(), -60.0);
      double d120 = b->samples[i].discrepancy.log10_abs();
      double gain = d60 - d120;
      if (gain < min_gain) {
        min_gain = gain;
        min_id = a.id;
      }
      if (!(gain >= 10.0)) {
        o.require(false, a.id + " sample " + std::to_string(i) + " shrinks by only " + std::to_string(gain) + " orders");
      }
    }
  }
  char line[160];
  std::snprintf(line, sizeof line, "smallest shrink %.1f orders (%s)", min_gain, min_id.c_str());
  summary = line;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string spec_path = argc > 1 ? argv[1] : "tests/data/phi10.dcheck";
  bool all = true;
  auto record = [&](int n, const std::string& title, const Outcome& o, const std::string& summary) {
    print(n, title, o, summary);
    all = all && o.pass;
  };
  auto guarded = [&](int n, const std::string& title, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      Outcome o;
      o.require(false, std::string("exception: ") + e.what());
      record(n, title, o, "");
    }
  };

  std::vector<VerificationReport> r60;
  guarded(1, "full suite at 60 digits", [&] {
    auto t0 = std::chrono::steady_clock::now();
    r60 = run_suite("*", defaults(60, 1e-30));
    double s = secs(t0);
    std::map<Status, int> counts;
    for (const auto& r : r60) ++counts[r.aggregate];
    std::ostringstream os;
    os << r60.size() << " reports over 48 records, PASS=" << counts[Status::kPass]
       << " EXPECTED-FAIL-CONFIRMED=" << counts[Status::kExpectedFailConfirmed] << ", " << static_cast<int>(s) << "s";
    record(1, "full suite at 60 digits", criterion1(r60, s), os.str());
  });
  guarded(2, "exact finite identities", [&] {
    record(2, "exact finite identities", criterion2(), "78 (n, m) cases and the q-binomial theorem for n <= 20");
  });
  guarded(3, "formal expansions", [&] {
    record(3, "formal expansions", criterion3(), "Eisenstein, second derivative, Rogers-Ramanujan to 100, quintuple derivative to 60");
  });
  guarded(4, "typo detection", [&] {
    record(4, "typo detection", criterion4(), "printed form fails with lhs/rhs = 1 - q; corrected form holds for n <= 8");
  });
  guarded(5, "derivative engine", [&] {
    record(5, "derivative engine", criterion5(), "100 finite-difference points, orders 1 and 2; D(x;q)_n at x=1 for n <= 10");
  });
  guarded(6, "dcheck on the 1phi0 identity", [&] {
    std::string summary;
    Outcome o = criterion6(spec_path, summary);
    record(6, "dcheck on the 1phi0 identity", o, summary);
  });
  guarded(7, "precision scaling", [&] {
    auto r120 = run_suite("*", defaults(120, 1e-60));
    std::string summary;
    Outcome o = criterion7(r60, r120, summary);
    record(7, "precision scaling", o, summary);
  });
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << std::endl;
  return all ? 0 : 1;
}
