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

#include "qid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qid/errors.hpp"
#include "qid/qcore.hpp"

namespace qid {

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kExpectedFailConfirmed:
      return "EXPECTED-FAIL-CONFIRMED";
    case Status::kError:
      return "ERROR";
  }
  return "?";
}

namespace {

constexpr int kMaxRedraws = 100;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Per-sample statuses fold into PASS, FAIL (dominates) or ERROR; expected
// failures need one demonstrable failure.
Status aggregate(const IdentityRecord& r, const std::vector<SampleEntry>& samples, double tol) {
  bool fail = false, error = false, confirmed = false;
  Real bound = Real::from_double(1e3 * tol, 64);
  for (const auto& s : samples) {
    if (s.status == Status::kFail) {
      fail = true;
      if (bound < s.discrepancy) confirmed = true;
    }
    if (s.status == Status::kError) error = true;
  }
  if (r.expected == Expected::kExpectedFail) return confirmed ? Status::kExpectedFailConfirmed : Status::kFail;
  if (fail) return Status::kFail;
  if (error) return Status::kError;
  return Status::kPass;
}

}  // namespace

bool near_pole(const IdentityRecord& record, const ParamAssignment& a) {
  if (!record.denominators) return false;
  std::complex<double> q = a.has("q") ? a.approx("q") : std::complex<double>(0.0);
  for (const DenomFactor& f : record.denominators(a)) {
    for (int k = f.kmin; k <= f.kmax; ++k) {
      std::complex<double> w = f.v * (k == 0 ? 1.0 : std::pow(q, static_cast<double>(k)));
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return true;
      if (std::abs(1.0 - w) < 1e-3 * std::max(1.0, std::abs(w))) return true;
    }
  }
  return false;
}

std::vector<ParamAssignment> sample_params(const IdentityRecord& record, const SampleSpec& spec) {
  if (!record.supports(Mode::kNumeric) || !record.draw) {
    throw UsageError(record.id + " has no numeric mode to sample");
  }
  Draw draw(spec.seed ^ fnv1a(record.id), spec.strategy);
  std::vector<ParamAssignment> out;
  for (long i = 0; i < spec.count; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt <= kMaxRedraws && !ok; ++attempt) {
      ParamAssignment a = record.draw(draw);
      if ((record.domain && !record.domain(a)) || near_pole(record, a)) continue;
      out.push_back(std::move(a));
      ok = true;
    }
    if (!ok) {
      throw SamplingExhausted(record.id + ": no admissible point after " + std::to_string(kMaxRedraws) + " redraws");
    }
  }
  return out;
}

VerificationReport verify_numeric(const std::string& id, const SampleSpec& spec, const NumericContext& ctx,
                                  const std::vector<ParamAssignment>& explicit_points) {
  auto t0 = std::chrono::steady_clock::now();
  const IdentityRecord& r = lookup(id);
  if (!r.supports(Mode::kNumeric)) throw UsageError(id + " does not support NUMERIC");
  VerificationReport rep;
  rep.id = id;
  rep.mode = Mode::kNumeric;
  rep.expected = r.expected;
  rep.seed = spec.seed;

  // Sides are summed well below tol so that truncation never decides a status.
  NumericContext eval = ctx;
  eval.tol = std::max(ctx.tol * 1e-5, std::pow(10.0, -static_cast<double>(ctx.digits)));

  std::vector<ParamAssignment> points;
  try {
    points = explicit_points.empty() ? sample_params(r, spec) : explicit_points;
  } catch (const QidError& e) {
    SampleEntry s;
    s.status = Status::kError;
    s.detail = e.kind() + ": " + e.what();
    rep.samples.push_back(s);
    rep.aggregate = Status::kError;
    rep.seconds = seconds_since(t0);
    return rep;
  }
  Real tol = Real::from_double(ctx.tol, 64);
  for (size_t i = 0; i < points.size(); ++i) {
    SampleEntry s;
    s.index = static_cast<long>(i);
    s.params = points[i].describe();
    try {
      ComplexHP l = std::get<ComplexHP>(evaluate_side(id, Side::kLhs, points[i], Mode::kNumeric, eval));
      ComplexHP rr = std::get<ComplexHP>(evaluate_side(id, Side::kRhs, points[i], Mode::kNumeric, eval));
      s.lhs = l.to_string(static_cast<int>(ctx.digits));
      s.rhs = rr.to_string(static_cast<int>(ctx.digits));
      s.discrepancy = relative_discrepancy(l, rr);
      s.status = s.discrepancy < tol ? Status::kPass : Status::kFail;
    } catch (const QidError& e) {
      s.status = Status::kError;
      s.detail = e.kind() + ": " + e.what();
    }
    rep.samples.push_back(std::move(s));
  }
  rep.aggregate = aggregate(r, rep.samples, ctx.tol);
  rep.seconds = seconds_since(t0);
  return rep;
}

std::string polynomial_witness(const LaurentSeriesQ& lhs, const LaurentSeriesQ& rhs) {
  std::string out = "lhs = " + lhs.to_string(64) + "; rhs = " + rhs.to_string(64);
  if (!lhs.is_exact() || !rhs.is_exact() || rhs.is_zero() || lhs.is_zero()) return out;
  // exact quotient when rhs divides lhs
  long top = lhs.degree() - rhs.degree();
  if (top < lhs.valuation() - rhs.valuation()) return out;
  LaurentSeriesQ quo = ps_div(lhs, rhs, top).truncated(top);
  LaurentSeriesQ exact = LaurentSeriesQ::from_coeffs(quo.offset(), quo.coeffs());
  if (exact * rhs == lhs) out += "; lhs/rhs = " + exact.to_string(64);
  return out;
}

VerificationReport verify_formal(const std::string& id, long order, const std::vector<ParamAssignment>& explicit_cases) {
  auto t0 = std::chrono::steady_clock::now();
  const IdentityRecord& r = lookup(id);
  Mode mode = r.supports(Mode::kExactPoly) ? Mode::kExactPoly : Mode::kFormal;
  if (!r.supports(mode)) throw UsageError(id + " does not support FORMAL or EXACT-POLY");
  VerificationReport rep;
  rep.id = id;
  rep.mode = mode;
  rep.expected = r.expected;
  std::vector<ParamAssignment> cases = explicit_cases.empty() ? r.formal_cases() : explicit_cases;
  NumericContext unused;
  for (size_t i = 0; i < cases.size(); ++i) {
    SampleEntry s;
    s.index = static_cast<long>(i);
    s.params = cases[i].describe();
    s.discrepancy = Real::from_long(0, 64);
    try {
      auto l = std::get<LaurentSeriesQ>(evaluate_side(id, Side::kLhs, cases[i], mode, unused, order));
      auto rr = std::get<LaurentSeriesQ>(evaluate_side(id, Side::kRhs, cases[i], mode, unused, order));
      if (mode == Mode::kFormal && std::min(l.order(), rr.order()) < order) {
        throw TruncationError("sides known only to order " + std::to_string(std::min(l.order(), rr.order())));
      }
      s.lhs = l.to_string(8);
      s.rhs = rr.to_string(8);
      if (mode == Mode::kFormal) {
        l = l.truncated(order);
        rr = rr.truncated(order);
      }
      if (auto e = first_mismatch(l, rr)) {
        s.status = Status::kFail;
        s.discrepancy = Real::from_long(1, 64);
        s.detail = "first mismatch at q^" + std::to_string(*e) + ": lhs " + l.coeff(*e).get_str() + ", rhs " +
                   rr.coeff(*e).get_str();
        if (mode == Mode::kExactPoly) s.detail += "; " + polynomial_witness(l, rr);
      }
    } catch (const QidError& e) {
      s.status = Status::kError;
      s.detail = e.kind() + ": " + e.what();
    }
    rep.samples.push_back(std::move(s));
  }
  rep.aggregate = aggregate(r, rep.samples, 0.0);
  rep.seconds = seconds_since(t0);
  return rep;
}

std::vector<VerificationReport> run_suite(const std::string& filter, const SuiteOptions& opts) {
  struct Task {
    std::string id;
    Mode mode;
  };
  std::vector<Task> tasks;
  for (const IdentityRecord* r : list(filter)) {
    if (r->supports(Mode::kNumeric)) tasks.push_back({r->id, Mode::kNumeric});
    if (r->supports(Mode::kFormal) || r->supports(Mode::kExactPoly)) {
      tasks.push_back({r->id, r->supports(Mode::kExactPoly) ? Mode::kExactPoly : Mode::kFormal});
    }
  }
  std::vector<VerificationReport> out(tasks.size());
  auto run = [&](size_t i) {
    const Task& t = tasks[i];
    out[i] = t.mode == Mode::kNumeric ? verify_numeric(t.id, opts.sample, opts.ctx) : verify_formal(t.id, opts.order);
    out[i].seed = opts.sample.seed;
  };
  unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (size_t i = 0; i < tasks.size(); ++i) run(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < tasks.size(); i = next++) run(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::sort(out.begin(), out.end(), [](const VerificationReport& a, const VerificationReport& b) {
    return std::tie(a.id, a.mode) < std::tie(b.id, b.mode);
  });
  return out;
}

int exit_code(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (r.aggregate != Status::kPass && r.aggregate != Status::kExpectedFailConfirmed) return 1;
  }
  return 0;
}

namespace {

nlohmann::ordered_json report_object(const VerificationReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["identity"] = r.id;
  j["mode"] = to_string(r.mode);
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    nlohmann::ordered_json e;
    e["params"] = s.params;
    e["discrepancy"] = s.status == Status::kError ? std::string("nan") : s.discrepancy.to_string(6);
    e["status"] = to_string(s.status);
    if (!s.detail.empty()) e["detail"] = s.detail;
    samples.push_back(e);
  }
  j["samples"] = samples;
  j["aggregate"] = to_string(r.aggregate);
  j["tool_version"] = kToolVersion;
  j["seed"] = r.seed;
  if (timing) j["seconds"] = std::round(r.seconds * 1000.0) / 1000.0;
  return j;
}

}  // namespace

std::string report_json(const VerificationReport& r, bool timing) { return report_object(r, timing).dump(2); }

std::string suite_json(const std::vector<VerificationReport>& reports, const SuiteOptions& opts, bool timing) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = opts.sample.seed;
  j["digits"] = opts.ctx.digits;
  j["tol"] = opts.ctx.tol;
  j["samples_per_record"] = opts.sample.count;
  j["order"] = opts.order;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_object(r, timing));
  j["reports"] = arr;
  j["exit_code"] = exit_code(reports);
  return j.dump(2);
}

std::string suite_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  std::map<Status, int> counts;
  for (const auto& r : reports) {
    ++counts[r.aggregate];
    Real worst = Real::from_long(0, 64);
    for (const auto& s : r.samples) {
      if (s.status != Status::kError && worst < s.discrepancy) worst = s.discrepancy;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-10s %-24s %3zu samples  max discrepancy %s  %.2fs\n", r.id.c_str(),
                  to_string(r.mode).c_str(), to_string(r.aggregate).c_str(), r.samples.size(),
                  worst.to_string(3).c_str(), r.seconds);
    os << line;
    for (const auto& s : r.samples) {
      if (s.status != Status::kPass && !s.detail.empty()) os << "    [" << s.index << "] " << s.detail << "\n";
    }
  }
  os << reports.size() << " reports:";
  for (const auto& [st, n] : counts) os << " " << to_string(st) << "=" << n;
  os << "\n";
  return os.str();
}

std::vector<DCheckEntry> run_dcheck(const DCheckSpec& spec, const DCheckOptions& opts, const NumericContext& ctx) {
  Draw draw(opts.seed, Strategy::kUniform);
  std::vector<DCheckEntry> out;
  for (long m : opts.ms) {
    for (long i = 0; i < opts.samples; ++i) {
      DCheckEntry e;
      e.m = m;
      std::complex<double> qd = draw.cpx(0.2, 0.5);
      e.q = opts.q ? ctx.lift(*opts.q) : ComplexHP::from_double(qd.real(), qd.imag(), 53);
      std::complex<double> qv{e.q.re().to_double(), e.q.im().to_double()};
      std::complex<double> ad = std::pow(qv, -static_cast<double>(m)) / draw.cpx(0.3, 0.7);
      e.a = opts.a ? ctx.lift(*opts.a) : ComplexHP::from_double(ad.real(), ad.imag(), 53);
      std::optional<mpq_class> a_exact = opts.a ? opts.a_exact : std::nullopt;
      try {
        NumericContext w = ctx;
        ComplexHP q = ctx.lift(e.q), a = ctx.lift(e.a);
        SeriesFamily fam;
        fam.support = spec.support;
        fam.term_at = [&](long n) { return spec.T.instantiate(n, a, a_exact, w); };
        TermExpr s_term = spec.S.instantiate(0, a, a_exact, w);
        Evaluatable S = [&](const ComplexHP& x) { return eval_term(s_term, x, q, w); };
        e.result = apply_prop13(fam, S, a, q, m, w, a_exact);
        e.status = e.result.pass ? Status::kPass : Status::kFail;
      } catch (const QidError& err) {
        e.status = Status::kError;
        e.detail = err.kind() + ": " + err.what();
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace qid
