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

// qid: verify the catalog, expand identities, evaluate q-series.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qid/errors.hpp"
#include "qid/harness.hpp"
#include "qid/qcore.hpp"
#include "qid/registry.hpp"
#include "qid/series.hpp"

using namespace qid;

namespace {

struct RunFlags {
  long samples = 20;
  std::uint64_t seed = 1;
  long digits = 60;
  double tol = 1e-30;
  long order = 100;
  unsigned threads = 0;
  std::string strategy = "uniform";
  std::string format = "text";
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--samples", f.samples, "samples per numeric record")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "sampling seed");
  cmd->add_option("--digits", f.digits, "decimal digits")->check(CLI::Range(10L, 2000L));
  cmd->add_option("--tol", f.tol, "relative tolerance");
  cmd->add_option("--order", f.order, "formal comparison order")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads (0: hardware)");
  cmd->add_option("--strategy", f.strategy, "sampling strategy")->check(CLI::IsMember({"uniform", "boundary"}));
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

SuiteOptions suite_options(const RunFlags& f) {
  SuiteOptions o;
  o.sample.seed = f.seed;
  o.sample.count = f.samples;
  o.sample.strategy = f.strategy == "boundary" ? Strategy::kBoundaryBiased : Strategy::kUniform;
  o.ctx = NumericContext::with_digits(f.digits, f.tol);
  o.ctx.validate();
  o.order = f.order;
  o.threads = f.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.threads;
  return o;
}

int run_and_print(const std::string& filter, const RunFlags& f) {
  SuiteOptions o = suite_options(f);
  auto reports = run_suite(filter, o);
  if (f.format == "json") {
    std::cout << suite_json(reports, o) << "\n";
  } else {
    std::cout << suite_text(reports);
  }
  return exit_code(reports);
}

std::vector<ComplexHP> parse_list(const std::vector<std::string>& items, Bits bits) {
  std::vector<ComplexHP> out;
  for (const auto& s : items) out.push_back(parse_complex(s, bits));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series identity verifier"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list catalog records");
  bool list_json = false;
  std::string list_filter;
  list_cmd->add_flag("--json", list_json, "emit JSON");
  list_cmd->add_option("filter", list_filter, "id glob");

  auto* verify_cmd = app.add_subcommand("verify", "verify records matching an id or glob");
  std::string verify_target;
  RunFlags verify_flags;
  verify_cmd->add_option("target", verify_target, "id or glob")->required();
  add_run_flags(verify_cmd, verify_flags);

  auto* report_cmd = app.add_subcommand("report", "verify the whole catalog");
  bool report_all = false;
  RunFlags report_flags;
  report_cmd->add_flag("--all", report_all, "every record");
  add_run_flags(report_cmd, report_flags);

  auto* expand_cmd = app.add_subcommand("expand", "expand both sides of a formal record");
  std::string expand_id;
  long expand_order = 20;
  expand_cmd->add_option("id", expand_id, "record id")->required();
  expand_cmd->add_option("--order", expand_order, "expansion order")->check(CLI::NonNegativeNumber);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate phi, psi or a q-Pochhammer symbol");
  std::string eval_kind, eval_q, eval_x, eval_a, eval_n = "inf";
  std::vector<std::string> eval_num, eval_den;
  long eval_digits = 60;
  eval_cmd->add_option("kind", eval_kind, "phi | psi | poch")->required()->check(CLI::IsMember({"phi", "psi", "poch"}));
  eval_cmd->add_option("--num", eval_num, "numerator parameters");
  eval_cmd->add_option("--den", eval_den, "denominator parameters");
  eval_cmd->add_option("--q", eval_q, "base q")->required();
  eval_cmd->add_option("--x", eval_x, "argument x");
  eval_cmd->add_option("--a", eval_a, "poch parameter a");
  eval_cmd->add_option("--n", eval_n, "poch index (integer or inf)");
  eval_cmd->add_option("--digits", eval_digits, "decimal digits")->check(CLI::Range(10L, 2000L));

  auto* dcheck_cmd = app.add_subcommand("dcheck", "differentiate an identity at x = q^-m/a and compare");
  std::string dcheck_file, dcheck_a, dcheck_q;
  std::vector<long> dcheck_m{0};
  long dcheck_samples = 5, dcheck_digits = 60;
  std::uint64_t dcheck_seed = 1;
  double dcheck_tol = 1e-30;
  dcheck_cmd->add_option("--spec", dcheck_file, "spec file")->required();
  dcheck_cmd->add_option("--m", dcheck_m, "values of m")->check(CLI::NonNegativeNumber);
  dcheck_cmd->add_option("--a", dcheck_a, "fixed a");
  dcheck_cmd->add_option("--q", dcheck_q, "fixed q");
  dcheck_cmd->add_option("--samples", dcheck_samples, "points per m")->check(CLI::PositiveNumber);
  dcheck_cmd->add_option("--seed", dcheck_seed, "sampling seed");
  dcheck_cmd->add_option("--digits", dcheck_digits, "decimal digits")->check(CLI::Range(10L, 2000L));
  dcheck_cmd->add_option("--tol", dcheck_tol, "relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list_cmd) {
      auto records = list(list_filter);
      if (list_json) {
        std::cout << catalog_json(records) << "\n";
      } else {
        for (const auto* r : records) {
          std::string modes;
          for (Mode m : r->modes) modes += (modes.empty() ? "" : ",") + to_string(m);
          std::printf("%-24s %-18s %-14s %s\n", r->id.c_str(), modes.c_str(), to_string(r->expected).c_str(),
                      r->anchor.c_str());
        }
      }
      return 0;
    }
    if (*verify_cmd) {
      if (list(verify_target).empty() && verify_target.find_first_of("*?") == std::string::npos) {
        lookup(verify_target);  // NotFound for an unknown plain id
      }
      return run_and_print(verify_target, verify_flags);
    }
    if (*report_cmd) {
      if (!report_all) throw UsageError("report needs --all");
      return run_and_print("*", report_flags);
    }
    if (*expand_cmd) {
      const IdentityRecord& r = lookup(expand_id);
      Mode mode = r.supports(Mode::kExactPoly) ? Mode::kExactPoly : Mode::kFormal;
      if (!r.supports(mode)) throw UsageError(expand_id + " has no formal mode");
      NumericContext ctx;
      for (const auto& c : r.formal_cases()) {
        std::string desc;
        for (const auto& [k, v] : c.describe()) desc += (desc.empty() ? "" : ", ") + k + "=" + v;
        auto l = std::get<LaurentSeriesQ>(evaluate_side(expand_id, Side::kLhs, c, mode, ctx, expand_order));
        auto rr = std::get<LaurentSeriesQ>(evaluate_side(expand_id, Side::kRhs, c, mode, ctx, expand_order));
        if (mode == Mode::kFormal) {
          l = l.truncated(expand_order);
          rr = rr.truncated(expand_order);
        }
        std::cout << "[" << desc << "]\n  lhs = " << l.to_string(expand_order + 2)
                  << "\n  rhs = " << rr.to_string(expand_order + 2) << "\n";
      }
      return 0;
    }
    if (*eval_cmd) {
      NumericContext ctx = NumericContext::with_digits(eval_digits);
      Bits bits = ctx.work_bits();
      ComplexHP q = parse_complex(eval_q, bits), value;
      if (eval_kind == "poch") {
        if (eval_a.empty()) throw UsageError("poch needs --a");
        ComplexHP a = parse_complex(eval_a, bits);
        PochIndex n = eval_n == "inf" ? PochIndex::infinity() : PochIndex(std::stol(eval_n));
        value = poch(a, q, n, ctx);
      } else {
        if (eval_x.empty()) throw UsageError(eval_kind + " needs --x");
        ComplexHP x = parse_complex(eval_x, bits);
        auto num = parse_list(eval_num, bits), den = parse_list(eval_den, bits);
        value = eval_kind == "phi" ? eval_phi(PhiSpec{num, den, q, x}, ctx) : eval_psi(PsiSpec{num, den, q, x}, ctx);
      }
      std::cout << value.to_string(static_cast<int>(eval_digits)) << "\n";
      return 0;
    }
    if (*dcheck_cmd) {
      std::ifstream in(dcheck_file);
      if (!in) throw UsageError("cannot read " + dcheck_file);
      std::stringstream buf;
      buf << in.rdbuf();
      DCheckSpec spec = parse_dcheck(buf.str());
      NumericContext ctx = NumericContext::with_digits(dcheck_digits, dcheck_tol);
      DCheckOptions o;
      o.ms = dcheck_m;
      o.samples = dcheck_samples;
      o.seed = dcheck_seed;
      if (!dcheck_a.empty()) {
        o.a = parse_complex(dcheck_a, ctx.work_bits());
        try {
          mpq_class r(dcheck_a);
          r.canonicalize();
          o.a_exact = r;
        } catch (const std::invalid_argument&) {
        }
      }
      if (!dcheck_q.empty()) o.q = parse_complex(dcheck_q, ctx.work_bits());
      int rc = 0;
      for (const auto& e : run_dcheck(spec, o, ctx)) {
        std::cout << "m=" << e.m << " a=" << e.a.to_string(17) << " q=" << e.q.to_string(17) << "  ";
        if (e.status == Status::kError) {
          std::cout << "ERROR " << e.detail << "\n";
        } else {
          std::cout << to_string(e.status) << " discrepancy " << e.result.discrepancy.to_string(3) << "\n";
        }
        if (e.status != Status::kPass) rc = 1;
      }
      return rc;
    }
  } catch (const NotFound& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 2;
  } catch (const QidError& e) {
    std::cerr << "qid: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qid: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
