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

#include "qid/registry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "qid/errors.hpp"

namespace qid {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::kNumeric:
      return "NUMERIC";
    case Mode::kFormal:
      return "FORMAL";
    case Mode::kExactPoly:
      return "EXACT-POLY";
  }
  return "?";
}

std::string to_string(Expected e) { return e == Expected::kPass ? "PASS" : "EXPECTED-FAIL"; }

std::optional<Mode> parse_mode(const std::string& s) {
  for (Mode m : {Mode::kNumeric, Mode::kFormal, Mode::kExactPoly}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

namespace {

const ParamValue& find(const ParamAssignment& a, const std::string& name) {
  auto it = a.values.find(name);
  if (it == a.values.end()) throw UsageError("parameter '" + name + "' is not assigned");
  return it->second;
}

}  // namespace

ComplexHP ParamAssignment::num(const std::string& name, const NumericContext& ctx) const {
  const ParamValue& v = find(*this, name);
  if (auto* n = std::get_if<long>(&v)) return ctx.integer(*n);
  if (auto* r = std::get_if<mpq_class>(&v)) return ComplexHP::from_rational(*r, ctx.work_bits());
  if (auto* z = std::get_if<ComplexHP>(&v)) return ctx.lift(*z);
  if (name == "q") throw UsageError("q cannot be a formal parameter in numeric evaluation");
  return std::get<FormalParam>(v).value(num("q", ctx), ctx);
}

std::complex<double> ParamAssignment::approx(const std::string& name) const {
  const ParamValue& v = find(*this, name);
  if (auto* n = std::get_if<long>(&v)) return static_cast<double>(*n);
  if (auto* r = std::get_if<mpq_class>(&v)) return r->get_d();
  if (auto* z = std::get_if<ComplexHP>(&v)) return {z->re().to_double(), z->im().to_double()};
  const FormalParam& f = std::get<FormalParam>(v);
  return f.s.get_d() * std::pow(approx("q"), static_cast<double>(f.j));
}

long ParamAssignment::integer(const std::string& name) const {
  const ParamValue& v = find(*this, name);
  if (auto* n = std::get_if<long>(&v)) return *n;
  throw UsageError("parameter '" + name + "' must be an integer");
}

FormalParam ParamAssignment::formal(const std::string& name) const {
  const ParamValue& v = find(*this, name);
  if (auto* f = std::get_if<FormalParam>(&v)) return *f;
  if (auto* n = std::get_if<long>(&v)) return FormalParam::qpow(0, *n);
  if (auto* r = std::get_if<mpq_class>(&v)) return FormalParam::qpow(0, *r);
  throw UsageError("parameter '" + name + "' must be formal (s*q^j)");
}

std::map<std::string, std::string> ParamAssignment::describe() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, v] : values) {
    if (auto* n = std::get_if<long>(&v)) {
      out[name] = std::to_string(*n);
    } else if (auto* r = std::get_if<mpq_class>(&v)) {
      out[name] = r->get_str();
    } else if (auto* z = std::get_if<ComplexHP>(&v)) {
      out[name] = z->to_string(17);
    } else {
      out[name] = std::get<FormalParam>(v).to_string();
    }
  }
  return out;
}

double Draw::unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double Draw::real(double lo, double hi) {
  double u = unit();
  if (strategy_ == Strategy::kBoundaryBiased) u = (1.0 - std::cos(std::numbers::pi * u)) / 2.0;
  return lo + (hi - lo) * u;
}

std::complex<double> Draw::cpx(double lo, double hi) {
  double r = real(lo, hi);
  double t = (2.0 * unit() - 1.0) * std::numbers::pi;
  return std::polar(r, t);
}

long Draw::integer(long lo, long hi) {
  return lo + static_cast<long>(unit() * static_cast<double>(hi - lo + 1));
}

mpq_class Draw::rational(double lo, double hi) {
  while (true) {
    long r = integer(2, 12);
    long p = std::lround(real(lo, hi) * static_cast<double>(r));
    if (unit() < 0.5) p = -p;
    mpq_class v(p, r);
    v.canonicalize();
    double a = std::abs(v.get_d());
    if (a >= lo && a <= hi && p != 0) return v;
  }
}

bool IdentityRecord::supports(Mode m) const { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

const IdentityRecord& lookup(const std::string& id) {
  for (const auto& r : catalog()) {
    if (r.id == id) return r;
  }
  throw NotFound("no identity with id '" + id + "'");
}

bool glob_match(const std::string& pattern, const std::string& text) {
  // iterative matcher with single-star backtracking
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<const IdentityRecord*> list(const std::string& filter) {
  std::vector<const IdentityRecord*> out;
  for (const auto& r : catalog()) {
    if (filter.empty() || glob_match(filter, r.id)) out.push_back(&r);
  }
  return out;
}

SideValue evaluate_side(const std::string& id, Side side, const ParamAssignment& assignment, Mode mode,
                        const NumericContext& ctx, long order) {
  const IdentityRecord& r = lookup(id);
  if (!r.supports(mode)) throw UsageError(id + " does not support mode " + to_string(mode));
  try {
    if (mode == Mode::kNumeric) {
      if (r.domain && !r.domain(assignment)) throw DomainError("assignment violates the domain hypotheses");
      const NumericSide& f = side == Side::kLhs ? r.lhs_num : r.rhs_num;
      return ctx.round(f(assignment, ctx));
    }
    const FormalSide& f = side == Side::kLhs ? r.lhs_formal : r.rhs_formal;
    return f(assignment, order);
  } catch (const RecordError&) {
    throw;
  } catch (const QidError& e) {
    throw RecordError(id, e);
  }
}

std::string catalog_json(const std::vector<const IdentityRecord*>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const IdentityRecord* r : records) {
    nlohmann::ordered_json j;
    j["id"] = r->id;
    j["citation"] = r->anchor;
    j["quote"] = r->quote;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& p : r->params) params.push_back({{"name", p.name}, {"domain", p.constraint}});
    j["params"] = params;
    nlohmann::ordered_json modes = nlohmann::ordered_json::array();
    for (Mode m : r->modes) modes.push_back(to_string(m));
    j["modes"] = modes;
    j["expected"] = to_string(r->expected);
    if (!r->companion.empty()) j["companion"] = r->companion;
    if (!r->notes.empty()) j["notes"] = r->notes;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace qid
