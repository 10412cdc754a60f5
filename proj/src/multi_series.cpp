#include "rmt/multi_series.hpp"

#include <numeric>
#include <utility>

#include "rmt/errors.hpp"

namespace rmt {

MultiSeries::MultiSeries(std::vector<std::string> vars, int cutoff)
    : vars_(std::move(vars)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw UsageError("MultiSeries: negative cutoff");
}

MultiSeries MultiSeries::constant(std::vector<std::string> vars, int cutoff, const Rational& c) {
  MultiSeries s(std::move(vars), cutoff);
  s.add_term(Exponents(s.vars_.size(), 0), c);
  return s;
}

MultiSeries MultiSeries::variable(std::vector<std::string> vars, int cutoff, std::size_t var) {
  MultiSeries s(std::move(vars), cutoff);
  if (var >= s.vars_.size()) throw UsageError("MultiSeries::variable: index out of range");
  Exponents e(s.vars_.size(), 0);
  e[var] = 1;
  s.add_term(e, 1);
  return s;
}

int MultiSeries::degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void MultiSeries::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw UsageError("MultiSeries: exponent vector has wrong length");
  for (int x : e)
    if (x < 0) throw UsageError("MultiSeries: negative exponent");
  if (c == 0 || degree(e) > cutoff_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiSeries::coeff(const Exponents& e) const {
  if (e.size() != vars_.size()) throw UsageError("coeff: exponent vector has wrong length");
  if (degree(e) > cutoff_) throw UsageError("coeff: monomial exceeds the series cutoff");
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiSeries::constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

void MultiSeries::check_compatible(const MultiSeries& other, const char* op) const {
  if (vars_ != other.vars_) throw UsageError(std::string(op) + ": mismatched variable sets");
  if (cutoff_ != other.cutoff_) throw UsageError(std::string(op) + ": mismatched cutoffs");
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& other) {
  check_compatible(other, "series add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& other) {
  check_compatible(other, "series sub");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiSeries& MultiSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

bool operator==(const MultiSeries& a, const MultiSeries& b) {
  return a.vars_ == b.vars_ && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

MultiSeries MultiSeries::truncated(int new_cutoff) const {
  if (new_cutoff > cutoff_) throw UsageError("truncated: cannot raise the cutoff");
  MultiSeries r(vars_, new_cutoff);
  for (const auto& [e, c] : terms_)
    if (degree(e) <= new_cutoff) r.terms_.emplace(e, c);
  return r;
}

MultiSeries MultiSeries::scaled_variables(const std::vector<Rational>& scales) const {
  if (scales.size() != vars_.size()) throw UsageError("scaled_variables: wrong number of scales");
  MultiSeries r(vars_, cutoff_);
  for (const auto& [e, c] : terms_) {
    Rational f = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) f *= scales[i];
    r.add_term(e, f);
  }
  return r;
}

MultiSeries MultiSeries::homogeneous_part(int d) const {
  MultiSeries r(vars_, cutoff_);
  for (const auto& [e, c] : terms_)
    if (degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

Rational MultiSeries::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) throw UsageError("eval: wrong number of coordinates");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) t *= point[i];
    sum += t;
  }
  return sum;
}

MultiSeries series_mul(const MultiSeries& a, const MultiSeries& b) {
  if (a.vars() != b.vars()) throw UsageError("series_mul: mismatched variable sets");
  if (a.cutoff() != b.cutoff()) throw UsageError("series_mul: mismatched cutoffs");
  MultiSeries r(a.vars(), a.cutoff());
  Exponents e(a.vars().size());
  for (const auto& [ea, ca] : a.terms()) {
    const int da = MultiSeries::degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (da + MultiSeries::degree(eb) > a.cutoff()) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiSeries series_exp(const MultiSeries& f) {
  if (f.constant_term() != 0) throw UsageError("series_exp: constant term must be zero");
  MultiSeries result = MultiSeries::constant(f.vars(), f.cutoff(), 1);
  MultiSeries power = result;
  // f^k has minimal degree >= k, so k <= cutoff suffices.
  for (int k = 1; k <= f.cutoff(); ++k) {
    power = series_mul(power, f);
    if (power.is_zero()) break;
    power *= Rational(1, k);
    result += power;
  }
  return result;
}

MultiSeries series_log(const MultiSeries& f) {
  if (f.constant_term() != 1) throw UsageError("series_log: constant term must be 1");
  MultiSeries g = f - MultiSeries::constant(f.vars(), f.cutoff(), 1);
  MultiSeries result(f.vars(), f.cutoff());
  MultiSeries power = MultiSeries::constant(f.vars(), f.cutoff(), 1);
  for (int k = 1; k <= f.cutoff(); ++k) {
    power = series_mul(power, g);
    if (power.is_zero()) break;
    result += power * Rational(k % 2 == 1 ? 1 : -1, k);
  }
  return result;
}

Rational coeff(const MultiSeries& f, const Exponents& monomial) { return f.coeff(monomial); }

MultiSeries divide_by_sum(const MultiSeries& p, std::size_t var_a, std::size_t var_b) {
  const std::size_t n = p.vars().size();
  if (var_a >= n || var_b >= n || var_a == var_b) throw UsageError("divide_by_sum: bad variable indices");
  if (p.cutoff() < 1) throw UsageError("divide_by_sum: cutoff too small");

  // Synthetic division in x_a: if p = sum_i c_i x_a^i then the quotient has
  // d_{i-1} = c_i - x_b d_i, and c_0 - x_b d_0 must vanish.
  MultiSeries rem = p;
  MultiSeries quot(p.vars(), p.cutoff() - 1);
  while (!rem.is_zero()) {
    // Highest x_a power first; ties resolved by the map order.
    const Exponents* lead = nullptr;
    for (const auto& [e, c] : rem.terms())
      if (lead == nullptr || e[var_a] > (*lead)[var_a]) lead = &e;
    if ((*lead)[var_a] == 0) throw InternalError("divide_by_sum: polynomial is not divisible by the linear form");
    Exponents q = *lead;
    const Rational c = rem.terms().at(*lead);
    q[var_a] -= 1;
    quot.add_term(q, c);
    Exponents e1 = q;
    e1[var_a] += 1;
    Exponents e2 = q;
    e2[var_b] += 1;
    rem.add_term(e1, -c);
    rem.add_term(e2, -c);
  }
  return quot;
}

nlohmann::json to_json(const MultiSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) {
    nlohmann::json t = rational_to_json(c);
    t["exp"] = e;
    terms.push_back(std::move(t));
  }
  return {{"vars", s.vars()}, {"cutoff", s.cutoff()}, {"terms", std::move(terms)}};
}

MultiSeries multi_series_from_json(const nlohmann::json& j) {
  MultiSeries s(j.at("vars").get<std::vector<std::string>>(), j.at("cutoff").get<int>());
  for (const auto& t : j.at("terms")) {
    const auto e = t.at("exp").get<Exponents>();
    if (MultiSeries::degree(e) > s.cutoff()) throw UsageError("series JSON: term above cutoff");
    s.add_term(e, rational_from_json(t));
  }
  return s;
}

nlohmann::json to_json(const NLaurent& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    nlohmann::json t = rational_to_json(c);
    t["exp"] = std::vector<int>{e};
    terms.push_back(std::move(t));
  }
  return {{"vars", std::vector<std::string>{"nu"}}, {"cutoff", p.max_exponent()}, {"terms", std::move(terms)}};
}

NLaurent nlaurent_from_json(const nlohmann::json& j) {
  if (j.at("vars") != nlohmann::json::array({"nu"})) throw UsageError("NLaurent JSON: vars must be [\"nu\"]");
  NLaurent p;
  for (const auto& t : j.at("terms")) {
    const auto e = t.at("exp").get<std::vector<int>>();
    if (e.size() != 1) throw UsageError("NLaurent JSON: exponent must have length 1");
    p += NLaurent::monomial(e[0], rational_from_json(t));
  }
  return p;
}

}  // namespace rmt
