#include "rmt/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "rmt/asymptotics.hpp"
#include "rmt/closed_forms.hpp"
#include "rmt/intersection.hpp"
#include "rmt/numerics.hpp"
#include "rmt/wick.hpp"

namespace rmt::acceptance {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    failures.push_back(what);
  }

  std::string summary() const {
    std::string out;
    for (const auto& f : failures) out += f + "; ";
    return out + detail.str();
  }
};

using Check = std::function<void(Outcome&)>;

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 means no runtime requirement
  Check check;
};

NLaurent nl(std::initializer_list<std::pair<int, Rational>> terms) {
  NLaurent p;
  for (const auto& [e, c] : terms) p += NLaurent::monomial(e, c);
  return p;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Degree lists with 1..3 entries, entries >= 1, even total <= 12.
void parity_lists(std::vector<std::vector<int>>& out, std::vector<int>& cur, int min_part, int total) {
  if (!cur.empty() && total % 2 == 0) out.push_back(cur);
  if (cur.size() == 3) return;
  for (int k = min_part; total + k <= 12; ++k) {
    cur.push_back(k);
    parity_lists(out, cur, k, total + k);
    cur.pop_back();
  }
}

void c1_oracle_vs_closed(Outcome& o, int threads) {
  for (int k = 1; k <= 6; ++k) {
    const NLaurent oracle = wick::vertex_moment({2 * k}, {}, threads);
    const NLaurent closed = closed::exact_one_point_moment(k).symbolic;
    o.require(oracle == closed, "k=" + std::to_string(k) + ": " + oracle.str() + " vs " + closed.str());
  }
  o.detail << "k = 1..6 agree";
}

void c2_u_series(Outcome& o) {
  const closed::USeries u = closed::u_series(6);
  const NLaurent c4 = nl({{0, Rational(1, 12)}, {2, Rational(1, 24)}});
  const NLaurent c6 = nl({{0, Rational(1, 144)}, {2, Rational(1, 72)}});
  o.require(u.coeff(4) == c4, "(it)^4: " + u.coeff(4).str());
  o.require(u.coeff(6) == c6, "(it)^6: " + u.coeff(6).str());
  o.detail << "(it)^4 = " << u.coeff(4).str() << ", (it)^6 = " << u.coeff(6).str();
}

Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void c3_genus(Outcome& o, int threads) {
  for (int k = 4; k <= 6; ++k) {
    const NLaurent v = wick::vertex_moment({2 * k}, {}, threads);
    const Rational cat(closed::catalan(k));
    const Integer K = k;
    const Rational g1 = cat * frac(K * (K - 1) * (K + 1), 12);
    const Rational g2 = cat * frac(K * (K + 1) * (K - 1) * (K - 2) * (K - 3) * (5 * K - 2), 1440);
    o.require(v.coeff(2) == g1, "k=" + std::to_string(k) + " nu^2");
    o.require(v.coeff(4) == g2, "k=" + std::to_string(k) + " nu^4");
  }
  o.detail << "nu^2 and nu^4 parts for k = 4, 5, 6";
}

void c4_connected(Outcome& o, int threads) {
  const NLaurent c11 = wick::connected_moment({1, 1}, {}, threads);
  const NLaurent c22 = wick::connected_moment({2, 2}, {}, threads);
  o.require(c11 == NLaurent::monomial(2, 1), "[1,1] connected = " + c11.str());
  o.require(c22 == NLaurent::monomial(2, 2), "[2,2] connected = " + c22.str());
  std::vector<std::vector<int>> lists;
  std::vector<int> cur;
  parity_lists(lists, cur, 1, 0);
  for (const auto& ks : lists) {
    for (const NLaurent& p : {wick::vertex_moment(ks, {}, threads), wick::connected_moment(ks, {}, threads)})
      for (const auto& [e, c] : p.terms()) o.require(e % 2 == 0, "odd nu power in a correlator");
  }
  o.detail << "[1,1] = " << c11.str() << ", [2,2] = " << c22.str() << ", parity on " << lists.size() << " lists";
}

void c5_triple_sum(Outcome& o) {
  const double exact = to_double(closed::triple_sum_scaled(30, 15, 50));
  const double asym = asym::triple_sum_asymptotic_scaled(30, 15, 50).value();
  const double ratio = asym / exact;
  o.require(std::fabs(exact - 7.4632e55) <= 0.005e55, "exact " + fmt(exact));
  o.require(std::fabs(asym - 7.4864e55) <= 0.005e55, "asymptotic " + fmt(asym));
  o.require(std::fabs(ratio - 1.0031) <= 0.001, "ratio " + fmt(ratio));
  o.detail << "exact " << fmt(exact) << ", asymptotic " << fmt(asym) << ", ratio " << fmt(ratio);
}

void c6_one_point(Outcome& o) {
  const intersect::OnePointSeries f = intersect::f_one_point(6);
  for (int g = 0; g <= 6; ++g) {
    Integer den = 1;
    for (int i = 1; i <= g; ++i) den *= 24 * i;
    const Rational expected(Integer(1), den);
    o.require(intersect::one_point_tau(g) == expected, "one_point_tau(" + std::to_string(g) + ")");
    o.require(f.coefficient(3 * g - 2, 2 * g) == expected, "F(x) coefficient at g=" + std::to_string(g));
  }
  o.detail << "g = 0..6";
}

void c7_two_point(Outcome& o) {
  const intersect::IntersectionTable t = intersect::two_point_table(3);
  const std::vector<std::pair<intersect::TauIndices, std::pair<int, Rational>>> expected{
      {{2, 0}, {1, Rational(1, 24)}},     {{1, 1}, {1, Rational(1, 24)}},   {{5, 0}, {2, Rational(1, 1152)}},
      {{4, 1}, {2, Rational(1, 384)}},    {{3, 2}, {2, Rational(29, 5760)}}};
  for (const auto& [tau, gv] : expected) {
    const Rational got = t.at(tau, gv.first);
    o.require(got == gv.second, "<tau_" + std::to_string(tau[0]) + " tau_" + std::to_string(tau[1]) + "> = " + to_string(got));
  }
  const intersect::CheckReport s = intersect::string_equation_check(3);
  o.require(s.ok, "string equation: " + (s.failures.empty() ? std::string() : s.failures.front()));
  o.detail << "5 values exact, string equation " << s.checked << " checks";
}

void c8_kontsevich(Outcome& o, int threads, std::optional<intersect::KontsevichResult>& slot) {
  slot = intersect::kontsevich_n2_logz(11, threads);
  const intersect::KontsevichResult& out = *slot;
  using M = intersect::ModuliMonomial;
  const std::vector<std::pair<M, Rational>> expected{
      {M{{3}}, Rational(1, 6)},          {M{{0, 1}}, Rational(1, 24)},     {M{{3, 1}}, Rational(1, 6)},
      {M{{0, 2}}, Rational(1, 48)},      {M{{1, 0, 1}}, Rational(1, 24)},  {M{{3, 2}}, Rational(1, 6)},
      {M{{0, 3}}, Rational(1, 72)},      {M{{2, 0, 0, 1}}, Rational(1, 48)}, {M{{1, 1, 1}}, Rational(1, 12)},
      {M{{0, 0, 0, 0, 1}}, Rational(1, 1152)}};
  for (const auto& [mono, value] : expected) {
    const auto it = out.coefficients.find(mono);
    const Rational got = it == out.coefficients.end() ? Rational(0) : it->second;
    o.require(got == value, mono.str() + " = " + to_string(got));
  }
  o.detail << "10 coefficients exact (" << out.coefficients.size() << " monomials in total)";
}

void c9_cross_route(Outcome& o, const intersect::KontsevichResult& k) {
  const intersect::CheckReport r = intersect::cross_route_check(k, 3);
  o.require(r.ok, r.failures.empty() ? "failed" : r.failures.front());
  o.detail << r.checked << " comparisons";
}

void c10_edge(Outcome& o) {
  for (double s : {0.5, 1.0, 2.0}) {
    const double q = num::edge_ft_quadrature(s).value;
    const double closed = asym::edge_ft_closed({0.0, -s}, 1).real();
    const double rel = std::fabs(q - closed) / std::fabs(closed);
    o.require(rel <= 1e-6, "s=" + fmt(s) + " rel " + fmt(rel));
    o.detail << "s=" << fmt(s) << " rel " << fmt(rel) << " ";
  }
}

void c11_scaling(Outcome& o) {
  const auto rows = asym::compare_along_ray(1.0, {27, 64, 125, 216});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.detail << "N=" << rows[i].n << " k=" << rows[i].k << " err " << fmt(rows[i].relative_error) << " ";
    if (i > 0) o.require(rows[i].relative_error < rows[i - 1].relative_error, "not decreasing at N=" + std::to_string(rows[i].n));
  }
}

void c12_semicircle(Outcome& o) {
  double worst = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double cat = to_double(Rational(closed::catalan(k)));
    worst = std::max(worst, std::fabs(asym::semicircle_moment(k) - cat));
  }
  o.require(worst <= 1e-10, "max error " + fmt(worst));
  o.detail << "max |error| " << fmt(worst) << " for k <= 8";
}

void c13_monte_carlo(Outcome& o, int threads) {
  num::SampleConfig cfg;
  cfg.n = 100;
  cfg.samples = 20000;
  const num::McEstimate e4 = num::mc_vertex_estimate({4}, cfg, false, threads);
  const double t4 = 2.0 + 1e-4;
  o.require(std::fabs(e4.mean - t4) <= 4 * e4.stderr_, "tr M^4 " + fmt(e4.mean) + " +- " + fmt(e4.stderr_));
  cfg.n = 50;
  const num::McEstimate c = num::mc_vertex_estimate({2, 2}, cfg, true, threads);
  const double tc = 2.0 / 2500.0;
  o.require(std::fabs(c.mean - tc) <= 4 * c.stderr_, "connected [2,2] " + fmt(c.mean) + " +- " + fmt(c.stderr_));
  o.detail << "tr M^4: " << fmt(e4.mean) << " +- " << fmt(e4.stderr_) << "; [2,2]_c: " << fmt(c.mean) << " +- "
           << fmt(c.stderr_);
}

void c14_three_point(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int k1 = 1 + (37 * i + 11) % 100, k2 = 1 + (53 * i + 29) % 100, k3 = 1 + (71 * i + 5) % 100;
    const double a = asym::three_point_leading(k1, k2, k3).log_abs;
    const double b = asym::three_point_pairwise_combination(k1, k2, k3).log_abs;
    worst = std::max(worst, std::fabs(std::expm1(a - b)));
  }
  o.require(worst <= 1e-12, "max relative difference " + fmt(worst));
  o.detail << "max relative difference " << fmt(worst) << " on 20 points";
}

}  // namespace

std::vector<CriterionResult> run_all(int threads, const Reporter& report) {
  std::optional<intersect::KontsevichResult> kontsevich;
  const std::vector<Criterion> checks{
      {"oracle equals exact moment formula", 10, [&](Outcome& o) { c1_oracle_vs_closed(o, threads); }},
      {"U(t) series fixtures", 0, c2_u_series},
      {"genus coefficients", 0, [&](Outcome& o) { c3_genus(o, threads); }},
      {"connected two-point fixtures and parity", 0, [&](Outcome& o) { c4_connected(o, threads); }},
      {"triple sum example", 5, c5_triple_sum},
      {"one-point intersection numbers", 0, c6_one_point},
      {"two-point intersection numbers", 0, c7_two_point},
      {"Kontsevich N=2 log Z", 600,
       [&](Outcome& o) {
         c8_kontsevich(o, threads, kontsevich);
       }},
      {"cross-route consistency", 0,
       [&](Outcome& o) {
         if (!kontsevich) kontsevich = intersect::kontsevich_n2_logz(11, threads);
         c9_cross_route(o, *kontsevich);
       }},
      {"edge Fourier identity", 30, c10_edge},
      {"scaling trend", 0, c11_scaling},
      {"semicircle moments", 0, c12_semicircle},
      {"Monte Carlo", 120, [&](Outcome& o) { c13_monte_carlo(o, threads); }},
      {"three-point identity", 0, c14_three_point},
  };

  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& c : checks) {
    ++id;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.check(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0) o.require(secs <= c.budget_seconds, "over the " + fmt(c.budget_seconds) + " s budget");
    CriterionResult r{id, c.name, o.pass, o.summary(), secs};
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s [%2d] ", r.pass ? "PASS" : "FAIL", r.id);
  char secs[32];
  std::snprintf(secs, sizeof secs, " (%.2f s): ", r.seconds);
  return head + r.name + secs + r.detail;
}

}  // namespace rmt::acceptance
