#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "rmt/acceptance.hpp"
#include "rmt/asymptotics.hpp"
#include "rmt/closed_forms.hpp"
#include "rmt/errors.hpp"
#include "rmt/intersection.hpp"
#include "rmt/multi_series.hpp"
#include "rmt/numerics.hpp"
#include "rmt/wick.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCheck = 4;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json result;
  std::optional<Table> table;
  bool ok = true;
};

struct Globals {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string format = "json";
  std::string output;
  bool allow_k18 = false;
};

std::string num_str(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json log_value_json(const rmt::asym::LogValue& v) {
  return {{"log_abs", v.log_abs}, {"sign", v.sign}, {"value", v.value()}};
}

json estimate_json(const rmt::num::McEstimate& e) {
  return {{"mean", e.mean}, {"stderr", e.stderr_}, {"samples", e.samples}};
}

rmt::wick::EnumerationLimits limits(const Globals& g) {
  rmt::wick::EnumerationLimits l = rmt::wick::EnumerationLimits::from_environment();
  l.allow_k18 = g.allow_k18;
  return l;
}

json budget_json(const Globals& g) {
  const auto l = limits(g);
  const char* env = std::getenv("RMT_BUDGET");
  return {{"max_legs", l.effective_max_legs()}, {"allow_k18", l.allow_k18}, {"RMT_BUDGET", env ? json(env) : json()}};
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << " = " << j.dump() << "\n";
  }
}

void write_csv(const json& config, const Table& t, std::ostream& os) {
  for (const auto& [k, v] : config.items()) os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void emit(const Globals& g, const json& config, const Output& out) {
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) throw rmt::UsageError("cannot open output file " + g.output);
  }
  std::ostream& os = g.output.empty() ? std::cout : file;
  const json doc{{"config", config}, {"result", out.result}, {"ok", out.ok}};
  if (g.format == "json") {
    os << doc.dump(2) << "\n";
  } else if (g.format == "pretty") {
    flatten(doc, "", os);
  } else {
    if (!out.table) throw rmt::UsageError("csv output is not available for this command");
    write_csv(config, *out.table, os);
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw rmt::UsageError("empty entry in list '" + s + "'");
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw rmt::UsageError("bad integer '" + item + "'");
    }
    if (pos != item.size()) throw rmt::UsageError("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw rmt::UsageError("empty list");
  return out;
}

Table intersection_table(const rmt::intersect::IntersectionTable& t) {
  Table tab{{"tau", "genus", "num", "den", "value"}, {}};
  for (const auto& [key, v] : t.entries()) {
    std::string tau;
    for (std::size_t i = 0; i < key.tau.size(); ++i) tau += (i ? " " : "") + std::to_string(key.tau[i]);
    tab.rows.push_back({tau, std::to_string(key.genus), v.get_num().get_str(), v.get_den().get_str(),
                        num_str(rmt::to_double(v))});
  }
  return tab;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical GUE vertex correlators, genus expansion and intersection numbers"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("-o,--output", g.output, "Write the document to this file instead of stdout");
  app.add_flag("--allow-k18", g.allow_k18, "Allow exhaustive enumeration over 18 legs");

  json config;
  std::function<Output()> run;

  // moments
  auto* moments = app.add_subcommand("moments", "(1/N)<tr M^{2k}> exactly");
  int mk = 2;
  std::optional<long> mn;
  bool symbolic = false, verify = false;
  moments->add_option("--k", mk, "Half the power")->required()->check(CLI::NonNegativeNumber);
  moments->add_option("--N", mn, "Matrix size for a numeric value")->check(CLI::PositiveNumber);
  moments->add_flag("--symbolic", symbolic, "Report the Laurent polynomial in nu = 1/N");
  moments->add_flag("--verify", verify, "Cross-check against the Wick enumeration");
  moments->callback([&] {
    config = {{"command", "moments"}, {"k", mk}, {"N", mn ? json(*mn) : json()}, {"symbolic", symbolic}, {"verify", verify}};
    run = [&]() {
      const auto r = rmt::closed::exact_one_point_moment(mk, mn);
      Output out;
      out.result["k"] = mk;
      out.result["symbolic"] = rmt::to_json(r.symbolic);
      out.result["string"] = r.symbolic.str();
      if (r.numeric) {
        out.result["numeric"] = rmt::rational_to_json(*r.numeric);
        out.result["numeric_double"] = rmt::to_double(*r.numeric);
      }
      if (verify) {
        const rmt::NLaurent oracle = rmt::wick::vertex_moment({2 * mk}, limits(g), g.threads);
        out.result["oracle_agrees"] = oracle == r.symbolic;
        out.ok = oracle == r.symbolic;
      }
      Table t{{"nu_power", "num", "den"}, {}};
      for (const auto& [e, c] : r.symbolic.terms())
        t.rows.push_back({std::to_string(e), c.get_num().get_str(), c.get_den().get_str()});
      out.table = t;
      return out;
    };
  });

  // connected
  auto* connected = app.add_subcommand("connected", "Full and connected vertex correlators by Wick enumeration");
  std::string ck = "2,2";
  std::optional<long> cn;
  connected->add_option("--k", ck, "Comma-separated vertex degrees")->required();
  connected->add_option("--N", cn, "Matrix size for numeric values")->check(CLI::PositiveNumber);
  connected->callback([&] {
    config = {{"command", "connected"}, {"k", parse_list(ck)}, {"N", cn ? json(*cn) : json()}};
    run = [&]() {
      const auto ks = parse_list(ck);
      std::cerr << "enumerating pairings of " << ks.size() << " vertices\n";
      const auto full = rmt::wick::vertex_moment(ks, limits(g), g.threads);
      const auto conn = rmt::wick::connected_moment(ks, limits(g), g.threads);
      Output out;
      out.result = {{"full", rmt::to_json(full)},
                    {"connected", rmt::to_json(conn)},
                    {"full_string", full.str()},
                    {"connected_string", conn.str()}};
      if (cn) {
        out.result["full_numeric"] = rmt::rational_to_json(full.at_n(*cn));
        out.result["connected_numeric"] = rmt::rational_to_json(conn.at_n(*cn));
      }
      Table t{{"nu_power", "full_num", "full_den", "connected_num", "connected_den"}, {}};
      int lo = std::min(full.is_zero() ? 0 : full.min_exponent(), conn.is_zero() ? 0 : conn.min_exponent());
      int hi = std::max(full.is_zero() ? 0 : full.max_exponent(), conn.is_zero() ? 0 : conn.max_exponent());
      for (int e = lo; e <= hi; ++e) {
        const auto a = full.coeff(e), b = conn.coeff(e);
        if (a == 0 && b == 0) continue;
        t.rows.push_back({std::to_string(e), a.get_num().get_str(), a.get_den().get_str(), b.get_num().get_str(),
                          b.get_den().get_str()});
      }
      out.table = t;
      return out;
    };
  });

  // genus
  auto* genus = app.add_subcommand("genus", "Pairing counts by genus");
  std::string gk = "8";
  genus->add_option("--k", gk, "Comma-separated vertex degrees")->required();
  genus->callback([&] {
    config = {{"command", "genus"}, {"k", parse_list(gk)}};
    run = [&]() {
      const auto counts = rmt::wick::genus_counts(parse_list(gk), limits(g));
      Output out;
      out.result = json::array();
      Table t{{"genus", "connected", "count"}, {}};
      for (const auto& c : counts) {
        out.result.push_back({{"genus", c.genus}, {"connected", c.connected}, {"count", c.count.get_str()}});
        t.rows.push_back({std::to_string(c.genus), c.connected ? "1" : "0", c.count.get_str()});
      }
      out.table = t;
      return out;
    };
  });

  // triple-sum
  auto* triple = app.add_subcommand("triple-sum", "Exact three-index sum and its large-k estimate");
  int k1 = 30, k2 = 15, k3 = 50;
  bool scaled_only = false;
  triple->add_option("--k1", k1)->check(CLI::PositiveNumber);
  triple->add_option("--k2", k2)->check(CLI::PositiveNumber);
  triple->add_option("--k3", k3)->check(CLI::PositiveNumber);
  triple->add_flag("--scaled", scaled_only, "Report (2k1)!(2k2)!(2k3)! I as the value");
  triple->callback([&] {
    config = {{"command", "triple-sum"}, {"k1", k1}, {"k2", k2}, {"k3", k3}, {"scaled", scaled_only}};
    run = [&]() {
      const rmt::Rational scaled = rmt::closed::triple_sum_scaled(k1, k2, k3);
      const rmt::Rational value = scaled_only ? scaled : rmt::closed::triple_sum_I(k1, k2, k3);
      const auto asym = rmt::asym::triple_sum_asymptotic_scaled(k1, k2, k3);
      const double exact = rmt::to_double(scaled);
      Output out;
      out.result = {{"value_num", value.get_num().get_str()},
                    {"value_den", value.get_den().get_str()},
                    {"float_approx", rmt::to_double(value)},
                    {"scaled_float", exact},
                    {"asymptotic_scaled", log_value_json(asym)},
                    {"ratio", asym.value() / exact}};
      out.table = Table{{"k1", "k2", "k3", "value_num", "value_den", "float_approx", "asymptotic_scaled", "ratio"},
                        {{std::to_string(k1), std::to_string(k2), std::to_string(k3), value.get_num().get_str(),
                          value.get_den().get_str(), num_str(rmt::to_double(value)), num_str(asym.value()),
                          num_str(asym.value() / exact)}}};
      return out;
    };
  });

  // asympt
  auto* asympt = app.add_subcommand("asympt", "Scaling-limit formulas");
  asympt->require_subcommand(1);
  auto* a_one = asympt->add_subcommand("one", "Edge scaling of the one-point moment versus the exact value");
  a_one->alias("one-point");
  int ak = 9;
  long an = 27;
  a_one->add_option("--k", ak)->required()->check(CLI::PositiveNumber);
  a_one->add_option("--N", an)->required()->check(CLI::PositiveNumber);
  a_one->callback([&] {
    config = {{"command", "asympt one"}, {"k", ak}, {"N", an}};
    run = [&]() {
      const auto c = rmt::asym::compare_one_point(ak, an);
      Output out;
      out.result = {{"k", ak},
                    {"N", an},
                    {"exact", c.exact},
                    {"asymptotic", c.asymptotic},
                    {"log_exact", c.log_exact},
                    {"log_asymptotic", c.log_asymptotic},
                    {"rel_err", c.relative_error}};
      out.table = Table{{"k", "N", "exact", "asymptotic", "rel_err"},
                        {{std::to_string(ak), std::to_string(an), num_str(c.exact), num_str(c.asymptotic),
                          num_str(c.relative_error)}}};
      return out;
    };
  });
  auto* a_ray = asympt->add_subcommand("ray", "Relative error along k = floor(c N^{2/3})");
  a_ray->alias("compare");
  double ac = 1.0;
  std::string ans = "27,64,125,216";
  a_ray->add_option("--c,--ray", ac)->check(CLI::PositiveNumber);
  a_ray->add_option("--N,--N-list", ans, "Comma-separated matrix sizes");
  a_ray->callback([&] {
    config = {{"command", "asympt ray"}, {"c", ac}, {"N", parse_list(ans)}};
    run = [&]() {
      std::vector<long> ns;
      for (int n : parse_list(ans)) ns.push_back(n);
      const auto rows = rmt::asym::compare_along_ray(ac, ns);
      Output out;
      out.result = json::array();
      Table t{{"k", "N", "exact", "asymptotic", "rel_err"}, {}};
      for (const auto& r : rows) {
        out.result.push_back(
            {{"k", r.k}, {"N", r.n}, {"exact", r.exact}, {"asymptotic", r.asymptotic}, {"rel_err", r.relative_error}});
        t.rows.push_back({std::to_string(r.k), std::to_string(r.n), num_str(r.exact), num_str(r.asymptotic),
                          num_str(r.relative_error)});
      }
      out.table = t;
      return out;
    };
  });
  auto* a_two = asympt->add_subcommand("two", "Two-point scaling form");
  int tk1 = 10, tk2 = 10, lmax = -1;
  std::optional<long> tn;
  a_two->add_option("--k1", tk1)->check(CLI::PositiveNumber);
  a_two->add_option("--k2", tk2)->check(CLI::PositiveNumber);
  a_two->add_option("--N", tn)->check(CLI::PositiveNumber);
  a_two->add_option("--lmax", lmax, "Series order; negative means resummed");
  a_two->callback([&] {
    config = {{"command", "asympt two"}, {"k1", tk1}, {"k2", tk2}, {"N", tn ? json(*tn) : json()}, {"lmax", lmax}};
    run = [&]() {
      Output out;
      out.result = {{"large_k", log_value_json(rmt::asym::two_point_asymptotic(tk1, tk2, tn, lmax))},
                    {"exact_prefactor", log_value_json(rmt::asym::two_point_asymptotic(
                                            tk1, tk2, tn, lmax, rmt::asym::TwoPointPrefactor::ExactFactorial))}};
      return out;
    };
  });
  auto* a_three = asympt->add_subcommand("three", "Three-point leading term and pairwise combination");
  a_three->add_option("--k1", k1)->check(CLI::PositiveNumber);
  a_three->add_option("--k2", k2)->check(CLI::PositiveNumber);
  a_three->add_option("--k3", k3)->check(CLI::PositiveNumber);
  a_three->callback([&] {
    config = {{"command", "asympt three"}, {"k1", k1}, {"k2", k2}, {"k3", k3}};
    run = [&]() {
      const auto a = rmt::asym::three_point_leading(k1, k2, k3);
      const auto b = rmt::asym::three_point_pairwise_combination(k1, k2, k3);
      Output out;
      out.result = {{"leading", log_value_json(a)}, {"pairwise", log_value_json(b)},
                    {"relative_difference", std::fabs(std::expm1(a.log_abs - b.log_abs))}};
      return out;
    };
  });
  auto* a_bulk = asympt->add_subcommand("bulk", "Connected bulk two-point density times N^2");
  double l1 = 0.5, l2 = -0.3;
  a_bulk->add_option("--l1", l1);
  a_bulk->add_option("--l2", l2);
  a_bulk->callback([&] {
    config = {{"command", "asympt bulk"}, {"l1", l1}, {"l2", l2}};
    run = [&]() {
      Output out;
      out.result = {{"r2", rmt::asym::bulk_two_point_r2(l1, l2)}};
      return out;
    };
  });

  // intersect
  auto* inter = app.add_subcommand("intersect", "Intersection numbers");
  inter->require_subcommand(1);
  int gmax = 3, maxdeg = 11;
  auto* i_one = inter->add_subcommand("one", "One-point numbers <tau_{3g-2}>_g");
  i_one->add_option("--gmax", gmax)->check(CLI::NonNegativeNumber);
  i_one->callback([&] {
    config = {{"command", "intersect one"}, {"gmax", gmax}};
    run = [&]() {
      rmt::intersect::IntersectionTable t;
      const auto f = rmt::intersect::f_one_point(gmax);
      Output out;
      for (int gg = 0; gg <= gmax; ++gg) {
        const rmt::Rational v = rmt::intersect::one_point_tau(gg);
        out.ok = out.ok && f.coefficient(3 * gg - 2, 2 * gg) == v;
        t.insert({3 * gg - 2 < 0 ? 0 : 3 * gg - 2}, gg, v, gg == 0);
      }
      out.result = rmt::intersect::to_json(t);
      out.table = intersection_table(t);
      return out;
    };
  });
  auto* i_two = inter->add_subcommand("two", "Two-point numbers from the generating function");
  i_two->add_option("--gmax", gmax)->check(CLI::PositiveNumber);
  i_two->callback([&] {
    config = {{"command", "intersect two"}, {"gmax", gmax}};
    run = [&]() {
      const auto t = rmt::intersect::two_point_table(gmax);
      Output out;
      out.result = rmt::intersect::to_json(t);
      out.table = intersection_table(t);
      return out;
    };
  });
  auto* i_k = inter->add_subcommand("kontsevich", "N=2 Airy matrix model log Z");
  i_k->add_option("--maxdeg", maxdeg, "Largest inverse-eigenvalue degree")->check(CLI::Range(1, 11));
  i_k->callback([&] {
    config = {{"command", "intersect kontsevich"}, {"maxdeg", maxdeg}};
    run = [&]() {
      std::cerr << "enumerating weighted pairings up to degree " << maxdeg << "\n";
      const auto r = rmt::intersect::kontsevich_n2_logz(maxdeg, g.threads);
      Output out;
      json coeffs = json::array();
      Table t{{"monomial", "num", "den"}, {}};
      for (const auto& [m, c] : r.coefficients) {
        json e = rmt::rational_to_json(c);
        e["monomial"] = m.str();
        e["m"] = m.m;
        coeffs.push_back(e);
        t.rows.push_back({m.str(), c.get_num().get_str(), c.get_den().get_str()});
      }
      out.result = {{"log_z", rmt::to_json(r.log_z)}, {"coefficients", coeffs},
                    {"intersection_numbers", rmt::intersect::to_json(r.table())}};
      out.table = t;
      return out;
    };
  });
  auto* i_check = inter->add_subcommand("check", "String equation and cross-route checks");
  i_check->add_option("--gmax", gmax)->check(CLI::PositiveNumber);
  i_check->callback([&] {
    config = {{"command", "intersect check"}, {"gmax", gmax}, {"maxdeg", 11}};
    run = [&]() {
      const auto s = rmt::intersect::string_equation_check(gmax);
      std::cerr << "running the Kontsevich route\n";
      const auto k = rmt::intersect::kontsevich_n2_logz(11, g.threads);
      const auto c = rmt::intersect::cross_route_check(k, gmax);
      Output out;
      out.result = {{"string_equation", {{"ok", s.ok}, {"checked", s.checked}, {"failures", s.failures}}},
                    {"cross_route", {{"ok", c.ok}, {"checked", c.checked}, {"failures", c.failures}}}};
      out.ok = s.ok && c.ok;
      return out;
    };
  });

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of a vertex correlator");
  std::string mck = "4";
  rmt::num::SampleConfig cfg;
  bool mconn = false;
  double shift = 0.0;
  mc->add_option("--k", mck, "Comma-separated vertex degrees");
  mc->add_option("--N", cfg.n)->check(CLI::PositiveNumber);
  mc->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  mc->add_option("--seed", cfg.seed);
  mc->add_option("--chunk", cfg.chunk)->check(CLI::PositiveNumber);
  mc->add_option("--shift", shift, "Uniform source A = a * identity");
  mc->add_flag("--connected", mconn, "Connected (covariance) estimator for two traces");
  mc->callback([&] {
    config = {{"command", "mc"}, {"k", parse_list(mck)}, {"N", cfg.n}, {"samples", cfg.samples},
              {"seed", cfg.seed}, {"chunk", cfg.chunk}, {"shift", shift}, {"connected", mconn}};
    run = [&]() {
      if (shift != 0.0) cfg.source = rmt::num::SampleConfig::uniform_source(cfg.n, shift);
      const auto e = rmt::num::mc_vertex_estimate(parse_list(mck), cfg, mconn, g.threads);
      Output out;
      out.result = estimate_json(e);
      out.table = Table{{"mean", "stderr", "samples"}, {{num_str(e.mean), num_str(e.stderr_), std::to_string(e.samples)}}};
      return out;
    };
  });

  // density
  auto* density = app.add_subcommand("density", "Eigenvalue histogram against the semicircle");
  rmt::num::SampleConfig dcfg;
  dcfg.n = 200;
  dcfg.samples = 500;
  int bins = 80;
  std::string csv_path;
  density->add_option("--N", dcfg.n)->check(CLI::PositiveNumber);
  density->add_option("--samples", dcfg.samples)->check(CLI::PositiveNumber);
  density->add_option("--seed", dcfg.seed);
  density->add_option("--chunk", dcfg.chunk)->check(CLI::PositiveNumber);
  density->add_option("--bins", bins)->check(CLI::PositiveNumber);
  density->add_option("--csv", csv_path, "Also write the histogram as CSV to this file");
  density->callback([&] {
    config = {{"command", "density"}, {"N", dcfg.n}, {"samples", dcfg.samples}, {"seed", dcfg.seed},
              {"chunk", dcfg.chunk}, {"bins", bins}};
    run = [&]() {
      const auto h = rmt::num::density_histogram(dcfg, bins, 2.5, 1.8, g.threads);
      Output out;
      Table t{{"lo", "hi", "density", "semicircle"}, {}};
      json jb = json::array();
      for (const auto& b : h.bins) {
        jb.push_back({{"lo", b.lo}, {"hi", b.hi}, {"density", b.density}, {"semicircle", b.semicircle}});
        t.rows.push_back({num_str(b.lo), num_str(b.hi), num_str(b.density), num_str(b.semicircle)});
      }
      out.result = {{"bins", jb},
                    {"max_bulk_deviation", h.max_bulk_deviation},
                    {"bulk_edge", h.bulk_edge},
                    {"total_mass", h.total_mass},
                    {"outside_fraction", h.outside_fraction},
                    {"eigenvalues", h.eigenvalues}};
      out.table = t;
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw rmt::UsageError("cannot open " + csv_path);
        write_csv(config, t, f);
      }
      return out;
    };
  });

  // airy-check
  auto* airy = app.add_subcommand("airy-check", "Edge Fourier identity by nested quadrature");
  double s = 1.0, tol = 1e-9;
  airy->add_option("--s", s, "Point t = -i s on the imaginary axis")->check(CLI::PositiveNumber);
  airy->add_option("--tol", tol, "Relative error target of the quadrature")->check(CLI::PositiveNumber);
  airy->callback([&] {
    config = {{"command", "airy-check"}, {"s", s}, {"tol", tol}};
    run = [&]() {
      const auto q = rmt::num::edge_ft_quadrature(s, tol);
      const double closed = rmt::asym::edge_ft_closed({0.0, -s}, 1).real();
      const double rel = std::fabs(q.value - closed) / std::fabs(closed);
      Output out;
      out.result = {{"quadrature", q.value}, {"error_estimate", q.error_estimate}, {"lower_cutoff", q.lower_cutoff},
                    {"closed_form", closed}, {"relative_difference", rel}};
      out.ok = rel <= 1e-6;
      out.table = Table{{"s", "quadrature", "closed_form", "relative_difference"},
                        {{num_str(s), num_str(q.value), num_str(closed), num_str(rel)}}};
      return out;
    };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->callback([&] {
    config = {{"command", "selftest"}};
    run = [&]() {
      Output out;
      out.result = json::array();
      Table t{{"id", "pass", "name", "seconds", "detail"}, {}};
      const auto results = rmt::acceptance::run_all(g.threads, [](const rmt::acceptance::CriterionResult& r) {
        std::cerr << rmt::acceptance::format_line(r) << "\n";
      });
      for (const auto& r : results) {
        out.result.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        t.rows.push_back({std::to_string(r.id), r.pass ? "1" : "0", r.name, num_str(r.seconds), "\"" + r.detail + "\""});
        out.ok = out.ok && r.pass;
      }
      out.table = t;
      return out;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const rmt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    config["threads"] = g.threads;
    config["format"] = g.format;
    config["budget"] = budget_json(g);
    const Output out = run();
    emit(g, config, out);
    if (!out.ok) {
      std::cerr << "check failed\n";
      return kExitCheck;
    }
    return kExitOk;
  } catch (const rmt::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const rmt::ToleranceError& e) {
    std::cerr << "tolerance not met: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitCheck;
  } catch (const rmt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rmt::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheck;
  }
}
