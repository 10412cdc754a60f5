#include "rmt/intersection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rmt/errors.hpp"
#include "rmt/wick.hpp"

namespace rmt::intersect {

namespace {

Rational power_of(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::string tau_string(const TauIndices& tau, int genus) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < tau.size(); ++i) os << (i ? " " : "") << "tau_" << tau[i];
  os << ">_" << genus;
  return os.str();
}

// Coefficients c[a] of q1^a q2^{D-a} for prod_l [(2l-1)!! (q1^{2l+1} + q2^{2l+1})]^{m_l}.
std::vector<Rational> expand_monomial(const ModuliMonomial& mono) {
  std::vector<Rational> poly{1};
  for (std::size_t l = 0; l < mono.m.size(); ++l) {
    const int p = 2 * static_cast<int>(l) + 1;
    const Rational weight(double_factorial(p - 2));
    for (int rep = 0; rep < mono.m[l]; ++rep) {
      std::vector<Rational> next(poly.size() + p, 0);
      for (std::size_t a = 0; a < poly.size(); ++a) {
        if (poly[a] == 0) continue;
        next[a + p] += weight * poly[a];
        next[a] += weight * poly[a];
      }
      poly = std::move(next);
    }
  }
  return poly;
}

// Multisets of odd parts (as moduli monomials) with total inverse degree D.
void odd_partitions(int remaining, int max_part, std::vector<int>& parts, std::vector<ModuliMonomial>& out) {
  if (remaining == 0) {
    ModuliMonomial m;
    for (int p : parts) {
      const std::size_t l = static_cast<std::size_t>(p / 2);
      if (m.m.size() <= l) m.m.resize(l + 1, 0);
      ++m.m[l];
    }
    out.push_back(std::move(m));
    return;
  }
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    if (p % 2 == 0) continue;
    parts.push_back(p);
    odd_partitions(remaining - p, p, parts, out);
    parts.pop_back();
  }
}

struct Candidate {
  ModuliMonomial mono;
  int n;
  int max_index;
};

// Row-echelon basis over the selected candidates; each reduced vector carries
// its expression in terms of those candidates.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  // Adds the candidate if it is independent of those already present.
  bool try_add(std::vector<Rational> v) {
    std::vector<Rational> combo(selected_ + 1, 0);
    combo[selected_] = 1;
    reduce(v, combo);
    const auto pivot = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (pivot == v.end()) return false;
    const auto index = static_cast<std::size_t>(pivot - v.begin());
    rows_.push_back({std::move(v), index, std::move(combo)});
    ++selected_;
    return true;
  }

  // Coefficients of `target` on the selected candidates; nullopt on a residual.
  std::optional<std::vector<Rational>> solve(std::vector<Rational> target) const {
    std::vector<Rational> combo(selected_, 0);
    reduce(target, combo);
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    for (auto& c : combo) c = -c;
    return combo;
  }

  std::size_t size() const { return selected_; }
  std::size_t dim() const { return dim_; }

 private:
  struct Row {
    std::vector<Rational> v;
    std::size_t pivot;
    std::vector<Rational> combo;
  };

  void reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const {
    for (const auto& row : rows_) {
      if (v[row.pivot] == 0) continue;
      const Rational f = v[row.pivot] / row.v[row.pivot];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row.v[i];
      for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= f * row.combo[i];
    }
  }

  std::size_t dim_;
  std::size_t selected_ = 0;
  std::vector<Row> rows_;
};

}  // namespace

bool IntersectionTable::dimension_ok(const TauIndices& tau, int genus) {
  if (genus < 0) return false;
  const int sum = std::accumulate(tau.begin(), tau.end(), 0);
  return sum == 3 * genus - 3 + static_cast<int>(tau.size());
}

int IntersectionTable::genus_for(const TauIndices& tau) {
  const int sum = std::accumulate(tau.begin(), tau.end(), 0);
  const int rhs = sum + 3 - static_cast<int>(tau.size());
  if (rhs < 0 || rhs % 3 != 0) return -1;
  return rhs / 3;
}

void IntersectionTable::insert(TauIndices tau, int genus, const Rational& value, bool convention) {
  std::sort(tau.begin(), tau.end());
  if (tau.empty() || tau.front() < 0) throw UsageError("IntersectionTable: tau indices must be non-negative");
  if (!convention && !dimension_ok(tau, genus))
    throw UsageError("IntersectionTable: " + tau_string(tau, genus) + " violates the dimension constraint");
  if (value <= 0) throw UsageError("IntersectionTable: " + tau_string(tau, genus) + " must be positive");
  Key key{std::move(tau), genus};
  const auto it = entries_.find(key);
  if (it != entries_.end()) {
    if (it->second != value)
      throw InternalError("IntersectionTable: conflicting values for " + tau_string(key.tau, key.genus));
    return;
  }
  entries_.emplace(std::move(key), value);
}

bool IntersectionTable::contains(TauIndices tau, int genus) const {
  std::sort(tau.begin(), tau.end());
  return entries_.count(Key{std::move(tau), genus}) > 0;
}

Rational IntersectionTable::at(TauIndices tau, int genus) const {
  std::sort(tau.begin(), tau.end());
  const auto it = entries_.find(Key{tau, genus});
  if (it == entries_.end()) throw UsageError("IntersectionTable: no entry " + tau_string(tau, genus));
  return it->second;
}

nlohmann::json to_json(const IntersectionTable& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, value] : t.entries()) {
    nlohmann::json e = rational_to_json(value);
    e["tau"] = key.tau;
    e["genus"] = key.genus;
    arr.push_back(std::move(e));
  }
  return arr;
}

Rational one_point_tau(int g) {
  if (g < 0) throw UsageError("one_point_tau: genus must be non-negative");
  return Rational(Integer(1), power_of(24, g).get_num() * factorial(static_cast<unsigned>(g)));
}

OnePointSeries f_one_point(int max_genus) {
  if (max_genus < 0) throw UsageError("f_one_point: negative genus");
  const std::vector<std::string> vars{"x", "nu"};
  const int cutoff = 5 * max_genus;
  MultiSeries arg(vars, cutoff);
  arg.add_term({3, 2}, Rational(1, 24));
  return {series_exp(arg)};
}

Rational OnePointSeries::coefficient(int x_power, int nu_power) const {
  if (x_power < -2 || nu_power < 0) throw UsageError("f_one_point: exponent out of range");
  return body.coeff({x_power + 2, nu_power});
}

TwoPointSeries f_two_point(int max_genus) {
  if (max_genus < 1) throw UsageError("f_two_point: max_genus must be >= 1");
  const std::vector<std::string> vars{"x1", "x2", "nu"};
  const int cutoff = 5 * max_genus;
  const MultiSeries x1 = MultiSeries::variable(vars, cutoff, 0);
  const MultiSeries x2 = MultiSeries::variable(vars, cutoff, 1);
  const MultiSeries s = x1 + x2;
  MultiSeries nu2(vars, cutoff);
  nu2.add_term({0, 0, 2}, 1);

  const MultiSeries s3 = series_mul(series_mul(s, s), s);
  const MultiSeries e = series_exp(series_mul(s3, nu2) * Rational(1, 24));

  const MultiSeries p = series_mul(series_mul(series_mul(x1, x2), s), nu2);
  MultiSeries sum = MultiSeries::constant(vars, cutoff, 1);
  MultiSeries p_pow = MultiSeries::constant(vars, cutoff, 1);
  Rational scale = 1;
  for (int l = 1; 5 * l <= cutoff; ++l) {
    p_pow = series_mul(p_pow, p);
    scale *= Rational(-1, 8 * l);
    sum += p_pow * (scale / (2 * l + 1));
  }
  MultiSeries numerator = series_mul(e, sum);
  numerator -= MultiSeries::constant(vars, cutoff, 1);
  return {divide_by_sum(numerator, 0, 1)};
}

Rational TwoPointSeries::coefficient(int l1, int l2, int nu_power) const {
  if (l1 < 0 || l2 < 0 || nu_power < 0) throw UsageError("f_two_point: exponent out of range");
  return body.coeff({l1, l2, nu_power});
}

IntersectionTable two_point_table(int g_max) {
  const TwoPointSeries f = f_two_point(g_max);
  IntersectionTable t;
  t.insert({0, 0}, 0, 1, true);
  for (int g = 1; g <= g_max; ++g)
    for (int l1 = 0; l1 <= 3 * g - 1; ++l1) t.insert({l1, 3 * g - 1 - l1}, g, f.coefficient(l1, 3 * g - 1 - l1, 2 * g));
  return t;
}

void CheckReport::expect_equal(const std::string& what, const Rational& a, const Rational& b) {
  ++checked;
  if (a == b) return;
  ok = false;
  failures.push_back(what + ": " + to_string(a) + " != " + to_string(b));
}

CheckReport string_equation_check(int g_max) {
  CheckReport r;
  const TwoPointSeries f2 = f_two_point(g_max);
  const OnePointSeries f1 = f_one_point(g_max);
  const int cutoff = f2.body.cutoff();
  for (int g = 1; g <= g_max; ++g) {
    for (int m = 0; m + 2 * g <= cutoff; ++m) {
      std::ostringstream what;
      what << "F(x1,0) at x1^" << m << " nu^" << 2 * g;
      r.expect_equal(what.str(), f2.coefficient(m, 0, 2 * g), f1.coefficient(m - 1, 2 * g));
    }
    const IntersectionTable t = two_point_table(g_max);
    r.expect_equal(tau_string({0, 3 * g - 1}, g), t.at({0, 3 * g - 1}, g), one_point_tau(g));
  }
  return r;
}

ModuliMonomial ModuliMonomial::from_indices(const TauIndices& tau) {
  ModuliMonomial m;
  for (int d : tau) {
    if (d < 0) throw UsageError("ModuliMonomial: negative index");
    if (m.m.size() <= static_cast<std::size_t>(d)) m.m.resize(d + 1, 0);
    ++m.m[d];
  }
  return m;
}

TauIndices ModuliMonomial::indices() const {
  TauIndices tau;
  for (std::size_t l = 0; l < m.size(); ++l) tau.insert(tau.end(), m[l], static_cast<int>(l));
  return tau;
}

int ModuliMonomial::inverse_degree() const {
  int d = 0;
  for (std::size_t l = 0; l < m.size(); ++l) d += (2 * static_cast<int>(l) + 1) * m[l];
  return d;
}

std::string ModuliMonomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t l = 0; l < m.size(); ++l) {
    if (m[l] == 0) continue;
    os << (first ? "" : " ") << "t" << l;
    if (m[l] > 1) os << "^" << m[l];
    first = false;
  }
  return first ? "1" : os.str();
}

std::map<ModuliMonomial, Rational> rewrite_in_moduli_basis(const MultiSeries& graded, int max_inverse_degree) {
  if (graded.vars().size() != 3) throw UsageError("rewrite_in_moduli_basis: expects variables (q1, q2, s)");
  if (graded.constant_term() != 0) throw UsageError("rewrite_in_moduli_basis: non-zero constant term");
  // (inverse degree, insertion count) -> coefficients of q1^a q2^{D-a}
  std::map<std::pair<int, int>, std::vector<Rational>> parts;
  for (const auto& [e, c] : graded.terms()) {
    const int deg = e[0] + e[1];
    if (deg > max_inverse_degree) continue;
    auto& v = parts[{deg, e[2]}];
    v.resize(deg + 1, 0);
    v[e[0]] = c;
  }

  std::map<ModuliMonomial, Rational> out;
  for (const auto& [key, target] : parts) {
    const auto [deg, n] = key;
    std::vector<ModuliMonomial> monos;
    std::vector<int> parts_buf;
    odd_partitions(deg, deg, parts_buf, monos);
    std::vector<Candidate> cands;
    for (auto& mono : monos) {
      const TauIndices tau = mono.indices();
      if (static_cast<int>(tau.size()) != n || IntersectionTable::genus_for(tau) < 0) continue;
      cands.push_back({mono, n, tau.back()});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.max_index < b.max_index; });

    EchelonBasis basis(deg + 1);
    std::vector<ModuliMonomial> chosen;
    for (const auto& c : cands)
      if (basis.try_add(expand_monomial(c.mono))) chosen.push_back(c.mono);
    if (chosen.size() != cands.size())
      throw InternalError("rewrite_in_moduli_basis: moduli monomials with " + std::to_string(n) +
                          " factors are dependent at degree " + std::to_string(deg));
    const auto solution = basis.solve(target);
    if (!solution)
      throw InternalError("rewrite_in_moduli_basis: degree " + std::to_string(deg) + " with " + std::to_string(n) +
                          " faces is not spanned by dimension-allowed moduli monomials");
    for (std::size_t i = 0; i < chosen.size(); ++i)
      if ((*solution)[i] != 0) out.emplace(chosen[i], (*solution)[i]);
  }
  return out;
}

KontsevichResult kontsevich_n2_logz(int max_inverse_degree, int threads) {
  if (max_inverse_degree < 1) throw UsageError("kontsevich_n2_logz: max_inverse_degree must be >= 1");
  const wick::WeightedPropagator prop(2);
  // q1, q2 and s, where s counts faces. A product of vertex diagrams never has
  // more faces than edges, so total degree 2D keeps every term of q-degree D.
  const std::vector<std::string> vars{"q1", "q2", "s"};
  const int cutoff = 2 * max_inverse_degree;
  MultiSeries z = MultiSeries::constant(vars, cutoff, 1);
  // A product of j cubic vertices has inverse degree 3j/2; odd j vanish.
  for (int j = 2; 3 * j / 2 <= max_inverse_degree; j += 2) {
    // (i/6)^j / j!
    Rational coupling(Integer(j % 4 == 0 ? 1 : -1), power_of(6, j).get_num() * factorial(static_cast<unsigned>(j)));
    for (const auto& [faces, part] :
         wick::weighted_moment_by_faces(std::vector<int>(j, 3), prop, coupling, max_inverse_degree, {}, threads)) {
      for (const auto& [e, c] : part.terms()) z.add_term({e[0], e[1], faces}, c);
    }
  }
  // Orientation: the moduli parameters are taken as power sums of -1/lambda.
  const MultiSeries graded = series_log(z).scaled_variables({Rational(-1), Rational(-1), Rational(1)});

  MultiSeries log_z(prop.variables(), max_inverse_degree);
  for (const auto& [e, c] : graded.terms())
    if (e[0] + e[1] <= max_inverse_degree) log_z.add_term({e[0], e[1]}, c);
  return {max_inverse_degree, log_z, rewrite_in_moduli_basis(graded, max_inverse_degree)};
}

IntersectionTable KontsevichResult::table() const {
  IntersectionTable t;
  for (const auto& [mono, c] : coefficients) {
    const TauIndices tau = mono.indices();
    Rational v = c;
    for (int mult : mono.m) v *= Rational(factorial(static_cast<unsigned>(mult)));
    t.insert(tau, IntersectionTable::genus_for(tau), v);
  }
  return t;
}

MultiSeries z_airy_series(int order) {
  if (order < 0) throw UsageError("z_airy_series: negative order");
  MultiSeries z({"w"}, order);
  for (int m = 0; m <= order; ++m) {
    // (i/6)^{2m}/(2m)! <x^{6m}>, <x^{6m}> = (6m-1)!! lambda^{-3m}
    Rational c(double_factorial(6 * m - 1), power_of(36, m).get_num() * factorial(static_cast<unsigned>(2 * m)));
    c.canonicalize();
    if (m % 2 == 1) c = -c;
    z.add_term({m}, c);
  }
  return z;
}

CheckReport cross_route_check(const KontsevichResult& kontsevich, int g_max) {
  CheckReport r;
  const IntersectionTable k = kontsevich.table();
  const IntersectionTable two = two_point_table(g_max);
  r.expect_equal("Kontsevich <tau_0 tau_2>_1", k.at({0, 2}, 1), Rational(1, 24));
  r.expect_equal("Kontsevich <tau_1^2>_1", k.at({1, 1}, 1), Rational(1, 24));
  for (const auto& [key, value] : k.entries()) {
    const std::string label = tau_string(key.tau, key.genus);
    if (key.tau.size() == 1) {
      r.expect_equal(label + " vs one-point", value, one_point_tau(key.genus));
    } else if (key.tau.size() == 2 && key.genus <= g_max) {
      if (!two.contains(key.tau, key.genus)) {
        r.ok = false;
        r.failures.push_back(label + " missing from the two-point table");
        continue;
      }
      r.expect_equal(label + " vs two-point", value, two.at(key.tau, key.genus));
    }
  }
  return r;
}

}  // namespace rmt::intersect
