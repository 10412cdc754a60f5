#include "rmt/wick.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <unordered_map>

#include "rmt/errors.hpp"

namespace rmt::wick {

namespace {

constexpr int kMaxLegsHard = 30;  // legs fit in a 32-bit unmatched-set mask

// Depth-first enumeration of the pairings of the legs in `unmatched`, in the
// canonical order. `mate` is filled in place and handed to `visit` at leaves.
template <class Visit>
void enumerate_rec(std::uint32_t unmatched, std::array<int, kMaxLegsHard + 2>& mate, Visit& visit) {
  if (unmatched == 0) {
    visit(mate);
    return;
  }
  const int i = std::countr_zero(unmatched);
  std::uint32_t rest = unmatched & (unmatched - 1);
  std::uint32_t candidates = rest;
  while (candidates != 0) {
    const int j = std::countr_zero(candidates);
    candidates &= candidates - 1;
    mate[i] = j;
    mate[j] = i;
    enumerate_rec(rest & ~(std::uint32_t{1} << j), mate, visit);
  }
}

// Runs the enumeration split by the mate of leg 0. Each worker owns an
// accumulator; accumulators are merged in task order, so exact reductions do
// not depend on the thread count.
template <class Acc, class MakeAcc, class Visit, class Merge>
Acc parallel_enumerate(int legs, int threads, MakeAcc make_acc, Visit visit, Merge merge) {
  Acc total = make_acc();
  if (legs % 2 != 0) return total;
  std::array<int, kMaxLegsHard + 2> mate{};
  if (legs == 0) {
    auto leaf = [&](const std::array<int, kMaxLegsHard + 2>& m) { visit(total, m); };
    enumerate_rec(0u, mate, leaf);
    return total;
  }
  const std::uint32_t all = legs == 32 ? ~0u : ((std::uint32_t{1} << legs) - 1);
  const int tasks = legs - 1;
  threads = std::clamp(threads, 1, tasks);

  std::vector<Acc> per_task;
  per_task.reserve(tasks);
  for (int t = 0; t < tasks; ++t) per_task.push_back(make_acc());

  auto run_task = [&](int t, std::array<int, kMaxLegsHard + 2>& m) {
    const int j = t + 1;
    m[0] = j;
    m[j] = 0;
    Acc& acc = per_task[t];
    auto leaf = [&](const std::array<int, kMaxLegsHard + 2>& mm) { visit(acc, mm); };
    enumerate_rec(all & ~1u & ~(std::uint32_t{1} << j), m, leaf);
  };

  if (threads == 1) {
    for (int t = 0; t < tasks; ++t) run_task(t, mate);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        std::array<int, kMaxLegsHard + 2> m{};
        for (int t = w; t < tasks; t += threads) run_task(t, m);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& acc : per_task) merge(total, acc);
  return total;
}

template <class Mate>
int faces_of(const StarDiagram& d, const Mate& mate, std::array<int, kMaxLegsHard + 2>* face_of = nullptr) {
  const int legs = d.leg_count();
  std::uint32_t seen = 0;
  int faces = 0;
  for (int l = 0; l < legs; ++l) {
    if (seen & (std::uint32_t{1} << l)) continue;
    int cur = l;
    do {
      seen |= std::uint32_t{1} << cur;
      if (face_of != nullptr) (*face_of)[cur] = faces;
      cur = d.next(mate[cur]);
    } while (cur != l);
    ++faces;
  }
  return faces;
}

template <class Mate>
int components_of(const StarDiagram& d, const Mate& mate) {
  const int n = d.vertex_count();
  std::array<int, kMaxLegsHard + 2> parent{};
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int comps = n;
  for (int l = 0; l < d.leg_count(); ++l) {
    const int a = find(d.vertex_of(l));
    const int b = find(d.vertex_of(mate[l]));
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

void check_degrees(const std::vector<int>& degrees) {
  for (int k : degrees)
    if (k < 1) throw UsageError("vertex degrees must be positive");
}

int total_legs(const std::vector<int>& degrees) {
  long k = 0;
  for (int d : degrees) k += d;
  if (k > kMaxLegsHard) throw BudgetError("leg count " + std::to_string(k) + " exceeds the hard limit");
  return static_cast<int>(k);
}

// counts[F][connected] over all pairings.
using FaceHistogram = std::vector<std::array<std::uint64_t, 2>>;

FaceHistogram face_histogram(const StarDiagram& d, int threads) {
  const int legs = d.leg_count();
  const int n = d.vertex_count();
  return parallel_enumerate<FaceHistogram>(
      legs, threads, [&] { return FaceHistogram(static_cast<std::size_t>(legs + n + 1), {0, 0}); },
      [&](FaceHistogram& h, const auto& mate) {
        const int f = faces_of(d, mate);
        const bool conn = n <= 1 || components_of(d, mate) == 1;
        ++h[f][conn ? 1 : 0];
      },
      [](FaceHistogram& total, const FaceHistogram& part) {
        for (std::size_t f = 0; f < total.size(); ++f) {
          total[f][0] += part[f][0];
          total[f][1] += part[f][1];
        }
      });
}

NLaurent histogram_to_laurent(const FaceHistogram& h, int n, int edges, bool connected_only) {
  NLaurent r;
  for (std::size_t f = 0; f < h.size(); ++f) {
    std::uint64_t c = h[f][1] + (connected_only ? 0 : h[f][0]);
    if (c == 0) continue;
    // N^{-n} N^{F-E} = nu^{n + E - F}
    Rational coeff{Integer(std::to_string(c))};
    r += NLaurent::monomial(n + edges - static_cast<int>(f), coeff);
  }
  return r;
}

}  // namespace

StarDiagram::StarDiagram(std::vector<int> vertex_degrees) : degrees_(std::move(vertex_degrees)) {
  check_degrees(degrees_);
  const int legs = total_legs(degrees_);
  vertex_of_.resize(legs);
  next_.resize(legs);
  int start = 0;
  for (int v = 0; v < static_cast<int>(degrees_.size()); ++v) {
    const int k = degrees_[v];
    for (int p = 0; p < k; ++p) {
      vertex_of_[start + p] = v;
      next_[start + p] = start + (p + 1) % k;
    }
    start += k;
  }
}

bool PairPartition::valid() const {
  const int k = static_cast<int>(mate.size());
  for (int l = 0; l < k; ++l) {
    const int m = mate[l];
    if (m < 0 || m >= k || m == l || mate[m] != l) return false;
  }
  return true;
}

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits lim;
  if (const char* env = std::getenv("RMT_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw UsageError("RMT_BUDGET must be a non-negative integer leg count");
    lim.max_legs = static_cast<int>(std::min<long>(v, kMaxLegsHard));
  }
  return lim;
}

int EnumerationLimits::effective_max_legs() const {
  int m = max_legs;
  if (allow_k18) m = std::max(m, 18);
  return std::min(m, kMaxLegsHard);
}

void EnumerationLimits::check(int legs) const {
  if (legs > effective_max_legs())
    throw BudgetError("pairing enumeration over " + std::to_string(legs) + " legs exceeds the budget of " +
                      std::to_string(effective_max_legs()) + " legs");
}

Integer pairing_count(int legs) {
  if (legs < 0 || legs % 2 != 0) return 0;
  return double_factorial(legs - 1);
}

void for_each_pair_partition(int legs, const std::function<void(const std::vector<int>&)>& visit,
                             const EnumerationLimits& limits) {
  if (legs < 0) throw UsageError("negative leg count");
  if (legs % 2 != 0) return;
  limits.check(legs);
  std::vector<int> out(legs);
  parallel_enumerate<int>(
      legs, 1, [] { return 0; },
      [&](int&, const auto& mate) {
        std::copy(mate.begin(), mate.begin() + legs, out.begin());
        visit(out);
      },
      [](int&, const int&) {});
}

std::vector<PairPartition> enumerate_pair_partitions(int legs, const EnumerationLimits& limits) {
  std::vector<PairPartition> result;
  for_each_pair_partition(legs, [&](const std::vector<int>& m) { result.push_back(PairPartition{m}); }, limits);
  return result;
}

int face_count(const StarDiagram& d, const std::vector<int>& mate) {
  if (static_cast<int>(mate.size()) != d.leg_count()) throw UsageError("pairing does not match the diagram");
  return faces_of(d, mate);
}

int face_count(const StarDiagram& d, const PairPartition& p) {
  if (!p.valid()) throw UsageError("malformed pair partition");
  return face_count(d, p.mate);
}

int component_count(const StarDiagram& d, const std::vector<int>& mate) {
  if (static_cast<int>(mate.size()) != d.leg_count()) throw UsageError("pairing does not match the diagram");
  return components_of(d, mate);
}

NLaurent vertex_moment(const std::vector<int>& degrees, const EnumerationLimits& limits, int threads) {
  StarDiagram d(degrees);
  if (d.leg_count() % 2 != 0) return {};
  limits.check(d.leg_count());
  return histogram_to_laurent(face_histogram(d, threads), d.vertex_count(), d.leg_count() / 2, false);
}

NLaurent connected_moment(const std::vector<int>& degrees, const EnumerationLimits& limits, int threads) {
  StarDiagram d(degrees);
  if (d.leg_count() % 2 != 0) return {};
  limits.check(d.leg_count());
  return histogram_to_laurent(face_histogram(d, threads), d.vertex_count(), d.leg_count() / 2, true);
}

std::vector<GenusCount> genus_counts(const std::vector<int>& degrees, const EnumerationLimits& limits) {
  StarDiagram d(degrees);
  if (d.leg_count() % 2 != 0) return {};
  limits.check(d.leg_count());
  const int n = d.vertex_count();
  const int edges = d.leg_count() / 2;
  // (genus, connected) -> count
  using Table = std::map<std::pair<int, bool>, std::uint64_t>;
  Table table = parallel_enumerate<Table>(
      d.leg_count(), 1, [] { return Table{}; },
      [&](Table& t, const auto& mate) {
        const int f = faces_of(d, mate);
        const int c = components_of(d, mate);
        const int chi = n - edges + f;
        if ((2 * c - chi) % 2 != 0 || 2 * c - chi < 0) throw InternalError("Euler characteristic parity violated");
        ++t[{(2 * c - chi) / 2, c == 1}];
      },
      [](Table& total, const Table& part) {
        for (const auto& [k, c] : part) total[k] += c;
      });
  std::vector<GenusCount> out;
  for (const auto& [key, count] : table) out.push_back({key.first, key.second, Integer(std::to_string(count))});
  return out;
}

WeightedPropagator::WeightedPropagator(int index_count) : index_count_(index_count) {
  if (index_count < 1) throw UsageError("propagator needs at least one index");
}

std::vector<std::string> WeightedPropagator::variables() const {
  std::vector<std::string> v;
  for (int i = 1; i <= index_count_; ++i) v.push_back("q" + std::to_string(i));
  return v;
}

WeightedPropagator::Weight WeightedPropagator::weight(int i, int j, int cutoff) const {
  if (i < 0 || j < 0 || i >= index_count_ || j >= index_count_) throw UsageError("propagator index out of range");
  MultiSeries num(variables(), cutoff);
  Exponents e(index_count_, 0);
  if (i == j) {
    e[i] = 1;
    num.add_term(e, 1);
    return {num, 0};
  }
  e[i] = 1;
  e[j] = 1;
  num.add_term(e, 2);
  return {num, 1};
}

namespace {

// Histogram over index assignments of the per-type edge counts. A type is an
// unordered index pair (a <= b); counts are packed base (E+1).
struct TypeHistogram {
  static constexpr std::uint64_t kFlatLimit = 1u << 16;

  explicit TypeHistogram(std::uint64_t key_space) {
    if (key_space <= kFlatLimit) flat.assign(key_space, 0);
  }
  void add(std::uint64_t key, std::uint64_t c = 1) {
    if (!flat.empty()) flat[key] += c;
    else sparse[key] += c;
  }
  template <class F>
  void for_each(F f) const {
    for (std::uint64_t k = 0; k < flat.size(); ++k)
      if (flat[k] != 0) f(k, flat[k]);
    for (const auto& [k, c] : sparse) f(k, c);
  }

  std::vector<std::uint64_t> flat;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse;
};

int pair_type(int a, int b, int m) {
  if (a > b) std::swap(a, b);
  // row-major upper triangle
  return a * m - a * (a - 1) / 2 + (b - a);
}

MultiSeries binomial_power(const std::vector<std::string>& vars, int cutoff, int i, int j, int p) {
  MultiSeries r(vars, cutoff);
  Exponents e(vars.size(), 0);
  for (int a = 0; a <= p; ++a) {
    e[i] = a;
    e[j] = p - a;
    r.add_term(e, Rational(binomial(p, a)));
  }
  return r;
}

}  // namespace

std::map<int, MultiSeries> weighted_moment_by_faces(const std::vector<int>& degrees, const WeightedPropagator& prop,
                                                    const Rational& coupling, int cutoff, const WeightedLimits& limits,
                                                    int threads) {
  StarDiagram d(degrees);
  const int m = prop.index_count();
  const auto vars = prop.variables();
  std::map<int, MultiSeries> out;
  if (d.leg_count() % 2 != 0 || coupling == 0) return out;
  const int legs = d.leg_count();
  const int edges = legs / 2;
  if (legs > limits.max_legs) throw BudgetError("weighted enumeration over " + std::to_string(legs) + " legs exceeds the budget");
  if (m > limits.max_index_count) throw BudgetError("index count exceeds the weighted budget");
  const double work = to_double(Rational(pairing_count(legs))) * std::pow(double(m), edges + d.vertex_count());
  if (work > limits.max_work) throw BudgetError("weighted enumeration work estimate exceeds the budget");
  if (edges > cutoff) return out;  // result is homogeneous of degree E

  const int types = m * (m + 1) / 2;
  const std::uint64_t radix = static_cast<std::uint64_t>(edges) + 1;
  // The face count is packed above the type counts.
  const std::uint64_t face_radix = static_cast<std::uint64_t>(legs) + 1;
  if (std::pow(double(radix), types) * double(face_radix) > 1.8e19) throw BudgetError("too many edge types to pack");
  std::uint64_t key_space = face_radix;
  for (int t = 0; t < types && key_space <= TypeHistogram::kFlatLimit; ++t) key_space *= radix;

  auto visit = [&](TypeHistogram& h, const auto& mate) {
    std::array<int, kMaxLegsHard + 2> face_of{};
    const int faces = faces_of(d, mate, &face_of);
    std::array<std::pair<int, int>, kMaxLegsHard / 2 + 1> edge_faces{};
    int ne = 0;
    for (int l = 0; l < legs; ++l)
      if (l < mate[l]) edge_faces[ne++] = {face_of[l], face_of[mate[l]]};

    const std::uint64_t face_key = static_cast<std::uint64_t>(faces);
    if (m == 1) {
      h.add(face_key * radix + static_cast<std::uint64_t>(edges));
      return;
    }
    if (m == 2) {
      // bit set = index 1, clear = index 0; types: 0 = (0,0), 1 = (0,1), 2 = (1,1)
      std::array<std::uint32_t, kMaxLegsHard / 2 + 1> emask{};
      for (int e = 0; e < ne; ++e)
        emask[e] = (std::uint32_t{1} << edge_faces[e].first) | (std::uint32_t{1} << edge_faces[e].second);
      const std::uint32_t total = std::uint32_t{1} << faces;
      for (std::uint32_t mask = 0; mask < total; ++mask) {
        int n00 = 0, n11 = 0;
        for (int e = 0; e < ne; ++e) {
          const std::uint32_t hit = mask & emask[e];
          n11 += hit == emask[e];
          n00 += hit == 0;
        }
        const int n01 = ne - n00 - n11;
        h.add(((face_key * radix + static_cast<std::uint64_t>(n11)) * radix + n01) * radix + n00);
      }
      return;
    }
    std::array<int, kMaxLegsHard + 2> idx{};
    for (;;) {
      std::array<int, 10> cnt{};
      for (int e = 0; e < ne; ++e) ++cnt[pair_type(idx[edge_faces[e].first], idx[edge_faces[e].second], m)];
      std::uint64_t key = face_key;
      for (int t = types - 1; t >= 0; --t) key = key * radix + cnt[t];
      h.add(key);
      int f = 0;
      while (f < faces && ++idx[f] == m) idx[f++] = 0;
      if (f == faces) break;
    }
  };

  TypeHistogram hist = parallel_enumerate<TypeHistogram>(
      legs, threads, [&] { return TypeHistogram(key_space); }, visit,
      [](TypeHistogram& total, const TypeHistogram& part) {
        part.for_each([&](std::uint64_t k, std::uint64_t c) { total.add(k, c); });
      });

  // Decode keys and group them by face count.
  std::map<int, std::vector<std::pair<std::vector<int>, std::uint64_t>>> groups;
  hist.for_each([&](std::uint64_t key, std::uint64_t count) {
    std::vector<int> cnt(types);
    std::uint64_t k = key;
    for (int t = 0; t < types; ++t) {
      cnt[t] = static_cast<int>(k % radix);
      k /= radix;
    }
    groups[static_cast<int>(k)].emplace_back(std::move(cnt), count);
  });

  std::vector<std::pair<int, int>> type_pairs(types);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) type_pairs[pair_type(a, b, m)] = {a, b};

  for (auto& [faces, entries] : groups) {
    std::sort(entries.begin(), entries.end());
    // Largest denominator power per off-diagonal pair.
    std::vector<int> max_off(types, 0);
    for (const auto& [cnt, count] : entries)
      for (int t = 0; t < types; ++t) max_off[t] = std::max(max_off[t], cnt[t]);
    int denominator_degree = 0;
    for (int t = 0; t < types; ++t)
      if (type_pairs[t].first == type_pairs[t].second) max_off[t] = 0;
      else denominator_degree += max_off[t];
    const int work_cutoff = edges + denominator_degree;

    MultiSeries numerator(vars, work_cutoff);
    for (const auto& [cnt, count] : entries) {
      Exponents e(m, 0);
      Integer two_pow = 1;
      for (int t = 0; t < types; ++t) {
        const auto [a, b] = type_pairs[t];
        e[a] += cnt[t];
        if (a != b) {
          e[b] += cnt[t];
          two_pow <<= cnt[t];
        }
      }
      MultiSeries term(vars, work_cutoff);
      term.add_term(e, Rational(two_pow * Integer(std::to_string(count))));
      for (int t = 0; t < types; ++t) {
        const auto [a, b] = type_pairs[t];
        if (a == b || max_off[t] == cnt[t]) continue;
        term = series_mul(term, binomial_power(vars, work_cutoff, a, b, max_off[t] - cnt[t]));
      }
      numerator += term;
    }

    MultiSeries quotient = numerator;
    for (int t = 0; t < types; ++t) {
      const auto [a, b] = type_pairs[t];
      for (int p = 0; p < max_off[t]; ++p) quotient = divide_by_sum(quotient, a, b);
    }

    MultiSeries result(vars, cutoff);
    for (const auto& [e, c] : quotient.terms()) result.add_term(e, c * coupling);
    if (!result.is_zero()) out.emplace(faces, std::move(result));
  }
  return out;
}

MultiSeries weighted_moment(const std::vector<int>& degrees, const WeightedPropagator& prop, const Rational& coupling,
                            int cutoff, const WeightedLimits& limits, int threads) {
  MultiSeries total(prop.variables(), cutoff);
  for (const auto& [faces, part] : weighted_moment_by_faces(degrees, prop, coupling, cutoff, limits, threads))
    total += part;
  return total;
}

}  // namespace rmt::wick
