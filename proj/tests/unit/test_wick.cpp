#include <doctest.h>

#include <functional>
#include <set>

#include "rmt/errors.hpp"
#include "rmt/intersection.hpp"
#include "rmt/wick.hpp"

using namespace rmt;
using namespace rmt::wick;

namespace {

NLaurent nl(std::initializer_list<std::pair<int, long>> terms) {
  NLaurent p;
  for (const auto& [e, c] : terms) p += NLaurent::monomial(e, c);
  return p;
}

// All set partitions of {0..n-1}.
void set_partitions(int n, int i, std::vector<std::vector<int>>& blocks, std::vector<std::vector<std::vector<int>>>& out) {
  if (i == n) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(i);
    set_partitions(n, i + 1, blocks, out);
    blocks[b].pop_back();
  }
  blocks.push_back({i});
  set_partitions(n, i + 1, blocks, out);
  blocks.pop_back();
}

Integer power_of_36(int m) {
  Integer r = 1;
  for (int i = 0; i < m; ++i) r *= 36;
  return r;
}

}  // namespace

TEST_SUITE("wick-oracle") {
  TEST_CASE("pairing counts match (K-1)!! up to K = 16") {
    for (int legs = 0; legs <= 16; legs += 2) {
      long count = 0;
      for_each_pair_partition(legs, [&](const std::vector<int>&) { ++count; });
      CHECK(Integer(count) == pairing_count(legs));
      CHECK(pairing_count(legs) == double_factorial(legs - 1));
    }
    CHECK(pairing_count(5) == 0);
    long odd = 0;
    for_each_pair_partition(5, [&](const std::vector<int>&) { ++odd; });
    CHECK(odd == 0);
  }

  TEST_CASE("enumerated pairings are distinct involutions") {
    const auto all = enumerate_pair_partitions(8);
    CHECK(all.size() == 105);
    std::set<std::vector<int>> seen;
    for (const auto& p : all) {
      CHECK(p.valid());
      CHECK(p.edge_count() == 4);
      seen.insert(p.mate);
    }
    CHECK(seen.size() == 105);
  }

  TEST_CASE("face counts of small gluings") {
    const StarDiagram square({4});
    // planar gluings of a square have 3 faces, the crossing one has 1
    std::multiset<int> faces;
    for (const auto& p : enumerate_pair_partitions(4)) faces.insert(face_count(square, p));
    CHECK(faces == std::multiset<int>{1, 3, 3});
    const StarDiagram two({1, 1});
    CHECK(face_count(two, std::vector<int>{1, 0}) == 1);
    CHECK(component_count(two, std::vector<int>{1, 0}) == 1);
  }

  TEST_CASE("one-point examples") {
    CHECK(vertex_moment({2}) == nl({{0, 1}}));
    CHECK(vertex_moment({4}) == nl({{0, 2}, {2, 1}}));
    CHECK(vertex_moment({6}) == nl({{0, 5}, {2, 10}}));
    CHECK(vertex_moment({3}).is_zero());
    CHECK_THROWS_AS(vertex_moment({0}), UsageError);
  }

  TEST_CASE("two-point examples") {
    CHECK(vertex_moment({2, 2}) == nl({{0, 1}, {2, 2}}));
    CHECK(connected_moment({2, 2}) == nl({{2, 2}}));
    CHECK(connected_moment({1, 1}) == nl({{2, 1}}));
    CHECK(vertex_moment({1, 1}) == nl({{2, 1}}));
    CHECK(connected_moment({1, 3}) == nl({{2, 3}}));
  }

  TEST_CASE("full moment is the sum over set partitions of connected moments") {
    const std::vector<std::vector<int>> cases{{2, 2, 2}, {1, 1, 2}, {1, 2, 3}, {4, 2}, {3, 3}, {2, 2, 4}, {1, 1, 1, 1}};
    for (const auto& ks : cases) {
      std::vector<std::vector<std::vector<int>>> parts;
      std::vector<std::vector<int>> blocks;
      set_partitions(static_cast<int>(ks.size()), 0, blocks, parts);
      NLaurent sum;
      for (const auto& partition : parts) {
        NLaurent prod(Rational(1));
        for (const auto& b : partition) {
          std::vector<int> sub;
          for (int i : b) sub.push_back(ks[i]);
          prod = prod * connected_moment(sub);
        }
        sum += prod;
      }
      CHECK(sum == vertex_moment(ks));
    }
  }

  TEST_CASE("only even powers of nu occur") {
    for (const auto& ks : std::vector<std::vector<int>>{{8}, {3, 5}, {1, 2, 3}, {2, 4, 6}, {5, 5, 2}}) {
      const NLaurent full = vertex_moment(ks), conn = connected_moment(ks);
      for (const auto& [e, c] : full.terms()) CHECK(e % 2 == 0);
      for (const auto& [e, c] : conn.terms()) CHECK(e % 2 == 0);
    }
  }

  TEST_CASE("genus counts add up and follow the Harer-Zagier values") {
    const auto counts = genus_counts({8});
    Integer total = 0;
    std::map<int, Integer> by_genus;
    for (const auto& c : counts) {
      total += c.count;
      CHECK(c.connected);
      by_genus[c.genus] += c.count;
    }
    CHECK(total == 105);
    CHECK(by_genus[0] == 14);
    CHECK(by_genus[1] == 70);
    CHECK(by_genus[2] == 21);
  }

  TEST_CASE("budget") {
    CHECK_THROWS_AS(vertex_moment({18}), BudgetError);
    EnumerationLimits lim;
    lim.allow_k18 = true;
    CHECK(lim.effective_max_legs() == 18);
    CHECK_THROWS_AS(lim.check(20), BudgetError);
    CHECK_NOTHROW(lim.check(18));
  }

  TEST_CASE("thread count does not change results") {
    CHECK(vertex_moment({12}, {}, 1) == vertex_moment({12}, {}, 3));
    CHECK(connected_moment({4, 4, 2}, {}, 1) == connected_moment({4, 4, 2}, {}, 4));
  }

  TEST_CASE("weighted moment with one index is the cubic Gaussian integral") {
    const WeightedPropagator prop(1);
    const MultiSeries z = intersect::z_airy_series(3);
    for (int m = 1; m <= 2; ++m) {
      const int j = 2 * m;
      Rational coupling(Integer(m % 2 == 0 ? 1 : -1), power_of_36(m) * factorial(static_cast<unsigned>(j)));
      coupling.canonicalize();
      const MultiSeries w = weighted_moment(std::vector<int>(j, 3), prop, coupling, 9);
      CHECK(w.coeff({3 * m}) == z.coeff({m}));
      CHECK(w.size() == 1);
    }
  }

  TEST_CASE("weighted propagator") {
    const WeightedPropagator prop(2);
    const auto diag = prop.weight(0, 0, 4);
    CHECK(diag.denominator_power == 0);
    CHECK(diag.numerator.coeff({1, 0}) == 1);
    const auto off = prop.weight(0, 1, 4);
    CHECK(off.denominator_power == 1);
    CHECK(off.numerator.coeff({1, 1}) == 2);
    CHECK_THROWS_AS(prop.weight(0, 2, 4), UsageError);
  }

  TEST_CASE("weighted moment is symmetric and splits by faces") {
    const WeightedPropagator prop(2);
    const Rational c = make_rational(-1, 72);
    const MultiSeries w = weighted_moment({3, 3}, prop, c, 6);
    for (const auto& [e, coef] : w.terms()) CHECK(w.coeff({e[1], e[0]}) == coef);
    MultiSeries total(prop.variables(), 6);
    for (const auto& [faces, part] : weighted_moment_by_faces({3, 3}, prop, c, 6)) total += part;
    CHECK(total == w);
    CHECK(weighted_moment({3, 3}, prop, c, 6, {}, 1) == weighted_moment({3, 3}, prop, c, 6, {}, 2));
  }

  TEST_CASE("weighted budget") {
    WeightedLimits lim;
    lim.max_legs = 6;
    CHECK_THROWS_AS(weighted_moment({3, 3, 3, 3}, WeightedPropagator(2), 1, 9, lim), BudgetError);
    WeightedLimits idx;
    idx.max_index_count = 1;
    CHECK_THROWS_AS(weighted_moment({3, 3}, WeightedPropagator(2), 1, 9, idx), BudgetError);
  }
}
