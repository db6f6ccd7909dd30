#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "strposet/error.hpp"
#include "strposet/iso_map.hpp"
#include "strposet/models.hpp"
#include "strposet/structure.hpp"

using namespace strposet;

namespace {

constexpr std::size_t a = 0, b = 1, c = 2, d = 0, e = 1;
constexpr std::size_t P = 0, Y1 = 1, Y2 = 2, m = 0, n1 = 1;

const PosetFragment& f0() {
  static const PosetFragment f = small_example_fragment();
  return f;
}

const PosetFragment& f3() {
  static const PosetFragment f = cusp_fragment();
  return f;
}

StrPair pr(TierSet first, TierSet second) { return {first, second}; }

}  // namespace

TEST(Structure, Membership) {
  EXPECT_TRUE(str_member(f0(), {a, b, c}, {d, e}));
  EXPECT_FALSE(str_member(f0(), {c}, {d, e}));
  EXPECT_TRUE(str_member(f0(), {c}, {d}));
  EXPECT_FALSE(str_member(f0(), {}, {d}));
  EXPECT_FALSE(str_member(f0(), {a}, {}));
  EXPECT_TRUE(str_member(f0(), StrNode{RayNode{c}}));
}

TEST(Structure, WMax) {
  EXPECT_EQ(w_max(f0(), {a, b, c}, {d, e}), (TierSet{a, b}));
  EXPECT_TRUE(w_max(f0(), {c}, {e}).empty());
}

TEST(Structure, DominatesVia) {
  EXPECT_TRUE(dominates_via(f0(), pr({a, c}, {d}), pr({a}, {d, e}), {c}));
  EXPECT_FALSE(dominates_via(f0(), pr({a, c}, {d}), pr({a}, {d, e}), {}));
  // W may overlap A.
  EXPECT_TRUE(dominates_via(f0(), pr({a, b}, {d, e}), pr({a}, {d, e}), {a, b}));
  EXPECT_THROW(dominates_via(f0(), pr({c}, {d, e}), pr({a}, {d, e}), {c}), Error);
}

TEST(Structure, StrLeqExamples) {
  EXPECT_TRUE(str_leq(f0(), pr({a}, {d, e}), pr({a, b}, {d, e})));
  EXPECT_TRUE(str_leq(f0(), pr({a, b, c}, {d, e}), pr({a, b, c}, {d, e})));
  EXPECT_TRUE(str_leq(f0(), pr({a}, {d, e}), pr({a, c}, {d})));
  EXPECT_FALSE(str_leq(f0(), pr({a, b}, {d, e}), pr({a}, {d, e})));
  EXPECT_TRUE(str_leq_bruteforce(f0(), pr({a}, {d, e}), pr({a, b}, {d, e})));
  EXPECT_THROW(str_leq(f0(), pr({c}, {e}), pr({a}, {e})), Error);
}

TEST(Structure, RaysSitBelowTheirPairs) {
  EXPECT_TRUE(str_leq(f0(), StrNode{RayNode{a}}, StrNode{pr({a, c}, {d})}));
  EXPECT_EQ(materialize(f0(), StrNode{RayNode{c}}), pr({c}, {d}));
  EXPECT_EQ(node_text(f0(), StrNode{RayNode{a}}), "ray(a)");
  EXPECT_EQ(node_text(f0(), StrNode{pr({a, b}, {d, e})}), "a,b|d,e");
}

TEST(Structure, EllEta) {
  EXPECT_EQ(ell(f0(), {a, b, c}, {d, e}), 2u);
  EXPECT_EQ(eta(f0(), {a, b, c}, {d, e}), 1u);
  EXPECT_THROW(ell(f0(), {c}, {e}), Error);
}

TEST(Structure, HeightPositive) {
  EXPECT_TRUE(fiber_height_positive(f0(), {a, b, c}, {d, e}));
  EXPECT_FALSE(fiber_height_positive(f0(), {c}, {d}));
  EXPECT_TRUE(fiber_height_positive(f0(), {a, c}, {d}));
}

TEST(Structure, DownSets) {
  auto l = down_set_in_fiber(f0(), {a, b}, {d, e});
  EXPECT_EQ(l.size(), 3u);
  EXPECT_TRUE(small_poset_isomorphic(l.as_poset(), make_I(2)));
  EXPECT_EQ(down_set_in_fiber(f0(), {a, b, c}, {d, e}).size(), 6u);
  EXPECT_EQ(down_set_in_fiber(f0(), {c}, {d}).size(), 1u);
}

TEST(Structure, CountingFormulaExamples) {
  auto ab = counting_formula(f0(), {a, b}, {d, e});
  EXPECT_EQ(ab.predicted, 3u);
  EXPECT_EQ(ab.actual, 3u);
  auto abc = counting_formula(f0(), {a, b, c}, {d, e});
  EXPECT_EQ(abc.predicted, 6u);
  EXPECT_EQ(abc.actual, 6u);
  auto cusp = counting_formula(f3(), {P, Y1, Y2}, {m});
  EXPECT_EQ(cusp.predicted, 7u);
  EXPECT_EQ(cusp.actual, 7u);
  EXPECT_THROW(counting_formula(f0(), {c}, {d}), Error);
}

TEST(Structure, Parity) {
  EXPECT_TRUE(parity_mub_check(f0(), {a, b}, {d, e}));
  EXPECT_FALSE(parity_mub_check(f0(), {a, b, c}, {d, e}));
  EXPECT_TRUE(parity_mub_check(f3(), {P, Y1, Y2}, {m}));
}

TEST(Structure, DetectI2) {
  EXPECT_TRUE(detect_I2(f0(), {a, b}, {d, e}));
  EXPECT_TRUE(detect_I2(f0(), {a, c}, {d}));
  EXPECT_FALSE(detect_I2(f0(), {a, b, c}, {d, e}));
}

TEST(Structure, MuStatistic) {
  auto r = mu_statistic(f0(), a, d);
  ASSERT_TRUE(r.mu.has_value());
  EXPECT_EQ(*r.mu, 3u);
  EXPECT_FALSE(r.ge4);
  auto cusp = mu_statistic(f3(), P, m);
  ASSERT_TRUE(cusp.mu.has_value());
  EXPECT_EQ(*cusp.mu, 7u);
  EXPECT_TRUE(cusp.ge4);
  EXPECT_EQ(cusp.argmin, (TierSet{P, Y1, Y2}));
  EXPECT_THROW(mu_statistic(f0(), c, e), Error);
}

TEST(Structure, MuInfiniteWithoutPositiveHeight) {
  // One curve below one point: nothing in the fiber has positive height.
  auto f = PosetFragment::from_pairs(1, 1, {{0, 0}});
  EXPECT_TRUE(mu_statistic(f, 0, 0).infinite());
}

TEST(Structure, EnumerateFiber) {
  EXPECT_EQ(enumerate_fiber(f0(), {d, e}, {a, b, c}, 3).size(), 6u);
  EXPECT_EQ(enumerate_fiber(f0(), {d}, {a, b, c}, 3).size(), 7u);
  EXPECT_EQ(enumerate_fiber(f0(), {d}, {}, 3).size(), 0u);
}

TEST(Structure, JoinAtPoint) {
  auto j = join_at_point(f3(), pr({P}, {m, n1}), pr({P}, {m}), m);
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(*j, pr({P, Y1, Y2}, {m}));
  EXPECT_TRUE(str_leq(f3(), pr({P}, {m, n1}), *j));
  EXPECT_TRUE(str_leq(f3(), pr({P}, {m}), *j));
  EXPECT_FALSE(join_at_point(f0(), pr({a}, {d}), pr({c}, {d}), d).has_value());
}

// A ray ordinate can give a height-0 node a strictly smaller fiber member.
TEST(Structure, RayOrdinateDegeneracy) {
  const TierSet b_ray{m, n1};
  EXPECT_TRUE(is_ray_ordinate(f3(), b_ray));
  EXPECT_FALSE(fiber_height_positive(f3(), {Y1, Y2}, b_ray));
  EXPECT_TRUE(str_leq(f3(), pr({Y1}, b_ray), pr({Y1, Y2}, b_ray)));
  EXPECT_EQ(down_set_in_fiber(f3(), {Y1, Y2}, b_ray).size(), 2u);
}

TEST(StructureProperty, AgreesWithOracleOnCorpus) {
  std::size_t nodes = 0;
  for (const auto& entry : corpus::all()) {
    if (entry.fragment.n1() > 40) continue;
    oracle::Poset o(entry.fragment);
    for (const auto& spec : entry.fibers) {
      auto view = enumerate_fiber(entry.fragment, spec.second, spec.support, spec.amax);
      const auto bset = oracle::to_set(spec.second);
      for (std::size_t i = 0; i < view.size(); ++i) {
        const auto ai = oracle::to_set(view.firsts[i]);
        ASSERT_TRUE(o.member(ai, bset));
        EXPECT_EQ(fiber_height_positive(entry.fragment, view.firsts[i], spec.second),
                  o.height_positive(ai, bset))
            << entry.name;
        EXPECT_EQ(down_set_in_fiber(entry.fragment, view.firsts[i], spec.second).size(),
                  o.down_set_size(ai, bset))
            << entry.name;
        for (std::size_t j = 0; j < view.size(); ++j) {
          EXPECT_EQ(view.order[i][j], o.str_leq(ai, bset, oracle::to_set(view.firsts[j]), bset))
              << entry.name;
        }
        ++nodes;
      }
    }
  }
  EXPECT_GT(nodes, 500u);
}

TEST(StructureProperty, CrossFiberOrderAgreesWithOracle) {
  std::mt19937_64 rng(11);
  for (const auto& entry : corpus::all()) {
    if (entry.fragment.n1() > 40) continue;
    const auto& f = entry.fragment;
    oracle::Poset o(f);
    std::vector<StrPair> nodes;
    for (const auto& spec : entry.fibers) {
      auto view = enumerate_fiber(f, spec.second, spec.support, std::min<std::size_t>(spec.amax, 3));
      for (std::size_t i = 0; i < view.size(); ++i) nodes.push_back(view.node(i));
    }
    for (int t = 0; t < 300 && !nodes.empty(); ++t) {
      const auto& lo = nodes[uniform_below(rng, nodes.size())];
      const auto& hi = nodes[uniform_below(rng, nodes.size())];
      EXPECT_EQ(str_leq(f, lo, hi),
                o.str_leq(oracle::to_set(lo.first), oracle::to_set(lo.second),
                          oracle::to_set(hi.first), oracle::to_set(hi.second)))
          << entry.name;
    }
  }
}

TEST(StructureProperty, MuAgreesWithLiteralSearch) {
  for (const auto& entry : corpus::all()) {
    const auto& f = entry.fragment;
    if (f.n1() > 16) continue;
    oracle::Poset o(f);
    for (std::size_t pt = 0; pt < f.n2(); ++pt) {
      for (auto x : f.down(pt)) {
        auto got = mu_statistic(f, x, pt, 3);
        EXPECT_EQ(got.mu, o.mu(x, pt, 3)) << entry.name << " x=" << x << " m=" << pt;
      }
    }
  }
}
