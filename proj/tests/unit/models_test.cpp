#include <gtest/gtest.h>

#include "strposet/conditions.hpp"
#include "strposet/error.hpp"
#include "strposet/models.hpp"

using namespace strposet;

namespace {

Poly poly(int p, int d, std::initializer_list<std::tuple<int, int, int>> terms) {
  Poly f{p, d, std::vector<int>(monomial_count(d), 0)};
  for (auto [i, j, v] : terms) f.coef[monomial_index(i, j)] = v;
  return f;
}

}  // namespace

// Curve counts from an independent enumeration over F_p.
TEST(Models, AffineCurveCounts) {
  EXPECT_EQ(affine_plane_fragment(2, 1).n1(), 6u);
  EXPECT_EQ(affine_plane_fragment(2, 2).n1(), 38u);
  EXPECT_EQ(affine_plane_fragment(3, 1).n1(), 12u);
  EXPECT_EQ(affine_plane_fragment(3, 2).n1(), 273u);
  EXPECT_EQ(affine_plane_fragment(5, 1).n1(), 30u);
  EXPECT_EQ(affine_plane_fragment(3, 2).n2(), 9u);
  EXPECT_THROW(affine_plane_fragment(2, 3), CapacityError);
  EXPECT_THROW(affine_plane_fragment(5, 2), CapacityError);
  EXPECT_THROW(affine_plane_fragment(3, 2, 64), CapacityError);
  EXPECT_THROW(affine_plane_fragment(7, 1), Error);
}

TEST(Models, LinesOverF2) {
  auto f = affine_plane_fragment(2, 1);
  ASSERT_EQ(f.n2(), 4u);
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(f.down(m).size(), 3u);
  for (std::size_t x = 0; x < f.n1(); ++x) {
    for (std::size_t y = x + 1; y < f.n1(); ++y) {
      const auto common = f.common_up({x, y});
      EXPECT_LE(common.size(), 1u);
      if (common.size() == 1) {
        EXPECT_TRUE(mub_equals_points(f, {x, y}, common));
      }
    }
  }
  EXPECT_TRUE(check_j4(f, 2).holds);
}

TEST(Models, DistinctLinesMeetOnce) {
  for (int p : {3, 5}) {
    auto f = affine_plane_fragment(p, 1);
    for (std::size_t x = 0; x < f.n1(); ++x)
      for (std::size_t y = x + 1; y < f.n1(); ++y) EXPECT_LE(f.common_up({x, y}).size(), 1u);
  }
}

TEST(Models, IncidenceMatchesEvaluation) {
  auto curves = affine_curves(3, 2);
  auto f = affine_plane_fragment(3, 2);
  ASSERT_EQ(curves.size(), f.n1());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    EXPECT_TRUE(is_irreducible(curves[i]));
    EXPECT_EQ(f.h1_label(i), curves[i].text());
    for (std::size_t m = 0; m < 9; ++m) {
      const bool zero = curves[i].eval(static_cast<int>(m / 3), static_cast<int>(m % 3)) == 0;
      EXPECT_EQ(f.below(i, m), zero) << f.h1_label(i) << " at " << f.h2_label(m);
    }
  }
}

TEST(Models, Irreducibility) {
  EXPECT_FALSE(is_irreducible(poly(2, 2, {{1, 1, 1}})));            // xy
  EXPECT_FALSE(is_irreducible(poly(3, 2, {{2, 0, 1}, {0, 0, 2}})));  // x^2 - 1
  EXPECT_TRUE(is_irreducible(poly(3, 2, {{2, 0, 1}, {0, 1, 2}})));   // x^2 - y
  EXPECT_TRUE(is_irreducible(poly(2, 1, {{1, 0, 1}})));
  EXPECT_THROW(is_irreducible(poly(2, 1, {{0, 0, 1}})), Error);
  EXPECT_EQ(poly(3, 2, {{1, 1, 2}}).degree(), 2);
  EXPECT_EQ(poly(3, 2, {}).degree(), -1);
}

TEST(Models, MonomialOrder) {
  EXPECT_EQ(monomial_count(1), 3u);
  EXPECT_EQ(monomial_count(2), 6u);
  EXPECT_EQ(monomial_index(0, 0), 0u);
  EXPECT_LT(monomial_index(1, 0), monomial_index(0, 1));
  EXPECT_LT(monomial_index(0, 1), monomial_index(2, 0));
}

TEST(Models, RandomIsDeterministic) {
  GeneratorParams p;
  p.seed = 7;
  EXPECT_EQ(random_fragment(p), random_fragment(p));
  auto q = p;
  q.seed = 8;
  EXPECT_NE(random_fragment(p), random_fragment(q));
}

TEST(Models, RandomPlantsWitnesses) {
  GeneratorParams p;
  p.seed = 7;
  auto f = random_fragment(p);
  EXPECT_TRUE(validate(f).ok());
  for (std::size_t m = 0; m < f.n2(); ++m)
    EXPECT_TRUE(find_j3_witness(f, m, {}, 2).has_value()) << m;
  EXPECT_TRUE(check_j4(f, f.n2()).holds);
  EXPECT_TRUE(check_j2(f, p.min_updeg).holds);
}

TEST(Models, RandomRespectsPairwiseCap) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.n1 = 16;
    p.n2 = 5;
    p.pairwise_cap = 2;
    auto f = random_fragment(p);
    for (std::size_t x = 0; x < f.n1(); ++x)
      for (std::size_t y = x + 1; y < f.n1(); ++y) EXPECT_LE(f.common_up({x, y}).size(), 2u);
  }
}

TEST(Models, InfeasibleParams) {
  GeneratorParams p;
  p.n1 = 3;
  EXPECT_THROW(random_fragment(p), Error);
  GeneratorParams q;
  q.pairwise_cap = 1;
  EXPECT_THROW(check_params(q), ValidationError);
}

TEST(Models, Cusp) {
  auto f = cusp_fragment();
  EXPECT_TRUE(validate(f).ok());
  EXPECT_TRUE(mub_equals_points(f, {1, 2}, {0}));
  for (std::size_t y = 1; y < 3; ++y) EXPECT_FALSE(mub_equals_points(f, {0, y}, {0}));
  EXPECT_EQ(find_p5_witness(f, {0}, {0}), std::nullopt);
}
