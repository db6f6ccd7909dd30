#include <gtest/gtest.h>

#include "strposet/conditions.hpp"
#include "strposet/error.hpp"
#include "strposet/models.hpp"

using namespace strposet;

namespace {

constexpr std::size_t a = 0, b = 1, c = 2, d = 0, e = 1;

const PosetFragment& f0() {
  static const PosetFragment f = small_example_fragment();
  return f;
}

}  // namespace

TEST(Conditions, P3ThresholdOnExample) {
  auto k1 = check_p1_to_p4(f0(), 1);
  ASSERT_EQ(k1.size(), 4u);
  EXPECT_TRUE(k1[0].holds);
  EXPECT_TRUE(k1[1].holds);
  EXPECT_TRUE(k1[2].holds);
  auto k2 = check_p1_to_p4(f0(), 2);
  EXPECT_FALSE(k2[2].holds);
  ASSERT_NE(k2[2].first_failure(), nullptr);
  EXPECT_TRUE(k2[2].first_failure()->instance.front().second.contains(ElementId::h1(c)));
  EXPECT_EQ(k2[3].param("max_common"), 2);
}

TEST(Conditions, P5Witnesses) {
  EXPECT_EQ(find_p5_witness(f0(), {c}, {d, e}), std::optional<std::size_t>(a));
  EXPECT_EQ(find_p5_witness(f0(), {a}, {d}), std::optional<std::size_t>(c));
  EXPECT_EQ(find_p5_witness(f0(), {a}, {e}), std::nullopt);
  EXPECT_THROW(find_p5_witness(f0(), {}, {d}), Error);
}

TEST(Conditions, CuspFailsP5) {
  auto f3 = cusp_fragment();
  EXPECT_EQ(find_p5_witness(f3, {0}, {0}), std::nullopt);
  auto report = check_p5(f3);
  EXPECT_FALSE(report.holds);
}

TEST(Conditions, J1J2) {
  EXPECT_TRUE(check_j1(f0()).holds);
  EXPECT_TRUE(check_j2(f0(), 1).holds);
  auto j2 = check_j2(f0(), 3);
  EXPECT_FALSE(j2.holds);
  EXPECT_TRUE(j2.first_failure()->instance.front().second.contains(ElementId::h1(a)));
}

TEST(Conditions, J3Witnesses) {
  EXPECT_EQ(find_j3_witness(f0(), d, {}), std::optional<TierSet>(TierSet{a, c}));
  EXPECT_EQ(find_j3_witness(f0(), d, {c}), std::nullopt);
  EXPECT_EQ(find_j3_witness(f0(), e, {}), std::nullopt);
  EXPECT_FALSE(check_j3(f0()).holds);
}

TEST(Conditions, J4AndSpecialT) {
  EXPECT_TRUE(check_j4(f0(), 2).holds);
  auto t = find_special_t(f0(), {}, {d, e});
  ASSERT_TRUE(t.t().has_value());
  EXPECT_TRUE(*t.t() == a || *t.t() == b);
  EXPECT_EQ(find_special_t(f0(), {a, b}, {d}).t(), std::optional<std::size_t>(c));
  EXPECT_EQ(find_special_t(f0(), {a, b, c}, {d}).t(), std::nullopt);
}

TEST(Conditions, BatteryOnExampleFails) {
  auto result = run_battery(f0());
  EXPECT_FALSE(result.passed);
  EXPECT_FALSE(result.reasons.empty());
}

TEST(Conditions, BatteryOnAffineLines) {
  EXPECT_TRUE(run_battery(affine_plane_fragment(3, 1)).passed);
  EXPECT_TRUE(run_battery(affine_plane_fragment(5, 1)).passed);
}

TEST(ConditionsProperty, J3WitnessesAreGenuine) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    auto f = random_fragment(p);
    for (std::size_t m = 0; m < f.n2(); ++m) {
      auto k = find_j3_witness(f, m, {}, 2);
      ASSERT_TRUE(k.has_value()) << "seed " << seed << " m " << m;
      EXPECT_TRUE(mub_equals_points(f, *k, TierSet::singleton(m)));
      EXPECT_TRUE(k->is_subset_of(f.down(m)));
    }
  }
}
