#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "uemb/usuit.hpp"

using namespace uemb;
using uemb::testing::hexagon;
using uemb::testing::r;
using uemb::testing::rv;

namespace {

std::vector<std::size_t> indices_of(const PolyhedralSpace<Rat>& s, const std::vector<RatVector>& pts) {
  std::vector<std::size_t> out;
  for (const auto& p : pts) {
    const auto k = find_point(s.dual_extremes(), p);
    EXPECT_NE(k, npos) << format_vector(p);
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(FindSelector, Examples) {
  EXPECT_EQ(find_selector(make_linf_space<Rat>(2)), rv({r(1), r(1)}));
  EXPECT_EQ(find_selector(make_l1_space<Rat>(2)), rv({r(1), r(1, 2)}));
  const auto hex = hexagon();
  const auto z = find_selector(hex);
  for (const auto& e : hex.dual_extremes()) EXPECT_NE(dot(z, e), 0);
  for (const auto& e : hex.dual_extremes()) EXPECT_NE(dot(rv({r(2), r(1)}), e), 0);
}

TEST(BuildUSuitable, Examples) {
  const auto l1 = make_l1_space<Rat>(2);
  auto e = build_u_suitable(l1, rv({r(1), r(1, 2)}));
  EXPECT_EQ(e.indices, indices_of(l1, {rv({r(1), r(1)}), rv({r(1), r(-1)})}));
  EXPECT_TRUE(e.checks.proper());

  const auto hex = hexagon();
  e = build_u_suitable(hex, rv({r(2), r(1)}));
  EXPECT_EQ(e.indices, indices_of(hex, {rv({r(1), r(0)}), rv({r(0), r(1)}), rv({r(1), r(-1)})}));
  EXPECT_TRUE(e.checks.proper());

  const auto linf3 = make_linf_space<Rat>(3);
  e = build_u_suitable(linf3, rv({r(1), r(1), r(1)}));
  EXPECT_EQ(e.indices, indices_of(linf3, {rv({r(1), r(0), r(0)}), rv({r(0), r(1), r(0)}),
                                          rv({r(0), r(0), r(1)})}));

  EXPECT_THROW(build_u_suitable(l1, rv({r(1), r(1)})), SelectorError);
  EXPECT_THROW(build_u_suitable(l1, rv({r(1)})), InputError);
}

TEST(VerifyUSuitable, Examples) {
  const auto l1 = make_l1_space<Rat>(2);
  auto c = verify_u_suitable(l1, indices_of(l1, {rv({r(1), r(1)}), rv({r(1), r(-1)})}));
  EXPECT_TRUE(c.cond_i && c.cond_ii && c.cond_iii);
  EXPECT_EQ(c.faces_checked, 8u);
  c = verify_u_suitable(l1, indices_of(l1, {rv({r(1), r(1)}), rv({r(-1), r(-1)})}));
  EXPECT_FALSE(c.cond_i);
  c = verify_u_suitable(l1, indices_of(l1, {rv({r(1), r(1)})}));
  EXPECT_TRUE(c.cond_i);
  EXPECT_FALSE(c.cond_ii);
  EXPECT_THROW(verify_u_suitable(l1, {9}), InputError);
}

TEST(ProveNoUSuitable, SmoothPlane) {
  const auto rep = prove_no_u_suitable(SmoothSpace2D{});
  EXPECT_EQ(rep.obstruction, "connected extreme sphere");
  EXPECT_FALSE(rep.u_embeddable);
  EXPECT_THROW(prove_no_u_suitable(AnySpace{hexagon()}), InputError);
  EXPECT_NO_THROW(prove_no_u_suitable(AnySpace{SmoothSpace2D{}}));
}

TEST(BuildUSuitable, DiskPolygons) {
  for (int m = 3; m <= 12; ++m) {
    const auto s = uemb::testing::rational_disk_polygon(m);
    EXPECT_EQ(s.num_extremes(), static_cast<std::size_t>(2 * m));
    const auto e = build_u_suitable(s);
    EXPECT_TRUE(e.checks.proper()) << "m = " << m;
    EXPECT_EQ(e.indices.size(), static_cast<std::size_t>(m));
  }
}

TEST(BuildUSuitable, RandomCorpus) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = uemb::testing::random_symmetric_space(rng, 2 + trial % 3, 2 + trial % 7);
    ASSERT_LE(s.num_extremes(), 16u);
    const auto e = build_u_suitable(s);
    EXPECT_TRUE(e.checks.cond_i);
    EXPECT_TRUE(e.checks.cond_ii);
    EXPECT_TRUE(e.checks.cond_iii);
    EXPECT_EQ(e.checks.faces_checked, s.faces().size());

    // -E is U-suitable as well.
    std::vector<std::size_t> neg;
    for (auto k : e.indices) neg.push_back(s.antipode(k));
    std::sort(neg.begin(), neg.end());
    EXPECT_TRUE(verify_u_suitable(s, neg).proper());

    // Flipping one antipodal pair keeps (i)-(iii).
    for (std::size_t i = 0; i < e.indices.size(); ++i) {
      auto flipped = e.indices;
      flipped[i] = s.antipode(flipped[i]);
      std::sort(flipped.begin(), flipped.end());
      EXPECT_TRUE(verify_u_suitable(s, flipped).proper());
    }

    // A selector with the same sign pattern gives the same E.
    const auto z = *e.selector;
    EXPECT_EQ(build_u_suitable(s, scaled(z, r(5, 2))).indices, e.indices);
    RatVector nudge(z);
    for (auto& c : nudge) c += r(static_cast<std::int64_t>(rng() % 3) - 1, 1000);
    bool same_pattern = true;
    for (const auto& x : s.dual_extremes())
      same_pattern = same_pattern && sign(dot(z, x)) == sign(dot(nudge, x));
    if (same_pattern) EXPECT_EQ(build_u_suitable(s, nudge).indices, e.indices);
  }
}
