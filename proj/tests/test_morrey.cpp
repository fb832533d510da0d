#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "tlm/errors.hpp"
#include "tlm/lebesgue.hpp"
#include "tlm/morrey.hpp"

using namespace tlm;

namespace {

// Oracle: Morrey sup evaluated with explicit ball masks.
double masked_morrey(const GridFunction& f, const ExponentField& p,
                     const ExponentField& u, const BallFamily& family) {
  const Grid& g = f.grid();
  double best = 0.0;
  for (double r : family.radii()) {
    for (std::size_t c : family.centers()) {
      const Point x0 = g.point(c);
      const auto mask = r >= family.covering_radius()
                            ? DomainMask::whole(g)
                            : DomainMask::ball(g, x0, r);
      const double pre = std::pow(r, g.dimension() * (1.0 / u[c] - 1.0 / p[c]));
      best = std::max(best, pre * quasi_norm(f, p, mask));
    }
  }
  return best;
}

}  // namespace

TEST(BallFamily, StandardShape) {
  const Grid g(1, 4096, 64.0);
  const auto fam = BallFamily::standard(g);
  EXPECT_EQ(fam.stride(), 64u);
  EXPECT_EQ(fam.centers().size(), 64u);
  EXPECT_DOUBLE_EQ(fam.radii().front(), g.spacing());
  EXPECT_DOUBLE_EQ(fam.radii().back(), fam.covering_radius());
  std::vector<std::size_t> members;
  fam.ball_members(fam.centers()[5], fam.radii().size() - 1, members);
  EXPECT_EQ(members.size(), g.size());
}

TEST(BallFamily, MembersMatchMask) {
  const Grid g(2, 32, 4.0);
  const BallFamily fam(g, 4, 4);
  std::vector<std::size_t> members;
  for (std::size_t ri = 0; ri + 1 < fam.radii().size(); ++ri) {
    const std::size_t c = fam.centers()[7];
    fam.ball_members(c, ri, members);
    std::sort(members.begin(), members.end());
    EXPECT_EQ(members, DomainMask::ball(g, g.point(c), fam.radii()[ri]).indices());
  }
}

TEST(Morrey, MatchesMaskOracle) {
  for (int n : {1, 2}) {
    const Grid g(n, n == 1 ? 128 : 16, 4.0);
    const ExponentField p(g, ExponentDescriptor::log_decay(1.5, 0.8));
    const ExponentField u(g, ExponentDescriptor::constant(4.0));
    const BallFamily fam(g, n == 1 ? 8 : 4, 8);
    const auto f = fixtures::windowed_random(g, 12, 1.0);
    EXPECT_NEAR(morrey_norm(f, p, u, fam).value / masked_morrey(f, p, u, fam), 1.0, 1e-10);
  }
}

TEST(Morrey, PEqualsURecoversLebesgue) {
  const Grid g(1, 512, 8.0);
  const ExponentField p(g, ExponentDescriptor::constant(2.0));
  const auto f = fixtures::windowed_random(g, 2, 1.0);
  const auto r = morrey_norm(f, p, p, BallFamily::standard(g));
  EXPECT_NEAR(r.value, lebesgue_norm(f, p, DomainMask::whole(g)), 1e-12);
}

TEST(Morrey, TieBreaksToSmallerRadiusThenFirstCenter) {
  const Grid g(1, 64, 4.0);
  const ExponentField p(g, ExponentDescriptor::constant(2.0));
  const BallFamily fam(g, 1, 6);
  GridFunction f(g);
  f[10] = 1.0;
  f[40] = 1.0;
  const auto r = morrey_norm(f, p, p, fam);
  // Every ball holding one spike ties with value sqrt(h); the full-torus
  // ball holds two. Smallest radius holding either spike wins at node 10.
  EXPECT_NEAR(r.value, std::sqrt(2.0 * g.spacing()), 1e-12);
  const ExponentField u(g, ExponentDescriptor::constant(4.0));
  const auto s = morrey_norm(f, p, u, fam);
  EXPECT_EQ(s.argmax.center_index, 10u);
  EXPECT_DOUBLE_EQ(s.argmax.radius, g.spacing());
}

TEST(Morrey, Preconditions) {
  const Grid g(1, 64, 4.0);
  const ExponentField two(g, ExponentDescriptor::constant(2.0));
  const ExponentField three(g, ExponentDescriptor::constant(3.0));
  const ExponentField inf(g, ExponentDescriptor::constant(kInfiniteExponent));
  const auto fam = BallFamily::standard(g);
  const GridFunction f(g);
  EXPECT_THROW(morrey_norm(f, three, two, fam), InputError);
  EXPECT_THROW(morrey_norm(f, two, inf, fam), InputError);
  EXPECT_EQ(morrey_norm(f, two, three, fam).value, 0.0);
}

TEST(LqAggregate, FiniteAndInfinite) {
  const Grid g(1, 16, 1.0);
  std::vector<std::vector<double>> fs{std::vector<double>(16, 3.0),
                                      std::vector<double>(16, 4.0)};
  const auto two = lq_aggregate(fs, ExponentField(g, ExponentDescriptor::constant(2.0)));
  EXPECT_DOUBLE_EQ(two[0], 5.0);
  const auto sup = lq_aggregate(fs, ExponentField(g, ExponentDescriptor::constant(kInfiniteExponent)));
  EXPECT_DOUBLE_EQ(sup[0], 4.0);
  std::vector<std::vector<double>> tiny{std::vector<double>(16, 1e-200),
                                        std::vector<double>(16, 1e-200)};
  const auto t = lq_aggregate(tiny, ExponentField(g, ExponentDescriptor::constant(2.0)));
  EXPECT_NEAR(t[0] / (std::sqrt(2.0) * 1e-200), 1.0, 1e-12);
}

TEST(PowerReindex, IdentityHolds) {
  const Grid g(1, 256, 8.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(1.5, 0.5));
  const ExponentField u(g, ExponentDescriptor::constant(3.0));
  const ExponentField q(g, ExponentDescriptor::constant(2.0));
  const auto fam = BallFamily::standard(g);
  std::vector<GridFunction> fs;
  for (int k = 0; k < 3; ++k) fs.push_back(fixtures::windowed_random(g, 30 + k, 1.5));
  for (double t : {0.5, 1.0, 2.0}) {
    EXPECT_LE(power_reindex_check(fs, p, u, q, t, fam).relative_gap(), 1e-8) << t;
  }
  EXPECT_THROW(power_reindex_check(fs, p, u, q, 0.0, fam), DomainError);
}
