#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tlm/errors.hpp"
#include "tlm/lebesgue.hpp"

using namespace tlm;

namespace {

// Bisection on the modular predicate, as an independent oracle.
double bisection_norm(const std::vector<double>& a, const std::vector<double>& p,
                      double w) {
  auto modular = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w * std::pow(a[i] / lambda, p[i]);
    return s;
  };
  double lo = 1e-12;
  double hi = 1.0;
  while (modular(hi) > 1.0) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = std::sqrt(lo * hi);
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TEST(LuxemburgRoot, MatchesBisectionOnRandomInputs) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mag(0.0, 3.0);
  std::uniform_real_distribution<double> ex(1.0, 6.0);
  std::uniform_int_distribution<int> len(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = len(rng);
    std::vector<double> a(m);
    std::vector<double> p(m);
    for (int i = 0; i < m; ++i) {
      a[i] = mag(rng) * std::exp(-0.3 * i);
      p[i] = trial % 3 == 0 ? 2.0 : ex(rng);
    }
    const double w = trial % 2 ? 0.03125 : 0.5;
    EXPECT_NEAR(detail::luxemburg_root(a, p, w) / bisection_norm(a, p, w), 1.0, 1e-10)
        << "trial " << trial;
  }
}

TEST(LuxemburgRoot, InfiniteExponentCaseSplit) {
  std::vector<double> a{0.5, 2.0, 0.1};
  std::vector<double> p{2.0, kInfiniteExponent, 2.0};
  const double finite = detail::luxemburg_root(std::vector<double>{0.5, 0.1},
                                               std::vector<double>{2.0, 2.0}, 1.0);
  EXPECT_DOUBLE_EQ(detail::luxemburg_root(a, p, 1.0), std::max(2.0, finite));
  a[1] = 0.01;
  EXPECT_DOUBLE_EQ(detail::luxemburg_root(a, p, 1.0), finite);
}

TEST(LebesgueNorm, ConstantExponentQuadrature) {
  const Grid g(1, 4096, 64.0);
  const auto whole = DomainMask::whole(g);
  for (int k = 0; k < 20; ++k) {
    const auto f = fixtures::windowed_random(g, 100 + k, 8.0);
    for (double p0 : {1.0, 1.5, 2.0, 4.0}) {
      double s = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p0);
      const double expected = std::pow(g.spacing() * s, 1.0 / p0);
      const ExponentField p(g, ExponentDescriptor::constant(p0));
      EXPECT_NEAR(quasi_norm(f, p, whole) / expected, 1.0, 1e-8);
    }
    const ExponentField pinf(g, ExponentDescriptor::constant(kInfiniteExponent));
    EXPECT_NEAR(quasi_norm(f, pinf, whole) / f.max_abs(), 1.0, 1e-8);
  }
}

TEST(LebesgueNorm, ZeroAndHomogeneity) {
  const Grid g(1, 256, 8.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(2.0, 1.0));
  const auto whole = DomainMask::whole(g);
  EXPECT_EQ(lebesgue_norm(GridFunction(g), p, whole), 0.0);
  const auto f = fixtures::windowed_random(g, 3, 2.0);
  EXPECT_NEAR(lebesgue_norm(3.0 * f, p, whole) / lebesgue_norm(f, p, whole), 3.0, 1e-10);
}

TEST(LebesgueNorm, ModularAtNormIsOne) {
  const Grid g(2, 32, 4.0);
  const ExponentField p(g, ExponentDescriptor::bump(2.0, 1.5, 3.0));
  const auto whole = DomainMask::whole(g);
  const auto f = fixtures::windowed_random(g, 7, 1.5);
  const double lambda = lebesgue_norm(f, p, whole);
  EXPECT_NEAR(semimodular((1.0 / lambda) * f, p, whole), 1.0, 1e-10);
}

TEST(Semimodular, ContractAndInfinity) {
  const Grid g(1, 64, 4.0);
  const auto whole = DomainMask::whole(g);
  GridFunction f(g);
  f[3] = 2.0;
  EXPECT_THROW(semimodular(f, ExponentField(g, ExponentDescriptor::constant(0.5)), whole),
               ContractError);
  const ExponentField pinf(g, ExponentDescriptor::constant(kInfiniteExponent));
  EXPECT_TRUE(std::isinf(semimodular(f, pinf, whole)));
  EXPECT_EQ(semimodular(0.25 * f, pinf, whole), 0.0);
}

TEST(QuasiNorm, TPowerIdentity) {
  const Grid g(1, 1024, 16.0);
  const auto whole = DomainMask::whole(g);
  const ExponentField p(g, ExponentDescriptor::log_decay(0.6, 0.3));
  ASSERT_LT(p.p_minus(), 1.0);
  for (int k = 0; k < 5; ++k) {
    const auto f = fixtures::windowed_random(g, 50 + k, 3.0);
    const double a = quasi_norm(f, p, whole, p.p_minus() / 2.0);
    const double b = quasi_norm(f, p, whole, p.p_minus() / 3.0);
    EXPECT_NEAR(a / b, 1.0, 1e-8);
    EXPECT_THROW(quasi_norm(f, p, whole, 2.0 * p.p_minus()), DomainError);
  }
}

TEST(QuasiNorm, MaskRestriction) {
  const Grid g(1, 128, 4.0);
  const ExponentField p(g, ExponentDescriptor::constant(2.0));
  const auto f = fixtures::random_function(g, 1);
  const auto mask = DomainMask::ball(g, {0.0, 0.0}, 1.0);
  double s = 0.0;
  for (std::size_t i : mask.indices()) s += std::norm(f[i]);
  EXPECT_NEAR(quasi_norm(f, p, mask), std::sqrt(g.spacing() * s), 1e-12);
}

TEST(Masks, BallAndCube) {
  const Grid g(2, 32, 4.0);
  const auto ball = DomainMask::ball(g, {0.0, 0.0}, 1.0);
  const auto cube = DomainMask::cube(g, {0.0, 0.0}, 1.0);
  EXPECT_LT(ball.count(), cube.count());
  EXPECT_EQ(cube.count(), 7u * 7u);
  EXPECT_EQ(DomainMask::whole(g).count(), g.size());
  // wrap-around on the torus
  const auto edge = DomainMask::ball(g, {-4.0, 0.0}, 0.3);
  EXPECT_EQ(edge.count(), 5u);
  EXPECT_TRUE(edge.contains(g.linear_index(31, 16)));
  EXPECT_EQ(DomainMask::cube(g, {-4.0, -4.0}, 0.3).count(), 9u);
}

TEST(CharBall, PredictionBranches) {
  const Grid g(1, 4096, 64.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(3.0, -1.0));
  EXPECT_DOUBLE_EQ(char_ball_prediction(p, {0.0, 0.0}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(char_ball_prediction(p, {0.0, 0.0}, 0.25), std::pow(0.25, 1.0 / 2.0));
  EXPECT_DOUBLE_EQ(char_ball_prediction(p, {0.0, 0.0}, 8.0), std::pow(8.0, 1.0 / 3.0));
}

TEST(CharBall, ConstantExponentRatioIsRootTwo) {
  const Grid g(1, 4096, 64.0);
  const ExponentField p(g, ExponentDescriptor::constant(2.0));
  for (double r : {0.25, 0.5, 1.0}) {
    GridFunction chi(g);
    for (std::size_t i : DomainMask::ball(g, {0.0, 0.0}, r).indices()) chi[i] = 1.0;
    const double measured = quasi_norm(chi, p, DomainMask::whole(g));
    // Open ball: 2r/h - 1 nodes.
    EXPECT_NEAR(measured, std::sqrt(2.0 * r - g.spacing()), 1e-12);
    EXPECT_NEAR(measured / char_ball_prediction(p, {0.0, 0.0}, r), std::sqrt(2.0), 0.05);
  }
}
