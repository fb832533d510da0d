#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "tlm/dyadic.hpp"
#include "tlm/errors.hpp"

using namespace tlm;

namespace {

const Grid& grid1() {
  static const Grid g(1, 4096, 64.0);
  return g;
}

}  // namespace

TEST(SmoothStep, Shape) {
  EXPECT_EQ(smooth_step(-0.5), 0.0);
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
  for (double t = 0.01; t < 1.0; t += 0.01) EXPECT_LT(smooth_step(t - 0.005), smooth_step(t));
}

TEST(DefaultJMax, AntiAliasingBound) {
  EXPECT_EQ(default_j_max(grid1()), 5);
  EXPECT_EQ(default_j_max(Grid(2, 256, 16.0)), 3);
  EXPECT_THROW(default_j_max(Grid(1, 8, 16.0)), ResolutionError);
}

class PairTest : public ::testing::TestWithParam<PairProfile> {};

TEST_P(PairTest, SupportsAndLowerBounds) {
  const auto pair = build_admissible_pair(grid1(), 5, GetParam());
  const double dxi = grid1().frequency_spacing();
  double min_phi = 1e9;
  double min_Phi = 1e9;
  for (std::size_t i = 0; i < grid1().size(); ++i) {
    const double r = grid1().frequency_norm(i);
    const double phi = pair.phi(r);
    const double Phi = pair.Phi(r);
    if (r < 0.5 - dxi || r > 2.0 + dxi) EXPECT_LE(std::abs(phi), 1e-14) << r;
    if (r > 2.0 + dxi) EXPECT_LE(std::abs(Phi), 1e-14) << r;
    if (r >= 0.6 && r <= 5.0 / 3.0) min_phi = std::min(min_phi, std::abs(phi));
    if (r <= 5.0 / 3.0) min_Phi = std::min(min_Phi, std::abs(Phi));
  }
  EXPECT_GT(pair.lower_bound, 0.0);
  EXPECT_GE(min_phi, pair.lower_bound - 1e-15);
  EXPECT_GE(min_Phi, pair.lower_bound - 1e-15);
}

TEST_P(PairTest, LevelSupportsAndDilation) {
  const auto pair = build_admissible_pair(grid1(), 5, GetParam());
  const auto& sys = pair.levels;
  for (int j = 1; j <= 5; ++j) {
    const auto& s = sys.samples(j);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double r = grid1().frequency_norm(i);
      if (r < std::ldexp(1.0, j - 1) * (1 - 1e-12) || r > std::ldexp(1.0, j + 1) * (1 + 1e-12)) {
        EXPECT_LE(std::abs(s[i]), 1e-14);
      }
      EXPECT_DOUBLE_EQ(s[i], pair.phi(std::ldexp(r, -j)));
    }
  }
  for (std::size_t i = 0; i < grid1().size(); ++i) {
    EXPECT_DOUBLE_EQ(sys.samples(0)[i], pair.Phi(grid1().frequency_norm(i)));
  }
}

TEST_P(PairTest, NoSpectralHoles) {
  const auto pair = build_admissible_pair(grid1(), 5, GetParam());
  for (std::size_t i = 0; i < grid1().size(); ++i) {
    if (grid1().frequency_norm(i) > std::ldexp(1.0, 4)) continue;
    double s = 0.0;
    for (int j = 0; j <= 5; ++j) s += pair.levels.samples(j)[i] * pair.levels.samples(j)[i];
    EXPECT_GT(s, 0.0);
  }
}

TEST_P(PairTest, PassesMomentConditionR4) {
  const auto pair = build_admissible_pair(grid1(), 5, GetParam());
  EXPECT_TRUE(moment_check(pair.levels.samples(1), grid1(), 4).passes);
}

INSTANTIATE_TEST_SUITE_P(Profiles, PairTest,
                         ::testing::Values(PairProfile::smooth_step, PairProfile::plain_bump));

TEST(AdmissiblePair, CoarseGridRejected) {
  EXPECT_THROW(build_admissible_pair(Grid(1, 64, 4.0), 2), ResolutionError);
}

TEST(ThetaPartition, Telescopes) {
  const auto part = build_theta_partition(0.2, 2.0 / 3.0, grid1(), 5);
  EXPECT_NEAR(part.k(), 25.0 / 18.0, 1e-15);
  for (std::size_t i = 0; i < grid1().size(); ++i) {
    const double r = grid1().frequency_norm(i);
    if (r > 32.0 * 1.2) continue;
    double s = 0.0;
    for (int j = 0; j <= 5; ++j) s += part.theta_samples(j)[i];
    EXPECT_NEAR(s, 1.0, 1e-12) << r;
  }
}

TEST(ThetaPartition, SupportOfTheta1) {
  const auto part = build_theta_partition(0.2, 2.0 / 3.0, grid1(), 5);
  for (double r = 0.0; r < 5.0; r += 0.01) {
    const bool inside = r > 1.25 && r < 2.0 * (5.0 / 3.0) - 0.05;
    const bool outside = r <= 1.2 || r >= 2.0 * (5.0 / 3.0);
    if (inside) EXPECT_GT(part.theta(1, r), 0.0) << r;
    if (outside) EXPECT_EQ(part.theta(1, r), 0.0) << r;
  }
  EXPECT_THROW(build_theta_partition(0.5, 0.4, grid1(), 5), DomainError);
  EXPECT_THROW(build_theta_partition(0.0, 1.5, grid1(), 5), DomainError);
}

TEST(LambdaSystem, ReproducesOne) {
  const auto pair = build_admissible_pair(grid1(), 5);
  auto part = build_theta_partition(0.2, delta2_for(25.0 / 18.0, 0.2), grid1(), 5);
  build_lambda_system(part, pair.levels, 1.2);
  EXPECT_LE(reproducing_residual(part, pair.levels), 1e-8);
  const double k = part.k();
  for (std::size_t i = 0; i < grid1().size(); ++i) {
    const double r = grid1().frequency_norm(i);
    if (r > k * 1.2 + 1e-12) EXPECT_EQ(part.lambda_samples(0)[i], 0.0);
    if (r < 1.2 - 1e-12 || r > 2 * k * 1.2 + 1e-12) EXPECT_EQ(part.lambda_samples(1)[i], 0.0);
  }
}

TEST(LambdaSystem, GaussianDifferenceBase) {
  const auto sys = gaussian_difference_system(grid1(), 5);
  auto part = build_theta_partition(0.2, 2.0 / 3.0, grid1(), 5);
  build_lambda_system(part, sys, 1.2);
  EXPECT_LE(reproducing_residual(part, sys), 1e-8);
}

TEST(LambdaSystem, VanishingBaseRejected) {
  // phi vanishes below 1/2, so eps = 0.3 puts a zero of the base inside
  // the lambda_1 region.
  const auto pair = build_admissible_pair(grid1(), 5);
  auto part = build_theta_partition(0.2, 2.0 / 3.0, grid1(), 5);
  EXPECT_THROW(build_lambda_system(part, pair.levels, 0.3), ConstructionError);
}

TEST(MomentCheck, Cases) {
  const auto gd = gaussian_difference_system(grid1(), 5);
  EXPECT_TRUE(moment_check(gd.samples(1), grid1(), 2).passes);
  EXPECT_FALSE(moment_check(gd.samples(1), grid1(), 3).passes);
  EXPECT_FALSE(moment_check(gd.samples(0), grid1(), 1).passes);
  EXPECT_TRUE(moment_check(gd.samples(0), grid1(), 0).passes);
  EXPECT_THROW(moment_check(gd.samples(1), grid1(), 14), ResolutionError);
  const Grid g2(2, 64, 8.0);
  const auto gd2 = gaussian_difference_system(g2, 2);
  EXPECT_TRUE(moment_check(gd2.samples(1), g2, 2).passes);
  EXPECT_FALSE(moment_check(gd2.samples(1), g2, 3).passes);
}

TEST(Peetre, WindowedMatchesExhaustive) {
  for (int n : {1, 2}) {
    const Grid g(n, n == 1 ? 256 : 32, 8.0);
    const auto sys = gaussian_difference_system(g, 2);
    const auto f = fixtures::windowed_random(g, 4, 2.0);
    const auto conv = sys.convolutions(f);
    for (int j = 0; j <= 2; ++j) {
      for (double a : {0.5, 2.0}) {
        const auto w = peetre_maximal_level(conv[j], j, a, PeetreMethod::windowed);
        const auto e = peetre_maximal_level(conv[j], j, a, PeetreMethod::exhaustive);
        for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], e[i], 1e-10 * e[i]);
      }
    }
  }
}

TEST(Peetre, Domination) {
  const Grid g(1, 512, 16.0);
  const auto f = fixtures::windowed_random(g, 6, 3.0);
  const auto conv = build_admissible_pair(g, 3).levels.convolutions(f);
  for (int j = 0; j <= 3; ++j) {
    const auto mag = conv[j].magnitudes();
    for (double a : {1.0, 3.0}) {
      const auto star = peetre_maximal_level(conv[j], j, a);
      for (std::size_t i = 0; i < mag.size(); ++i) EXPECT_GE(star[i], mag[i]);
    }
  }
}

TEST(Peetre, ZeroAndBadExponent) {
  const Grid g(1, 64, 4.0);
  const GridFunction z(g);
  for (double v : peetre_maximal_level(z, 1, 1.0)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(peetre_maximal_level(z, 1, 0.0), DomainError);
}

TEST(Peetre, TranslationEquivariant) {
  const Grid g(1, 128, 8.0);
  const auto f = fixtures::random_function(g, 8);
  GridFunction shifted(g);
  const std::size_t s = 13;
  for (std::size_t i = 0; i < g.size(); ++i) shifted[(i + s) % g.size()] = f[i];
  const auto a = peetre_maximal_level(f, 2, 1.5, PeetreMethod::exhaustive);
  const auto b = peetre_maximal_level(shifted, 2, 1.5, PeetreMethod::exhaustive);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(b[(i + s) % g.size()], a[i]);
}

TEST(LevelSystem, PiecesSumToFunctionBelowTopLevel) {
  // With the smooth-step pair the levels sum to 1 on |xi| <= 2^J 5/3 only
  // up to the overlap; check the Fourier-side product instead.
  const Grid g(1, 1024, 32.0);
  const auto sys = build_admissible_pair(g, 4).levels;
  const auto f = fixtures::windowed_random(g, 1, 4.0);
  const auto pieces = sys.pieces(f);
  const auto F = fourier(f);
  for (int j = 0; j <= 4; ++j) {
    const auto P = fourier(pieces[j]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_NEAR(std::abs(P[i] - sys.samples(j)[i] * F[i]), 0.0, 1e-10 * std::abs(F[i]) + 1e-12);
    }
  }
}
