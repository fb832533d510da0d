#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tlm/errors.hpp"
#include "tlm/exponent_field.hpp"

using namespace tlm;

namespace {

// Brute-force oracle for the certificate constants of g = 1/p.
std::pair<double, double> brute_certificate(const ExponentField& p, double ginf) {
  const Grid& grid = p.grid();
  double local = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point x = grid.point(i);
    tail = std::max(tail, std::abs(1.0 / p[i] - ginf) *
                              std::log(std::exp(1.0) + grid.norm(x)));
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const double d = grid.box_distance(x, grid.point(j));
      local = std::max(local, std::abs(1.0 / p[i] - 1.0 / p[j]) *
                                  std::log(std::exp(1.0) + 1.0 / d));
    }
  }
  return {local, tail};
}

}  // namespace

TEST(EssentialBounds, Constant) {
  const Grid g(1, 64, 4.0);
  const ExponentField p(g, ExponentDescriptor::constant(2.0));
  const auto b = essential_bounds(p);
  EXPECT_EQ(b.p_minus, 2.0);
  EXPECT_EQ(b.p_plus, 2.0);
  EXPECT_TRUE(p.is_constant());
}

TEST(EssentialBounds, SineSquared) {
  const Grid g(1, 1024, std::numbers::pi);
  std::vector<double> v;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = std::sin(g.point(i)[0]);
    v.push_back(2.0 + s * s);
  }
  const auto p = ExponentField::from_samples(g, v, 2.5);
  const double h2 = g.spacing() * g.spacing();
  EXPECT_NEAR(p.p_minus(), 2.0, h2);
  EXPECT_NEAR(p.p_plus(), 3.0, h2);
}

TEST(EssentialBounds, Infinite) {
  const Grid g(1, 32, 1.0);
  const ExponentField p(g, ExponentDescriptor::constant(kInfiniteExponent));
  EXPECT_TRUE(is_infinite_exponent(p.p_minus()));
  EXPECT_TRUE(is_infinite_exponent(p.p_plus()));
}

TEST(EssentialBounds, EmptyThrows) {
  EXPECT_THROW(essential_bounds(std::vector<double>{}), InputError);
}

TEST(Descriptor, Families) {
  const auto bump = ExponentDescriptor::bump(2.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(bump.evaluate({0.0, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(bump.evaluate({2.5, 0.0}), 2.0);
  EXPECT_EQ(bump.tail(), 2.0);
  const auto ld = ExponentDescriptor::log_decay(2.0, 1.0);
  EXPECT_DOUBLE_EQ(ld.evaluate({0.0, 0.0}), 3.0);
  EXPECT_EQ(ld.tail(), 2.0);
  const auto jump = ExponentDescriptor::jump(2.0, 4.0, 0.5);
  EXPECT_DOUBLE_EQ(jump.evaluate({0.0, 0.0}), 2.0);
  EXPECT_DOUBLE_EQ(jump.evaluate({0.5, 0.0}), 4.0);
  EXPECT_EQ(ExponentDescriptor::constant(3.0).tail(), 3.0);
}

TEST(ExponentField, TailInferredFromOuterAnnulus) {
  const Grid g(1, 128, 10.0);
  std::vector<double> v(g.size(), 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.point(i)[0]) > 9.0) v[i] = 3.0;
  }
  const auto p = ExponentField::from_samples(g, v);
  ASSERT_TRUE(p.p_infinity().has_value());
  EXPECT_DOUBLE_EQ(*p.p_infinity(), 3.0);
  EXPECT_FALSE(ExponentField::from_samples(g, v, std::nullopt, false)
                   .p_infinity()
                   .has_value());
}

TEST(ExponentField, DividedBy) {
  const Grid g(1, 64, 4.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(2.0, 1.0));
  const auto q = p.divided_by(4.0);
  EXPECT_DOUBLE_EQ(q.p_minus(), p.p_minus() / 4.0);
  EXPECT_DOUBLE_EQ(*q.p_infinity(), 0.5);
  EXPECT_DOUBLE_EQ(q.evaluate({0.0, 0.0}), 0.75);
  EXPECT_THROW(p.divided_by(0.0), DomainError);
}

TEST(LogHolder, ConstantIsZero) {
  const Grid g(1, 128, 8.0);
  const auto c = log_holder_certificate(ExponentField(g, ExponentDescriptor::constant(3.0)), 0.5);
  EXPECT_EQ(c.c_log_local, 0.0);
  EXPECT_EQ(c.c_inf, 0.0);
  EXPECT_DOUBLE_EQ(c.limit_value, 1.0 / 3.0);
  EXPECT_TRUE(c.passes());
}

TEST(LogHolder, LogDecayMatchesBruteForce) {
  const Grid g(1, 512, 16.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(2.0, 1.0));
  const auto c = log_holder_certificate(p, 1.0);
  const auto [local, tail] = brute_certificate(p, 0.5);
  EXPECT_NEAR(c.c_log_local, local, 1e-12);
  EXPECT_NEAR(c.c_inf, tail, 1e-12);
  EXPECT_DOUBLE_EQ(c.limit_value, 0.5);
  EXPECT_TRUE(std::isfinite(c.c_log_local));
  EXPECT_TRUE(c.passes());
}

TEST(LogHolder, JumpGrowsUnderRefinement) {
  const auto d = ExponentDescriptor::jump(2.0, 4.0, 0.0);
  const auto coarse = log_holder_certificate(ExponentField(Grid(1, 64, 8.0), d), 0.5);
  const auto fine = log_holder_certificate(ExponentField(Grid(1, 8192, 8.0), d), 0.5);
  EXPECT_GE(fine.c_log_local / coarse.c_log_local, 2.0);
  EXPECT_FALSE(fine.passes_local);
}

TEST(LogHolder, RefinementMonotone) {
  const auto d = ExponentDescriptor::bump(2.0, 1.0, 3.0);
  const auto c1 = log_holder_certificate(ExponentField(Grid(1, 128, 8.0), d), 1.0);
  const auto c2 = log_holder_certificate(ExponentField(Grid(1, 256, 8.0), d), 1.0);
  EXPECT_GE(c2.c_log_local, c1.c_log_local - 1e-12);
}

TEST(LogHolder, MissingTailThrows) {
  const Grid g(1, 64, 4.0);
  std::vector<double> v(g.size(), 2.0);
  v[10] = 3.0;
  const auto p = ExponentField::from_samples(g, v, std::nullopt, false);
  EXPECT_THROW(log_holder_certificate(p, 1.0), InputError);
}

TEST(Cpu, ExamplesAndExactZero) {
  const Grid g(1, 256, 16.0);
  const ExponentField two(g, ExponentDescriptor::constant(2.0));
  const ExponentField five(g, ExponentDescriptor::constant(5.0));
  EXPECT_EQ(c_pu(two, five), 0.0);
  const ExponentField ld(g, ExponentDescriptor::log_decay(2.0, 0.7));
  EXPECT_EQ(c_pu(ld, ld), 0.0);
  const ExponentField dip(g, ExponentDescriptor::bump(4.0, -2.75, 2.0));
  EXPECT_DOUBLE_EQ(dip.p_minus(), 1.25);
  EXPECT_NEAR(c_pu(dip, five), 0.35, 1e-12);
  EXPECT_THROW(c_pu(five, two), InputError);
}

TEST(Dual, Examples) {
  const Grid g(1, 64, 4.0);
  const auto two = dual_exponent(ExponentField(g, ExponentDescriptor::constant(2.0)));
  EXPECT_DOUBLE_EQ(two.p_minus(), 2.0);
  EXPECT_DOUBLE_EQ(two.p_plus(), 2.0);
  const auto one = dual_exponent(ExponentField(g, ExponentDescriptor::constant(1.0)));
  EXPECT_TRUE(is_infinite_exponent(one.p_minus()));
  const auto three = dual_exponent(ExponentField(g, ExponentDescriptor::constant(3.0)));
  EXPECT_DOUBLE_EQ(three[5], 1.5);
  EXPECT_THROW(dual_exponent(ExponentField(g, ExponentDescriptor::constant(0.5))),
               DomainError);
}

TEST(Dual, Involution) {
  const Grid g(1, 256, 8.0);
  const ExponentField p(g, ExponentDescriptor::log_decay(1.5, 1.0));
  const auto back = dual_exponent(dual_exponent(p));
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(back[i], p[i], 1e-12);
}
