#include <gtest/gtest.h>

#include "tlm/config.hpp"
#include "tlm/errors.hpp"

using namespace tlm;

TEST(Config, ParsesKeysFractionsAndComments) {
  const auto c = parse_config(
      "# demo\n"
      "grid.n = 1\n"
      "grid.N = 512   # samples\n"
      "grid.L = 16\n"
      "exponent.p.family = log_decay\n"
      "exponent.p.limit = 3\n"
      "exponent.p.amplitude = -1\n"
      "exponent.u.value = inf\n"
      "system.epsilon = 6/5\n"
      "system.j_max = auto\n"
      "peetre.a = 2.5\n"
      "corpus.seed = 42\n"
      "probe.power_reindex.t = 0.5, 3\n");
  EXPECT_EQ(c.N, 512u);
  EXPECT_EQ(c.L, 16.0);
  EXPECT_EQ(c.p.descriptor.family, ExponentDescriptor::Family::log_decay);
  EXPECT_TRUE(is_infinite_exponent(c.u.descriptor.evaluate({0.0, 0.0})));
  EXPECT_DOUBLE_EQ(c.epsilon, 1.2);
  EXPECT_FALSE(c.j_max.has_value());
  EXPECT_EQ(c.a.value(), 2.5);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.reindex_t, (std::vector<double>{0.5, 3.0}));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config("grid.M = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.N = many\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.N\n"), ConfigError);
  EXPECT_THROW(parse_config("exponent.p.family = wobbly\n"), ConfigError);
}

TEST(Config, ValidationErrors) {
  auto base = parse_config("grid.N = 256\ngrid.L = 16\n");
  EXPECT_NO_THROW(validate(base));

  auto aliasing = base;
  aliasing.j_max = 9;
  EXPECT_THROW(validate(aliasing), ConfigError);

  auto p_above_u = parse_config("grid.N = 256\ngrid.L = 16\nexponent.p.value = 4\nexponent.u.value = 3\n");
  EXPECT_THROW(validate(p_above_u), ConfigError);

  auto bad_k = base;
  bad_k.k = 2.5;
  EXPECT_THROW(validate(bad_k), ConfigError);

  auto bad_eps = base;
  bad_eps.epsilon = 0.0;
  EXPECT_THROW(validate(bad_eps), ConfigError);

  auto bad_grid = parse_config("grid.N = 100\n");
  EXPECT_THROW(validate(bad_grid), ConfigError);
}

TEST(Config, LowPeetreExponentWarns) {
  auto c = parse_config("grid.N = 256\ngrid.L = 16\nexponent.u.value = 3\nweight.s = 1\npeetre.a = 0.25\n");
  validate(c);
  EXPECT_FALSE(c.warnings.empty());
}

TEST(Config, DumpRoundTrips) {
  auto c = parse_config("grid.N = 512\nexponent.q.family = bump\nexponent.q.base = 2\n"
                        "exponent.q.amplitude = 0.5\nexponent.q.width = 3\nweight.s = 1.5\n");
  const auto again = parse_config(dump_config(c));
  EXPECT_EQ(dump_config(again), dump_config(c));
}

TEST(Config, BuildsSpaceParams) {
  auto c = parse_config("grid.N = 256\ngrid.L = 16\nexponent.u.value = 3\nweight.s = 1\n");
  validate(c);
  const Grid g = make_grid(c);
  const auto params = make_space_params(c, g);
  EXPECT_NEAR(params.a, params.a_lower_bound() + 1.0, 1e-12);
  EXPECT_EQ(params.j_max(), resolved_j_max(c, g));
  EXPECT_NO_THROW(params.validate());
}
