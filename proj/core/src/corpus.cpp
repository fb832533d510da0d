#include "tlm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tlm/errors.hpp"

namespace tlm {

double tail_ratio(const GridFunction& f) {
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  const Grid& grid = f.grid();
  const std::size_t N = grid.samples_per_axis();
  auto near_edge = [N](std::size_t i) { return i < 2 || i + 2 >= N; };
  double edge = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const auto ax = grid.axis_indices(idx);
    bool outer = near_edge(ax[0]);
    if (grid.dimension() == 2) outer = outer || near_edge(ax[1]);
    if (outer) edge = std::max(edge, std::abs(f[idx]));
  }
  return edge / peak;
}

bool satisfies_tail_rule(const GridFunction& f) {
  return tail_ratio(f) <= kTailRule;
}

namespace {

using Engine = std::mt19937_64;

Engine member_engine(std::uint64_t seed, std::size_t index, unsigned salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), salt};
  return Engine(seq);
}

double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Point random_center(Engine& rng, const Grid& grid) {
  const double q = grid.half_extent() / 4.0;
  Point c{uniform(rng, -q, q), 0.0};
  if (grid.dimension() == 2) c[1] = uniform(rng, -q, q);
  return c;
}

// Widest Gaussian whose tail clears the rule for any center in
// [-L/4, L/4]^n.
double max_width(const Grid& grid) {
  return (0.75 * grid.half_extent() - 2.0 * grid.spacing()) / 6.2;
}

Point random_direction(Engine& rng, const Grid& grid, double radius) {
  if (grid.dimension() == 1) {
    return {uniform(rng, 0.0, 1.0) < 0.5 ? -radius : radius, 0.0};
  }
  const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double dist2(const Point& x, const Point& c) {
  return (x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1]);
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

GridFunction gaussian(const Grid& grid, const Point& c, double sigma,
                      const Point& xi) {
  return GridFunction::sample(grid, [&](const Point& x) {
    const double env = std::exp(-dist2(x, c) / (2.0 * sigma * sigma));
    return env * std::polar(1.0, dot(xi, x));
  });
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

CorpusMember make_member(const Grid& grid, std::uint64_t seed,
                         std::size_t index, int top_level) {
  Engine rng = member_engine(seed, index, 1);
  const double wmax = max_width(grid);
  const Point c = random_center(rng, grid);
  const std::string tag = "#" + std::to_string(index) + " ";
  switch (index % 4) {
    case 0: {
      const double sigma = uniform(rng, 0.5, wmax);
      return {tag + "gaussian sigma=" + fmt(sigma),
              gaussian(grid, c, sigma, {0.0, 0.0})};
    }
    case 1: {
      const int j = static_cast<int>(
          std::uniform_int_distribution<int>(0, top_level)(rng));
      const double radius = j == 0 ? uniform(rng, 0.2, 0.8)
                                   : std::ldexp(uniform(rng, 0.7, 1.4), j);
      const double sigma = std::min(wmax, std::ldexp(4.0, -j) + 0.5);
      return {tag + "modulated level=" + std::to_string(j),
              gaussian(grid, c, sigma, random_direction(rng, grid, radius))};
    }
    case 2: {
      const double r = uniform(rng, 1.0, grid.half_extent() / 4.0);
      auto f = GridFunction::sample(grid, [&](const Point& x) {
        return Complex(grid.torus_distance(x, c) < r ? 1.0 : 0.0, 0.0);
      });
      return {tag + "ball r=" + fmt(r), std::move(f)};
    }
    default: {
      std::normal_distribution<double> normal;
      const int terms = std::uniform_int_distribution<int>(3, 6)(rng);
      const double top =
          std::min(std::ldexp(1.0, top_level + 1), 0.8 * grid.nyquist());
      std::vector<Complex> amp;
      std::vector<Point> xi;
      for (int k = 0; k < terms; ++k) {
        amp.emplace_back(normal(rng), normal(rng));
        xi.push_back(random_direction(rng, grid, uniform(rng, 0.0, top)));
      }
      const double sigma = wmax;
      auto f = GridFunction::sample(grid, [&](const Point& x) {
        Complex sum = 0.0;
        for (int k = 0; k < terms; ++k) sum += amp[k] * std::polar(1.0, dot(xi[k], x));
        return sum * std::exp(-dist2(x, c) / (2.0 * sigma * sigma));
      });
      return {tag + "spectral terms=" + std::to_string(terms), std::move(f)};
    }
  }
}

}  // namespace

Corpus Corpus::functions(const Grid& grid, std::uint64_t seed,
                         std::size_t size, int top_level) {
  if (top_level < 0) throw InputError("corpus top level must be >= 0");
  Corpus corpus(grid, seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto member = make_member(grid, seed, i, top_level);
    if (!satisfies_tail_rule(member.f)) {
      throw ConstructionError("corpus member " + member.label +
                              " violates the tail rule");
    }
    corpus.members_.push_back(std::move(member));
  }
  return corpus;
}

Corpus Corpus::sequences(const Grid& grid, std::uint64_t seed,
                         std::size_t size, int levels) {
  if (levels < 1) throw InputError("sequence corpus needs at least one level");
  Corpus corpus(grid, seed);
  const double m = grid.dimension() + 2.0;
  std::vector<GridFunction> kernels;
  for (int nu = 0; nu < levels; ++nu) kernels.push_back(eta_kernel(nu, m, grid));
  const double sigma = max_width(grid);
  for (std::size_t i = 0; i < size; ++i) {
    Engine rng = member_engine(seed, i, 2);
    std::normal_distribution<double> normal;
    const Point c = random_center(rng, grid);
    const auto window = GridFunction::sample(grid, [&](const Point& x) {
      return Complex(std::exp(-dist2(x, c) / (2.0 * sigma * sigma)), 0.0);
    });
    SequenceMember member{"#" + std::to_string(i) + " eta-field", {}};
    for (int nu = 0; nu < levels; ++nu) {
      GridFunction noise(grid);
      for (auto& v : noise.samples()) v = Complex(normal(rng), 0.0);
      auto field = convolve(kernels[nu], noise);
      const double peak = field.max_abs();
      const double scale = uniform(rng, 0.25, 2.0) / (peak > 0 ? peak : 1.0);
      GridFunction f(grid);
      for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = scale * window[k] * field[k];
      }
      if (!satisfies_tail_rule(f)) {
        throw ConstructionError("sequence member " + member.label +
                                " violates the tail rule");
      }
      member.levels.push_back(std::move(f));
    }
    corpus.sequences_.push_back(std::move(member));
  }
  return corpus;
}

std::vector<std::vector<double>> magnitudes(const SequenceMember& member) {
  std::vector<std::vector<double>> out;
  for (const auto& f : member.levels) out.push_back(f.magnitudes());
  return out;
}

}  // namespace tlm
