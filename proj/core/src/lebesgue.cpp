#include "tlm/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tlm/errors.hpp"

namespace tlm {

DomainMask::DomainMask(Grid grid, std::vector<bool> flags,
                       std::optional<MaskGeometry> geometry)
    : grid_(grid), flags_(std::move(flags)), geometry_(geometry) {
  if (flags_.size() != grid_.size()) {
    throw InputError("mask size does not match the grid");
  }
}

DomainMask DomainMask::whole(const Grid& grid) {
  return DomainMask(grid, std::vector<bool>(grid.size(), true), std::nullopt);
}

DomainMask DomainMask::ball(const Grid& grid, const Point& center,
                            double radius) {
  std::vector<bool> flags(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    flags[i] = grid.torus_distance(grid.point(i), center) < radius;
  }
  return DomainMask(grid, std::move(flags),
                    MaskGeometry{MaskGeometry::Shape::ball, center, radius});
}

DomainMask DomainMask::cube(const Grid& grid, const Point& center,
                            double radius) {
  std::vector<bool> flags(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    bool inside = true;
    for (int a = 0; a < grid.dimension(); ++a) {
      Point pa{x[a], 0.0};
      Point ca{center[a], 0.0};
      inside = inside && grid.torus_distance(pa, ca) < radius;
    }
    flags[i] = inside;
  }
  return DomainMask(grid, std::move(flags),
                    MaskGeometry{MaskGeometry::Shape::cube, center, radius});
}

DomainMask DomainMask::from_flags(const Grid& grid, std::vector<bool> flags) {
  return DomainMask(grid, std::move(flags), std::nullopt);
}

std::size_t DomainMask::count() const {
  return static_cast<std::size_t>(
      std::count(flags_.begin(), flags_.end(), true));
}

std::vector<std::size_t> DomainMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i]) out.push_back(i);
  }
  return out;
}

namespace detail {

namespace {

struct LogSumExp {
  double value;
  double slope;
};

// phi(s) = log sum_i exp(c_i - p_i s) and its derivative.
LogSumExp log_modular(const std::vector<double>& c,
                      const std::vector<double>& p, double s) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) top = std::max(top, c[i] - p[i] * s);
  double sum = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double e = std::exp(c[i] - p[i] * s - top);
    sum += e;
    weighted += p[i] * e;
  }
  return {top + std::log(sum), -weighted / sum};
}

}  // namespace

double luxemburg_root(std::span<const double> magnitudes,
                      std::span<const double> exponents,
                      double cell_measure) {
  if (magnitudes.size() != exponents.size()) {
    throw InputError("magnitude and exponent counts differ");
  }
  const double log_w = std::log(cell_measure);
  double sup_infinite = 0.0;
  double largest = 0.0;
  double p_min = std::numeric_limits<double>::infinity();
  std::vector<double> c;
  std::vector<double> p;
  c.reserve(magnitudes.size());
  p.reserve(magnitudes.size());
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double a = magnitudes[i];
    if (!std::isfinite(a) || a < 0.0) {
      throw InputError("norm evaluation received a non-finite sample");
    }
    if (a == 0.0) continue;
    if (is_infinite_exponent(exponents[i])) {
      // phi_inf(a / lambda) <= 1 iff lambda >= a.
      sup_infinite = std::max(sup_infinite, a);
      continue;
    }
    c.push_back(log_w + exponents[i] * std::log(a));
    p.push_back(exponents[i]);
    largest = std::max(largest, a);
    p_min = std::min(p_min, exponents[i]);
  }
  if (c.empty()) return sup_infinite;

  // Bracket in s = log(lambda); widened until it straddles the root.
  const double measure =
      cell_measure * static_cast<double>(magnitudes.size());
  double s_lo = std::log(largest) + std::log(cell_measure) / p_min +
                std::log(1e-6);
  double s_hi = std::log(largest) + std::log(std::max(measure, 1.0)) / p_min +
                std::log(1e6);
  while (log_modular(c, p, s_lo).value <= 0.0) s_lo -= std::log(1e3);
  while (log_modular(c, p, s_hi).value > 0.0) s_hi += std::log(1e3);

  // phi is convex and decreasing in s, so Newton started left of the root
  // increases monotonically towards it.
  double s = s_lo;
  for (int iter = 0; iter < 200; ++iter) {
    const auto f = log_modular(c, p, s);
    if (f.value <= 0.0) break;
    double next = s - f.value / f.slope;
    // No progress: s already sits on the root to rounding.
    if (!(next > s)) break;
    if (next > s_hi) next = 0.5 * (s + s_hi);
    if (next - s <= 1e-15 * std::max(1.0, std::abs(s))) {
      s = next;
      break;
    }
    s = next;
  }
  return std::max(sup_infinite, std::exp(s));
}

double quasi_root(std::span<const double> magnitudes,
                  std::span<const double> exponents, double cell_measure,
                  std::optional<double> t) {
  if (exponents.empty()) return 0.0;
  const double p_min = *std::min_element(exponents.begin(), exponents.end());
  if (!t && p_min >= 1.0) {
    return luxemburg_root(magnitudes, exponents, cell_measure);
  }
  const double power = t.value_or(p_min / 2.0);
  if (!(power > 0.0)) throw DomainError("t-power must be positive");
  if (p_min / power < 1.0) {
    throw DomainError("t-power must not exceed p^- on the domain");
  }
  std::vector<double> a(magnitudes.size());
  std::vector<double> q(exponents.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::pow(magnitudes[i], power);
    q[i] = exponents[i] / power;
  }
  return std::pow(luxemburg_root(a, q, cell_measure), 1.0 / power);
}

}  // namespace detail

namespace {

void require_same_grid(const GridFunction& f, const ExponentField& p,
                       const DomainMask& mask) {
  if (!(f.grid() == p.grid()) || !(f.grid() == mask.grid())) {
    throw InputError("function, exponent and mask live on different grids");
  }
}

void gather(const GridFunction& f, const ExponentField& p,
            const DomainMask& mask, std::vector<double>& a,
            std::vector<double>& e) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mask.contains(i)) continue;
    a.push_back(std::abs(f[i]));
    e.push_back(p[i]);
  }
}

void require_exponent_at_least_one(const ExponentField& p,
                                   const DomainMask& mask) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mask.contains(i) && p[i] < 1.0) {
      std::ostringstream msg;
      msg << "p(x) = " << p[i] << " < 1 at sample " << i
          << "; use quasi_norm";
      throw ContractError(msg.str());
    }
  }
}

}  // namespace

double semimodular(const GridFunction& f, const ExponentField& p,
                   const DomainMask& mask) {
  require_same_grid(f, p, mask);
  require_exponent_at_least_one(p, mask);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mask.contains(i)) continue;
    const double t = std::abs(f[i]);
    if (is_infinite_exponent(p[i])) {
      if (t > 1.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    sum += std::pow(t, p[i]);
  }
  return sum * f.grid().cell_measure();
}

double lebesgue_norm(const GridFunction& f, const ExponentField& p,
                     const DomainMask& mask) {
  require_same_grid(f, p, mask);
  require_exponent_at_least_one(p, mask);
  std::vector<double> a;
  std::vector<double> e;
  gather(f, p, mask, a, e);
  return detail::luxemburg_root(a, e, f.grid().cell_measure());
}

double quasi_norm(const GridFunction& f, const ExponentField& p,
                  const DomainMask& mask, std::optional<double> t) {
  require_same_grid(f, p, mask);
  std::vector<double> a;
  std::vector<double> e;
  gather(f, p, mask, a, e);
  return detail::quasi_root(a, e, f.grid().cell_measure(), t);
}

double char_ball_prediction(const ExponentField& p, const Point& x0,
                            double r) {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  const double n = p.grid().dimension();
  if (r <= 1.0) {
    const double px = p.evaluate(x0);
    return is_infinite_exponent(px) ? 1.0 : std::pow(r, n / px);
  }
  const auto tail = p.p_infinity();
  if (!tail) throw InputError("prediction for r > 1 needs p_inf");
  return is_infinite_exponent(*tail) ? 1.0 : std::pow(r, n / *tail);
}

}  // namespace tlm
