#include "tlm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tlm/errors.hpp"

namespace tlm {

WeightSequence::WeightSequence(Family family, const Grid& grid, int j_max,
                               double s, double s_prime, Point x0)
    : family_(family),
      grid_(grid),
      j_max_(j_max),
      s_(s),
      s_prime_(s_prime),
      x0_(x0) {
  if (j_max_ < 0) throw InputError("weight sequence needs J_max >= 0");
  samples_.resize(j_max_ + 1);
  for (int j = 0; j <= j_max_; ++j) {
    auto& level = samples_[j];
    level.resize(grid_.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      level[i] = value(j, grid_.point(i));
    }
  }
  if (family_ == Family::power) {
    alpha_ = 0.0;
    alpha1_ = alpha2_ = s_;
  } else {
    alpha_ = std::abs(s_prime_);
    alpha1_ = s_ + std::min(0.0, s_prime_);
    alpha2_ = s_ + std::max(0.0, s_prime_);
  }
  constant_ = 1.0;
}

WeightSequence WeightSequence::power(const Grid& grid, int j_max, double s) {
  return WeightSequence(Family::power, grid, j_max, s, 0.0, {0.0, 0.0});
}

WeightSequence WeightSequence::two_microlocal(const Grid& grid, int j_max,
                                              double s, double s_prime,
                                              Point x0) {
  return WeightSequence(Family::two_microlocal, grid, j_max, s, s_prime, x0);
}

double WeightSequence::value(int j, const Point& x) const {
  const double base = std::exp2(j * s_);
  if (family_ == Family::power) return base;
  const double d = grid_.torus_distance(x, x0_);
  return base * std::pow(1.0 + std::ldexp(d, j), s_prime_);
}

WeightSequence WeightSequence::with_j_max(int j_max) const {
  return WeightSequence(family_, grid_, j_max, s_, s_prime_, x0_);
}

WeightCertificate weight_certificate(const WeightSequence& w) {
  const Grid& grid = w.grid();
  const std::size_t size = grid.size();
  for (int j = 0; j <= w.j_max(); ++j) {
    for (double v : w.level(j)) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("weight samples must be positive and finite");
      }
    }
  }

  WeightCertificate cert;
  cert.alpha1 = std::numeric_limits<double>::infinity();
  cert.alpha2 = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < w.j_max(); ++j) {
    for (std::size_t i = 0; i < size; ++i) {
      const double ratio = std::log2(w.level(j + 1)[i] / w.level(j)[i]);
      cert.alpha1 = std::min(cert.alpha1, ratio);
      cert.alpha2 = std::max(cert.alpha2, ratio);
    }
  }
  if (w.j_max() == 0) {
    cert.alpha1 = w.alpha1();
    cert.alpha2 = w.alpha2();
  }

  std::vector<Point> x(size);
  for (std::size_t i = 0; i < size; ++i) x[i] = grid.point(i);
  double alpha = 0.0;
  double log_c = 0.0;
  for (int j = 0; j <= w.j_max(); ++j) {
    const auto& level = w.level(j);
    std::vector<double> lw(size);
    for (std::size_t i = 0; i < size; ++i) lw[i] = std::log(level[i]);
    const double scale = std::ldexp(1.0, j);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = a + 1; b < size; ++b) {
        const double gap = std::abs(lw[a] - lw[b]);
        if (gap == 0.0) continue;
        const double spread =
            std::log1p(scale * grid.torus_distance(x[a], x[b]));
        alpha = std::max(alpha, gap / spread);
        log_c = std::max(log_c, gap - w.alpha() * spread);
      }
    }
  }
  cert.alpha = alpha;
  cert.C = std::exp(log_c);

  constexpr double kSlack = 1e-9;
  cert.member = cert.alpha <= w.alpha() + kSlack &&
                cert.C <= w.constant() * (1.0 + kSlack) &&
                cert.alpha1 >= w.alpha1() - kSlack &&
                cert.alpha2 <= w.alpha2() + kSlack;
  return cert;
}

}  // namespace tlm
