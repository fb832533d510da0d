#pragma once

#include <vector>

#include "tlm/grid.hpp"

namespace tlm {

/// Admissible weight sequence sampled for j = 0..J_max, with the constants
/// (alpha, alpha1, alpha2, C) its closed form guarantees.
class WeightSequence {
 public:
  enum class Family { power, two_microlocal };

  /// w_j = 2^{js}.
  static WeightSequence power(const Grid& grid, int j_max, double s);
  /// w_j(x) = 2^{js} (1 + 2^j dist(x, x0))^{s'}, torus distance.
  static WeightSequence two_microlocal(const Grid& grid, int j_max, double s,
                                       double s_prime, Point x0 = {0.0, 0.0});

  Family family() const { return family_; }
  const Grid& grid() const { return grid_; }
  int j_max() const { return j_max_; }
  double s() const { return s_; }
  double s_prime() const { return s_prime_; }
  const Point& x0() const { return x0_; }

  const std::vector<double>& level(int j) const { return samples_[j]; }
  double value(int j, const Point& x) const;

  double alpha() const { return alpha_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double constant() const { return constant_; }

  /// Same family and parameters with samples up to a new J_max.
  WeightSequence with_j_max(int j_max) const;

 private:
  WeightSequence(Family family, const Grid& grid, int j_max, double s,
                 double s_prime, Point x0);

  Family family_;
  Grid grid_;
  int j_max_;
  double s_;
  double s_prime_;
  Point x0_;
  std::vector<std::vector<double>> samples_;
  double alpha_ = 0.0;
  double alpha1_ = 0.0;
  double alpha2_ = 0.0;
  double constant_ = 1.0;
};

struct WeightCertificate {
  /// Smallest C for clause (i) at the declared alpha.
  double C = 1.0;
  /// Smallest alpha for clause (i) with C = 1.
  double alpha = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  /// Empirical constants lie within the declared ones (slack 1e-9).
  bool member = false;
};

WeightCertificate weight_certificate(const WeightSequence& w);

}  // namespace tlm
