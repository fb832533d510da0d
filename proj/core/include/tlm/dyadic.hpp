#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tlm/grid.hpp"

namespace tlm {

/// Radial frequency profile, evaluated at |xi|.
using RadialProfile = std::function<double(double)>;

/// Smooth step from 0 (t <= 0) to 1 (t >= 1) built from the bump
/// exp(1 - 1/(1 - t^2)); strictly increasing on (0, 1).
double smooth_step(double t);

/// Largest J with 2^{J+1} <= N pi / (2L); throws ResolutionError if < 1.
int default_j_max(const Grid& grid);

/// A dyadic system of frequency profiles: level 0 is its own profile, level
/// j >= 1 is level1(2^{-j+1} xi). Samples are kept on the frequency lattice.
class LevelSystem {
 public:
  LevelSystem(std::string name, const Grid& grid, int j_max,
              RadialProfile level0, RadialProfile level1);

  const std::string& name() const { return name_; }
  const Grid& grid() const { return grid_; }
  int j_max() const { return j_max_; }
  int level_count() const { return j_max_ + 1; }

  double profile(int j, double radius) const;
  const std::vector<double>& samples(int j) const { return samples_[j]; }

  /// Psi_j * f = (2 pi)^{n/2} (psi_j(-.) f^)^vee, one entry per level.
  std::vector<GridFunction> convolutions(const GridFunction& f) const;
  /// (psi_j f^)^vee, the Littlewood-Paley pieces.
  std::vector<GridFunction> pieces(const GridFunction& f) const;
  /// Space-side kernels Psi_j, centred at the origin.
  std::vector<GridFunction> kernels() const;

 private:
  std::string name_;
  Grid grid_;
  int j_max_;
  RadialProfile level0_;
  RadialProfile level1_;
  std::vector<std::vector<double>> samples_;
};

enum class PairProfile {
  /// phi = 1 on [3/5, 5/3] with smooth-step flanks, Phi = 1 on |xi| <= 5/3.
  smooth_step,
  /// Plain bumps: phi(xi) = b((|xi| - 5/4) / (3/4)), Phi(xi) = b(|xi| / 2).
  plain_bump,
};

/// (phi, Phi) with supp phi in {1/2 <= |xi| <= 2}, supp Phi in {|xi| <= 2}
/// and |phi|, |Phi| >= c on the witness regions.
struct AdmissiblePair {
  PairProfile kind;
  RadialProfile phi;
  RadialProfile Phi;
  LevelSystem levels;
  /// Witnessed lower bound on {3/5 <= |xi| <= 5/3} resp. {|xi| <= 5/3}.
  double lower_bound;
};

AdmissiblePair build_admissible_pair(const Grid& grid, int j_max,
                                     PairProfile kind = PairProfile::smooth_step);

/// Local means psi_0 = exp(-|xi|^2), psi_1 = exp(-|xi|^2/4) - exp(-|xi|^2):
/// not compactly supported, one vanishing moment beyond the value at zero.
LevelSystem gaussian_difference_system(const Grid& grid, int j_max);

/// Theta / lambda construction with k = (1 + delta2)/(1 + delta1).
class PartitionSpec {
 public:
  double delta1() const { return delta1_; }
  double delta2() const { return delta2_; }
  double k() const { return (1.0 + delta2_) / (1.0 + delta1_); }
  double epsilon() const { return epsilon_; }
  int j_max() const { return j_max_; }
  const Grid& grid() const { return grid_; }

  /// Theta_0: 1 on r <= 1 + delta1, 0 on r >= 1 + delta2, strictly
  /// decreasing in between.
  double theta0(double r) const;
  /// Theta_j(r) = Theta_0(2^{-j} r) - Theta_0(2^{-j+1} r), j >= 1.
  double theta(int j, double r) const;
  const std::vector<double>& theta_samples(int j) const {
    return theta_[j];
  }

  bool has_lambda() const { return !lambda_.empty(); }
  const std::vector<double>& lambda_samples(int j) const {
    return lambda_[j];
  }

  friend PartitionSpec build_theta_partition(double, double, const Grid&, int);
  friend void build_lambda_system(PartitionSpec&, const LevelSystem&, double);

 private:
  PartitionSpec(double d1, double d2, const Grid& grid, int j_max);

  double delta1_;
  double delta2_;
  double epsilon_ = 0.0;
  int j_max_;
  Grid grid_;
  std::vector<std::vector<double>> theta_;
  std::vector<std::vector<double>> lambda_;
};

/// Requires 0 <= delta1 < delta2 <= 1.
PartitionSpec build_theta_partition(double delta1, double delta2,
                                    const Grid& grid, int j_max);

/// delta2 for a target k given delta1: k (1 + delta1) - 1.
double delta2_for(double k, double delta1);

/// lambda_0 = Theta_0((1+delta1) xi/eps) / base_0 on |xi| < k eps, and
/// lambda_j = Theta_j((1+delta1) xi/eps) / base_j on eps < |2^{-j+1} xi| <
/// 2k eps. Throws ConstructionError where the base vanishes in the region.
void build_lambda_system(PartitionSpec& partition, const LevelSystem& base,
                         double epsilon);

/// max |sum_j lambda_j base_j - 1| over lattice points with |xi| <=
/// 2^{J_max} eps.
double reproducing_residual(const PartitionSpec& partition,
                            const LevelSystem& base);

struct MomentResidual {
  std::array<int, 2> beta{0, 0};
  double value = 0.0;
};

struct MomentReport {
  bool passes = false;
  double scale = 0.0;
  std::vector<MomentResidual> residuals;
};

/// Central-difference (fourth order) estimates of D^beta psi_1(0) for
/// |beta| < R on lattice samples; passes iff each |residual| <= 1e-6 max|psi|.
MomentReport moment_check(std::span<const double> profile_samples,
                          const Grid& grid, int R);

enum class PeetreMethod { exhaustive, windowed };

/// (Psi_j^* f)_a(x) = max_y |g(y)| / (1 + |2^j (y - x)|^a) over grid nodes,
/// torus metric, for g = Psi_j * f.
std::vector<double> peetre_maximal_level(const GridFunction& g, int j,
                                         double a,
                                         PeetreMethod method =
                                             PeetreMethod::windowed);

std::vector<std::vector<double>> peetre_maximal(
    const GridFunction& f, const LevelSystem& system, double a,
    PeetreMethod method = PeetreMethod::windowed);

}  // namespace tlm
