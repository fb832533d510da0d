#pragma once

#include <cstddef>
#include <vector>

#include "tlm/exponent_field.hpp"
#include "tlm/grid.hpp"

namespace tlm {

/// Discretization of the Morrey supremum over (x, r): grid-node centers
/// decimated with a stride per axis and dyadic radii 2^k h, k = 0..K,
/// capped at the covering radius of the torus.
class BallFamily {
 public:
  /// Default: stride max(1, N/64), K large enough to reach the cap.
  static BallFamily standard(const Grid& grid);
  BallFamily(const Grid& grid, std::size_t stride, int max_level);

  const Grid& grid() const { return grid_; }
  std::size_t stride() const { return stride_; }
  int max_level() const { return max_level_; }
  /// Center node indices, lexicographic in (axis 0, axis 1).
  const std::vector<std::size_t>& centers() const { return centers_; }
  /// Ascending, distinct.
  const std::vector<double>& radii() const { return radii_; }
  /// Radius beyond which a ball contains every node: sqrt(n) L.
  double covering_radius() const;
  std::size_t ball_count() const { return centers_.size() * radii_.size(); }

  /// Member nodes of the ball (center index, radius index).
  void ball_members(std::size_t center, std::size_t radius_index,
                    std::vector<std::size_t>& out) const;

 private:
  struct Offset {
    long d0;
    long d1;
  };

  Grid grid_;
  std::size_t stride_;
  int max_level_;
  std::vector<std::size_t> centers_;
  std::vector<double> radii_;
  std::vector<std::vector<Offset>> stencils_;
};

struct BallRecord {
  Point center{0.0, 0.0};
  std::size_t center_index = 0;
  double radius = 0.0;
};

struct MorreyResult {
  double value = 0.0;
  BallRecord argmax;
};

/// max over the family of r^{n(1/u(x0) - 1/p(x0))} ||f||_{L_p(B_r(x0))}.
/// Ties go to the smaller radius, then the lexicographically first center.
MorreyResult morrey_norm(const GridFunction& f, const ExponentField& p,
                         const ExponentField& u, const BallFamily& family);

/// Same on precomputed nonnegative magnitudes.
MorreyResult morrey_norm(const std::vector<double>& magnitudes,
                         const ExponentField& p, const ExponentField& u,
                         const BallFamily& family);

/// Pointwise (sum_nu |f_nu(x)|^{q(x)})^{1/q(x)}, sup_nu where q(x) = inf.
std::vector<double> lq_aggregate(const std::vector<GridFunction>& fs,
                                 const ExponentField& q);
std::vector<double> lq_aggregate(const std::vector<std::vector<double>>& fs,
                                 const ExponentField& q);

/// Morrey norm of the l_q aggregation of the sequence.
MorreyResult mixed_sequence_norm(const std::vector<GridFunction>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q,
                                 const BallFamily& family);
MorreyResult mixed_sequence_norm(const std::vector<std::vector<double>>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q,
                                 const BallFamily& family);

struct PowerReindex {
  double lhs;
  double rhs;
  double relative_gap() const;
};

/// Both sides of || (|f_nu|^t) ||_{M^{u/t}_{p/t}(l_{q/t})} = ||(f_nu)||^t.
PowerReindex power_reindex_check(const std::vector<GridFunction>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q, double t,
                                 const BallFamily& family);

/// Throws InputError naming the first sample where p(x) > u(x).
void require_p_le_u(const ExponentField& p, const ExponentField& u);

}  // namespace tlm
