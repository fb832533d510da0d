#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tlm/exponent_field.hpp"
#include "tlm/grid.hpp"

namespace tlm {

/// A ball or cube on the torus, as generating geometry of a mask.
struct MaskGeometry {
  enum class Shape { ball, cube };
  Shape shape = Shape::ball;
  Point center{0.0, 0.0};
  double radius = 0.0;
};

/// Subset of grid nodes over which norms are taken.
class DomainMask {
 public:
  static DomainMask whole(const Grid& grid);
  /// Nodes with torus distance |x - x0| < r.
  static DomainMask ball(const Grid& grid, const Point& center, double radius);
  /// Open cube Q_r(x0): per-axis torus distance < r.
  static DomainMask cube(const Grid& grid, const Point& center, double radius);
  static DomainMask from_flags(const Grid& grid, std::vector<bool> flags);

  const Grid& grid() const { return grid_; }
  bool contains(std::size_t index) const { return flags_[index]; }
  std::size_t count() const;
  double measure() const { return count() * grid_.cell_measure(); }
  const std::optional<MaskGeometry>& geometry() const { return geometry_; }
  /// Linear indices of member nodes, ascending.
  std::vector<std::size_t> indices() const;

 private:
  DomainMask(Grid grid, std::vector<bool> flags,
             std::optional<MaskGeometry> geometry);

  Grid grid_;
  std::vector<bool> flags_;
  std::optional<MaskGeometry> geometry_;
};

/// Riemann sum h^n sum_mask phi_{p(x)}(|f(x)|). Returns +infinity when an
/// infinite-exponent node has |f| > 1. Requires p >= 1 on the mask.
double semimodular(const GridFunction& f, const ExponentField& p,
                   const DomainMask& mask);

/// inf { lambda > 0 : semimodular(f / lambda) <= 1 }, for p >= 1 on mask.
double lebesgue_norm(const GridFunction& f, const ExponentField& p,
                     const DomainMask& mask);

/// Quasi-norm for any p with p^- > 0 via || |f|^t ||_{p/t}^{1/t}; t defaults
/// to p^-/2 on the mask when p^- < 1.
double quasi_norm(const GridFunction& f, const ExponentField& p,
                  const DomainMask& mask,
                  std::optional<double> t = std::nullopt);

/// r^{n/p(x0)} for r <= 1 and r^{n/p_inf} for r >= 1.
double char_ball_prediction(const ExponentField& p, const Point& x0, double r);

namespace detail {

/// Kernel shared by every norm in the library: the Luxemburg root of
/// sum_i w (a_i / lambda)^{p_i} = 1 with the infinite-exponent case split.
/// `magnitudes` must be finite and nonnegative, `exponents` >= 1.
double luxemburg_root(std::span<const double> magnitudes,
                      std::span<const double> exponents, double cell_measure);

/// Same, after the t-power reduction for exponents below one.
double quasi_root(std::span<const double> magnitudes,
                  std::span<const double> exponents, double cell_measure,
                  std::optional<double> t = std::nullopt);

}  // namespace detail

}  // namespace tlm
