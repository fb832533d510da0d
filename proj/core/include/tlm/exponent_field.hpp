#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tlm/grid.hpp"

namespace tlm {

inline constexpr double kInfiniteExponent =
    std::numeric_limits<double>::infinity();

inline bool is_infinite_exponent(double p) { return p == kInfiniteExponent; }

/// Closed-form family of a variable exponent.
///
///  - constant:  p(x) = value (may be the infinite exponent)
///  - bump:      p(x) = base + amplitude * b(|x - center| / width), where
///               b(t) = exp(1 - 1/(1 - t^2)) on |t| < 1 and 0 elsewhere
///  - log_decay: p(x) = limit + amplitude / log(e + |x - center|)
///  - jump:      p(x) = left for x_0 < position, right otherwise
///  - table:     user samples, no closed form
struct ExponentDescriptor {
  enum class Family { constant, bump, log_decay, jump, table };

  Family family = Family::constant;
  double value = 2.0;
  double base = 2.0;
  double amplitude = 0.0;
  double width = 1.0;
  double limit = 2.0;
  double left = 2.0;
  double right = 2.0;
  double position = 0.0;
  Point center{0.0, 0.0};

  static ExponentDescriptor constant(double c);
  static ExponentDescriptor bump(double base, double amplitude, double width,
                                 Point center = {0.0, 0.0});
  static ExponentDescriptor log_decay(double limit, double amplitude,
                                      Point center = {0.0, 0.0});
  static ExponentDescriptor jump(double left, double right, double position);

  /// Analytic value at an arbitrary point (not available for tables).
  double evaluate(const Point& x) const;
  /// Tail value p_inf, when the family defines one.
  std::optional<double> tail() const;

  std::string family_name() const;
};

/// The smooth bump exp(1 - 1/(1 - t^2)) on |t| < 1, zero elsewhere.
double smooth_bump(double t);

/// A variable exponent p(.) sampled on a grid, with cached bounds.
class ExponentField {
 public:
  /// Samples the descriptor on the grid.
  ExponentField(const Grid& grid, ExponentDescriptor descriptor);

  /// User table. Without an explicit tail the outer-annulus mean is used
  /// unless `infer_tail` is false, in which case the tail stays unknown.
  static ExponentField from_samples(const Grid& grid,
                                    std::vector<double> values,
                                    std::optional<double> tail = std::nullopt,
                                    bool infer_tail = true);

  const Grid& grid() const { return grid_; }
  const ExponentDescriptor& descriptor() const { return descriptor_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  /// Tail value p_inf; empty when unknown.
  std::optional<double> p_infinity() const { return p_infinity_; }
  bool is_constant() const;

  /// Value at an arbitrary point: closed form when available, otherwise the
  /// nearest grid sample.
  double evaluate(const Point& x) const;

  /// The field p/t (t > 0), used by the t-power identity.
  ExponentField divided_by(double t) const;

 private:
  ExponentField(const Grid& grid, ExponentDescriptor descriptor,
                std::vector<double> values, std::optional<double> tail,
                double divisor);
  void refresh_bounds();

  Grid grid_;
  ExponentDescriptor descriptor_;
  std::vector<double> values_;
  std::optional<double> p_infinity_;
  double divisor_ = 1.0;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
};

struct EssentialBounds {
  double p_minus;
  double p_plus;
};

EssentialBounds essential_bounds(const ExponentField& field);
/// Min and max over raw samples; throws InputError when empty.
EssentialBounds essential_bounds(const std::vector<double>& samples);

/// Empirical log-Hoelder constants of g = 1/p.
struct LogHolderCertificate {
  double c_log_local = 0.0;
  double c_inf = 0.0;
  /// 1/p_inf.
  double limit_value = 0.0;
  double threshold = 0.0;
  bool passes_local = false;
  bool passes_global = false;

  bool passes() const { return passes_local && passes_global; }
};

LogHolderCertificate log_holder_certificate(const ExponentField& field,
                                            double threshold);

/// c(p,u) = max(0, sup_x (1/p(x) - 1/u(x)) - 1/p_inf).
double c_pu(const ExponentField& p, const ExponentField& u);

/// Pointwise p' with 1/p + 1/p' = 1.
ExponentField dual_exponent(const ExponentField& p);

/// Outer-annulus tail estimate: mean of the samples whose box-norm exceeds
/// 0.9 L (the outer 10% of the truncated domain).
double annulus_tail_estimate(const Grid& grid,
                             const std::vector<double>& values);

}  // namespace tlm
