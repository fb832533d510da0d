#include "tlm/exponent_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tlm/errors.hpp"

namespace tlm {

double smooth_bump(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

namespace {

double distance_to(const Point& x, const Point& c) {
  return std::hypot(x[0] - c[0], x[1] - c[1]);
}

}  // namespace

ExponentDescriptor ExponentDescriptor::constant(double c) {
  ExponentDescriptor d;
  d.family = Family::constant;
  d.value = c;
  return d;
}

ExponentDescriptor ExponentDescriptor::bump(double base, double amplitude,
                                            double width, Point center) {
  if (!(width > 0.0)) throw DomainError("bump exponent needs width > 0");
  ExponentDescriptor d;
  d.family = Family::bump;
  d.base = base;
  d.amplitude = amplitude;
  d.width = width;
  d.center = center;
  return d;
}

ExponentDescriptor ExponentDescriptor::log_decay(double limit,
                                                 double amplitude,
                                                 Point center) {
  ExponentDescriptor d;
  d.family = Family::log_decay;
  d.limit = limit;
  d.amplitude = amplitude;
  d.center = center;
  return d;
}

ExponentDescriptor ExponentDescriptor::jump(double left, double right,
                                            double position) {
  ExponentDescriptor d;
  d.family = Family::jump;
  d.left = left;
  d.right = right;
  d.position = position;
  return d;
}

double ExponentDescriptor::evaluate(const Point& x) const {
  switch (family) {
    case Family::constant:
      return value;
    case Family::bump:
      return base + amplitude * smooth_bump(distance_to(x, center) / width);
    case Family::log_decay:
      return limit +
             amplitude / std::log(std::numbers::e + distance_to(x, center));
    case Family::jump:
      return x[0] < position ? left : right;
    case Family::table:
      break;
  }
  throw InputError("tabulated exponent has no closed form");
}

std::optional<double> ExponentDescriptor::tail() const {
  switch (family) {
    case Family::constant:
      return value;
    case Family::bump:
      return base;
    case Family::log_decay:
      return limit;
    case Family::jump:
    case Family::table:
      break;
  }
  return std::nullopt;
}

std::string ExponentDescriptor::family_name() const {
  switch (family) {
    case Family::constant:
      return "constant";
    case Family::bump:
      return "bump";
    case Family::log_decay:
      return "log_decay";
    case Family::jump:
      return "jump";
    case Family::table:
      return "table";
  }
  return "unknown";
}

double annulus_tail_estimate(const Grid& grid,
                             const std::vector<double>& values) {
  const double cutoff = 0.9 * grid.half_extent();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (grid.norm(grid.point(i)) >= cutoff) {
      sum += values[i];
      ++count;
    }
  }
  if (count == 0) throw InputError("outer annulus contains no samples");
  return sum / static_cast<double>(count);
}

ExponentField::ExponentField(const Grid& grid, ExponentDescriptor descriptor)
    : grid_(grid), descriptor_(descriptor) {
  if (descriptor_.family == ExponentDescriptor::Family::table) {
    throw InputError("use ExponentField::from_samples for tables");
  }
  values_.resize(grid_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = descriptor_.evaluate(grid_.point(i));
  }
  p_infinity_ = descriptor_.tail();
  if (!p_infinity_) p_infinity_ = annulus_tail_estimate(grid_, values_);
  refresh_bounds();
}

ExponentField::ExponentField(const Grid& grid, ExponentDescriptor descriptor,
                             std::vector<double> values,
                             std::optional<double> tail, double divisor)
    : grid_(grid),
      descriptor_(descriptor),
      values_(std::move(values)),
      p_infinity_(tail),
      divisor_(divisor) {
  if (values_.size() != grid_.size()) {
    throw InputError("exponent sample count does not match the grid");
  }
  refresh_bounds();
}

ExponentField ExponentField::from_samples(const Grid& grid,
                                          std::vector<double> values,
                                          std::optional<double> tail,
                                          bool infer_tail) {
  ExponentDescriptor d;
  d.family = ExponentDescriptor::Family::table;
  if (!tail && infer_tail && values.size() == grid.size()) {
    tail = annulus_tail_estimate(grid, values);
  }
  return ExponentField(grid, d, std::move(values), tail, 1.0);
}

void ExponentField::refresh_bounds() {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (std::isnan(v) || !(v > 0.0)) {
      std::ostringstream msg;
      msg << "exponent sample " << i << " = " << v << " is not in (0, inf]";
      throw InputError(msg.str());
    }
  }
  const auto bounds = essential_bounds(values_);
  p_minus_ = bounds.p_minus;
  p_plus_ = bounds.p_plus;
}

bool ExponentField::is_constant() const {
  return descriptor_.family == ExponentDescriptor::Family::constant;
}

double ExponentField::evaluate(const Point& x) const {
  if (descriptor_.family != ExponentDescriptor::Family::table) {
    return descriptor_.evaluate(x) / divisor_;
  }
  const double h = grid_.spacing();
  const double L = grid_.half_extent();
  const auto N = static_cast<long>(grid_.samples_per_axis());
  std::array<std::size_t, 2> idx{0, 0};
  for (int a = 0; a < grid_.dimension(); ++a) {
    long i = std::lround((x[a] + L) / h);
    i = ((i % N) + N) % N;
    idx[a] = static_cast<std::size_t>(i);
  }
  return values_[grid_.linear_index(idx[0], idx[1])];
}

ExponentField ExponentField::divided_by(double t) const {
  if (!(t > 0.0)) throw DomainError("exponent divisor must be positive");
  std::vector<double> scaled(values_.size());
  std::transform(values_.begin(), values_.end(), scaled.begin(),
                 [t](double v) { return v / t; });
  std::optional<double> tail;
  if (p_infinity_) tail = *p_infinity_ / t;
  return ExponentField(grid_, descriptor_, std::move(scaled), tail,
                       divisor_ * t);
}

EssentialBounds essential_bounds(const std::vector<double>& samples) {
  if (samples.empty()) throw InputError("exponent has no samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return {*lo, *hi};
}

EssentialBounds essential_bounds(const ExponentField& field) {
  return essential_bounds(field.values());
}

namespace {

double reciprocal(double p) { return is_infinite_exponent(p) ? 0.0 : 1.0 / p; }

}  // namespace

LogHolderCertificate log_holder_certificate(const ExponentField& field,
                                            double threshold) {
  const auto tail = field.p_infinity();
  if (!tail && !field.is_constant()) {
    throw InputError("log-Hoelder certificate needs the tail value p_inf");
  }
  const Grid& grid = field.grid();
  const std::size_t size = field.size();
  std::vector<double> g(size);
  std::vector<Point> x(size);
  for (std::size_t i = 0; i < size; ++i) {
    g[i] = reciprocal(field[i]);
    x[i] = grid.point(i);
  }

  LogHolderCertificate cert;
  cert.threshold = threshold;
  cert.limit_value = reciprocal(tail.value_or(field[0]));

  double local = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t k = i + 1; k < size; ++k) {
      const double dg = std::abs(g[i] - g[k]);
      if (dg == 0.0) continue;
      const double d = grid.box_distance(x[i], x[k]);
      local = std::max(local, dg * std::log(std::numbers::e + 1.0 / d));
    }
  }
  double global = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double dg = std::abs(g[i] - cert.limit_value);
    if (dg == 0.0) continue;
    global = std::max(global,
                      dg * std::log(std::numbers::e + grid.norm(x[i])));
  }
  cert.c_log_local = local;
  cert.c_inf = global;
  cert.passes_local = local <= threshold;
  cert.passes_global = global <= threshold;
  return cert;
}

double c_pu(const ExponentField& p, const ExponentField& u) {
  if (!(p.grid() == u.grid())) throw InputError("c_pu: grid mismatch");
  const auto tail = p.p_infinity();
  if (!tail) throw InputError("c_pu needs the tail value of p");
  double sup = -std::numeric_limits<double>::infinity();
  bool identical = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > u[i]) {
      std::ostringstream msg;
      msg << "p(x) > u(x) at sample " << i << " (p = " << p[i]
          << ", u = " << u[i] << ")";
      throw InputError(msg.str());
    }
    identical = identical && p[i] == u[i];
    sup = std::max(sup, reciprocal(p[i]) - reciprocal(u[i]));
  }
  // Exact zero for the two degenerate cases.
  if (identical || p.is_constant()) return 0.0;
  return std::max(0.0, sup - reciprocal(*tail));
}

ExponentField dual_exponent(const ExponentField& p) {
  std::vector<double> dual(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p[i];
    if (v < 1.0) {
      std::ostringstream msg;
      msg << "dual exponent needs p >= 1; sample " << i << " = " << v;
      throw DomainError(msg.str());
    }
    if (v == 1.0) {
      dual[i] = kInfiniteExponent;
    } else if (is_infinite_exponent(v)) {
      dual[i] = 1.0;
    } else {
      dual[i] = v / (v - 1.0);
    }
  }
  std::optional<double> tail;
  if (auto t = p.p_infinity()) {
    tail = *t == 1.0                 ? kInfiniteExponent
           : is_infinite_exponent(*t) ? 1.0
                                      : *t / (*t - 1.0);
  }
  if (p.is_constant()) {
    return ExponentField(p.grid(), ExponentDescriptor::constant(dual[0]));
  }
  return ExponentField::from_samples(p.grid(), std::move(dual), tail, false);
}

}  // namespace tlm
