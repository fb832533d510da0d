#include "tlm/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tlm/errors.hpp"
#include "tlm/exponent_field.hpp"

namespace tlm {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // b(1 - t) rises from 0 at t = 0 to 1 at t = 1 with all derivatives
  // vanishing at t = 0.
  const double rise = smooth_bump(1.0 - t);
  const double fall = smooth_bump(t);
  return rise / (rise + fall);
}

int default_j_max(const Grid& grid) {
  const double nyq = grid.nyquist();
  int J = static_cast<int>(std::floor(std::log2(nyq))) - 1;
  while (J >= 0 && std::ldexp(1.0, J + 1) > nyq) --J;
  while (std::ldexp(1.0, J + 2) <= nyq) ++J;
  if (J < 0) throw ResolutionError("grid resolves no dyadic level");
  return J;
}

LevelSystem::LevelSystem(std::string name, const Grid& grid, int j_max,
                         RadialProfile level0, RadialProfile level1)
    : name_(std::move(name)),
      grid_(grid),
      j_max_(j_max),
      level0_(std::move(level0)),
      level1_(std::move(level1)) {
  if (j_max_ < 0) throw InputError("J_max must be nonnegative");
  samples_.resize(j_max_ + 1);
  for (int j = 0; j <= j_max_; ++j) {
    auto& s = samples_[j];
    s.resize(grid_.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = profile(j, grid_.frequency_norm(k));
    }
  }
}

double LevelSystem::profile(int j, double radius) const {
  if (j == 0) return level0_(radius);
  return level1_(std::ldexp(radius, 1 - j));
}

std::vector<GridFunction> LevelSystem::pieces(const GridFunction& f) const {
  if (!(f.grid() == grid_)) throw InputError("system and function grids differ");
  const Spectrum spectrum = fourier(f);
  std::vector<GridFunction> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) {
    out.push_back(inverse_fourier(spectrum.multiplied(s)));
  }
  return out;
}

std::vector<GridFunction> LevelSystem::convolutions(
    const GridFunction& f) const {
  // Radial profiles satisfy psi_j(-xi) = psi_j(xi).
  auto out = pieces(f);
  const double c = std::pow(2.0 * std::numbers::pi, 0.5 * grid_.dimension());
  for (auto& g : out) g *= c;
  return out;
}

std::vector<GridFunction> LevelSystem::kernels() const {
  std::vector<GridFunction> out;
  for (const auto& s : samples_) {
    Spectrum spectrum(grid_);
    for (std::size_t k = 0; k < s.size(); ++k) spectrum[k] = s[k];
    out.push_back(inverse_fourier(spectrum));
  }
  return out;
}

namespace {

double witness_minimum(const RadialProfile& profile, double lo, double hi) {
  constexpr int kSamples = 4096;
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double r = lo + (hi - lo) * i / kSamples;
    m = std::min(m, std::abs(profile(r)));
  }
  return m;
}

}  // namespace

AdmissiblePair build_admissible_pair(const Grid& grid, int j_max,
                                     PairProfile kind) {
  if (j_max > default_j_max(grid)) {
    std::ostringstream msg;
    msg << "J_max = " << j_max << " aliases the top annulus; at most "
        << default_j_max(grid) << " on this grid";
    throw ResolutionError(msg.str());
  }
  int across = 0;
  for (std::size_t k = 0; k < grid.samples_per_axis(); ++k) {
    const double r = grid.frequency_norm(grid.linear_index(k, 0));
    if (r >= 0.5 && r <= 2.0) ++across;
  }
  if (across < 8) {
    std::ostringstream msg;
    msg << "frequency lattice places " << across
        << " samples in the annulus 1/2 <= |xi| <= 2 along an axis; need 8";
    throw ResolutionError(msg.str());
  }

  RadialProfile phi;
  RadialProfile Phi;
  std::string name;
  if (kind == PairProfile::smooth_step) {
    Phi = [](double r) { return 1.0 - smooth_step(3.0 * (r - 5.0 / 3.0)); };
    phi = [Phi](double r) { return smooth_step(10.0 * (r - 0.5)) * Phi(r); };
    name = "admissible/smooth_step";
  } else {
    Phi = [](double r) { return smooth_bump(r / 2.0); };
    phi = [](double r) { return smooth_bump((r - 1.25) / 0.75); };
    name = "admissible/plain_bump";
  }
  const double c = std::min(witness_minimum(phi, 0.6, 5.0 / 3.0),
                            witness_minimum(Phi, 0.0, 5.0 / 3.0));
  LevelSystem levels(name, grid, j_max, Phi,
                     [phi](double r) { return phi(0.5 * r); });
  return AdmissiblePair{kind, phi, Phi, std::move(levels), c};
}

LevelSystem gaussian_difference_system(const Grid& grid, int j_max) {
  return LevelSystem(
      "local_means/gaussian_difference", grid, j_max,
      [](double r) { return std::exp(-r * r); },
      [](double r) { return std::exp(-0.25 * r * r) - std::exp(-r * r); });
}

PartitionSpec::PartitionSpec(double d1, double d2, const Grid& grid,
                             int j_max)
    : delta1_(d1), delta2_(d2), j_max_(j_max), grid_(grid) {}

double PartitionSpec::theta0(double r) const {
  return 1.0 - smooth_step((r - (1.0 + delta1_)) / (delta2_ - delta1_));
}

double PartitionSpec::theta(int j, double r) const {
  if (j == 0) return theta0(r);
  return theta0(std::ldexp(r, -j)) - theta0(std::ldexp(r, 1 - j));
}

PartitionSpec build_theta_partition(double delta1, double delta2,
                                    const Grid& grid, int j_max) {
  if (!(delta1 >= 0.0 && delta1 < delta2 && delta2 <= 1.0)) {
    throw DomainError("partition needs 0 <= delta1 < delta2 <= 1");
  }
  if (j_max < 0) throw InputError("J_max must be nonnegative");
  PartitionSpec spec(delta1, delta2, grid, j_max);
  spec.theta_.resize(j_max + 1);
  for (int j = 0; j <= j_max; ++j) {
    auto& s = spec.theta_[j];
    s.resize(grid.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = spec.theta(j, grid.frequency_norm(k));
    }
  }
  return spec;
}

double delta2_for(double k, double delta1) { return k * (1.0 + delta1) - 1.0; }

void build_lambda_system(PartitionSpec& partition, const LevelSystem& base,
                         double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(base.grid() == partition.grid())) {
    throw InputError("partition and base system grids differ");
  }
  if (base.j_max() < partition.j_max()) {
    throw InputError("base system has fewer levels than the partition");
  }
  const Grid& grid = partition.grid();
  const double k = partition.k();
  const double zoom = (1.0 + partition.delta1()) / epsilon;
  double scale = 0.0;
  for (int j = 0; j <= partition.j_max(); ++j) {
    for (double v : base.samples(j)) scale = std::max(scale, std::abs(v));
  }
  const double floor_value = 1e-12 * scale;

  partition.epsilon_ = epsilon;
  partition.lambda_.assign(partition.j_max() + 1,
                           std::vector<double>(grid.size(), 0.0));
  for (int j = 0; j <= partition.j_max(); ++j) {
    auto& lam = partition.lambda_[j];
    const auto& b = base.samples(j);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const double r = grid.frequency_norm(idx);
      const double rho = j == 0 ? r : std::ldexp(r, 1 - j);
      const bool inside =
          j == 0 ? rho < k * epsilon : (rho > epsilon && rho < 2.0 * k * epsilon);
      if (!inside) continue;
      if (std::abs(b[idx]) <= floor_value) {
        std::ostringstream msg;
        msg << "base level " << j << " vanishes at |xi| = " << r
            << " inside the region required by the lambda construction";
        throw ConstructionError(msg.str());
      }
      lam[idx] = partition.theta(j, zoom * r) / b[idx];
    }
  }
}

double reproducing_residual(const PartitionSpec& partition,
                            const LevelSystem& base) {
  if (!partition.has_lambda()) {
    throw InputError("lambda system has not been built");
  }
  const Grid& grid = partition.grid();
  const double bound =
      std::ldexp(partition.epsilon(), partition.j_max());
  double worst = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (grid.frequency_norm(idx) > bound) continue;
    double sum = 0.0;
    for (int j = 0; j <= partition.j_max(); ++j) {
      sum += partition.lambda_samples(j)[idx] * base.samples(j)[idx];
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

namespace {

// Fornberg's recursion: weights of the order-`order` derivative at 0 on the
// nodes -P..P (unit spacing).
std::vector<double> central_weights(int order, int P) {
  const int count = 2 * P + 1;
  std::vector<double> x(count);
  for (int i = 0; i < count; ++i) x[i] = i - P;
  std::vector<std::vector<double>> c(count,
                                     std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < count; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(count);
  for (int i = 0; i < count; ++i) w[i] = c[i][order];
  return w;
}

}  // namespace

MomentReport moment_check(std::span<const double> profile_samples,
                          const Grid& grid, int R) {
  if (profile_samples.size() != grid.size()) {
    throw InputError("profile size does not match the grid");
  }
  if (R < 0) throw DomainError("moment order must be nonnegative");
  constexpr int kMaxOrder = 12;
  const int top = R - 1;
  const int half_width = (top + 4) / 2 + 1;
  const long N = static_cast<long>(grid.samples_per_axis());
  if (top > kMaxOrder || half_width >= N / 4) {
    std::ostringstream msg;
    msg << "moment order R = " << R << " exceeds the stencil capability of "
        << "an N = " << N << " lattice";
    throw ResolutionError(msg.str());
  }

  MomentReport report;
  for (double v : profile_samples) {
    report.scale = std::max(report.scale, std::abs(v));
  }
  const double dxi = grid.frequency_spacing();
  const auto at = [&](long k0, long k1) {
    const auto wrap = [N](long k) {
      return static_cast<std::size_t>(((k % N) + N) % N);
    };
    return profile_samples[grid.linear_index(
        wrap(k0), grid.dimension() == 2 ? wrap(k1) : 0)];
  };

  report.passes = true;
  for (int order = 0; order < R; ++order) {
    const int b1_max = grid.dimension() == 2 ? order : 0;
    for (int b1 = 0; b1 <= b1_max; ++b1) {
      const int b0 = order - b1;
      const int P0 = (b0 + 4) / 2 + 1;
      const int P1 = grid.dimension() == 2 ? (b1 + 4) / 2 + 1 : 0;
      const auto w0 = central_weights(b0, P0);
      const auto w1 = grid.dimension() == 2 ? central_weights(b1, P1)
                                            : std::vector<double>{1.0};
      double sum = 0.0;
      for (int k1 = -P1; k1 <= P1; ++k1) {
        for (int k0 = -P0; k0 <= P0; ++k0) {
          sum += w0[k0 + P0] * w1[k1 + P1] * at(k0, k1);
        }
      }
      const double value = sum / std::pow(dxi, order);
      report.residuals.push_back({{b0, b1}, value});
      if (!(std::abs(value) <= 1e-6 * report.scale)) report.passes = false;
    }
  }
  return report;
}

namespace {

// Denominators 1 + (2^j |d| h)^a indexed by per-axis wrapped offsets.
struct PeetreTable {
  std::size_t stride;
  std::vector<double> den;
  double at(std::size_t d0, std::size_t d1) const {
    return den[d0 + stride * d1];
  }
};

PeetreTable peetre_table(const Grid& grid, int j, double a) {
  const std::size_t half = grid.samples_per_axis() / 2;
  const std::size_t extent1 = grid.dimension() == 2 ? half + 1 : 1;
  PeetreTable t{half + 1, std::vector<double>((half + 1) * extent1)};
  const double scale = std::ldexp(grid.spacing(), j);
  for (std::size_t d1 = 0; d1 < extent1; ++d1) {
    for (std::size_t d0 = 0; d0 <= half; ++d0) {
      const double dist = scale * std::sqrt(static_cast<double>(d0 * d0 + d1 * d1));
      t.den[d0 + t.stride * d1] = 1.0 + std::pow(dist, a);
    }
  }
  return t;
}

}  // namespace

std::vector<double> peetre_maximal_level(const GridFunction& g, int j,
                                         double a, PeetreMethod method) {
  if (!(a > 0.0)) throw DomainError("Peetre exponent a must be positive");
  const Grid& grid = g.grid();
  const auto mags = g.magnitudes();
  const auto table = peetre_table(grid, j, a);
  const long N = static_cast<long>(grid.samples_per_axis());
  const long half = N / 2;
  const bool two_d = grid.dimension() == 2;
  const double top = *std::max_element(mags.begin(), mags.end());
  const auto wrap = [N](long v) { return ((v % N) + N) % N; };
  const auto folded = [N](long d) {
    const long m = ((d % N) + N) % N;
    return static_cast<std::size_t>(std::min(m, N - m));
  };

  std::vector<double> out(mags.size(), 0.0);
  if (top == 0.0) return out;
  for (std::size_t x = 0; x < mags.size(); ++x) {
    const auto xi = grid.axis_indices(x);
    const long x0 = static_cast<long>(xi[0]);
    const long x1 = static_cast<long>(xi[1]);
    double best = 0.0;
    const auto visit = [&](long d0, long d1) {
      const auto y = grid.linear_index(static_cast<std::size_t>(wrap(x0 + d0)),
                                       static_cast<std::size_t>(wrap(x1 + d1)));
      const double v = mags[y] / table.at(folded(d0), folded(d1));
      best = std::max(best, v);
    };
    if (method == PeetreMethod::exhaustive) {
      const long lo1 = two_d ? -half : 0;
      const long hi1 = two_d ? half : 1;
      for (long d1 = lo1; d1 < hi1; ++d1) {
        for (long d0 = -half; d0 < half; ++d0) visit(d0, d1);
      }
    } else {
      // Chebyshev rings around x; every node of ring rho is at Euclidean
      // index distance >= rho, so the ring cannot beat `best` once
      // top / table(rho, 0) <= best.
      for (long rho = 0; rho <= half; ++rho) {
        if (rho > 0 && top / table.at(static_cast<std::size_t>(rho), 0) <= best) {
          break;
        }
        if (!two_d) {
          if (rho == 0) {
            visit(0, 0);
          } else {
            if (rho < half) visit(rho, 0);
            visit(-rho, 0);
          }
          continue;
        }
        for (long d1 = -rho; d1 <= rho; ++d1) {
          if (d1 >= half) continue;
          const bool edge_row = (d1 == -rho || d1 == rho);
          for (long d0 = -rho; d0 <= rho; ++d0) {
            if (d0 >= half) continue;
            if (!edge_row && d0 != -rho && d0 != rho) continue;
            visit(d0, d1);
          }
        }
      }
    }
    out[x] = best;
  }
  return out;
}

std::vector<std::vector<double>> peetre_maximal(const GridFunction& f,
                                                const LevelSystem& system,
                                                double a,
                                                PeetreMethod method) {
  if (!(a > 0.0)) throw DomainError("Peetre exponent a must be positive");
  const auto conv = system.convolutions(f);
  std::vector<std::vector<double>> out;
  out.reserve(conv.size());
  for (std::size_t j = 0; j < conv.size(); ++j) {
    out.push_back(peetre_maximal_level(conv[j], static_cast<int>(j), a, method));
  }
  return out;
}

}  // namespace tlm
