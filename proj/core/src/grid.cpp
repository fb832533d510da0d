#include "tlm/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "tlm/errors.hpp"

namespace tlm {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

double wrap(double d, double L) {
  // Representative of d in [-L, L).
  const double period = 2.0 * L;
  d = std::fmod(d + L, period);
  if (d < 0.0) d += period;
  return d - L;
}

}  // namespace

Grid::Grid(int dimension, std::size_t samples_per_axis, double half_extent)
    : n_(dimension), N_(samples_per_axis), L_(half_extent) {
  if (n_ != 1 && n_ != 2) throw InputError("grid dimension must be 1 or 2");
  if (N_ < 8 || !is_power_of_two(N_)) {
    throw InputError("samples per axis must be a power of two >= 8");
  }
  if (!(L_ > 0.0) || !std::isfinite(L_)) {
    throw InputError("half extent must be positive and finite");
  }
}

double Grid::frequency_spacing() const { return std::numbers::pi / L_; }

double Grid::cell_measure() const { return std::pow(spacing(), n_); }

std::size_t Grid::size() const { return n_ == 1 ? N_ : N_ * N_; }

std::array<std::size_t, 2> Grid::axis_indices(std::size_t index) const {
  if (n_ == 1) return {index, 0};
  return {index % N_, index / N_};
}

std::size_t Grid::linear_index(std::size_t i0, std::size_t i1) const {
  return n_ == 1 ? i0 : i0 + N_ * i1;
}

Point Grid::point(std::size_t index) const {
  const auto idx = axis_indices(index);
  const double h = spacing();
  Point x{-L_ + static_cast<double>(idx[0]) * h, 0.0};
  if (n_ == 2) x[1] = -L_ + static_cast<double>(idx[1]) * h;
  return x;
}

Point Grid::frequency(std::size_t index) const {
  const auto idx = axis_indices(index);
  const double dxi = frequency_spacing();
  const auto signed_mode = [this](std::size_t k) {
    return k < N_ / 2 ? static_cast<double>(k)
                      : static_cast<double>(k) - static_cast<double>(N_);
  };
  Point xi{signed_mode(idx[0]) * dxi, 0.0};
  if (n_ == 2) xi[1] = signed_mode(idx[1]) * dxi;
  return xi;
}

double Grid::frequency_norm(std::size_t index) const {
  const Point xi = frequency(index);
  return std::hypot(xi[0], xi[1]);
}

double Grid::nyquist() const {
  return static_cast<double>(N_) * std::numbers::pi / (2.0 * L_);
}

double Grid::torus_distance(const Point& a, const Point& b) const {
  const double d0 = wrap(a[0] - b[0], L_);
  const double d1 = n_ == 2 ? wrap(a[1] - b[1], L_) : 0.0;
  return std::hypot(d0, d1);
}

double Grid::box_distance(const Point& a, const Point& b) const {
  return std::hypot(a[0] - b[0], n_ == 2 ? a[1] - b[1] : 0.0);
}

double Grid::norm(const Point& x) const {
  return std::hypot(x[0], n_ == 2 ? x[1] : 0.0);
}

GridFunction::GridFunction(Grid grid)
    : grid_(grid), samples_(grid.size(), Complex{}) {}

GridFunction::GridFunction(Grid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw InputError("sample count does not match the grid");
  }
}

GridFunction GridFunction::sample(
    const Grid& grid, const std::function<Complex(const Point&)>& fn) {
  GridFunction f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(grid.point(i));
  return f;
}

std::vector<double> GridFunction::magnitudes() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](Complex z) { return std::abs(z); });
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (auto z : samples_) m = std::max(m, std::abs(z));
  return m;
}

bool GridFunction::all_finite() const {
  return std::all_of(samples_.begin(), samples_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw InputError("grid mismatch in addition");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other[i];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex c) {
  for (auto& z : samples_) z *= c;
  return *this;
}

Spectrum::Spectrum(Grid grid) : grid_(grid), values_(grid.size(), Complex{}) {}

Spectrum::Spectrum(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InputError("spectrum size does not match the grid");
  }
}

Spectrum Spectrum::multiplied(std::span<const double> profile) const {
  if (profile.size() != values_.size()) {
    throw InputError("profile size does not match the spectrum");
  }
  Spectrum out(grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out[i] = values_[i] * profile[i];
  }
  return out;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalized DFT with sign -1 (forward) or +1 (backward), in place.
void run_dft(const Grid& grid, std::vector<Complex>& data, int sign) {
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  const int N = static_cast<int>(grid.samples_per_axis());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = grid.dimension() == 1
               ? fftw_plan_dft_1d(N, buffer, buffer, sign, FFTW_ESTIMATE)
               : fftw_plan_dft_2d(N, N, buffer, buffer, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// (-1)^{k_0 + k_1}: the phase exp(i L xi_k) of the shifted origin.
double lattice_sign(const Grid& grid, std::size_t index) {
  const auto idx = grid.axis_indices(index);
  return ((idx[0] + idx[1]) % 2 == 0) ? 1.0 : -1.0;
}

double two_pi_power(const Grid& grid, double exponent) {
  return std::pow(2.0 * std::numbers::pi, exponent * grid.dimension());
}

}  // namespace

Spectrum fourier(const GridFunction& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> data(f.samples().begin(), f.samples().end());
  run_dft(grid, data, FFTW_FORWARD);
  const double scale = two_pi_power(grid, -0.5) * grid.cell_measure();
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] *= scale * lattice_sign(grid, k);
  }
  return Spectrum(grid, std::move(data));
}

GridFunction inverse_fourier(const Spectrum& spectrum) {
  const Grid& grid = spectrum.grid();
  std::vector<Complex> data(spectrum.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] = spectrum[k] * lattice_sign(grid, k);
  }
  run_dft(grid, data, FFTW_BACKWARD);
  const double scale = two_pi_power(grid, -0.5) *
                       std::pow(grid.frequency_spacing(), grid.dimension());
  for (auto& z : data) z *= scale;
  return GridFunction(grid, std::move(data));
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw InputError("convolve: grid mismatch");
  Spectrum fs = fourier(f);
  const Spectrum gs = fourier(g);
  const double c = two_pi_power(f.grid(), 0.5);
  for (std::size_t k = 0; k < fs.size(); ++k) fs[k] *= c * gs[k];
  return inverse_fourier(fs);
}

double eta_value(int dimension, int nu, double m, double distance) {
  const double scale = std::ldexp(1.0, nu);
  return std::pow(scale, dimension) * std::pow(1.0 + scale * distance, -m);
}

bool eta_resolvable(int nu, const Grid& grid) {
  return static_cast<double>(nu) <=
         std::log2(grid.half_extent() / grid.spacing()) - 1.0;
}

GridFunction eta_kernel(int nu, double m, const Grid& grid,
                        Periodization mode) {
  const int n = grid.dimension();
  if (!(m > n)) {
    throw DomainError("eta kernel needs m > n for integrability");
  }
  if (nu < 0) throw DomainError("eta kernel needs nu >= 0");
  const Point origin{0.0, 0.0};
  GridFunction out(grid);
  if (mode == Periodization::nearest_image) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = eta_value(n, nu, m, grid.torus_distance(grid.point(i), origin));
    }
    return out;
  }

  const double period = 2.0 * grid.half_extent();
  const double scale = std::ldexp(1.0, nu);
  if (n == 1) {
    constexpr int kImages = 8;
    const double window = period * (kImages + 0.5);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double x = grid.point(i)[0];
      double sum = 0.0;
      for (int k = -kImages; k <= kImages; ++k) {
        sum += eta_value(1, nu, m, std::abs(x + period * k));
      }
      // Images beyond the window, by the midpoint-integral remainder.
      sum += (std::pow(1.0 + scale * (window + x), 1.0 - m) +
              std::pow(1.0 + scale * (window - x), 1.0 - m)) /
             (period * (m - 1.0));
      out[i] = sum;
    }
    return out;
  }

  constexpr int kImages = 4;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point x = grid.point(i);
    double sum = 0.0;
    for (int k0 = -kImages; k0 <= kImages; ++k0) {
      for (int k1 = -kImages; k1 <= kImages; ++k1) {
        sum += eta_value(2, nu, m,
                         std::hypot(x[0] + period * k0, x[1] + period * k1));
      }
    }
    out[i] = sum;
  }
  return out;
}

double riemann_sum(const GridFunction& f) {
  double s = 0.0;
  for (auto z : f.samples()) s += z.real();
  return s * f.grid().cell_measure();
}

}  // namespace tlm
