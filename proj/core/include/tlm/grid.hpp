#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tlm {

using Complex = std::complex<double>;

/// A point of R^n with n <= 2; unused coordinates are zero.
using Point = std::array<double, 2>;

/// Uniform periodic grid on the torus [-L, L)^n, n in {1, 2}.
///
/// Nodes are x_i = -L + i h along each axis with h = 2L/N. Linear indices
/// are row-major with axis 0 fastest: index = i0 + N * i1.
class Grid {
 public:
  Grid(int dimension, std::size_t samples_per_axis, double half_extent);

  int dimension() const { return n_; }
  std::size_t samples_per_axis() const { return N_; }
  double half_extent() const { return L_; }
  double spacing() const { return 2.0 * L_ / static_cast<double>(N_); }
  /// Lattice spacing of the frequency grid, pi / L.
  double frequency_spacing() const;
  /// h^n, the Riemann-sum weight of one node.
  double cell_measure() const;
  std::size_t size() const;

  /// Per-axis integer coordinates of a linear index.
  std::array<std::size_t, 2> axis_indices(std::size_t index) const;
  std::size_t linear_index(std::size_t i0, std::size_t i1 = 0) const;

  Point point(std::size_t index) const;
  /// Frequency of the lattice mode stored at `index` (FFT ordering:
  /// k < N/2 maps to k * pi/L, otherwise (k - N) * pi/L).
  Point frequency(std::size_t index) const;
  double frequency_norm(std::size_t index) const;

  /// Largest |xi| representable along an axis, N pi / (2L).
  double nyquist() const;

  /// Euclidean distance under the wrap-around metric of the torus.
  double torus_distance(const Point& a, const Point& b) const;
  /// Euclidean distance in the unwrapped box [-L, L)^n.
  double box_distance(const Point& a, const Point& b) const;
  double norm(const Point& x) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  std::size_t N_;
  double L_;
};

/// Complex samples of a function, one per grid node.
class GridFunction {
 public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<Complex> samples);

  static GridFunction sample(const Grid& grid,
                             const std::function<Complex(const Point&)>& fn);
  static GridFunction zeros(const Grid& grid) { return GridFunction(grid); }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }
  Complex operator[](std::size_t i) const { return samples_[i]; }
  Complex& operator[](std::size_t i) { return samples_[i]; }

  std::vector<double> magnitudes() const;
  double max_abs() const;
  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator*=(Complex c);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) {
    return a += b;
  }
  friend GridFunction operator*(Complex c, GridFunction f) { return f *= c; }

 private:
  Grid grid_;
  std::vector<Complex> samples_;
};

/// Frequency-side samples on the lattice (pi/L) Z^n, FFT ordering.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);
  Spectrum(Grid grid, std::vector<Complex> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  /// Pointwise multiplication by a real frequency profile.
  Spectrum multiplied(std::span<const double> profile) const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// Forward transform with the (2 pi)^{-n/2} normalization, Riemann-sum
/// consistent: F(xi_k) = (2 pi)^{-n/2} h^n sum_j f(x_j) exp(-i x_j . xi_k).
Spectrum fourier(const GridFunction& f);
/// Inverse of `fourier`.
GridFunction inverse_fourier(const Spectrum& spectrum);

/// Periodic convolution (f*g)(x) = h^n sum_y f(x - y) g(y), via spectra.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// Closed form 2^{nu n} (1 + 2^nu |x|)^{-m}.
double eta_value(int dimension, int nu, double m, double distance);

enum class Periodization {
  /// One image: the kernel evaluated at the torus distance.
  nearest_image,
  /// Sum over lattice images; n = 1 adds an integral remainder for the
  /// images beyond the explicit window.
  lattice_sum,
};

/// Samples of eta_{nu,m} on the torus, centred at the origin.
GridFunction eta_kernel(int nu, double m, const Grid& grid,
                        Periodization mode = Periodization::lattice_sum);

/// True when 2^nu is resolvable: nu <= log2(L/h) - 1.
bool eta_resolvable(int nu, const Grid& grid);

/// h^n * sum of the real parts.
double riemann_sum(const GridFunction& f);

}  // namespace tlm
