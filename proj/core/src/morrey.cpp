#include "tlm/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tlm/errors.hpp"
#include "tlm/lebesgue.hpp"

namespace tlm {

BallFamily BallFamily::standard(const Grid& grid) {
  const std::size_t stride =
      std::max<std::size_t>(1, grid.samples_per_axis() / 64);
  const double cover = std::sqrt(static_cast<double>(grid.dimension())) *
                       grid.half_extent();
  const int levels =
      static_cast<int>(std::ceil(std::log2(cover / grid.spacing())));
  return BallFamily(grid, stride, levels);
}

BallFamily::BallFamily(const Grid& grid, std::size_t stride, int max_level)
    : grid_(grid), stride_(stride), max_level_(max_level) {
  const std::size_t N = grid.samples_per_axis();
  if (stride_ < 1 || stride_ > N) {
    throw InputError("ball family stride must lie in [1, N]");
  }
  if (max_level_ < 0) throw InputError("ball family needs K >= 0");

  for (std::size_t i0 = 0; i0 < N; i0 += stride_) {
    if (grid.dimension() == 1) {
      centers_.push_back(i0);
      continue;
    }
    for (std::size_t i1 = 0; i1 < N; i1 += stride_) {
      centers_.push_back(grid.linear_index(i0, i1));
    }
  }

  const double cover = covering_radius();
  for (int k = 0; k <= max_level_; ++k) {
    const double r = std::min(std::ldexp(grid.spacing(), k), cover);
    if (radii_.empty() || r > radii_.back()) radii_.push_back(r);
  }

  const long half = static_cast<long>(N / 2);
  const long lo1 = grid.dimension() == 2 ? -half : 0;
  const long hi1 = grid.dimension() == 2 ? half : 1;
  const double h = grid.spacing();
  for (double r : radii_) {
    std::vector<Offset> stencil;
    const bool covers = r >= cover;
    for (long d1 = lo1; d1 < hi1; ++d1) {
      for (long d0 = -half; d0 < half; ++d0) {
        const double dist =
            h * std::sqrt(static_cast<double>(d0 * d0 + d1 * d1));
        if (covers || dist < r) stencil.push_back({d0, d1});
      }
    }
    stencils_.push_back(std::move(stencil));
  }
}

double BallFamily::covering_radius() const {
  return std::sqrt(static_cast<double>(grid_.dimension())) *
         grid_.half_extent();
}

void BallFamily::ball_members(std::size_t center, std::size_t radius_index,
                              std::vector<std::size_t>& out) const {
  out.clear();
  const auto c = grid_.axis_indices(center);
  const long N = static_cast<long>(grid_.samples_per_axis());
  const auto wrap = [N](long v) { return static_cast<std::size_t>(((v % N) + N) % N); };
  for (const auto& o : stencils_[radius_index]) {
    const std::size_t i0 = wrap(static_cast<long>(c[0]) + o.d0);
    const std::size_t i1 =
        grid_.dimension() == 2 ? wrap(static_cast<long>(c[1]) + o.d1) : 0;
    out.push_back(grid_.linear_index(i0, i1));
  }
}

void require_p_le_u(const ExponentField& p, const ExponentField& u) {
  if (!(p.grid() == u.grid())) throw InputError("p and u grids differ");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > u[i]) {
      std::ostringstream msg;
      msg << "p(x) > u(x) at sample " << i << " (p = " << p[i]
          << ", u = " << u[i] << ")";
      throw InputError(msg.str());
    }
  }
}

namespace {

double reciprocal(double p) { return is_infinite_exponent(p) ? 0.0 : 1.0 / p; }

}  // namespace

MorreyResult morrey_norm(const std::vector<double>& magnitudes,
                         const ExponentField& p, const ExponentField& u,
                         const BallFamily& family) {
  require_p_le_u(p, u);
  if (is_infinite_exponent(u.p_plus())) {
    throw InputError("Morrey norm requires sup u < infinity");
  }
  const Grid& grid = family.grid();
  if (!(grid == p.grid()) || magnitudes.size() != grid.size()) {
    throw InputError("Morrey norm: grid mismatch");
  }
  const double n = grid.dimension();
  const double w = grid.cell_measure();

  MorreyResult best;
  best.value = -1.0;
  std::vector<std::size_t> members;
  std::vector<double> a;
  std::vector<double> e;
  for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
    const double r = family.radii()[ri];
    for (std::size_t c : family.centers()) {
      family.ball_members(c, ri, members);
      a.clear();
      e.clear();
      bool any = false;
      for (std::size_t i : members) {
        a.push_back(magnitudes[i]);
        e.push_back(p[i]);
        any = any || magnitudes[i] != 0.0;
      }
      double value = 0.0;
      if (any) {
        const double prefactor =
            std::pow(r, n * (reciprocal(u[c]) - reciprocal(p[c])));
        value = prefactor * detail::quasi_root(a, e, w);
      }
      if (value > best.value) {
        best.value = value;
        best.argmax = {grid.point(c), c, r};
      }
    }
  }
  return best;
}

MorreyResult morrey_norm(const GridFunction& f, const ExponentField& p,
                         const ExponentField& u, const BallFamily& family) {
  if (!f.all_finite()) throw InputError("Morrey norm: non-finite samples");
  return morrey_norm(f.magnitudes(), p, u, family);
}

std::vector<double> lq_aggregate(const std::vector<std::vector<double>>& fs,
                                 const ExponentField& q) {
  if (fs.empty()) throw InputError("sequence norm of an empty sequence");
  const std::size_t size = q.size();
  std::vector<double> out(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    double top = 0.0;
    for (const auto& f : fs) {
      if (f.size() != size) throw InputError("sequence entry size mismatch");
      top = std::max(top, std::abs(f[x]));
    }
    if (top == 0.0 || is_infinite_exponent(q[x])) {
      out[x] = top;
      continue;
    }
    double sum = 0.0;
    for (const auto& f : fs) sum += std::pow(std::abs(f[x]) / top, q[x]);
    out[x] = top * std::pow(sum, 1.0 / q[x]);
  }
  return out;
}

std::vector<double> lq_aggregate(const std::vector<GridFunction>& fs,
                                 const ExponentField& q) {
  std::vector<std::vector<double>> mags;
  mags.reserve(fs.size());
  for (const auto& f : fs) {
    if (!f.all_finite()) throw InputError("sequence entry is not finite");
    mags.push_back(f.magnitudes());
  }
  return lq_aggregate(mags, q);
}

MorreyResult mixed_sequence_norm(const std::vector<std::vector<double>>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q,
                                 const BallFamily& family) {
  if (!(q.p_minus() > 0.0)) throw InputError("q^- must be positive");
  return morrey_norm(lq_aggregate(fs, q), p, u, family);
}

MorreyResult mixed_sequence_norm(const std::vector<GridFunction>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q,
                                 const BallFamily& family) {
  if (!(q.p_minus() > 0.0)) throw InputError("q^- must be positive");
  return morrey_norm(lq_aggregate(fs, q), p, u, family);
}

double PowerReindex::relative_gap() const {
  if (rhs == 0.0) {
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(lhs - rhs) / rhs;
}

PowerReindex power_reindex_check(const std::vector<GridFunction>& fs,
                                 const ExponentField& p,
                                 const ExponentField& u,
                                 const ExponentField& q, double t,
                                 const BallFamily& family) {
  if (!(t > 0.0)) throw DomainError("power reindexing needs t > 0");
  if (fs.empty()) throw InputError("sequence norm of an empty sequence");
  std::vector<std::vector<double>> powered;
  powered.reserve(fs.size());
  for (const auto& f : fs) {
    auto m = f.magnitudes();
    for (auto& v : m) v = std::pow(v, t);
    powered.push_back(std::move(m));
  }
  PowerReindex out;
  out.lhs = mixed_sequence_norm(powered, p.divided_by(t), u.divided_by(t),
                                q.divided_by(t), family)
                .value;
  out.rhs = std::pow(mixed_sequence_norm(fs, p, u, q, family).value, t);
  return out;
}

}  // namespace tlm
