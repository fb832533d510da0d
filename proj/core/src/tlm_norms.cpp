#include "tlm/tlm_norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tlm/errors.hpp"

namespace tlm {

int minimal_moment_order(double alpha2) {
  return std::max(0, static_cast<int>(std::floor(alpha2)) + 1);
}

int SpaceParams::resolved_moment_order() const {
  return moment_order.value_or(minimal_moment_order(w.alpha2()));
}

double SpaceParams::a_lower_bound() const {
  const double n = p.grid().dimension();
  return n * (1.0 / std::min(p.p_minus(), q.p_minus()) + c_pu(p, u)) +
         w.alpha();
}

void SpaceParams::validate() const {
  const Grid& grid = p.grid();
  if (!(q.grid() == grid) || !(u.grid() == grid) || !(w.grid() == grid) ||
      !(system.grid() == grid) || !(family.grid() == grid)) {
    throw InputError("space parameters live on different grids");
  }
  require_p_le_u(p, u);
  if (is_infinite_exponent(u.p_plus())) {
    throw InputError("sup u must be finite");
  }
  if (!(q.p_minus() > 0.0) || is_infinite_exponent(q.p_plus())) {
    throw InputError("q^- and q^+ must lie in (0, inf)");
  }
  if (w.j_max() < system.j_max()) {
    throw InputError("weight sequence has fewer levels than the system");
  }
  if (!(a > 0.0)) throw DomainError("Peetre exponent a must be positive");
}

std::vector<GridFunction> decompose(const GridFunction& f,
                                    const SpaceParams& params) {
  params.validate();
  if (!f.all_finite()) throw InputError("input function is not finite");
  auto levels = params.system.pieces(f);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto& wj = params.w.level(static_cast<int>(j));
    auto samples = levels[j].samples();
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] *= wj[i];
  }
  return levels;
}

MorreyResult tlm_norm(const GridFunction& f, const SpaceParams& params) {
  const auto levels = decompose(f, params);
  return mixed_sequence_norm(levels, params.p, params.u, params.q,
                             params.family);
}

namespace {

void require_moments(const SpaceParams& params) {
  const int R = params.resolved_moment_order();
  if (params.system.j_max() < 1) return;
  const auto report =
      moment_check(params.system.samples(1), params.system.grid(), R);
  if (!report.passes) {
    std::ostringstream msg;
    msg << "system '" << params.system.name()
        << "' fails the moment condition of order R = " << R;
    throw ConfigError(msg.str());
  }
}

std::vector<std::vector<double>> weighted(
    std::vector<std::vector<double>> levels, const WeightSequence& w) {
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto& wj = w.level(static_cast<int>(j));
    for (std::size_t i = 0; i < levels[j].size(); ++i) levels[j][i] *= wj[i];
  }
  return levels;
}

}  // namespace

PeetreNorms peetre_norms(const GridFunction& f, const SpaceParams& params,
                         PeetreMethod method) {
  params.validate();
  require_moments(params);
  if (!f.all_finite()) throw InputError("input function is not finite");
  const auto conv = params.system.convolutions(f);
  std::vector<std::vector<double>> plain;
  std::vector<std::vector<double>> maximal;
  for (std::size_t j = 0; j < conv.size(); ++j) {
    plain.push_back(conv[j].magnitudes());
    maximal.push_back(
        peetre_maximal_level(conv[j], static_cast<int>(j), params.a, method));
  }
  PeetreNorms out;
  out.convolution = mixed_sequence_norm(weighted(std::move(plain), params.w),
                                        params.p, params.u, params.q,
                                        params.family);
  out.maximal = mixed_sequence_norm(weighted(std::move(maximal), params.w),
                                    params.p, params.u, params.q,
                                    params.family);
  return out;
}

MorreyResult peetre_convolution_norm(const GridFunction& f,
                                     const SpaceParams& params) {
  params.validate();
  require_moments(params);
  if (!f.all_finite()) throw InputError("input function is not finite");
  const auto conv = params.system.convolutions(f);
  std::vector<std::vector<double>> plain;
  for (const auto& g : conv) plain.push_back(g.magnitudes());
  return mixed_sequence_norm(weighted(std::move(plain), params.w), params.p,
                             params.u, params.q, params.family);
}

MorreyResult peetre_maximal_norm(const GridFunction& f,
                                 const SpaceParams& params,
                                 PeetreMethod method) {
  params.validate();
  require_moments(params);
  if (!f.all_finite()) throw InputError("input function is not finite");
  auto maximal = peetre_maximal(f, params.system, params.a, method);
  return mixed_sequence_norm(weighted(std::move(maximal), params.w), params.p,
                             params.u, params.q, params.family);
}

std::vector<std::vector<double>> hardy_majorant(
    const std::vector<std::vector<double>>& gs, double delta) {
  if (!(delta > 0.0)) throw DomainError("Hardy majorant needs delta > 0");
  if (gs.empty()) return {};
  const std::size_t size = gs.front().size();
  for (const auto& g : gs) {
    if (g.size() != size) throw InputError("sequence entries differ in size");
    for (double v : g) {
      if (v < 0.0) throw DomainError("Hardy majorant needs g_j >= 0");
    }
  }
  const std::size_t K = gs.size();
  std::vector<std::vector<double>> out(K, std::vector<double>(size, 0.0));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t j = 0; j < K; ++j) {
      const double gap = k > j ? double(k - j) : double(j - k);
      const double factor = std::exp2(-gap * delta);
      for (std::size_t x = 0; x < size; ++x) out[k][x] += factor * gs[j][x];
    }
  }
  return out;
}

namespace {

// sum_{j in Z} r^{|j|} for 0 < r < 1, truncated at |j| <= 64 plus the
// geometric remainder 2 r^65 / (1 - r).
double two_sided_geometric(double r) {
  double sum = 1.0;
  double term = 1.0;
  for (int j = 1; j <= 64; ++j) {
    term *= r;
    sum += 2.0 * term;
  }
  return sum + 2.0 * term * r / (1.0 - r);
}

}  // namespace

double hardy_constant(double delta, double q_minus) {
  if (!(delta > 0.0)) throw DomainError("hardy constant needs delta > 0");
  if (!(q_minus > 0.0)) throw DomainError("hardy constant needs q^- > 0");
  const double first = two_sided_geometric(std::exp2(-delta));
  const double second = std::pow(
      two_sided_geometric(std::exp2(-delta * q_minus)), 1.0 / q_minus);
  return std::max(first, second);
}

double quasi_triangle_constant(const SpaceParams& params) {
  const double m = std::min(params.p.p_minus(), params.q.p_minus());
  return std::exp2(std::max(0.0, 1.0 / m - 1.0));
}

}  // namespace tlm
