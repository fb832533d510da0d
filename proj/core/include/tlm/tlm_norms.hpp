#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlm/dyadic.hpp"
#include "tlm/exponent_field.hpp"
#include "tlm/morrey.hpp"
#include "tlm/weights.hpp"

namespace tlm {

/// Everything a 2-microlocal Triebel-Lizorkin-Morrey norm depends on.
struct SpaceParams {
  ExponentField p;
  ExponentField q;
  ExponentField u;
  WeightSequence w;
  /// The admissible system (phi_j) of the definition; also serves as the
  /// local-means system of the Peetre-side norms.
  LevelSystem system;
  BallFamily family;
  /// Peetre exponent.
  double a = 1.0;
  /// Moment order; defaults to the smallest integer above alpha2.
  std::optional<int> moment_order;

  int j_max() const { return system.j_max(); }
  int resolved_moment_order() const;
  /// n (1/min(p^-, q^-) + c(p,u)) + alpha.
  double a_lower_bound() const;
  bool a_hypothesis_holds() const { return a > a_lower_bound(); }
  /// Throws InputError unless p <= u, q^- > 0, q^+ < inf, sup u < inf and
  /// the weight/system/family grids agree with p.
  void validate() const;
};

/// Smallest integer R >= 0 with R > alpha2.
int minimal_moment_order(double alpha2);

/// The weighted Littlewood-Paley pieces w_j (phi_j f^)^vee, j = 0..J_max.
std::vector<GridFunction> decompose(const GridFunction& f,
                                    const SpaceParams& params);

/// || (w_j (phi_j f^)^vee)_j ||_{M^u_p(l_q)}.
MorreyResult tlm_norm(const GridFunction& f, const SpaceParams& params);

/// || ((Psi_j * f) w_j)_j ||_{M^u_p(l_q)}. Throws ConfigError when the
/// system fails the moment condition of order R.
MorreyResult peetre_convolution_norm(const GridFunction& f,
                                     const SpaceParams& params);
/// || ((Psi_j^* f)_a w_j)_j ||_{M^u_p(l_q)}.
MorreyResult peetre_maximal_norm(const GridFunction& f,
                                 const SpaceParams& params,
                                 PeetreMethod method = PeetreMethod::windowed);

/// Both Peetre-side norms sharing one set of convolutions.
struct PeetreNorms {
  MorreyResult convolution;
  MorreyResult maximal;
};
PeetreNorms peetre_norms(const GridFunction& f, const SpaceParams& params,
                         PeetreMethod method = PeetreMethod::windowed);

/// G_k = sum_j 2^{-|k-j| delta} g_j, k = 0..K.
std::vector<std::vector<double>> hardy_majorant(
    const std::vector<std::vector<double>>& gs, double delta);

/// c(delta, q) = max(sum_{j in Z} 2^{-|j| delta},
///                   [sum_{j in Z} 2^{-|j| delta q^-}]^{1/q^-}),
/// sums truncated at |j| <= 64 plus the geometric remainder.
double hardy_constant(double delta, double q_minus);

/// 2^{max(0, 1/min(p^-, q^-) - 1)}.
double quasi_triangle_constant(const SpaceParams& params);

}  // namespace tlm
