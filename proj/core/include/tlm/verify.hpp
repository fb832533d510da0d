#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tlm/corpus.hpp"
#include "tlm/dyadic.hpp"
#include "tlm/exponent_field.hpp"
#include "tlm/morrey.hpp"
#include "tlm/tlm_norms.hpp"

namespace tlm {

struct ProbeInstance {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; NaN for degenerate rows.
  double ratio = 0.0;
  bool degenerate = false;
  /// Probe-specific columns, named by ProbeReport::extra_columns.
  std::vector<double> extra;
};

struct ProbeCriterion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ProbeReport {
  std::string probe;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> extra_columns;
  std::vector<ProbeInstance> instances;
  std::vector<ProbeCriterion> criteria;
  std::vector<std::string> notes;

  /// Aggregates over non-degenerate rows; NaN when there are none.
  double max_ratio() const;
  double median_ratio() const;
  double min_ratio() const;
  std::size_t degenerate_count() const;
  /// True iff every asserted criterion passed.
  bool passed() const;

  void add_parameter(std::string key, std::string value);
  void add_criterion(std::string name, bool passed, std::string detail);

  /// Header: label,lhs,rhs,ratio,degenerate[,extra...].
  void write_csv(std::ostream& out) const;
  void write_summary(std::ostream& out) const;
};

/// Growth of the max ratio from the first `baseline` rows to all rows,
/// as max_all / max_baseline - 1.
double max_ratio_growth(const ProbeReport& report, std::size_t baseline);

struct ConvolutionProbeOptions {
  double cap = 100.0;
  double growth_limit = 0.25;
  /// Rows forming the baseline of the doubling check; 0 means size/2.
  std::size_t baseline = 0;
  double log_threshold = 0.5;
};

/// LHS = ||(eta_{nu,m} * f_nu)||, RHS = ||(f_nu)|| in M^u_p(l_q). Throws
/// DomainError when m <= n.
ProbeReport probe_convolution_inequality(const Corpus& sequences,
                                         const ExponentField& p,
                                         const ExponentField& q,
                                         const ExponentField& u, double m,
                                         const BallFamily& family,
                                         const ConvolutionProbeOptions& opt = {});

struct EquivalenceProbeOptions {
  double spread_cap = 50.0;
  double growth_limit = 0.25;
  std::size_t baseline = 0;
  PeetreMethod method = PeetreMethod::windowed;
};

/// Per instance: tlm_norm, Peetre convolution and maximal norms under
/// `params.system`, and tlm_norm under `second`. The main ratio is
/// tlm_norm(system 1) / tlm_norm(second); the extras hold the others.
ProbeReport probe_peetre_equivalence(const Corpus& corpus,
                                     const SpaceParams& params,
                                     const LevelSystem& second,
                                     const EquivalenceProbeOptions& opt = {});

struct XinormProbeOptions {
  double cap = 16.0;
  int k_min = -6;
  int k_max = 4;
  double log_threshold = 0.5;
};

/// ||chi_{B_r(x0)}||_{p} / prediction over r = 2^k; extras hold the cube
/// norm and the ball/cube ratio.
ProbeReport probe_xinorm(const ExponentField& p, const Point& x0,
                         const XinormProbeOptions& opt = {});

/// Max/min ratio of a probe (the spread used by the doubling checks).
double ratio_spread(const ProbeReport& report, std::size_t rows);

struct HardyProbeOptions {
  double slack = 1e-6;
};

/// ||(G_k)|| <= c(delta, q) ||(g_j)|| with g_j = |f_j|.
ProbeReport probe_hardy(const Corpus& sequences, double delta,
                        const ExponentField& p, const ExponentField& q,
                        const ExponentField& u, const BallFamily& family,
                        const HardyProbeOptions& opt = {});

struct PowerReindexOptions {
  double tolerance = 1e-8;
};

ProbeReport probe_power_reindex(const Corpus& sequences,
                                const ExponentField& p,
                                const ExponentField& q,
                                const ExponentField& u,
                                const std::vector<double>& ts,
                                const BallFamily& family,
                                const PowerReindexOptions& opt = {});

}  // namespace tlm
