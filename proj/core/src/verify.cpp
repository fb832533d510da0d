#include "tlm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "tlm/errors.hpp"
#include "tlm/lebesgue.hpp"

namespace tlm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

std::vector<double> live_ratios(const ProbeReport& r, std::size_t rows) {
  std::vector<double> out;
  rows = std::min(rows, r.instances.size());
  for (std::size_t i = 0; i < rows; ++i) {
    if (!r.instances[i].degenerate) out.push_back(r.instances[i].ratio);
  }
  return out;
}

ProbeInstance make_row(std::string label, double lhs, double rhs) {
  ProbeInstance row;
  row.label = std::move(label);
  row.lhs = lhs;
  row.rhs = rhs;
  row.degenerate = rhs == 0.0;
  row.ratio = row.degenerate ? kNaN : lhs / rhs;
  return row;
}

std::string describe(const ExponentField& p) {
  const auto& d = p.descriptor();
  std::ostringstream out;
  out << d.family_name();
  switch (d.family) {
    case ExponentDescriptor::Family::constant:
      out << "(" << d.value << ")";
      break;
    case ExponentDescriptor::Family::bump:
      out << "(base=" << d.base << ",amplitude=" << d.amplitude
          << ",width=" << d.width << ")";
      break;
    case ExponentDescriptor::Family::log_decay:
      out << "(limit=" << d.limit << ",amplitude=" << d.amplitude << ")";
      break;
    case ExponentDescriptor::Family::jump:
      out << "(left=" << d.left << ",right=" << d.right
          << ",position=" << d.position << ")";
      break;
    case ExponentDescriptor::Family::table:
      break;
  }
  return out.str();
}

void add_grid(ProbeReport& r, const Grid& g) {
  r.add_parameter("grid", "n=" + std::to_string(g.dimension()) +
                              " N=" + std::to_string(g.samples_per_axis()) +
                              " L=" + num(g.half_extent()));
}

void add_family(ProbeReport& r, const BallFamily& family) {
  r.add_parameter("family", "stride=" + std::to_string(family.stride()) +
                                " K=" + std::to_string(family.max_level()));
}

bool same_values(const ExponentField& a, const ExponentField& b) {
  return a.values() == b.values();
}

void add_stability(ProbeReport& r, std::size_t baseline, double limit,
                   bool asserted) {
  const double growth = max_ratio_growth(r, baseline);
  if (std::isnan(growth)) {
    r.notes.push_back("doubling check skipped: no live baseline rows");
    return;
  }
  const std::string detail = "max ratio growth " + num(100.0 * growth) +
                             "% from " + std::to_string(baseline) + " to " +
                             std::to_string(r.instances.size()) + " rows";
  if (asserted) {
    r.add_criterion("doubling stability", growth < limit, detail);
  } else {
    r.notes.push_back(detail);
  }
}

std::size_t resolve_baseline(std::size_t baseline, std::size_t size) {
  return baseline == 0 ? size / 2 : std::min(baseline, size);
}

}  // namespace

double ProbeReport::max_ratio() const {
  const auto v = live_ratios(*this, instances.size());
  return v.empty() ? kNaN : *std::max_element(v.begin(), v.end());
}

double ProbeReport::min_ratio() const {
  const auto v = live_ratios(*this, instances.size());
  return v.empty() ? kNaN : *std::min_element(v.begin(), v.end());
}

double ProbeReport::median_ratio() const {
  auto v = live_ratios(*this, instances.size());
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::size_t ProbeReport::degenerate_count() const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(),
                    [](const ProbeInstance& i) { return i.degenerate; }));
}

bool ProbeReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const ProbeCriterion& c) { return c.passed; });
}

void ProbeReport::add_parameter(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
}

void ProbeReport::add_criterion(std::string name, bool ok,
                                std::string detail) {
  criteria.push_back({std::move(name), ok, std::move(detail)});
}

void ProbeReport::write_csv(std::ostream& out) const {
  out << "label,lhs,rhs,ratio,degenerate";
  for (const auto& c : extra_columns) out << ',' << c;
  out << '\n';
  out << std::setprecision(17);
  for (const auto& row : instances) {
    out << row.label << ',' << row.lhs << ',' << row.rhs << ',';
    if (row.degenerate) {
      out << "nan";
    } else {
      out << row.ratio;
    }
    out << ',' << (row.degenerate ? 1 : 0);
    for (double v : row.extra) out << ',' << v;
    out << '\n';
  }
}

void ProbeReport::write_summary(std::ostream& out) const {
  out << "probe: " << probe << '\n';
  for (const auto& [k, v] : parameters) out << "  " << k << " = " << v << '\n';
  out << "instances: " << instances.size() << " (degenerate, skipped: "
      << degenerate_count() << ")\n";
  out << "ratio max/median/min: " << num(max_ratio()) << " / "
      << num(median_ratio()) << " / " << num(min_ratio()) << '\n';
  for (const auto& c : criteria) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
        << '\n';
  }
  for (const auto& n : notes) out << "note: " << n << '\n';
  out << "verdict: " << (passed() ? "PASS" : "FAIL") << '\n';
}

double max_ratio_growth(const ProbeReport& report, std::size_t baseline) {
  const auto base = live_ratios(report, baseline);
  const auto all = live_ratios(report, report.instances.size());
  if (base.empty()) return kNaN;
  const double b = *std::max_element(base.begin(), base.end());
  const double a = *std::max_element(all.begin(), all.end());
  return a / b - 1.0;
}

double ratio_spread(const ProbeReport& report, std::size_t rows) {
  const auto v = live_ratios(report, rows);
  if (v.empty()) return kNaN;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

ProbeReport probe_convolution_inequality(const Corpus& sequences,
                                         const ExponentField& p,
                                         const ExponentField& q,
                                         const ExponentField& u, double m,
                                         const BallFamily& family,
                                         const ConvolutionProbeOptions& opt) {
  const Grid& grid = sequences.grid();
  const int n = grid.dimension();
  if (!(m > n)) {
    throw DomainError("convolution probe needs m > n (got m = " + num(m) +
                      ")");
  }
  require_p_le_u(p, u);

  ProbeReport r;
  r.probe = "convolution";
  add_grid(r, grid);
  r.add_parameter("p", describe(p));
  r.add_parameter("q", describe(q));
  r.add_parameter("u", describe(u));
  r.add_parameter("m", num(m));
  add_family(r, family);
  r.add_parameter("seed", std::to_string(sequences.seed()));
  r.add_parameter("cap", num(opt.cap));

  const auto cert_p = log_holder_certificate(p, opt.log_threshold);
  const auto cert_q = log_holder_certificate(q, opt.log_threshold);
  const double cpu = c_pu(p, u);
  const bool cond31 = m > n + n * cpu;
  const bool cond32 = m > n * (1.0 + cert_p.c_inf);
  r.add_parameter("c_pu", num(cpu));
  r.add_parameter("c_inf(1/p)", num(cert_p.c_inf));
  r.notes.push_back(std::string("m > n + n c(p,u): ") +
                    (cond31 ? "holds" : "fails"));
  r.notes.push_back(std::string("m > n (1 + c_inf(1/p)): ") +
                    (cond32 ? "holds" : "fails"));
  if (same_values(p, u)) r.notes.push_back("c_pu = 0 if p(.) = u(.)");

  bool hypotheses = cert_p.passes() && cert_q.passes() && p.p_minus() > 1.0 &&
                    q.p_minus() > 1.0 && !is_infinite_exponent(q.p_plus());
  if (!hypotheses) {
    r.notes.push_back(
        "exponent hypotheses (log-Hoelder, 1 < p^-, q^-, q^+ < inf) not "
        "certified; ratios recorded only");
  }
  if (!cond31) {
    r.notes.push_back("condition on m fails; ratios recorded only");
  }

  std::size_t levels = 0;
  for (const auto& s : sequences.sequence_members()) {
    levels = std::max(levels, s.levels.size());
  }
  std::vector<GridFunction> kernels;
  for (std::size_t nu = 0; nu < levels; ++nu) {
    kernels.push_back(eta_kernel(static_cast<int>(nu), m, grid));
  }

  for (const auto& s : sequences.sequence_members()) {
    std::vector<GridFunction> smoothed;
    for (std::size_t nu = 0; nu < s.levels.size(); ++nu) {
      smoothed.push_back(convolve(kernels[nu], s.levels[nu]));
    }
    const double lhs = mixed_sequence_norm(smoothed, p, u, q, family).value;
    const double rhs = mixed_sequence_norm(s.levels, p, u, q, family).value;
    r.instances.push_back(make_row(s.label, lhs, rhs));
  }

  const bool asserted = hypotheses && cond31;
  const double mx = r.max_ratio();
  const std::string detail = "max ratio " + num(mx) + " vs cap " + num(opt.cap);
  if (asserted) {
    r.add_criterion("max ratio <= cap", !(mx > opt.cap), detail);
  } else {
    r.notes.push_back(detail);
  }
  add_stability(r, resolve_baseline(opt.baseline, r.instances.size()),
                opt.growth_limit, asserted);
  return r;
}

ProbeReport probe_peetre_equivalence(const Corpus& corpus,
                                     const SpaceParams& params,
                                     const LevelSystem& second,
                                     const EquivalenceProbeOptions& opt) {
  params.validate();
  const int R = params.resolved_moment_order();
  if (second.j_max() >= 1) {
    const auto report = moment_check(second.samples(1), second.grid(), R);
    if (!report.passes) {
      throw ConfigError("system '" + second.name() +
                        "' fails the moment condition of order R = " +
                        std::to_string(R));
    }
  }
  SpaceParams other = params;
  other.system = second;

  ProbeReport r;
  r.probe = "equivalence";
  add_grid(r, corpus.grid());
  r.add_parameter("p", describe(params.p));
  r.add_parameter("q", describe(params.q));
  r.add_parameter("u", describe(params.u));
  r.add_parameter("system", params.system.name());
  r.add_parameter("second_system", second.name());
  r.add_parameter("a", num(params.a));
  r.add_parameter("a_bound", num(params.a_lower_bound()));
  r.add_parameter("R", std::to_string(R));
  r.add_parameter("J_max", std::to_string(params.j_max()));
  add_family(r, params.family);
  r.add_parameter("seed", std::to_string(corpus.seed()));
  r.add_parameter("spread_cap", num(opt.spread_cap));
  r.extra_columns = {"conv_norm", "maximal_norm", "conv_norm_second"};

  const bool hypotheses = params.a_hypothesis_holds();
  if (!hypotheses) {
    r.notes.push_back("warning: a = " + num(params.a) +
                      " does not exceed the bound " +
                      num(params.a_lower_bound()) + "; spreads recorded only");
  }

  bool dominated = true;
  for (const auto& member : corpus.members()) {
    const double t1 = tlm_norm(member.f, params).value;
    const double t2 = tlm_norm(member.f, other).value;
    const auto pn = peetre_norms(member.f, params, opt.method);
    const double c2 = peetre_convolution_norm(member.f, other).value;
    auto row = make_row(member.label, t1, t2);
    row.extra = {pn.convolution.value, pn.maximal.value, c2};
    if (pn.maximal.value < pn.convolution.value) dominated = false;
    r.instances.push_back(std::move(row));
  }

  r.add_criterion("maximal norm >= convolution norm", dominated,
                  "checked exactly on every instance");

  auto spread_of = [&](auto num_of, auto den_of, std::size_t rows) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& row = r.instances[i];
      const double a = num_of(row);
      const double b = den_of(row);
      if (a == 0.0 || b == 0.0) continue;
      lo = std::min(lo, a / b);
      hi = std::max(hi, a / b);
    }
    return hi == 0.0 ? kNaN : hi / lo;
  };
  const auto tlm1 = [](const ProbeInstance& i) { return i.lhs; };
  const auto tlm2 = [](const ProbeInstance& i) { return i.rhs; };
  const auto conv1 = [](const ProbeInstance& i) { return i.extra[0]; };
  const auto max1 = [](const ProbeInstance& i) { return i.extra[1]; };
  const auto conv2 = [](const ProbeInstance& i) { return i.extra[2]; };

  const std::size_t all = r.instances.size();
  const std::size_t base = resolve_baseline(opt.baseline, all);
  struct Pair {
    std::string name;
    double spread;
  };
  const std::vector<Pair> pairs = {
      {"tlm/tlm_second", spread_of(tlm1, tlm2, all)},
      {"conv/tlm", spread_of(conv1, tlm1, all)},
      {"maximal/conv", spread_of(max1, conv1, all)},
      {"conv_second/conv", spread_of(conv2, conv1, all)},
  };
  for (const auto& pair : pairs) {
    const std::string detail =
        "spread " + num(pair.spread) + " vs cap " + num(opt.spread_cap);
    if (hypotheses) {
      r.add_criterion("spread " + pair.name, !(pair.spread > opt.spread_cap),
                      detail);
    } else {
      r.notes.push_back(pair.name + " " + detail);
    }
  }
  const double s_base = spread_of(tlm1, tlm2, base);
  const double s_all = pairs.front().spread;
  if (!std::isnan(s_base)) {
    const double growth = s_all / s_base - 1.0;
    const std::string detail = "tlm spread growth " + num(100.0 * growth) +
                               "% from " + std::to_string(base) + " to " +
                               std::to_string(all) + " rows";
    if (hypotheses) {
      r.add_criterion("doubling stability", growth < opt.growth_limit, detail);
    } else {
      r.notes.push_back(detail);
    }
  }
  return r;
}

ProbeReport probe_xinorm(const ExponentField& p, const Point& x0,
                         const XinormProbeOptions& opt) {
  const Grid& grid = p.grid();
  ProbeReport r;
  r.probe = "xinorm";
  add_grid(r, grid);
  r.add_parameter("p", describe(p));
  r.add_parameter("x0", "(" + num(x0[0]) + "," + num(x0[1]) + ")");
  r.add_parameter("radii", "2^" + std::to_string(opt.k_min) + "..2^" +
                               std::to_string(opt.k_max));
  r.add_parameter("cap", num(opt.cap));
  r.extra_columns = {"cube_norm", "ball_over_cube"};

  const auto cert = log_holder_certificate(p, opt.log_threshold);
  if (!cert.passes()) {
    r.notes.push_back("p is not certified log-Hoelder; ratios recorded only");
  }

  const auto whole = DomainMask::whole(grid);
  auto indicator = [&](const DomainMask& mask) {
    GridFunction f(grid);
    for (std::size_t i : mask.indices()) f[i] = 1.0;
    return f;
  };
  bool within = true;
  bool cube_within = true;
  for (int k = opt.k_min; k <= opt.k_max; ++k) {
    const double radius = std::ldexp(1.0, k);
    const auto ball = indicator(DomainMask::ball(grid, x0, radius));
    const auto cube = indicator(DomainMask::cube(grid, x0, radius));
    const double measured = quasi_norm(ball, p, whole);
    const double cube_norm = quasi_norm(cube, p, whole);
    auto row = make_row("r=2^" + std::to_string(k), measured,
                        char_ball_prediction(p, x0, radius));
    if (measured == 0.0) row.degenerate = true, row.ratio = kNaN;
    const double bc = measured > 0.0 ? measured / cube_norm : kNaN;
    row.extra = {cube_norm, bc};
    if (!row.degenerate &&
        (row.ratio > opt.cap || row.ratio < 1.0 / opt.cap)) {
      within = false;
    }
    if (!std::isnan(bc) && (bc > opt.cap || bc < 1.0 / opt.cap)) {
      cube_within = false;
    }
    r.instances.push_back(std::move(row));
  }
  if (r.degenerate_count() > 0) {
    r.notes.push_back("radii below the grid resolution hold no nodes");
  }
  const std::string range = "[" + num(1.0 / opt.cap) + ", " + num(opt.cap) + "]";
  if (cert.passes()) {
    r.add_criterion("measured/predicted within " + range, within,
                    "min " + num(r.min_ratio()) + ", max " + num(r.max_ratio()));
    r.add_criterion("ball/cube within " + range, cube_within,
                    "ball and cube indicators compared per radius");
  }
  return r;
}

ProbeReport probe_hardy(const Corpus& sequences, double delta,
                        const ExponentField& p, const ExponentField& q,
                        const ExponentField& u, const BallFamily& family,
                        const HardyProbeOptions& opt) {
  if (!(delta > 0.0)) throw DomainError("Hardy probe needs delta > 0");
  const double c = hardy_constant(delta, q.p_minus());
  ProbeReport r;
  r.probe = "hardy";
  add_grid(r, sequences.grid());
  r.add_parameter("delta", num(delta));
  r.add_parameter("p", describe(p));
  r.add_parameter("q", describe(q));
  r.add_parameter("u", describe(u));
  add_family(r, family);
  r.add_parameter("c(delta,q)", num(c));
  r.add_parameter("seed", std::to_string(sequences.seed()));

  bool ok = true;
  for (const auto& s : sequences.sequence_members()) {
    const auto g = magnitudes(s);
    const auto G = hardy_majorant(g, delta);
    const double lhs = mixed_sequence_norm(G, p, u, q, family).value;
    const double rhs = mixed_sequence_norm(g, p, u, q, family).value;
    auto row = make_row(s.label, lhs, rhs);
    if (!row.degenerate && row.ratio > c * (1.0 + opt.slack)) ok = false;
    r.instances.push_back(std::move(row));
  }
  r.add_criterion("ratio <= c(delta,q)(1+" + num(opt.slack) + ")", ok,
                  "max ratio " + num(r.max_ratio()) + " vs " + num(c));
  return r;
}

ProbeReport probe_power_reindex(const Corpus& sequences,
                                const ExponentField& p,
                                const ExponentField& q,
                                const ExponentField& u,
                                const std::vector<double>& ts,
                                const BallFamily& family,
                                const PowerReindexOptions& opt) {
  ProbeReport r;
  r.probe = "power-reindex";
  add_grid(r, sequences.grid());
  r.add_parameter("p", describe(p));
  r.add_parameter("q", describe(q));
  r.add_parameter("u", describe(u));
  add_family(r, family);
  r.add_parameter("tolerance", num(opt.tolerance));
  r.add_parameter("seed", std::to_string(sequences.seed()));
  r.extra_columns = {"t", "relative_gap"};

  double worst = 0.0;
  for (const auto& s : sequences.sequence_members()) {
    for (double t : ts) {
      const auto check = power_reindex_check(s.levels, p, u, q, t, family);
      auto row = make_row(s.label + " t=" + num(t), check.lhs, check.rhs);
      const double gap = row.degenerate ? 0.0 : check.relative_gap();
      row.extra = {t, gap};
      worst = std::max(worst, gap);
      r.instances.push_back(std::move(row));
    }
  }
  r.add_criterion("|lhs - rhs| / rhs <= " + num(opt.tolerance),
                  worst <= opt.tolerance, "worst gap " + num(worst));
  return r;
}

}  // namespace tlm
