// tlm: command-line front end for the norm library and its probes.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tlm/config.hpp"
#include "tlm/corpus.hpp"
#include "tlm/errors.hpp"
#include "tlm/grid_io.hpp"
#include "tlm/lebesgue.hpp"
#include "tlm/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* kFooter = R"(Exit codes: 0 pass, 1 probe cap or certificate failure, 2 usage or
configuration error.

Config: flat "key = value" lines, '#' comments. `tlm config` prints every key
with its default. --set key=value overrides a key after the file is read.
TLM_OUTPUT_DIR overrides output.dir.

Probe CSV columns (one row per instance):
  label,lhs,rhs,ratio,degenerate[,extra...]
  ratio is lhs/rhs, "nan" and degenerate=1 when rhs = 0 (skipped).
  convolution:   lhs ||(eta_{nu,m} * f_nu)||, rhs ||(f_nu)||
  equivalence:   lhs tlm_norm, rhs tlm_norm under system.second,
                 extras conv_norm, maximal_norm, conv_norm_second
  xinorm:        lhs ||chi_B||, rhs prediction, extras cube_norm, ball_over_cube
  hardy:         lhs ||(G_k)||, rhs ||(g_j)||
  power-reindex: lhs, rhs of the t-power identity, extras t, relative_gap
Level files from decompose: level_<j>.csv with columns x0[,x1],re,im.)";

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
};

tlm::RunConfig load(const Common& c) {
  std::string text;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw tlm::ConfigError("cannot open config '" + c.config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  auto config = tlm::parse_config(text);
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw tlm::ConfigError("--set expects key=value, got '" + s + "'");
    }
    tlm::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
  }
  if (const char* dir = std::getenv("TLM_OUTPUT_DIR"); dir && *dir) {
    config.output_dir = dir;
  }
  tlm::validate(config);
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << '\n';
  return config;
}

fs::path output_dir(const tlm::RunConfig& config) {
  fs::path dir(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "Config file");
  cmd->add_option("--set", c.sets, "Override a config key (key=value)");
}

int run_validate(const Common& c, const std::string& which) {
  const auto config = load(c);
  const auto grid = tlm::make_grid(config);
  const auto& spec = which == "q" ? config.q : which == "u" ? config.u : config.p;
  const auto field = tlm::make_exponent(grid, spec);
  const auto cert = tlm::log_holder_certificate(field, config.log_threshold);
  std::cout << std::setprecision(10) << "exponent: " << which << " ("
            << field.descriptor().family_name() << ")\n"
            << "p_minus=" << field.p_minus() << " p_plus=" << field.p_plus()
            << '\n'
            << "c_log_local=" << cert.c_log_local << '\n'
            << "c_inf=" << cert.c_inf << '\n'
            << "limit_value=" << cert.limit_value << '\n'
            << "threshold=" << cert.threshold << '\n'
            << "local=" << (cert.passes_local ? "pass" : "fail")
            << " global=" << (cert.passes_global ? "pass" : "fail") << '\n'
            << "certificate=" << (cert.passes() ? "pass" : "fail") << '\n';
  return cert.passes() ? kExitPass : kExitFail;
}

void print_ball(const tlm::MorreyResult& r) {
  std::cout << "argmax_center=" << r.argmax.center[0] << ","
            << r.argmax.center[1] << " argmax_radius=" << r.argmax.radius
            << '\n';
}

int run_norm(const Common& c, const std::string& input,
             const std::string& which) {
  const auto config = load(c);
  const auto grid = tlm::make_grid(config);
  const auto f = tlm::read_grid_function(input, grid);
  std::cout << std::setprecision(17);
  if (which == "lebesgue") {
    const auto p = tlm::make_exponent(grid, config.p);
    std::cout << "norm="
              << tlm::quasi_norm(f, p, tlm::DomainMask::whole(grid)) << '\n';
  } else if (which == "morrey") {
    const auto p = tlm::make_exponent(grid, config.p);
    const auto u = tlm::make_exponent(grid, config.u);
    const auto r = tlm::morrey_norm(f, p, u, tlm::make_family(config, grid));
    std::cout << "norm=" << r.value << '\n';
    print_ball(r);
  } else {
    const auto params = tlm::make_space_params(config, grid);
    const auto r = tlm::tlm_norm(f, params);
    std::cout << "norm=" << r.value << '\n';
    print_ball(r);
  }
  return kExitPass;
}

int run_decompose(const Common& c, const std::string& input) {
  const auto config = load(c);
  const auto grid = tlm::make_grid(config);
  const auto f = tlm::read_grid_function(input, grid);
  const auto params = tlm::make_space_params(config, grid);
  const auto levels = tlm::decompose(f, params);
  const auto dir = output_dir(config);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto path = dir / ("level_" + std::to_string(j) + ".csv");
    tlm::write_csv(path, levels[j]);
    std::cout << path.string() << '\n';
  }
  return kExitPass;
}

int run_probe(const Common& c, const std::string& which) {
  const auto config = load(c);
  const auto grid = tlm::make_grid(config);
  const int J = tlm::resolved_j_max(config, grid);
  const std::size_t size = config.corpus_size;
  const auto family = tlm::make_family(config, grid);
  const auto p = tlm::make_exponent(grid, config.p);
  const auto q = tlm::make_exponent(grid, config.q);
  const auto u = tlm::make_exponent(grid, config.u);

  tlm::ProbeReport report;
  if (which == "convolution") {
    const auto seqs = tlm::Corpus::sequences(grid, config.seed, 2 * size, J + 1);
    tlm::ConvolutionProbeOptions opt;
    opt.cap = config.convolution_cap;
    opt.growth_limit = config.growth_limit;
    opt.baseline = size;
    opt.log_threshold = config.log_threshold;
    report = tlm::probe_convolution_inequality(seqs, p, q, u,
                                               config.convolution_m, family, opt);
  } else if (which == "equivalence") {
    const auto corpus = tlm::Corpus::functions(grid, config.seed, 2 * size, J);
    const auto params = tlm::make_space_params(config, grid);
    tlm::EquivalenceProbeOptions opt;
    opt.spread_cap = config.equivalence_cap;
    opt.growth_limit = config.growth_limit;
    opt.baseline = size;
    report = tlm::probe_peetre_equivalence(
        corpus, params, tlm::make_system(config, grid, config.second_system),
        opt);
  } else if (which == "xinorm") {
    tlm::XinormProbeOptions opt;
    opt.cap = config.xinorm_cap;
    opt.k_min = config.xinorm_k_min;
    opt.k_max = config.xinorm_k_max;
    opt.log_threshold = config.log_threshold;
    report = tlm::probe_xinorm(p, config.xinorm_x0, opt);
  } else if (which == "hardy") {
    const auto seqs = tlm::Corpus::sequences(grid, config.seed, size, J + 1);
    report = tlm::probe_hardy(seqs, config.hardy_delta, p, q, u, family);
  } else {
    const auto seqs = tlm::Corpus::sequences(grid, config.seed, size, J + 1);
    report = tlm::probe_power_reindex(seqs, p, q, u, config.reindex_t, family);
  }

  const auto dir = output_dir(config);
  {
    std::ofstream csv(dir / (which + ".csv"));
    report.write_csv(csv);
    std::ofstream summary(dir / (which + "_summary.txt"));
    report.write_summary(summary);
  }
  report.write_summary(std::cout);
  return report.passed() ? kExitPass : kExitFail;
}

int run_corpus(const Common& c, bool write) {
  const auto config = load(c);
  const auto grid = tlm::make_grid(config);
  const int J = tlm::resolved_j_max(config, grid);
  const auto corpus =
      tlm::Corpus::functions(grid, config.seed, config.corpus_size, J);
  fs::path dir;
  if (write) dir = output_dir(config);
  std::cout << "seed=" << config.seed << " size=" << corpus.size() << '\n';
  for (std::size_t i = 0; i < corpus.members().size(); ++i) {
    const auto& m = corpus.members()[i];
    std::cout << m.label << " tail=" << tlm::tail_ratio(m.f) << '\n';
    if (write) tlm::write_csv(dir / ("member_" + std::to_string(i) + ".csv"), m.f);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-exponent Lebesgue, Morrey and 2-microlocal "
               "Triebel-Lizorkin-Morrey norms on periodic grids"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Common common;
  std::string which_exp = "p";
  auto* validate_cmd =
      app.add_subcommand("validate-exponent", "Log-Hoelder certificate");
  add_common(validate_cmd, common);
  validate_cmd->add_option("--which", which_exp, "Exponent to certify")
      ->check(CLI::IsMember({"p", "q", "u"}));

  std::string input;
  std::string which_norm = "tlm";
  auto* norm_cmd = app.add_subcommand("norm", "Evaluate a norm of a grid file");
  add_common(norm_cmd, common);
  norm_cmd->add_option("-i,--input", input, "Grid function (.csv or raw)")
      ->required();
  norm_cmd->add_option("--which", which_norm, "lebesgue, morrey or tlm")
      ->check(CLI::IsMember({"lebesgue", "morrey", "tlm"}));

  auto* decompose_cmd =
      app.add_subcommand("decompose", "Write the weighted dyadic pieces");
  add_common(decompose_cmd, common);
  decompose_cmd->add_option("-i,--input", input, "Grid function")->required();

  std::string which_probe;
  auto* probe_cmd = app.add_subcommand("probe", "Run an inequality probe");
  add_common(probe_cmd, common);
  probe_cmd->add_option("which", which_probe, "Probe name")
      ->required()
      ->check(CLI::IsMember(
          {"convolution", "equivalence", "xinorm", "hardy", "power-reindex"}));

  bool write = false;
  auto* corpus_cmd = app.add_subcommand("corpus", "Generate and list the corpus");
  add_common(corpus_cmd, common);
  corpus_cmd->add_flag("--write", write, "Write members as CSV files");

  auto* config_cmd = app.add_subcommand("config", "Print the resolved config");
  add_common(config_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return run_validate(common, which_exp);
    if (*norm_cmd) return run_norm(common, input, which_norm);
    if (*decompose_cmd) return run_decompose(common, input);
    if (*probe_cmd) return run_probe(common, which_probe);
    if (*corpus_cmd) return run_corpus(common, write);
    if (*config_cmd) {
      std::cout << tlm::dump_config(load(common));
      return kExitPass;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
