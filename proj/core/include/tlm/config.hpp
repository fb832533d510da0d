#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlm/dyadic.hpp"
#include "tlm/exponent_field.hpp"
#include "tlm/grid.hpp"
#include "tlm/morrey.hpp"
#include "tlm/tlm_norms.hpp"
#include "tlm/weights.hpp"

namespace tlm {

struct ExponentSpec {
  ExponentDescriptor descriptor = ExponentDescriptor::constant(2.0);
  /// Sample file for the table family (CSV or raw grid function, real part).
  std::string table_file;
  std::optional<double> table_tail;
};

enum class SystemKind { smooth_step, plain_bump, gaussian_difference };

struct RunConfig {
  int n = 1;
  std::size_t N = 4096;
  double L = 64.0;

  ExponentSpec p;
  ExponentSpec q;
  ExponentSpec u;

  WeightSequence::Family weight_family = WeightSequence::Family::power;
  double s = 0.0;
  double s_prime = 0.0;
  Point x0{0.0, 0.0};

  SystemKind system = SystemKind::smooth_step;
  SystemKind second_system = SystemKind::plain_bump;
  double epsilon = 6.0 / 5.0;
  double k = 25.0 / 18.0;
  double delta1 = 1.0 / 5.0;
  std::optional<int> j_max;
  std::optional<int> moment_order;

  std::optional<double> a;

  std::optional<std::size_t> morrey_stride;
  std::optional<int> morrey_levels;

  double convolution_m = 3.0;
  double convolution_cap = 100.0;
  double equivalence_cap = 50.0;
  double xinorm_cap = 16.0;
  Point xinorm_x0{0.0, 0.0};
  int xinorm_k_min = -6;
  int xinorm_k_max = 4;
  double hardy_delta = 1.0;
  std::vector<double> reindex_t{0.5, 1.0, 2.0};
  double growth_limit = 0.25;
  double log_threshold = 0.5;

  std::uint64_t seed = 20240601;
  std::size_t corpus_size = 16;

  std::string output_dir = "tlm_out";

  /// Non-fatal findings from validation (a below the Peetre bound, ...).
  std::vector<std::string> warnings;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys and
/// malformed values throw ConfigError. Does not validate.
RunConfig parse_config(const std::string& text);
/// Reads, parses and validates a config file.
RunConfig load_config(const std::string& path);
/// Sets one key, as in a config line.
void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value);
/// Cross-field checks: grid shape, anti-aliasing bound on J_max, p <= u,
/// partition parameters, Peetre bound (warning only). Throws ConfigError.
void validate(RunConfig& config);

/// Every recognised key with its current value, one "key = value" per line.
std::string dump_config(const RunConfig& config);

Grid make_grid(const RunConfig& config);
ExponentField make_exponent(const Grid& grid, const ExponentSpec& spec);
int resolved_j_max(const RunConfig& config, const Grid& grid);
LevelSystem make_system(const RunConfig& config, const Grid& grid,
                        SystemKind kind);
WeightSequence make_weights(const RunConfig& config, const Grid& grid);
BallFamily make_family(const RunConfig& config, const Grid& grid);
/// Full parameter set; `a` defaults to the Peetre bound plus one.
SpaceParams make_space_params(const RunConfig& config, const Grid& grid);

std::string system_name(SystemKind kind);

}  // namespace tlm
