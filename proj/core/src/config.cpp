#include "tlm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "tlm/errors.hpp"
#include "tlm/grid_io.hpp"

namespace tlm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  }
  return v;
}

// Accepts decimals, "inf" and fractions a/b.
double parse_double(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(key, text);
  const double den = parse_plain(key, trim(text.substr(slash + 1)));
  if (den == 0.0) throw ConfigError("key '" + key + "': zero denominator");
  return parse_plain(key, trim(text.substr(0, slash))) / den;
}

long parse_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

Point parse_point(const std::string& key, const std::string& raw) {
  const auto v = parse_list(key, raw);
  if (v.size() > 2) throw ConfigError("key '" + key + "': at most 2 coordinates");
  return {v[0], v.size() > 1 ? v[1] : 0.0};
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string fmt_point(const Point& p) { return fmt(p[0]) + "," + fmt(p[1]); }

SystemKind parse_system(const std::string& key, const std::string& v) {
  if (v == "smooth_step") return SystemKind::smooth_step;
  if (v == "plain_bump") return SystemKind::plain_bump;
  if (v == "gaussian_difference") return SystemKind::gaussian_difference;
  throw ConfigError("key '" + key + "': unknown system '" + v + "'");
}

using Family = ExponentDescriptor::Family;

Family parse_family(const std::string& key, const std::string& v) {
  if (v == "constant") return Family::constant;
  if (v == "bump") return Family::bump;
  if (v == "log_decay") return Family::log_decay;
  if (v == "jump") return Family::jump;
  if (v == "table") return Family::table;
  throw ConfigError("key '" + key + "': unknown exponent family '" + v + "'");
}

struct Entry {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "auto";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

void add_exponent_keys(std::map<std::string, Entry>& t, const std::string& name,
                       ExponentSpec RunConfig::*member) {
  const std::string pre = "exponent." + name + ".";
  auto num = [&](const std::string& field, double ExponentDescriptor::*slot) {
    t[pre + field] = {
        [member, slot](RunConfig& c, const std::string& k, const std::string& v) {
          (c.*member).descriptor.*slot = parse_double(k, v);
        },
        [member, slot](const RunConfig& c) {
          return fmt((c.*member).descriptor.*slot);
        }};
  };
  t[pre + "family"] = {
      [member](RunConfig& c, const std::string& k, const std::string& v) {
        (c.*member).descriptor.family = parse_family(k, v);
      },
      [member](const RunConfig& c) {
        return (c.*member).descriptor.family_name();
      }};
  num("value", &ExponentDescriptor::value);
  num("base", &ExponentDescriptor::base);
  num("amplitude", &ExponentDescriptor::amplitude);
  num("width", &ExponentDescriptor::width);
  num("limit", &ExponentDescriptor::limit);
  num("left", &ExponentDescriptor::left);
  num("right", &ExponentDescriptor::right);
  num("position", &ExponentDescriptor::position);
  t[pre + "center"] = {
      [member](RunConfig& c, const std::string& k, const std::string& v) {
        (c.*member).descriptor.center = parse_point(k, v);
      },
      [member](const RunConfig& c) {
        return fmt_point((c.*member).descriptor.center);
      }};
  t[pre + "file"] = {
      [member](RunConfig& c, const std::string&, const std::string& v) {
        (c.*member).table_file = v;
      },
      [member](const RunConfig& c) { return (c.*member).table_file; }};
  t[pre + "tail"] = {
      [member](RunConfig& c, const std::string& k, const std::string& v) {
        if (trim(v) == "auto") {
          (c.*member).table_tail.reset();
        } else {
          (c.*member).table_tail = parse_double(k, v);
        }
      },
      [member](const RunConfig& c) { return opt_str((c.*member).table_tail); }};
}

template <class T>
Entry double_entry(T RunConfig::*slot) {
  return {[slot](RunConfig& c, const std::string& k, const std::string& v) {
            c.*slot = parse_double(k, v);
          },
          [slot](const RunConfig& c) { return fmt(c.*slot); }};
}

template <class T>
Entry int_entry(T RunConfig::*slot) {
  return {[slot](RunConfig& c, const std::string& k, const std::string& v) {
            const long x = parse_int(k, v);
            if constexpr (std::is_unsigned_v<T>) {
              if (x < 0) throw ConfigError("key '" + k + "' must be >= 0");
            }
            c.*slot = static_cast<T>(x);
          },
          [slot](const RunConfig& c) { return std::to_string(c.*slot); }};
}

template <class T>
Entry optional_int_entry(std::optional<T> RunConfig::*slot) {
  return {[slot](RunConfig& c, const std::string& k, const std::string& v) {
            if (trim(v) == "auto") {
              (c.*slot).reset();
              return;
            }
            const long x = parse_int(k, v);
            if constexpr (std::is_unsigned_v<T>) {
              if (x < 0) throw ConfigError("key '" + k + "' must be >= 0");
            }
            c.*slot = static_cast<T>(x);
          },
          [slot](const RunConfig& c) { return opt_str(c.*slot); }};
}

Entry point_entry(Point RunConfig::*slot) {
  return {[slot](RunConfig& c, const std::string& k, const std::string& v) {
            c.*slot = parse_point(k, v);
          },
          [slot](const RunConfig& c) { return fmt_point(c.*slot); }};
}

Entry system_entry(SystemKind RunConfig::*slot) {
  return {[slot](RunConfig& c, const std::string& k, const std::string& v) {
            c.*slot = parse_system(k, v);
          },
          [slot](const RunConfig& c) { return system_name(c.*slot); }};
}

const std::map<std::string, Entry>& table() {
  static const std::map<std::string, Entry> t = [] {
    std::map<std::string, Entry> t;
    t["grid.n"] = int_entry(&RunConfig::n);
    t["grid.N"] = int_entry(&RunConfig::N);
    t["grid.L"] = double_entry(&RunConfig::L);
    add_exponent_keys(t, "p", &RunConfig::p);
    add_exponent_keys(t, "q", &RunConfig::q);
    add_exponent_keys(t, "u", &RunConfig::u);
    t["weight.family"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          if (v == "power") {
            c.weight_family = WeightSequence::Family::power;
          } else if (v == "two_microlocal") {
            c.weight_family = WeightSequence::Family::two_microlocal;
          } else {
            throw ConfigError("key '" + k + "': unknown weight family '" + v +
                              "'");
          }
        },
        [](const RunConfig& c) {
          return c.weight_family == WeightSequence::Family::power
                     ? std::string("power")
                     : std::string("two_microlocal");
        }};
    t["weight.s"] = double_entry(&RunConfig::s);
    t["weight.s_prime"] = double_entry(&RunConfig::s_prime);
    t["weight.x0"] = point_entry(&RunConfig::x0);
    t["system.kind"] = system_entry(&RunConfig::system);
    t["system.second"] = system_entry(&RunConfig::second_system);
    t["system.epsilon"] = double_entry(&RunConfig::epsilon);
    t["system.k"] = double_entry(&RunConfig::k);
    t["system.delta1"] = double_entry(&RunConfig::delta1);
    t["system.j_max"] = optional_int_entry(&RunConfig::j_max);
    t["system.R"] = optional_int_entry(&RunConfig::moment_order);
    t["peetre.a"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          if (trim(v) == "auto") {
            c.a.reset();
          } else {
            c.a = parse_double(k, v);
          }
        },
        [](const RunConfig& c) { return opt_str(c.a); }};
    t["morrey.stride"] = optional_int_entry(&RunConfig::morrey_stride);
    t["morrey.K"] = optional_int_entry(&RunConfig::morrey_levels);
    t["probe.convolution.m"] = double_entry(&RunConfig::convolution_m);
    t["probe.convolution.cap"] = double_entry(&RunConfig::convolution_cap);
    t["probe.equivalence.cap"] = double_entry(&RunConfig::equivalence_cap);
    t["probe.xinorm.cap"] = double_entry(&RunConfig::xinorm_cap);
    t["probe.xinorm.x0"] = point_entry(&RunConfig::xinorm_x0);
    t["probe.xinorm.k_min"] = int_entry(&RunConfig::xinorm_k_min);
    t["probe.xinorm.k_max"] = int_entry(&RunConfig::xinorm_k_max);
    t["probe.hardy.delta"] = double_entry(&RunConfig::hardy_delta);
    t["probe.power_reindex.t"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.reindex_t = parse_list(k, v);
        },
        [](const RunConfig& c) {
          std::string out;
          for (double t : c.reindex_t) out += (out.empty() ? "" : ",") + fmt(t);
          return out;
        }};
    t["probe.growth_limit"] = double_entry(&RunConfig::growth_limit);
    t["probe.log_threshold"] = double_entry(&RunConfig::log_threshold);
    t["corpus.seed"] = int_entry(&RunConfig::seed);
    t["corpus.size"] = int_entry(&RunConfig::corpus_size);
    t["output.dir"] = {
        [](RunConfig& c, const std::string&, const std::string& v) {
          c.output_dir = v;
        },
        [](const RunConfig& c) { return c.output_dir; }};
    return t;
  }();
  return t;
}

}  // namespace

std::string system_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::smooth_step:
      return "smooth_step";
    case SystemKind::plain_bump:
      return "plain_bump";
    case SystemKind::gaussian_difference:
      return "gaussian_difference";
  }
  return "unknown";
}

void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value) {
  const auto it = table().find(trim(key));
  if (it == table().end()) throw ConfigError("unknown key '" + key + "'");
  it->second.set(config, it->first, trim(value));
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) +
                        ": expected key = value");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunConfig config = parse_config(buffer.str());
  validate(config);
  return config;
}

std::string dump_config(const RunConfig& config) {
  std::string out;
  for (const auto& [key, entry] : table()) {
    out += key + " = " + entry.get(config) + "\n";
  }
  return out;
}

Grid make_grid(const RunConfig& config) {
  try {
    return Grid(config.n, config.N, config.L);
  } catch (const InputError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

ExponentField make_exponent(const Grid& grid, const ExponentSpec& spec) {
  if (spec.descriptor.family != Family::table) {
    return ExponentField(grid, spec.descriptor);
  }
  if (spec.table_file.empty()) {
    throw ConfigError("table exponent needs a sample file");
  }
  const auto f = read_grid_function(spec.table_file, grid);
  std::vector<double> values;
  for (const auto& v : f.samples()) values.push_back(v.real());
  return ExponentField::from_samples(grid, std::move(values), spec.table_tail);
}

int resolved_j_max(const RunConfig& config, const Grid& grid) {
  return config.j_max.value_or(default_j_max(grid));
}

LevelSystem make_system(const RunConfig& config, const Grid& grid,
                        SystemKind kind) {
  const int J = resolved_j_max(config, grid);
  switch (kind) {
    case SystemKind::smooth_step:
      return build_admissible_pair(grid, J, PairProfile::smooth_step).levels;
    case SystemKind::plain_bump:
      return build_admissible_pair(grid, J, PairProfile::plain_bump).levels;
    case SystemKind::gaussian_difference:
      return gaussian_difference_system(grid, J);
  }
  throw ConfigError("unknown system kind");
}

WeightSequence make_weights(const RunConfig& config, const Grid& grid) {
  const int J = resolved_j_max(config, grid);
  if (config.weight_family == WeightSequence::Family::power) {
    return WeightSequence::power(grid, J, config.s);
  }
  return WeightSequence::two_microlocal(grid, J, config.s, config.s_prime,
                                        config.x0);
}

BallFamily make_family(const RunConfig& config, const Grid& grid) {
  if (!config.morrey_stride && !config.morrey_levels) {
    return BallFamily::standard(grid);
  }
  const auto standard = BallFamily::standard(grid);
  return BallFamily(grid, config.morrey_stride.value_or(standard.stride()),
                    config.morrey_levels.value_or(standard.max_level()));
}

SpaceParams make_space_params(const RunConfig& config, const Grid& grid) {
  SpaceParams params{make_exponent(grid, config.p),
                     make_exponent(grid, config.q),
                     make_exponent(grid, config.u),
                     make_weights(config, grid),
                     make_system(config, grid, config.system),
                     make_family(config, grid),
                     1.0,
                     config.moment_order};
  params.a = config.a.value_or(params.a_lower_bound() + 1.0);
  return params;
}

void validate(RunConfig& config) {
  config.warnings.clear();
  const Grid grid = [&] {
    try {
      return make_grid(config);
    } catch (const InputError& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }();
  int top = 0;
  try {
    top = default_j_max(grid);
  } catch (const ResolutionError& e) {
    throw ConfigError(std::string("grid too coarse: ") + e.what());
  }
  if (config.j_max && (*config.j_max < 1 || *config.j_max > top)) {
    throw ConfigError("system.j_max = " + std::to_string(*config.j_max) +
                      " violates the anti-aliasing bound 1 <= J_max <= " +
                      std::to_string(top));
  }
  if (!(config.epsilon > 0.0)) throw ConfigError("system.epsilon must be > 0");
  if (!(config.k > 1.0 && config.k <= 2.0)) {
    throw ConfigError("system.k must lie in (1, 2]");
  }
  if (!(config.delta1 >= 0.0 && config.delta1 < 1.0)) {
    throw ConfigError("system.delta1 must lie in [0, 1)");
  }
  const double d2 = delta2_for(config.k, config.delta1);
  if (!(d2 > config.delta1 && d2 <= 1.0)) {
    throw ConfigError("system.k and system.delta1 give delta2 = " + fmt(d2) +
                      " outside (delta1, 1]");
  }
  if (config.corpus_size < 1) throw ConfigError("corpus.size must be >= 1");
  for (double t : config.reindex_t) {
    if (!(t > 0.0)) throw ConfigError("probe.power_reindex.t must be > 0");
  }
  if (!(config.hardy_delta > 0.0)) {
    throw ConfigError("probe.hardy.delta must be > 0");
  }
  if (config.xinorm_k_min > config.xinorm_k_max) {
    throw ConfigError("probe.xinorm.k_min exceeds k_max");
  }

  SpaceParams params = [&] {
    try {
      return make_space_params(config, grid);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();
  try {
    params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (config.a && !params.a_hypothesis_holds()) {
    config.warnings.push_back("peetre.a = " + fmt(*config.a) +
                              " does not exceed the bound " +
                              fmt(params.a_lower_bound()));
  }
  try {
    auto partition = build_theta_partition(config.delta1, d2, grid,
                                           params.j_max());
    build_lambda_system(partition, params.system, config.epsilon);
  } catch (const std::exception& e) {
    config.warnings.push_back(std::string("lambda system: ") + e.what());
  }
}

}  // namespace tlm
