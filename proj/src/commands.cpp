#include "gsqg/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "gsqg/commutators.hpp"
#include "gsqg/experiments.hpp"
#include "gsqg/fractional.hpp"
#include "gsqg/snapshot_io.hpp"

namespace gsqg {

namespace fs = std::filesystem;

namespace {

// SimConfig::validate names fields; map them to file keys.
const std::map<std::string, std::string> kFieldKeys = {
    {"alpha", "sim.alpha"},   {"epsilon", "sim.epsilon"}, {"m", "sim.m"},
    {"padding", "sim.padding"}, {"dt", "sim.dt"},         {"T", "sim.T"},
    {"stride", "sim.stride"}, {"initial", "init.kind"},   {"init_file", "init.file"},
    {"mode_j", "init.mode_j"}, {"mode_k", "init.mode_k"}, {"decay", "init.decay"},
    {"seed", "init.seed"}};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".gsqg_write_probe";
  {
    std::ofstream p(probe);
    if (!p) throw std::runtime_error("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::string path_in(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

void note_regime(const SimConfig& c, std::ostream& err) {
  if (c.outside_weak_regime())
    err << "note: alpha = " << c.alpha
        << " lies outside (0, 1), the range where the weak-solution theory applies; running anyway\n";
}

double param_double(const std::map<std::string, std::string>& p, const std::string& key,
                    std::optional<double> fallback = std::nullopt) {
  const auto it = p.find(key);
  if (it == p.end()) {
    if (fallback) return *fallback;
    throw std::invalid_argument("missing parameter '" + key + "'");
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || !std::isfinite(v))
    throw std::invalid_argument("parameter '" + key + "' is not a number: '" + it->second + "'");
  return v;
}

std::size_t param_count(const std::map<std::string, std::string>& p, const std::string& key,
                        std::optional<std::size_t> fallback = std::nullopt) {
  const double v = param_double(p, key, fallback ? std::optional<double>(static_cast<double>(*fallback)) : std::nullopt);
  if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument("parameter '" + key + "' must be a positive integer");
  return static_cast<std::size_t>(v);
}

struct OpSpec {
  std::vector<std::string> params;
  std::function<SpectralField(const SpectralField&, const std::map<std::string, std::string>&)> apply;
};

Multiplier op_multiplier(const std::map<std::string, std::string>& p) {
  const auto it = p.find("a");
  if (it == p.end()) throw std::invalid_argument("missing parameter 'a' (one of: constant, linear_x, bump, wave)");
  return make_multiplier(it->second, param_double(p, "value", 1.0));
}

PaddedSpace op_space(const SpectralField& f, const std::map<std::string, std::string>& p) {
  return PaddedSpace::with_factor(f.size(), param_count(p, "padding", 4));
}

const std::map<std::string, OpSpec>& operators() {
  static const std::map<std::string, OpSpec> ops = {
      {"lambda_pow", {{"s"}, [](const SpectralField& f, const auto& p) { return apply_lambda_power(f, param_double(p, "s")); }}},
      {"heat", {{"t"}, [](const SpectralField& f, const auto& p) { return heat_semigroup(f, param_double(p, "t")); }}},
      {"lambda_neg_heat",
       {{"s", "nodes"},
        [](const SpectralField& f, const auto& p) {
          const auto rule = HeatQuadRule::default_for(
              f.basis(), static_cast<int>(param_count(p, "nodes", HeatQuadRule::kDefaultNodes)));
          return lambda_neg_power_heat(f, param_double(p, "s"), rule);
        }}},
      {"lambda_pos_heat",
       {{"s", "nodes"},
        [](const SpectralField& f, const auto& p) {
          const auto rule = HeatQuadRule::default_for(
              f.basis(), static_cast<int>(param_count(p, "nodes", HeatQuadRule::kDefaultNodes)));
          return lambda_pos_power_heat(f, param_double(p, "s"), rule);
        }}},
      {"project", {{"m"}, [](const SpectralField& f, const auto& p) { return project(f, param_count(p, "m")); }}},
      {"comm_neg_mult",
       {{"s", "a", "value", "padding"},
        [](const SpectralField& f, const auto& p) {
          const PaddedSpace space = op_space(f, p);
          return comm_neg_lambda_mult(op_multiplier(p), rebase(f, space.padded), param_double(p, "s"), space);
        }}},
      {"comm_mult",
       {{"s", "a", "value", "padding"},
        [](const SpectralField& f, const auto& p) {
          const PaddedSpace space = op_space(f, p);
          return comm_lambda_mult(op_multiplier(p), rebase(f, space.padded), param_double(p, "s"), space);
        }}},
  };
  return ops;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, std::string> out;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameter '" + p + "' is not key=value");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

SimConfig load_sim_config(const std::string& path, std::optional<std::uint64_t> seed) {
  const std::string text = read_text(path);
  const ConfigFile file = ConfigFile::parse(text, path);
  SimConfig c;
  if (file.has("manifest.tool_version")) {
    c = parse_manifest(text, path).config;
  } else {
    file.require_known(sim_config_keys());
    c = sim_config_from(file);
  }
  if (seed) c.seed = *seed;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    const auto a = msg.find('\''), b = a == std::string::npos ? a : msg.find('\'', a + 1);
    if (b != std::string::npos) {
      const auto it = kFieldKeys.find(msg.substr(a + 1, b - a - 1));
      if (it != kFieldKeys.end()) {
        msg = "invalid config key '" + it->second + "'" + msg.substr(b + 1);
        if (const int line = file.line_of(it->second)) msg = path + ":" + std::to_string(line) + ": " + msg;
      }
    }
    throw ConfigError(msg);
  }
  return c;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
                 std::ostream& out, std::ostream& err) {
  try {
    const SimConfig c = load_sim_config(config_path, seed);
    note_regime(c, err);
    prepare_dir(out_dir);
    const Trajectory traj = run(c);
    write_snapshots(path_in(out_dir, "snapshots.bin"), trajectory_records(traj));
    write_diagnostics_csv(path_in(out_dir, "diagnostics.csv"), traj.diagnostics);
    RunManifest m;
    m.config = c;
    m.command = "simulate";
    m.created = utc_timestamp();
    m.input_path = config_path;
    m.output_dir = out_dir;
    write_text_file(path_in(out_dir, "manifest.txt"), serialize_manifest(m));
    const Diagnostics& last = traj.diagnostics.back();
    out << "simulated m = " << c.m << ", " << c.steps() << " steps to T = " << c.t_final << "; ||theta(T)|| = "
        << format_double(last.l2_theta) << "; wrote " << traj.snapshots.size() << " snapshots to " << out_dir << "\n";
    return 0;
  } catch (const BlowUpError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto results = run_verify(options, &err);
    out << "verify " << to_string(options.level) << "\n";
    print_verify_table(out, results);
    return all_passed(results) ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const std::string& kind, const std::string& config_path, const std::vector<double>& values,
              const std::string& out_dir, std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  try {
    if (kind != "modes" && kind != "viscosity")
      throw std::invalid_argument("unknown sweep kind '" + kind + "' (expected modes or viscosity)");
    if (values.empty()) throw std::invalid_argument("sweep needs a non-empty value list");
    const SimConfig c = load_sim_config(config_path, seed);
    note_regime(c, err);
    prepare_dir(out_dir);
    SweepReport report;
    if (kind == "modes") {
      std::vector<std::size_t> ms;
      for (double v : values) {
        if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument("mode sweep values must be positive integers");
        ms.push_back(static_cast<std::size_t>(v));
      }
      report = mode_sweep(c, ms);
    } else {
      report = viscosity_sweep(c, values);
    }
    report.write_csv(path_in(out_dir, "sweep.csv"));
    RunManifest m;
    m.config = c;
    m.command = "sweep " + kind;
    for (std::size_t i = 0; i < values.size(); ++i) m.command += (i ? "," : " ") + format_double(values[i]);
    m.created = utc_timestamp();
    m.input_path = config_path;
    m.output_dir = out_dir;
    write_text_file(path_in(out_dir, "manifest.txt"), serialize_manifest(m));
    out << report.parameter;
    for (const auto& col : report.columns) out << ' ' << col;
    out << '\n';
    for (std::size_t i = 0; i < report.values.size(); ++i) {
      out << report.values[i];
      for (double v : report.rows[i]) out << ' ' << v;
      out << '\n';
    }
    for (const auto& [k, v] : report.fits) out << k << " = " << v << '\n';
    return 0;
  } catch (const BlowUpError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : operators()) n.push_back(k);
    return n;
  }();
  return names;
}

int cmd_op(const std::string& name, const std::string& input, const std::string& output,
           const std::vector<std::string>& params, std::ostream& out, std::ostream& err) {
  try {
    const auto it = operators().find(name);
    if (it == operators().end())
      throw std::invalid_argument("unknown operator '" + name + "'; available: " + join(operator_names()));
    const auto p = parse_params(params);
    for (const auto& [k, v] : p)
      if (std::find(it->second.params.begin(), it->second.params.end(), k) == it->second.params.end())
        throw std::invalid_argument("operator '" + name + "' does not take '" + k +
                                    "'; parameters: " + join(it->second.params));
    std::vector<SnapshotRecord> records = read_snapshots(input);
    for (auto& rec : records) {
      const SpectralField f(build_leading_basis(static_cast<std::size_t>(rec.coeffs.size())), rec.coeffs);
      rec.coeffs = it->second.apply(f, p).coeffs();
    }
    write_snapshots(output, records);
    out << "applied " << name << " to " << records.size() << " record(s); wrote " << output << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gsqg
