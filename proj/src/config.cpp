#include "gsqg/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gsqg/snapshot_io.hpp"

namespace gsqg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [p, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && p == t.data() + t.size();
}

const std::vector<std::string> kManifestKeys = {"manifest.tool_version", "manifest.command", "manifest.created",
                                                "manifest.input", "manifest.output_dir"};

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& source) {
  ConfigFile f;
  f.source_ = source;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3)
        throw ConfigError(source + ":" + std::to_string(line) + ": malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (f.entries_.count(full))
      throw ConfigError(source + ":" + std::to_string(line) + ": duplicate key '" + full + "' (first set on line " +
                        std::to_string(f.entries_[full].line) + ")");
    f.entries_[full] = {trim(s.substr(eq + 1)), line};
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void ConfigFile::fail(const std::string& key, const std::string& why) const {
  const auto it = entries_.find(key);
  const std::string where = it != entries_.end() ? source_ + ":" + std::to_string(it->second.line) : source_;
  throw ConfigError(where + ": key '" + key + "': " + why);
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  double v = 0.0;
  if (!parse_double(it->second.value, v)) fail(key, "expected a decimal number, got '" + it->second.value + "'");
  return v;
}

long long ConfigFile::get_int(const std::string& key, long long fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string t = trim(it->second.value);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    fail(key, "expected an integer, got '" + it->second.value + "'");
  return v;
}

std::vector<double> ConfigFile::get_list(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  std::vector<double> out;
  std::istringstream in(it->second.value);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (trim(item).empty()) continue;
    double v = 0.0;
    if (!parse_double(item, v)) fail(key, "list item '" + trim(item) + "' is not a number");
    out.push_back(v);
  }
  return out;
}

int ConfigFile::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void ConfigFile::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, entry] : entries_)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(source_ + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'");
}

const std::vector<std::string>& sim_config_keys() {
  static const std::vector<std::string> keys = {
      "sim.alpha",     "sim.epsilon", "sim.m",       "sim.padding",   "sim.dt",    "sim.T",
      "sim.stride",    "init.kind",   "init.mode_j", "init.mode_k",   "init.decay", "init.seed",
      "init.file",     "tensor.mode"};
  return keys;
}

SimConfig sim_config_from(const ConfigFile& file) {
  SimConfig c;
  auto non_negative = [&](const std::string& key, long long fallback) {
    const long long v = file.get_int(key, fallback);
    if (v < 0) throw ConfigError(file.source() + ": key '" + key + "': must be >= 0");
    return v;
  };
  c.alpha = file.get_double("sim.alpha", c.alpha);
  c.epsilon = file.get_double("sim.epsilon", c.epsilon);
  c.m = static_cast<std::size_t>(non_negative("sim.m", static_cast<long long>(c.m)));
  c.padding = static_cast<std::size_t>(non_negative("sim.padding", static_cast<long long>(c.padding)));
  c.dt = file.get_double("sim.dt", c.dt);
  c.t_final = file.get_double("sim.T", c.t_final);
  c.stride = static_cast<std::size_t>(non_negative("sim.stride", static_cast<long long>(c.stride)));
  c.initial = file.get_string("init.kind", c.initial);
  c.mode_j = static_cast<int>(file.get_int("init.mode_j", c.mode_j));
  c.mode_k = static_cast<int>(file.get_int("init.mode_k", c.mode_k));
  c.decay = file.get_double("init.decay", c.decay);
  c.seed = static_cast<std::uint64_t>(non_negative("init.seed", static_cast<long long>(c.seed)));
  c.init_file = file.get_string("init.file", c.init_file);
  try {
    c.assembly = parse_assembly_mode(file.get_string("tensor.mode", to_string(c.assembly)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(file.source() + ": key 'tensor.mode': " + e.what());
  }
  return c;
}

std::string serialize_sim_config(const SimConfig& c) {
  std::ostringstream s;
  s << "[sim]\n"
    << "alpha = " << format_double(c.alpha) << "\n"
    << "epsilon = " << format_double(c.epsilon) << "\n"
    << "m = " << c.m << "\n"
    << "padding = " << c.padding << "\n"
    << "dt = " << format_double(c.dt) << "\n"
    << "T = " << format_double(c.t_final) << "\n"
    << "stride = " << c.stride << "\n\n"
    << "[init]\n"
    << "kind = " << c.initial << "\n"
    << "mode_j = " << c.mode_j << "\n"
    << "mode_k = " << c.mode_k << "\n"
    << "decay = " << format_double(c.decay) << "\n"
    << "seed = " << c.seed << "\n";
  if (!c.init_file.empty()) s << "file = " << c.init_file << "\n";
  s << "\n[tensor]\n"
    << "mode = " << to_string(c.assembly) << "\n";
  return s.str();
}

std::string serialize_manifest(const RunManifest& m) {
  std::ostringstream s;
  s << "[manifest]\n"
    << "tool_version = " << m.tool_version << "\n"
    << "command = " << m.command << "\n"
    << "created = " << m.created << "\n"
    << "input = " << m.input_path << "\n"
    << "output_dir = " << m.output_dir << "\n\n"
    << serialize_sim_config(m.config);
  return s.str();
}

RunManifest parse_manifest(const std::string& text, const std::string& source) {
  const ConfigFile f = ConfigFile::parse(text, source);
  std::vector<std::string> allowed = sim_config_keys();
  allowed.insert(allowed.end(), kManifestKeys.begin(), kManifestKeys.end());
  f.require_known(allowed);
  RunManifest m;
  m.config = sim_config_from(f);
  m.tool_version = f.get_string("manifest.tool_version", "");
  m.command = f.get_string("manifest.command", "");
  m.created = f.get_string("manifest.created", "");
  m.input_path = f.get_string("manifest.input", "");
  m.output_dir = f.get_string("manifest.output_dir", "");
  return m;
}

bool same_config(const SimConfig& a, const SimConfig& b) {
  return a.alpha == b.alpha && a.epsilon == b.epsilon && a.m == b.m && a.padding == b.padding && a.dt == b.dt &&
         a.t_final == b.t_final && a.stride == b.stride && a.initial == b.initial && a.mode_j == b.mode_j &&
         a.mode_k == b.mode_k && a.decay == b.decay && a.seed == b.seed && a.init_file == b.init_file &&
         a.assembly == b.assembly;
}

}  // namespace gsqg
