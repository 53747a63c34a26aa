#pragma once

// Plain-text run configuration:
//
//   # comment
//   [section]
//   key = value
//
// Keys are addressed as "section.key". Numbers are decimal literals; lists are
// comma separated. See README for the recognized keys.

#include <map>
#include <string>
#include <vector>

#include "gsqg/galerkin.hpp"

namespace gsqg {

inline constexpr const char* kToolVersion = "0.1.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& source = "<config>");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Line of the key's definition, or 0 when absent.
  int line_of(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Rejects keys outside the allowed set, naming key and line.
  void require_known(const std::vector<std::string>& allowed) const;

  const std::string& source() const { return source_; }

 private:
  struct Entry {
    std::string value;
    int line;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

/// Keys consumed by sim_config_from.
const std::vector<std::string>& sim_config_keys();

SimConfig sim_config_from(const ConfigFile& file);

/// [sim], [init] and [tensor] sections reproducing the config exactly.
std::string serialize_sim_config(const SimConfig& config);

struct RunManifest {
  SimConfig config;
  std::string tool_version = kToolVersion;
  std::string command;
  std::string created;      // UTC timestamp
  std::string input_path;
  std::string output_dir;
};

std::string serialize_manifest(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text, const std::string& source = "<manifest>");

bool same_config(const SimConfig& a, const SimConfig& b);

}  // namespace gsqg
