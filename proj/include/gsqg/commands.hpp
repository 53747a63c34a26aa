#pragma once

// Subcommands of the gsqg tool. Each returns a process exit code and reports
// errors on `err`; results are files under the output directory.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsqg/config.hpp"
#include "gsqg/verify.hpp"

namespace gsqg {

/// Loads a run config or a manifest written by simulate, applies the seed
/// override and validates. Validation errors name the config key and, when
/// the key is present in the file, its line.
SimConfig load_sim_config(const std::string& path, std::optional<std::uint64_t> seed = std::nullopt);

/// snapshots.bin, diagnostics.csv and manifest.txt under out_dir.
int cmd_simulate(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
                 std::ostream& out, std::ostream& err);

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// kind is "modes" (values are m) or "viscosity" (values are epsilon).
/// Writes sweep.csv and manifest.txt under out_dir.
int cmd_sweep(const std::string& kind, const std::string& config_path, const std::vector<double>& values,
              const std::string& out_dir, std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err);

/// Operator names accepted by cmd_op.
const std::vector<std::string>& operator_names();

/// Applies the named operator to every record of a snapshot file. Params are
/// key=value strings, e.g. {"s=0.5"}.
int cmd_op(const std::string& name, const std::string& input, const std::string& output,
           const std::vector<std::string>& params, std::ostream& out, std::ostream& err);

/// "key=value" pairs; throws on a missing '='.
std::map<std::string, std::string> parse_params(const std::vector<std::string>& params);

/// Current UTC time as an ISO 8601 string.
std::string utc_timestamp();

}  // namespace gsqg
