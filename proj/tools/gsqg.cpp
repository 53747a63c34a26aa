// gsqg: simulate, verify, sweep and operator access for the spectral gSQG code.
// GSQG_THREADS caps the number of worker threads.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsqg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin gSQG simulator and verification suite"};
  app.set_version_flag("--version", gsqg::kToolVersion);
  app.require_subcommand(1);

  std::string config, out_dir = "out", level = "quick", tensor, kind, values, op_name, op_in, op_out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> op_params;

  auto* sim = app.add_subcommand("simulate", "Run a Galerkin trajectory from a config or manifest");
  sim->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "Output directory")->capture_default_str();
  sim->add_option("--seed", seed, "Override init.seed");

  auto* ver = app.add_subcommand("verify", "Run the property suites");
  ver->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  ver->add_option("--tensor", tensor, "Check this tensor CSV instead of the assembled one")->check(CLI::ExistingFile);
  ver->add_option("--seed", seed, "Seed for random probe fields");

  auto* swp = app.add_subcommand("sweep", "Mode or viscosity sweep");
  swp->add_option("kind", kind, "modes or viscosity")->required();
  swp->add_option("--config", config, "Template config file")->required()->check(CLI::ExistingFile);
  swp->add_option("--values", values, "Comma-separated m or epsilon values")->required();
  swp->add_option("--out", out_dir, "Output directory")->capture_default_str();
  swp->add_option("--seed", seed, "Override init.seed");

  auto* op = app.add_subcommand("op", "Apply an operator to a snapshot file");
  op->add_option("name", op_name, "Operator name")->required();
  op->add_option("params", op_params, "key=value parameters");
  op->add_option("--in", op_in, "Input snapshot file")->required()->check(CLI::ExistingFile);
  op->add_option("--out", op_out, "Output snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*sim) return gsqg::cmd_simulate(config, out_dir, seed, std::cout, std::cerr);
  if (*ver) {
    gsqg::VerifyOptions options;
    options.level = gsqg::parse_verify_level(level);
    if (!tensor.empty()) options.tensor_file = tensor;
    if (seed) options.seed = *seed;
    return gsqg::cmd_verify(options, std::cout, std::cerr);
  }
  if (*swp) {
    std::vector<double> list;
    try {
      if (values.find_first_not_of(" ,\t") != std::string::npos) {
        gsqg::ConfigFile f = gsqg::ConfigFile::parse("[sweep]\nvalues = " + values + "\n", "--values");
        list = f.get_list("sweep.values");
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return gsqg::cmd_sweep(kind, config, list, out_dir, seed, std::cout, std::cerr);
  }
  return gsqg::cmd_op(op_name, op_in, op_out, op_params, std::cout, std::cerr);
}
