#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gsqg/commands.hpp"
#include "gsqg/snapshot_io.hpp"

using namespace gsqg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("gsqg_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kMinimal =
    "[sim]\n"
    "alpha = 0.5\n"
    "m = 8\n"
    "dt = 0.01\n"
    "T = 0.1\n"
    "stride = 2\n"
    "[init]\n"
    "kind = random\n"
    "seed = 3\n";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("config parsing errors carry the line") {
    CHECK_THROWS_WITH(ConfigFile::parse("[sim]\nalpha 0.5\n", "c.txt"), doctest::Contains("c.txt:2"));
    CHECK_THROWS_WITH(ConfigFile::parse("[sim\n", "c.txt"), doctest::Contains("c.txt:1"));
    CHECK_THROWS_WITH(ConfigFile::parse("[sim]\nm = 4\nm = 5\n", "c.txt"), doctest::Contains("duplicate key 'sim.m'"));
    const ConfigFile f = ConfigFile::parse("[sim]\n# note\nalpha = x\nbogus = 1\n", "c.txt");
    CHECK_THROWS_WITH(f.get_double("sim.alpha", 0.0), doctest::Contains("c.txt:3"));
    CHECK_THROWS_WITH(f.require_known(sim_config_keys()), doctest::Contains("c.txt:4: unknown key 'sim.bogus'"));
    CHECK(f.line_of("sim.bogus") == 4);
    CHECK(f.line_of("sim.m") == 0);
    const ConfigFile l = ConfigFile::parse("v = 1, 2.5 ,3\n");
    CHECK(l.get_list("v") == std::vector<double>{1.0, 2.5, 3.0});
  }

  TEST_CASE("load_sim_config names key and line") {
    TempDir dir;
    write(dir / "bad.txt", "[sim]\nm = 8\ndt = 0\n");
    CHECK_THROWS_WITH(load_sim_config(dir / "bad.txt"), doctest::Contains("bad.txt:3: invalid config key 'sim.dt'"));
    write(dir / "unknown.txt", "[sim]\nm = 8\n[init]\nshape = x\n");
    CHECK_THROWS_WITH(load_sim_config(dir / "unknown.txt"), doctest::Contains("unknown key 'init.shape'"));
    write(dir / "ok.txt", kMinimal);
    const SimConfig c = load_sim_config(dir / "ok.txt", 9);
    CHECK(c.seed == 9);
    CHECK(c.m == 8);
    CHECK(c.initial == "random");
  }

  TEST_CASE("config and manifest round trip") {
    SimConfig c;
    c.alpha = 0.3;
    c.epsilon = 1.0 / 3.0;
    c.m = 24;
    c.initial = "random";
    c.decay = 0.75;
    c.seed = 12345678901ULL;
    c.assembly = AssemblyMode::Quadrature;
    CHECK(same_config(sim_config_from(ConfigFile::parse(serialize_sim_config(c))), c));
    RunManifest m;
    m.config = c;
    m.command = "simulate";
    m.created = "2026-01-01T00:00:00Z";
    m.input_path = "cfg.txt";
    m.output_dir = "out";
    const RunManifest back = parse_manifest(serialize_manifest(m));
    CHECK(same_config(back.config, c));
    CHECK(back.command == "simulate");
    CHECK(back.tool_version == kToolVersion);
    CHECK(back.output_dir == "out");
  }

  TEST_CASE("snapshot files") {
    TempDir dir;
    std::vector<SnapshotRecord> recs(2);
    recs[0] = {0.5, 0.1, 0.0, Eigen::VectorXd::LinSpaced(5, -1.0, 1.0)};
    recs[1] = {0.5, 0.1, 0.25, Eigen::VectorXd::Constant(5, 1.0 / 3.0)};
    write_snapshots(dir / "s.bin", recs);
    const auto back = read_snapshots(dir / "s.bin");
    REQUIRE(back.size() == 2);
    CHECK(back[1].t == 0.25);
    CHECK((back[1].coeffs - recs[1].coeffs).norm() == 0.0);
    CHECK(back[0].alpha == 0.5);

    std::string bytes = slurp(dir / "s.bin");
    write(dir / "trunc.bin", bytes.substr(0, bytes.size() - 4));
    CHECK_THROWS_WITH(read_snapshots(dir / "trunc.bin"), doctest::Contains("truncated"));
    bytes[0] = 'X';
    write(dir / "magic.bin", bytes);
    CHECK_THROWS_WITH(read_snapshots(dir / "magic.bin"), doctest::Contains("bad magic"));
    CHECK_THROWS(read_snapshots(dir / "missing.bin"));
  }

  TEST_CASE("doubles round trip through text") {
    for (double x : {1.0 / 3.0, -2.718281828459045e-300, 6.02214076e23, 0.1})
      CHECK(std::stod(format_double(x)) == x);
  }

  TEST_CASE("simulate writes reproducible output") {
    TempDir dir;
    write(dir / "cfg.txt", kMinimal);
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(dir / "cfg.txt", dir / "a", std::nullopt, out, err) == 0);
    CHECK(fs::exists(dir / "a/snapshots.bin"));
    CHECK(fs::exists(dir / "a/diagnostics.csv"));
    CHECK(fs::exists(dir / "a/manifest.txt"));
    CHECK(read_snapshots(dir / "a/snapshots.bin").size() == 6);
    CHECK(err.str().empty());

    REQUIRE(cmd_simulate(dir / "cfg.txt", dir / "b", std::nullopt, out, err) == 0);
    CHECK(slurp(dir / "a/snapshots.bin") == slurp(dir / "b/snapshots.bin"));
    CHECK(slurp(dir / "a/diagnostics.csv") == slurp(dir / "b/diagnostics.csv"));

    // Re-running from the manifest reproduces the snapshots bit for bit.
    REQUIRE(cmd_simulate(dir / "a/manifest.txt", dir / "c", std::nullopt, out, err) == 0);
    CHECK(slurp(dir / "a/snapshots.bin") == slurp(dir / "c/snapshots.bin"));

    REQUIRE(cmd_simulate(dir / "cfg.txt", dir / "d", 4, out, err) == 0);
    CHECK(slurp(dir / "a/snapshots.bin") != slurp(dir / "d/snapshots.bin"));
  }

  TEST_CASE("simulate notes alpha outside (0,1) and reports errors") {
    TempDir dir;
    write(dir / "cfg.txt", "[sim]\nalpha = 1.5\nm = 4\ndt = 0.01\nT = 0.02\n");
    std::ostringstream out, err;
    CHECK(cmd_simulate(dir / "cfg.txt", dir / "o", std::nullopt, out, err) == 0);
    CHECK(err.str().find("alpha") != std::string::npos);

    write(dir / "bad.txt", "[sim]\nT = -1\n");
    std::ostringstream err2;
    CHECK(cmd_simulate(dir / "bad.txt", dir / "o2", std::nullopt, out, err2) == 2);
    CHECK(err2.str().find("sim.T") != std::string::npos);

    write(dir / "blow.txt", "[sim]\nm = 64\nepsilon = 1\ndt = 1\nT = 50\n[init]\nkind = random\n");
    std::ostringstream err3;
    CHECK(cmd_simulate(dir / "blow.txt", dir / "o3", std::nullopt, out, err3) == 3);
  }

  TEST_CASE("operators on snapshot files") {
    TempDir dir;
    const auto basis = build_leading_basis(6);
    write_snapshots(dir / "w1.bin", {{0.5, 0.0, 0.0, SpectralField::unit(basis, 0).coeffs()}});
    std::ostringstream out, err;

    REQUIRE(cmd_op("lambda_pow", dir / "w1.bin", dir / "p.bin", {"s=1"}, out, err) == 0);
    CHECK(read_snapshots(dir / "p.bin")[0].coeffs[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    REQUIRE(cmd_op("heat", dir / "w1.bin", dir / "h.bin", {"t=1"}, out, err) == 0);
    CHECK(read_snapshots(dir / "h.bin")[0].coeffs[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

    REQUIRE(cmd_op("comm_neg_mult", dir / "w1.bin", dir / "c.bin", {"s=0.5", "a=constant"}, out, err) == 0);
    CHECK(read_snapshots(dir / "c.bin")[0].coeffs.cwiseAbs().maxCoeff() < 1e-13);

    std::ostringstream e1;
    CHECK(cmd_op("nope", dir / "w1.bin", dir / "x.bin", {}, out, e1) != 0);
    for (const auto& name : operator_names()) CHECK(e1.str().find(name) != std::string::npos);

    std::ostringstream e2;
    CHECK(cmd_op("heat", dir / "w1.bin", dir / "x.bin", {"s=1"}, out, e2) != 0);
    CHECK(e2.str().find("'s'") != std::string::npos);
    CHECK_THROWS(parse_params({"novalue"}));
  }

  TEST_CASE("sweep and verify report bad input") {
    TempDir dir;
    write(dir / "cfg.txt", kMinimal);
    std::ostringstream out, err;
    CHECK(cmd_sweep("modes", dir / "cfg.txt", {}, dir / "s", std::nullopt, out, err) == 2);
    CHECK(err.str().find("non-empty") != std::string::npos);
    CHECK(cmd_sweep("sideways", dir / "cfg.txt", {1}, dir / "s", std::nullopt, out, err) == 2);

    REQUIRE(cmd_sweep("modes", dir / "cfg.txt", {4, 8}, dir / "s", std::nullopt, out, err) == 0);
    CHECK(fs::exists(dir / "s/sweep.csv"));
    CHECK(fs::exists(dir / "s/manifest.txt"));

    // A tensor file with one corrupted entry fails verification and names that entry.
    const GalerkinTensor t = assemble_tensor(build_leading_basis(10), 10, 0.5, AssemblyMode::Analytic);
    t.save_csv(dir / "t.csv");
    const GalerkinTensor::Entry e = t.row(3).front();
    std::string text = slurp(dir / "t.csv");
    const std::string row = std::to_string(e.j) + "," + std::to_string(e.k) + ",3,";
    const auto pos = text.find("\n" + row);
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos + 1);
    text.replace(pos + 1, end - pos - 1, row + "7.5");
    write(dir / "t.csv", text);
    VerifyOptions opt;
    opt.tensor_file = dir / "t.csv";
    std::ostringstream vout, verr;
    CHECK(cmd_verify(opt, vout, verr) == 1);
    CHECK(vout.str().find("FAIL") != std::string::npos);
    const std::string a = "(" + std::to_string(e.j) + "," + std::to_string(e.k) + ",3)";
    const std::string b = "(" + std::to_string(e.j) + ",3," + std::to_string(e.k) + ")";
    CHECK((vout.str().find(a) != std::string::npos || vout.str().find(b) != std::string::npos));
  }
}
