#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsqg/config.hpp"
#include "gsqg/experiments.hpp"
#include "gsqg/fractional.hpp"
#include "gsqg/snapshot_io.hpp"
#include "gsqg/verify.hpp"

namespace py = pybind11;
using namespace gsqg;

namespace {

SpectralField field(const Eigen::VectorXd& coeffs) {
  if (coeffs.size() == 0) throw std::invalid_argument("coefficient vector is empty");
  return SpectralField(build_leading_basis(static_cast<std::size_t>(coeffs.size())), coeffs);
}

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows) {
  if (rows.empty()) return {};
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

py::dict trajectory_dict(const Trajectory& t) {
  std::vector<double> dt, l2, h1, hdot, high, er, hr;
  for (const auto& d : t.diagnostics) {
    dt.push_back(d.t);
    l2.push_back(d.l2_theta);
    h1.push_back(d.h1_theta);
    hdot.push_back(d.hdot_psi);
    high.push_back(d.psi_high);
    er.push_back(d.energy_residual);
    hr.push_back(d.hamiltonian_residual);
  }
  py::dict diag;
  diag["t"] = dt;
  diag["l2_theta"] = l2;
  diag["h1_theta"] = h1;
  diag["hdot_psi"] = hdot;
  diag["psi_high"] = high;
  diag["energy_residual"] = er;
  diag["hamiltonian_residual"] = hr;
  py::dict out;
  out["times"] = t.times;
  out["snapshots"] = stack(t.snapshots);
  out["diagnostics"] = diag;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral Galerkin solver and checks for the generalized SQG equation";
  m.attr("__version__") = kToolVersion;

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &SimConfig::alpha)
      .def_readwrite("epsilon", &SimConfig::epsilon)
      .def_readwrite("m", &SimConfig::m)
      .def_readwrite("padding", &SimConfig::padding)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("T", &SimConfig::t_final)
      .def_readwrite("stride", &SimConfig::stride)
      .def_readwrite("initial", &SimConfig::initial)
      .def_readwrite("mode_j", &SimConfig::mode_j)
      .def_readwrite("mode_k", &SimConfig::mode_k)
      .def_readwrite("decay", &SimConfig::decay)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("init_file", &SimConfig::init_file)
      .def("validate", &SimConfig::validate)
      .def("steps", &SimConfig::steps)
      .def("__repr__", [](const SimConfig& c) { return serialize_sim_config(c); });

  m.def("load_config", [](const std::string& path) { return sim_config_from(ConfigFile::load(path)); },
        py::arg("path"));

  m.def(
      "modes",
      [](std::size_t n) {
        const auto b = build_leading_basis(n);
        std::vector<std::pair<int, int>> out;
        for (std::size_t i = 0; i < b->size(); ++i) out.emplace_back(b->mode(i).j, b->mode(i).k);
        return out;
      },
      py::arg("m"), "(j, k) of the first m eigenmodes in basis order.");
  m.def(
      "eigenvalues", [](std::size_t n) { return Eigen::VectorXd(build_leading_basis(n)->eigenvalues()); },
      py::arg("m"));
  m.def(
      "evaluate",
      [](const Eigen::VectorXd& c, double x, double y) { return evaluate(field(c), x, y); }, py::arg("coeffs"),
      py::arg("x"), py::arg("y"));

  m.def(
      "lambda_power", [](const Eigen::VectorXd& c, double s) { return apply_lambda_power(field(c), s).coeffs(); },
      py::arg("coeffs"), py::arg("s"));
  m.def(
      "heat", [](const Eigen::VectorXd& c, double t) { return heat_semigroup(field(c), t).coeffs(); },
      py::arg("coeffs"), py::arg("t"));
  m.def(
      "lambda_neg_power_heat",
      [](const Eigen::VectorXd& c, double s, int nodes) {
        const SpectralField f = field(c);
        return lambda_neg_power_heat(f, s, HeatQuadRule::default_for(f.basis(), nodes)).coeffs();
      },
      py::arg("coeffs"), py::arg("s"), py::arg("nodes") = HeatQuadRule::kDefaultNodes);
  m.def(
      "lambda_pos_power_heat",
      [](const Eigen::VectorXd& c, double s, int nodes) {
        const SpectralField f = field(c);
        return lambda_pos_power_heat(f, s, HeatQuadRule::default_for(f.basis(), nodes)).coeffs();
      },
      py::arg("coeffs"), py::arg("s"), py::arg("nodes") = HeatQuadRule::kDefaultNodes);

  m.def(
      "tensor",
      [](std::size_t n, double alpha, const std::string& mode) {
        const GalerkinTensor t = assemble_tensor(build_leading_basis(n), n, alpha, parse_assembly_mode(mode));
        std::vector<int> j, k, l;
        std::vector<double> v;
        for (std::size_t li = 0; li < t.m(); ++li)
          for (const auto& e : t.row(li)) {
            j.push_back(e.j);
            k.push_back(e.k);
            l.push_back(static_cast<int>(li));
            v.push_back(e.value);
          }
        py::dict out;
        out["j"] = j;
        out["k"] = k;
        out["l"] = l;
        out["value"] = v;
        out["antisymmetry_defect"] = t.antisymmetry_defect().value;
        out["diagonal_defect"] = t.diagonal_defect().value;
        return out;
      },
      py::arg("m"), py::arg("alpha"), py::arg("mode") = "analytic");

  m.def("simulate", [](const SimConfig& c) { return trajectory_dict(run(c)); }, py::arg("config"),
        "Runs the Galerkin system and returns times, snapshots (rows) and per-step diagnostics.");
  m.def(
      "weak_residual",
      [](const SimConfig& c, const std::string& test_function, std::size_t padding) {
        const WeakResidual r = weak_residual(run(c), SpaceTimeTest{make_test_function(test_function), c.t_final},
                                             padding);
        py::dict out;
        out["residual"] = r.residual;
        out["time_term"] = r.time_term;
        out["nonlinear_term"] = r.nonlinear_term;
        out["viscous_term"] = r.viscous_term;
        out["representation_defect"] = r.representation_defect;
        return out;
      },
      py::arg("config"), py::arg("test_function") = "tilted", py::arg("padding") = kResidualPadding);
  m.def("test_functions", &test_function_names);

  m.def(
      "read_snapshots",
      [](const std::string& path) {
        const auto recs = read_snapshots(path);
        std::vector<double> t;
        std::vector<Eigen::VectorXd> rows;
        for (const auto& r : recs) {
          t.push_back(r.t);
          rows.push_back(r.coeffs);
        }
        py::dict out;
        out["times"] = t;
        out["snapshots"] = stack(rows);
        out["alpha"] = recs.front().alpha;
        out["epsilon"] = recs.front().epsilon;
        return out;
      },
      py::arg("path"));

  m.def(
      "verify",
      [](const std::string& level, std::uint64_t seed) {
        VerifyOptions opt;
        opt.level = parse_verify_level(level);
        opt.seed = seed;
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_verify(opt, nullptr);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["check"] = r.suite + "." + r.name;
          d["pass"] = r.pass;
          d["observed"] = r.observed;
          d["tolerance"] = r.tolerance;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("level") = "quick", py::arg("seed") = 1);
}
