#include "gsqg/experiments.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "gsqg/fractional.hpp"
#include "gsqg/parallel.hpp"
#include "gsqg/snapshot_io.hpp"

namespace gsqg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxResidualStride = 10;

// Trapezoid rule over possibly non-uniform nodes.
double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

std::string nu_column(double nu) { return nu == 1.0 ? "diff_nu1" : "diff_nu" + format_double(nu); }

double negative_norm_difference(const SpectralField& coarse, const SpectralField& fine, double nu) {
  return sobolev_norm(fine - rebase(coarse, fine.basis_ptr()), -nu);
}

void require_matched(const Trajectory& a, const Trajectory& b) {
  if (!a.basis->same_as(*b.basis)) throw std::invalid_argument("trajectories live on different bases");
  if (a.times != b.times) throw std::invalid_argument("trajectories are not sampled at identical times");
}

}  // namespace

double SpaceTimeTest::chi(double t) const {
  const double s = 2.0 * t / t_final - 1.0;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double SpaceTimeTest::dchi(double t) const {
  const double s = 2.0 * t / t_final - 1.0;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return chi(t) * (-2.0 * s / (q * q)) * (2.0 / t_final);
}

WeakResidual weak_residual(const Trajectory& traj, const SpaceTimeTest& test, std::size_t padding_factor) {
  const SimConfig& cfg = traj.config;
  if (std::abs(test.t_final - cfg.t_final) > 1e-12 * cfg.t_final)
    throw std::invalid_argument("test function horizon T = " + format_double(test.t_final) +
                                " does not match the trajectory's T = " + format_double(cfg.t_final));
  if (cfg.stride > kMaxResidualStride) throw std::invalid_argument("weak residual needs snapshot stride <= 10");

  const SpectralField phi_m = test_function_coefficients(test.phi, traj.basis);
  const TestFunction projected{"P_m " + test.phi.name, AnalyticField::from_spectral(phi_m), 0.0, 0.0};
  const WeakForm form(PaddedSpace::with_factor(traj.basis->size(), padding_factor), projected, cfg.alpha);
  const Eigen::VectorXd lap_phi = -(traj.basis->eigenvalues().array() * phi_m.coeffs().array()).matrix();

  const std::size_t n = traj.times.size();
  std::vector<double> a(n), b(n), c(n), d(n);
  parallel_for(n, [&](std::size_t i) {
    const double t = traj.times[i];
    const SpectralField theta = traj.snapshot(i);
    a[i] = test.dchi(t) * theta.coeffs().dot(phi_m.coeffs());
    const double w = test.chi(t);
    if (w != 0.0) {
      const double nv = form.n_total(apply_lambda_power(theta, -cfg.alpha)).n_total;
      b[i] = w * nv;
      d[i] = std::abs(w) * std::abs(nv - form.classical_transport(theta));
    }
    c[i] = cfg.epsilon * w * theta.coeffs().dot(lap_phi);
  });
  WeakResidual r;
  r.time_term = trapezoid(traj.times, a);
  r.nonlinear_term = trapezoid(traj.times, b);
  r.viscous_term = trapezoid(traj.times, c);
  r.representation_defect = trapezoid(traj.times, d);
  r.residual = std::abs(r.time_term + r.nonlinear_term + r.viscous_term);
  return r;
}

double SweepReport::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == column) return rows.at(row).at(c);
  throw std::out_of_range("no column '" + column + "' in sweep report");
}

void SweepReport::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << parameter;
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(values[i]);
    for (double v : rows[i]) out << ',' << format_double(v);
    out << '\n';
  }
  if (!fits.empty()) {
    out << "# fits";
    for (const auto& [k, v] : fits) out << ' ' << k << '=' << format_double(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return kNaN;
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? kNaN : (n * sxy - sx * sy) / den;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

SweepReport mode_sweep(const SimConfig& base, const std::vector<std::size_t>& m_list) {
  if (m_list.empty()) throw std::invalid_argument("mode sweep needs a non-empty m list");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1]) throw std::invalid_argument("mode sweep m list must be strictly increasing");

  std::vector<SpectralField> finals;
  std::vector<double> max_l2(m_list.size());
  std::vector<std::optional<SpectralField>> slots(m_list.size());
  parallel_for(m_list.size(), [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.m = m_list[i];
    const Trajectory t = run(cfg);
    slots[i] = t.snapshot(t.snapshots.size() - 1);
    max_l2[i] = t.max_l2();
  });
  for (auto& s : slots) finals.push_back(*s);

  SimConfig ref_cfg = base;
  ref_cfg.m = std::max(kRandomReferenceModes, m_list.back());
  const SpectralField theta0 = initial_datum(ref_cfg, build_leading_basis(ref_cfg.m));

  SweepReport r;
  r.parameter = "m";
  r.columns = {"l2_T", nu_column(kNegativeNormOrders[0]), nu_column(kNegativeNormOrders[1]), "tail_l2", "max_l2"};
  std::vector<double> ms, tails, cauchy;
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    std::vector<double> row;
    row.push_back(finals[i].l2_norm());
    for (double nu : kNegativeNormOrders)
      row.push_back(i + 1 < m_list.size() ? negative_norm_difference(finals[i], finals[i + 1], nu) : kNaN);
    const double tail = (theta0 - project(theta0, m_list[i])).l2_norm();
    row.push_back(tail);
    row.push_back(max_l2[i]);
    r.values.push_back(static_cast<double>(m_list[i]));
    r.rows.push_back(row);
    ms.push_back(static_cast<double>(m_list[i]));
    tails.push_back(tail);
    if (i + 1 < m_list.size()) cauchy.push_back(row[2]);
  }
  r.fits["tail_decay_exponent"] = log_log_slope(ms, tails);
  bool monotone = true;
  for (std::size_t i = 1; i < cauchy.size(); ++i) monotone = monotone && cauchy[i] < cauchy[i - 1];
  r.fits["cauchy_monotone"] = monotone ? 1.0 : 0.0;
  return r;
}

SweepReport viscosity_sweep(const SimConfig& base, const std::vector<double>& eps_list,
                            std::vector<Trajectory>* keep) {
  if (eps_list.empty()) throw std::invalid_argument("viscosity sweep needs a non-empty epsilon list");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("viscosity sweep epsilon list must be strictly decreasing");
  for (double e : eps_list)
    if (!(e >= 0.0)) throw std::invalid_argument("viscosity sweep epsilon values must be >= 0");

  base.validate();
  const GalerkinTensor tensor = assemble_tensor(build_leading_basis(base.m), base.m, base.alpha, base.assembly);
  std::vector<std::optional<Trajectory>> runs(eps_list.size());
  parallel_for(eps_list.size(), [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.epsilon = eps_list[i];
    runs[i] = run(cfg, tensor);
  });

  SweepReport r;
  r.parameter = "epsilon";
  r.columns = {"l2_0", "max_l2", "uni_tt", "dtheta_hm4", nu_column(kNegativeNormOrders[0]),
               nu_column(kNegativeNormOrders[1]), "l2_T"};
  double surrogate_max = 0.0;
  bool all_bounded = true;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const Trajectory& t = *runs[i];
    const double l2_0 = t.diagnostics.front().l2_theta;
    const bool bounded = t.max_l2() <= l2_0 * (1.0 + kUniformBoundSlack);
    all_bounded = all_bounded && bounded;
    double surrogate = 0.0;
    for (std::size_t s = 1; s < t.snapshots.size(); ++s) {
      const double dt = t.times[s] - t.times[s - 1];
      surrogate = std::max(surrogate, sobolev_norm(t.snapshot(s) - t.snapshot(s - 1), -4.0) / dt);
    }
    surrogate_max = std::max(surrogate_max, surrogate);
    const SpectralField last = t.snapshot(t.snapshots.size() - 1);
    std::vector<double> row = {l2_0, t.max_l2(), bounded ? 1.0 : 0.0, surrogate};
    for (double nu : kNegativeNormOrders) {
      if (i + 1 < eps_list.size()) {
        const Trajectory& n = *runs[i + 1];
        row.push_back(negative_norm_difference(last, n.snapshot(n.snapshots.size() - 1), nu));
      } else {
        row.push_back(kNaN);
      }
    }
    row.push_back(last.l2_norm());
    r.values.push_back(eps_list[i]);
    r.rows.push_back(row);
  }
  r.fits["uni_tt_all"] = all_bounded ? 1.0 : 0.0;
  r.fits["dtheta_hm4_max"] = surrogate_max;
  if (keep) {
    keep->clear();
    for (auto& t : runs) keep->push_back(std::move(*t));
  }
  return r;
}

std::array<double, 6> continuity_terms_at(const WeakForm& form, const SpectralField& psi, const SpectralField& psi_eps,
                                          double delta) {
  const SpectralField d = psi_eps - psi;
  return {form.n1_bilinear(d, psi_eps),
          form.n1_bilinear(psi, d),
          -form.shifted_first(d, psi_eps, delta),
          -form.shifted_first(psi, d, delta),
          -form.shifted_second(d, psi, delta),
          -form.shifted_second(psi_eps, d, delta)};
}

ContinuityTerms weak_continuity_terms(const Trajectory& base, const Trajectory& other, const SpaceTimeTest& test,
                                      double delta) {
  require_matched(base, other);
  const double alpha = base.config.alpha;
  if (other.config.alpha != alpha) throw std::invalid_argument("trajectories use different alpha");
  const WeakForm form(PaddedSpace::with_factor(base.basis->size(), base.config.padding), test.phi, alpha);
  form.check_delta(delta);

  const std::size_t n = base.times.size();
  std::vector<std::array<double, 7>> per_time(n);
  parallel_for(n, [&](std::size_t i) {
    const double w = test.chi(base.times[i]);
    if (w == 0.0) {
      per_time[i].fill(0.0);
      return;
    }
    const SpectralField psi = apply_lambda_power(base.snapshot(i), -alpha);
    const SpectralField psi_eps = apply_lambda_power(other.snapshot(i), -alpha);
    const auto terms = continuity_terms_at(form, psi, psi_eps, delta);
    for (int j = 0; j < 6; ++j) per_time[i][j] = w * terms[j];
    per_time[i][6] = 2.0 * w * (form.n_total(psi_eps).n_total - form.n_total(psi).n_total);
  });

  ContinuityTerms out;
  std::vector<double> col(n);
  for (int j = 0; j < 7; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = per_time[i][j];
    const double v = trapezoid(base.times, col);
    if (j < 6) {
      out.terms[j] = v;
      out.sum += v;
      out.scale = std::max(out.scale, std::abs(v));
    } else {
      out.two_delta_n = v;
      out.scale = std::max(out.scale, std::abs(v));
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace gsqg
