#pragma once

// Weak-formulation residual, Galerkin and viscosity sweeps, and the
// six-term weak-continuity decomposition, evaluated on trajectories.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gsqg/galerkin.hpp"
#include "gsqg/weakform.hpp"

namespace gsqg {

/// phi(x, y) chi(t) with chi(t) = exp(1 - 1/(1 - s^2)), s = 2t/T - 1, a smooth
/// bump supported in (0, T) with chi(T/2) = 1.
struct SpaceTimeTest {
  TestFunction phi;
  double t_final = 1.0;

  double chi(double t) const;
  double dchi(double t) const;
};

struct WeakResidual {
  double residual = 0.0;         // |sum of the three terms|
  double time_term = 0.0;        // int <theta, phi> chi'
  double nonlinear_term = 0.0;   // int N(psi, phi) chi
  double viscous_term = 0.0;     // eps int <theta, Delta phi> chi
  // int |chi| |N(psi, phi) - int theta u . grad phi|: the part of the residual
  // owed to the padded representation of N rather than to time stepping.
  double representation_defect = 0.0;
};

/// Padding factor M / m for the nonlinear term of the weak residual. The
/// products grad(P_m phi) psi carry cosine factors whose sine tails decay
/// slowly, so the representation floor needs a wide band.
inline constexpr std::size_t kResidualPadding = 64;

/// Evaluated against P_m phi on the band M = padding_factor * m, with the
/// trapezoid rule over the snapshot times.
WeakResidual weak_residual(const Trajectory& traj, const SpaceTimeTest& test,
                           std::size_t padding_factor = kResidualPadding);

/// Parameter-indexed table with named columns.
struct SweepReport {
  std::string parameter;
  std::vector<double> values;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // rows[i][c] for values[i]
  std::map<std::string, double> fits;

  double at(std::size_t row, const std::string& column) const;
  void write_csv(const std::string& path) const;
};

inline constexpr std::array<double, 2> kNegativeNormOrders = {0.5, 1.0};

/// Runs the template for each m (strictly increasing) and reports pairwise
/// D(Lambda^{-nu}) differences of theta(T) between consecutive m, the tail
/// ||(I - P_m) theta_0|| and its fitted decay exponent in m.
SweepReport mode_sweep(const SimConfig& base, const std::vector<std::size_t>& m_list);

/// Runs the template for each epsilon (strictly decreasing) and reports the
/// uniform L^2 bound check, the H^{-4} difference-quotient surrogate of
/// d_t theta, and pairwise D(Lambda^{-nu}) differences at T.
SweepReport viscosity_sweep(const SimConfig& base, const std::vector<double>& eps_list,
                            std::vector<Trajectory>* keep = nullptr);

inline constexpr double kUniformBoundSlack = 1e-8;

struct ContinuityTerms {
  std::array<double, 6> terms{};  // I_1 .. I_6, time-integrated against chi
  double sum = 0.0;
  double two_delta_n = 0.0;       // 2 int chi (N(psi_eps) - N(psi))
  double scale = 0.0;             // max of |I_j| and |2 delta N|
};

/// psi from `base`, psi_eps from `other`; both on a common basis and time grid.
ContinuityTerms weak_continuity_terms(const Trajectory& base, const Trajectory& other, const SpaceTimeTest& test,
                                      double delta);

/// The six terms at a single pair of states (no time integration).
std::array<double, 6> continuity_terms_at(const WeakForm& form, const SpectralField& psi, const SpectralField& psi_eps,
                                          double delta);

/// Least-squares slope of log(y) against log(x) over positive entries; NaN with fewer than 2.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// log2(e_coarse / e_fine).
double observed_order(double coarse, double fine);

/// Writes a manifest for an experiment run next to its reports.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gsqg
