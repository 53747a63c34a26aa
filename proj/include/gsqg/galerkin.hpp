#pragma once

// Galerkin truncation of the viscous gSQG equation on the first m eigenmodes:
// structure constants, right-hand side, RK4 stepping and trajectories.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsqg/basis.hpp"

namespace gsqg {

enum class AssemblyMode { Analytic, Quadrature };

std::string to_string(AssemblyMode mode);
AssemblyMode parse_assembly_mode(const std::string& text);

/// int_0^pi sin(a x) cos(b x) sin(c x) dx for positive integers.
double triple_sine_cosine(int a, int b, int c);

/// gamma_{jkl} = lambda_j^{-alpha/2} int (grad^perp w_j . grad w_k) w_l, stored
/// as nonzero (j, k) pairs grouped by l.
class GalerkinTensor {
 public:
  struct Entry {
    int j;
    int k;
    double value;
  };

  GalerkinTensor(BasisPtr basis, double alpha, AssemblyMode mode, int grid_points,
                 std::vector<std::vector<Entry>> by_l);

  std::size_t m() const { return basis_->size(); }
  double alpha() const { return alpha_; }
  AssemblyMode mode() const { return mode_; }
  int grid_points() const { return grid_points_; }  // 0 for the analytic path
  const BasisPtr& basis() const { return basis_; }
  const std::vector<Entry>& row(std::size_t l) const { return by_l_[l]; }
  std::size_t nonzeros() const;

  /// gamma_{jkl}, 0 when not stored.
  double value(int j, int k, int l) const;

  struct Defect {
    double value = 0.0;
    int j = -1, k = -1, l = -1;
  };
  /// max |gamma_jkl + gamma_jlk| and max |gamma_jjl| with their locations.
  Defect antisymmetry_defect() const;
  Defect diagonal_defect() const;
  /// Throws std::runtime_error naming the worst entry if either defect exceeds tol.
  void check_structure(double tol = 1e-12) const;
  /// max |a - b| over the union of stored entries.
  double max_difference(const GalerkinTensor& other) const;

  /// N_l = sum_{jk} gamma_jkl theta_j theta_k.
  Eigen::VectorXd nonlinear(const Eigen::VectorXd& theta) const;

  /// CSV with a "# gsqg tensor m=.. alpha=.. mode=.. grid=.." header and rows j,k,l,value (0-based).
  void save_csv(const std::string& path) const;
  static GalerkinTensor load_csv(const std::string& path);

 private:
  BasisPtr basis_;
  double alpha_;
  AssemblyMode mode_;
  int grid_points_;
  std::vector<std::vector<Entry>> by_l_;  // sorted by (j, k)
};

/// Builds gamma for the first m modes of basis. Quadrature mode needs
/// grid_points + 1 >= 3 K (0 selects the smallest admissible grid).
GalerkinTensor assemble_tensor(const BasisPtr& basis, std::size_t m, double alpha, AssemblyMode mode,
                               int grid_points = 0);

/// Dense 2D rectangle-rule evaluation of a single constant (oracle).
double tensor_entry_bruteforce(const EigenBasis& basis, int j, int k, int l, double alpha, int grid_points);

struct SimConfig {
  double alpha = 0.5;
  double epsilon = 0.0;
  std::size_t m = 16;
  std::size_t padding = 4;  // padded band M = padding * m for weak-form diagnostics
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t stride = 10;
  std::string initial = "single_mode";  // single_mode | two_mode | random | quartic_bump | file
  int mode_j = 1;
  int mode_k = 1;
  double decay = 1.0;  // random datum: coefficients ~ N(0,1) (lambda/lambda_1)^{-decay}
  std::uint64_t seed = 1;
  std::string init_file;
  AssemblyMode assembly = AssemblyMode::Analytic;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
  /// True when alpha lies outside the weak-solution regime (0, 1).
  bool outside_weak_regime() const { return !(alpha > 0.0 && alpha < 1.0); }
  std::size_t steps() const;
};

/// The random datum is normalized to unit L^2 norm over this many leading modes.
inline constexpr std::size_t kRandomReferenceModes = 1024;

/// P_m of the configured initial datum on the given basis.
SpectralField initial_datum(const SimConfig& config, const BasisPtr& basis);

struct GalerkinState {
  double t = 0.0;
  Eigen::VectorXd coeffs;
};

/// dtheta_l/dt = -sum gamma_jkl theta_j theta_k - eps lambda_l theta_l.
Eigen::VectorXd rhs(const GalerkinState& state, const GalerkinTensor& tensor, double epsilon);

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, double magnitude);
  double time() const { return t_; }
  double magnitude() const { return magnitude_; }

 private:
  double t_;
  double magnitude_;
};

inline constexpr double kBlowUpThreshold = 1e12;

/// Classical RK4; throws BlowUpError on non-finite or oversized output.
GalerkinState step(const GalerkinState& state, const GalerkinTensor& tensor, double epsilon, double dt);

struct Diagnostics {
  double t = 0.0;
  double l2_theta = 0.0;   // ||theta||
  double h1_theta = 0.0;   // ||grad theta||
  double hdot_psi = 0.0;   // ||psi||_{D(Lambda^{alpha/2})}
  double psi_high = 0.0;   // ||psi||_{D(Lambda^{1+alpha/2})}
  double energy_residual = 0.0;
  double hamiltonian_residual = 0.0;
};

Diagnostics measure(const Eigen::VectorXd& theta, const EigenBasis& basis, double alpha, double t);

struct Trajectory {
  SimConfig config;
  BasisPtr basis;
  std::vector<double> times;                 // snapshot times
  std::vector<Eigen::VectorXd> snapshots;    // theta at snapshot times
  std::vector<Diagnostics> diagnostics;      // every step, including t = 0

  double max_l2() const;
  double l2_drift() const;     // max_t | ||theta(t)|| - ||theta_0|| | / ||theta_0||
  double hdot_drift() const;   // same for ||psi||_{D(Lambda^{alpha/2})}
  double max_energy_residual() const;
  double max_hamiltonian_residual() const;
  SpectralField snapshot(std::size_t i) const { return SpectralField(basis, snapshots[i]); }
};

Trajectory run(const SimConfig& config);
Trajectory run(const SimConfig& config, const GalerkinTensor& tensor);

}  // namespace gsqg
