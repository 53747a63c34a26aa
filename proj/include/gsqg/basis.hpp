#pragma once

// Dirichlet eigenbasis of -Laplacian on the square (0,pi)^2, tensor quadrature
// grid, and the transforms between sine coefficients and grid samples.

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gsqg {

inline constexpr double kPi = 3.14159265358979323846;

struct ModeIndex {
  int j = 1;  // x-wavenumber
  int k = 1;  // y-wavenumber
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Eigenpairs w_(j,k) = (2/pi) sin(jx) sin(ky), lambda = j^2 + k^2, ordered by
/// ascending eigenvalue with ties broken lexicographically on (j,k).
class EigenBasis {
 public:
  /// All K^2 modes with 1 <= j,k <= K.
  static EigenBasis rectangle(int cutoff);

  /// The first m modes of the global ordering (independent of any box cutoff),
  /// so leading(m) is always a prefix of leading(M) for m <= M.
  static EigenBasis leading(std::size_t m);

  EigenBasis prefix(std::size_t m) const;

  std::size_t size() const { return modes_.size(); }
  const ModeIndex& mode(std::size_t i) const { return modes_[i]; }
  double eigenvalue(std::size_t i) const { return eigenvalues_[static_cast<Eigen::Index>(i)]; }
  const std::vector<ModeIndex>& modes() const { return modes_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  /// Largest per-axis wavenumber appearing in the basis.
  int max_wavenumber() const { return max_wavenumber_; }

  std::optional<std::size_t> index_of(ModeIndex m) const;

  /// True when both bases list the same modes in the same order.
  bool same_as(const EigenBasis& other) const;
  bool is_prefix_of(const EigenBasis& other) const;

 private:
  explicit EigenBasis(std::vector<ModeIndex> modes);

  std::vector<ModeIndex> modes_;
  Eigen::VectorXd eigenvalues_;
  int max_wavenumber_ = 0;
  std::vector<int> lookup_;  // (j-1)*K + (k-1) -> index, -1 when absent
};

using BasisPtr = std::shared_ptr<const EigenBasis>;

BasisPtr build_rectangle_basis(int cutoff);
BasisPtr build_leading_basis(std::size_t m);

/// Uniform interior rectangle rule on (0,pi): x_i = i*pi/(N+1), i = 1..N.
/// Exact for sin*sin products with summed per-axis wavenumber below 2(N+1).
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int points_per_axis);

  /// Smallest grid with N+1 >= factor * max_wavenumber.
  static QuadratureGrid for_band(int max_wavenumber, int factor);

  int size() const { return n_; }
  double spacing() const { return kPi / (n_ + 1); }
  double weight() const { return spacing() * spacing(); }
  double node(int i) const { return (i + 1) * spacing(); }  // 0-based
  Eigen::VectorXd nodes() const;

  friend bool operator==(const QuadratureGrid&, const QuadratureGrid&) = default;

 private:
  int n_;
};

/// Scalar field sampled on the grid; values(i, j) is the sample at (x_i, y_j).
struct GridField {
  QuadratureGrid grid;
  Eigen::MatrixXd values;

  explicit GridField(QuadratureGrid g) : grid(g), values(Eigen::MatrixXd::Zero(g.size(), g.size())) {}
  GridField(QuadratureGrid g, Eigen::MatrixXd v);
};

struct VectorGridField {
  QuadratureGrid grid;
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;

  explicit VectorGridField(QuadratureGrid g)
      : grid(g), x(Eigen::MatrixXd::Zero(g.size(), g.size())), y(Eigen::MatrixXd::Zero(g.size(), g.size())) {}
  VectorGridField(QuadratureGrid g, Eigen::MatrixXd vx, Eigen::MatrixXd vy);

  GridField component(int c) const { return GridField(grid, c == 0 ? x : y); }
};

/// Coefficient vector of a field in an eigenbasis.
class SpectralField {
 public:
  explicit SpectralField(BasisPtr basis);
  SpectralField(BasisPtr basis, Eigen::VectorXd coeffs);

  static SpectralField unit(BasisPtr basis, std::size_t index);

  const EigenBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }

  double l2_norm() const { return coeffs_.norm(); }
  double dot(const SpectralField& other) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double c) { return a *= c; }
  friend SpectralField operator*(double c, SpectralField a) { return a *= c; }
  SpectralField operator-() const { return *this * -1.0; }

 private:
  void require_same_basis(const SpectralField& other) const;

  BasisPtr basis_;
  Eigen::VectorXd coeffs_;
};

/// Pair of spectral fields, e.g. the projected components of a gradient.
struct SpectralVector {
  SpectralField x;
  SpectralField y;

  double dot(const SpectralVector& other) const { return x.dot(other.x) + y.dot(other.y); }
};

/// Copies coefficients onto another basis: shared modes are kept, modes
/// missing from the target are dropped, modes new to the target are zero.
SpectralField rebase(const SpectralField& f, const BasisPtr& target);

/// True when every mode of f's basis exists in target.
bool represented_in(const EigenBasis& source, const EigenBasis& target);

GridField synthesize(const SpectralField& f, const QuadratureGrid& grid);
SpectralField analyze(const GridField& g, const BasisPtr& basis);
SpectralVector analyze(const VectorGridField& g, const BasisPtr& basis);

VectorGridField gradient(const SpectralField& f, const QuadratureGrid& grid);
/// grad^perp f = (-d_y f, d_x f).
VectorGridField perp_gradient(const SpectralField& f, const QuadratureGrid& grid);

/// Pointwise evaluation of the sine series (and optionally a derivative).
double evaluate(const SpectralField& f, double x, double y, int dx_order = 0, int dy_order = 0);

double boundary_distance(double x, double y);

/// Rectangle-rule integral of a grid field.
double integrate(const GridField& g);
double inner(const GridField& a, const GridField& b);
double inner(const VectorGridField& a, const VectorGridField& b);

/// Discrete L^p norm on the grid (p = infinity gives the max norm).
double lp_norm(const GridField& g, double p);
double lp_norm(const VectorGridField& g, double p);

}  // namespace gsqg
