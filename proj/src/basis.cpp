#include "gsqg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gsqg {

namespace {

constexpr double kNorm = 2.0 / kPi;  // product of the two 1D normalizations sqrt(2/pi)

bool mode_less(const ModeIndex& a, const ModeIndex& b) {
  const int la = a.j * a.j + a.k * a.k;
  const int lb = b.j * b.j + b.k * b.k;
  if (la != lb) return la < lb;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

std::vector<ModeIndex> box_modes(int cutoff) {
  std::vector<ModeIndex> modes;
  modes.reserve(static_cast<std::size_t>(cutoff) * static_cast<std::size_t>(cutoff));
  for (int j = 1; j <= cutoff; ++j)
    for (int k = 1; k <= cutoff; ++k) modes.push_back({j, k});
  std::sort(modes.begin(), modes.end(), mode_less);
  return modes;
}

// S(i, n-1) = sin(n x_i)
Eigen::MatrixXd sine_table(const QuadratureGrid& grid, int kmax) {
  Eigen::MatrixXd s(grid.size(), kmax);
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    for (int n = 1; n <= kmax; ++n) s(i, n - 1) = std::sin(n * x);
  }
  return s;
}

// D(i, n-1) = d/dx sin(n x) at x_i
Eigen::MatrixXd cosine_derivative_table(const QuadratureGrid& grid, int kmax) {
  Eigen::MatrixXd d(grid.size(), kmax);
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    for (int n = 1; n <= kmax; ++n) d(i, n - 1) = n * std::cos(n * x);
  }
  return d;
}

Eigen::MatrixXd coefficient_matrix(const SpectralField& f) {
  const auto& basis = f.basis();
  const int kmax = basis.max_wavenumber();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(kmax, kmax);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& m = basis.mode(i);
    c(m.j - 1, m.k - 1) = f.coeffs()[static_cast<Eigen::Index>(i)];
  }
  return c;
}

void require_resolved(const EigenBasis& basis, const QuadratureGrid& grid) {
  if (basis.max_wavenumber() > grid.size()) {
    throw std::invalid_argument("grid too coarse: N+1 = " + std::to_string(grid.size() + 1) +
                                " must exceed the basis wavenumber " + std::to_string(basis.max_wavenumber()));
  }
}

}  // namespace

EigenBasis::EigenBasis(std::vector<ModeIndex> modes) : modes_(std::move(modes)) {
  eigenvalues_.resize(static_cast<Eigen::Index>(modes_.size()));
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    eigenvalues_[static_cast<Eigen::Index>(i)] = static_cast<double>(m.j * m.j + m.k * m.k);
    max_wavenumber_ = std::max({max_wavenumber_, m.j, m.k});
  }
  lookup_.assign(static_cast<std::size_t>(max_wavenumber_) * static_cast<std::size_t>(max_wavenumber_), -1);
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    lookup_[static_cast<std::size_t>((m.j - 1) * max_wavenumber_ + (m.k - 1))] = static_cast<int>(i);
  }
}

EigenBasis EigenBasis::rectangle(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("basis cutoff K must be >= 1");
  return EigenBasis(box_modes(cutoff));
}

EigenBasis EigenBasis::leading(std::size_t m) {
  if (m == 0) throw std::invalid_argument("mode count m must be >= 1");
  int box = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m)))) + 1;
  for (;;) {
    auto modes = box_modes(box);
    modes.resize(m);
    const auto& last = modes.back();
    // Any mode outside the box has an axis wavenumber >= box+1.
    const int outside_min = 1 + (box + 1) * (box + 1);
    if (last.j * last.j + last.k * last.k < outside_min) return EigenBasis(std::move(modes));
    box *= 2;
  }
}

EigenBasis EigenBasis::prefix(std::size_t m) const {
  if (m == 0 || m > modes_.size()) {
    throw std::invalid_argument("prefix size " + std::to_string(m) + " outside [1, " + std::to_string(modes_.size()) +
                                "]");
  }
  return EigenBasis(std::vector<ModeIndex>(modes_.begin(), modes_.begin() + static_cast<std::ptrdiff_t>(m)));
}

std::optional<std::size_t> EigenBasis::index_of(ModeIndex m) const {
  if (m.j < 1 || m.k < 1 || m.j > max_wavenumber_ || m.k > max_wavenumber_) return std::nullopt;
  const int idx = lookup_[static_cast<std::size_t>((m.j - 1) * max_wavenumber_ + (m.k - 1))];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

bool EigenBasis::same_as(const EigenBasis& other) const { return this == &other || modes_ == other.modes_; }

bool EigenBasis::is_prefix_of(const EigenBasis& other) const {
  return modes_.size() <= other.modes_.size() && std::equal(modes_.begin(), modes_.end(), other.modes_.begin());
}

BasisPtr build_rectangle_basis(int cutoff) { return std::make_shared<const EigenBasis>(EigenBasis::rectangle(cutoff)); }

BasisPtr build_leading_basis(std::size_t m) { return std::make_shared<const EigenBasis>(EigenBasis::leading(m)); }

QuadratureGrid::QuadratureGrid(int points_per_axis) : n_(points_per_axis) {
  if (n_ < 1) throw std::invalid_argument("quadrature grid needs N >= 1");
}

QuadratureGrid QuadratureGrid::for_band(int max_wavenumber, int factor) {
  return QuadratureGrid(std::max(1, factor * max_wavenumber - 1));
}

Eigen::VectorXd QuadratureGrid::nodes() const {
  Eigen::VectorXd x(n_);
  for (int i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

GridField::GridField(QuadratureGrid g, Eigen::MatrixXd v) : grid(g), values(std::move(v)) {
  if (values.rows() != grid.size() || values.cols() != grid.size())
    throw std::invalid_argument("grid field shape does not match the grid");
}

VectorGridField::VectorGridField(QuadratureGrid g, Eigen::MatrixXd vx, Eigen::MatrixXd vy)
    : grid(g), x(std::move(vx)), y(std::move(vy)) {
  if (x.rows() != grid.size() || x.cols() != grid.size() || y.rows() != grid.size() || y.cols() != grid.size())
    throw std::invalid_argument("vector grid field shape does not match the grid");
}

SpectralField::SpectralField(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("spectral field needs a basis");
  coeffs_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_->size()));
}

SpectralField::SpectralField(BasisPtr basis, Eigen::VectorXd coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (!basis_) throw std::invalid_argument("spectral field needs a basis");
  if (static_cast<std::size_t>(coeffs_.size()) != basis_->size())
    throw std::invalid_argument("coefficient count " + std::to_string(coeffs_.size()) + " != basis size " +
                                std::to_string(basis_->size()));
}

SpectralField SpectralField::unit(BasisPtr basis, std::size_t index) {
  SpectralField f(std::move(basis));
  if (index >= f.size()) throw std::invalid_argument("unit mode index out of range");
  f.coeffs_[static_cast<Eigen::Index>(index)] = 1.0;
  return f;
}

void SpectralField::require_same_basis(const SpectralField& other) const {
  if (!basis_->same_as(*other.basis_)) throw std::invalid_argument("spectral fields live on different bases");
}

double SpectralField::dot(const SpectralField& other) const {
  require_same_basis(other);
  return coeffs_.dot(other.coeffs_);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_basis(other);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_basis(other);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  coeffs_ *= c;
  return *this;
}

SpectralField rebase(const SpectralField& f, const BasisPtr& target) {
  if (f.basis().same_as(*target)) return SpectralField(target, f.coeffs());
  SpectralField out(target);
  const auto& src = f.basis();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto idx = target->index_of(src.mode(i)))
      out.coeffs()[static_cast<Eigen::Index>(*idx)] = f.coeffs()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

bool represented_in(const EigenBasis& source, const EigenBasis& target) {
  for (const auto& m : source.modes())
    if (!target.index_of(m)) return false;
  return true;
}

GridField synthesize(const SpectralField& f, const QuadratureGrid& grid) {
  require_resolved(f.basis(), grid);
  const int kmax = f.basis().max_wavenumber();
  const Eigen::MatrixXd s = sine_table(grid, kmax);
  return GridField(grid, kNorm * (s * coefficient_matrix(f) * s.transpose()));
}

SpectralField analyze(const GridField& g, const BasisPtr& basis) {
  if (basis->max_wavenumber() > g.grid.size())
    throw std::invalid_argument("basis wavenumber " + std::to_string(basis->max_wavenumber()) +
                                " exceeds the grid resolution N = " + std::to_string(g.grid.size()));
  const int kmax = basis->max_wavenumber();
  const Eigen::MatrixXd s = sine_table(g.grid, kmax);
  const Eigen::MatrixXd full = (kNorm * g.grid.weight()) * (s.transpose() * g.values * s);
  SpectralField out(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& m = basis->mode(i);
    out.coeffs()[static_cast<Eigen::Index>(i)] = full(m.j - 1, m.k - 1);
  }
  return out;
}

SpectralVector analyze(const VectorGridField& g, const BasisPtr& basis) {
  return {analyze(g.component(0), basis), analyze(g.component(1), basis)};
}

VectorGridField gradient(const SpectralField& f, const QuadratureGrid& grid) {
  require_resolved(f.basis(), grid);
  const int kmax = f.basis().max_wavenumber();
  const Eigen::MatrixXd s = sine_table(grid, kmax);
  const Eigen::MatrixXd d = cosine_derivative_table(grid, kmax);
  const Eigen::MatrixXd c = coefficient_matrix(f);
  return VectorGridField(grid, kNorm * (d * c * s.transpose()), kNorm * (s * c * d.transpose()));
}

VectorGridField perp_gradient(const SpectralField& f, const QuadratureGrid& grid) {
  VectorGridField g = gradient(f, grid);
  return VectorGridField(grid, -g.y, g.x);
}

double evaluate(const SpectralField& f, double x, double y, int dx_order, int dy_order) {
  auto factor = [](int n, double t, int order) {
    // derivatives of sin(n t) cycle through sin, cos, -sin, -cos
    const double p = std::pow(static_cast<double>(n), order);
    switch (order % 4) {
      case 0: return p * std::sin(n * t);
      case 1: return p * std::cos(n * t);
      case 2: return -p * std::sin(n * t);
      default: return -p * std::cos(n * t);
    }
  };
  double sum = 0.0;
  const auto& basis = f.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& m = basis.mode(i);
    sum += f.coeffs()[static_cast<Eigen::Index>(i)] * factor(m.j, x, dx_order) * factor(m.k, y, dy_order);
  }
  return kNorm * sum;
}

double boundary_distance(double x, double y) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= kPi + slack && y >= -slack && y <= kPi + slack))
    throw std::invalid_argument("point (" + std::to_string(x) + ", " + std::to_string(y) + ") lies outside the domain");
  return std::max(0.0, std::min({x, kPi - x, y, kPi - y}));
}

double integrate(const GridField& g) { return g.grid.weight() * g.values.sum(); }

double inner(const GridField& a, const GridField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid fields on different grids");
  return a.grid.weight() * a.values.cwiseProduct(b.values).sum();
}

double inner(const VectorGridField& a, const VectorGridField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid fields on different grids");
  return a.grid.weight() * (a.x.cwiseProduct(b.x).sum() + a.y.cwiseProduct(b.y).sum());
}

namespace {

double lp_of_magnitude(const Eigen::MatrixXd& mag, double weight, double p) {
  if (std::isinf(p)) return mag.maxCoeff();
  if (p <= 0.0) throw std::invalid_argument("L^p norm needs p > 0");
  return std::pow(weight * mag.array().pow(p).sum(), 1.0 / p);
}

}  // namespace

double lp_norm(const GridField& g, double p) { return lp_of_magnitude(g.values.cwiseAbs(), g.grid.weight(), p); }

double lp_norm(const VectorGridField& g, double p) {
  const Eigen::MatrixXd mag = (g.x.array().square() + g.y.array().square()).sqrt().matrix();
  return lp_of_magnitude(mag, g.grid.weight(), p);
}

}  // namespace gsqg
