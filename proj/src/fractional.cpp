#include "gsqg/fractional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsqg {

namespace {

void require_finite(double s, const char* what) {
  if (!std::isfinite(s)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// sum_{n>=1} exp(p (u0 - n h)) for p > 0
double left_geometric_tail(double p, double u0, double h) {
  const double r = std::exp(-p * h);
  return std::exp(p * u0) * r / (1.0 - r);
}

}  // namespace

SpectralField apply_lambda_power(const SpectralField& f, double s) {
  require_finite(s, "exponent s");
  if (s == 0.0) return f;
  const Eigen::VectorXd scale = f.basis().eigenvalues().array().pow(0.5 * s).matrix();
  return SpectralField(f.basis_ptr(), f.coeffs().cwiseProduct(scale));
}

double sobolev_norm(const SpectralField& f, double s) {
  require_finite(s, "exponent s");
  const Eigen::ArrayXd w = f.basis().eigenvalues().array().pow(s);
  return std::sqrt((w * f.coeffs().array().square()).sum());
}

SpectralField project(const SpectralField& f, std::size_t m) {
  if (m > f.size()) throw std::invalid_argument("projection size m = " + std::to_string(m) + " exceeds basis size " +
                                                std::to_string(f.size()));
  SpectralField out = f;
  out.coeffs().tail(static_cast<Eigen::Index>(f.size() - m)).setZero();
  return out;
}

SpectralField heat_semigroup(const SpectralField& f, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat time t must be finite and >= 0");
  if (t == 0.0) return f;
  const Eigen::VectorXd decay = (-t * f.basis().eigenvalues().array()).exp().matrix();
  return SpectralField(f.basis_ptr(), f.coeffs().cwiseProduct(decay));
}

HeatQuadRule HeatQuadRule::default_for(const EigenBasis& basis, int n_nodes) {
  const auto& lam = basis.eigenvalues();
  return {1e-8 / lam.maxCoeff(), 40.0 / lam.minCoeff(), n_nodes};
}

void HeatQuadRule::validate() const {
  if (n_nodes < 2) throw std::invalid_argument("heat quadrature rule needs at least 2 nodes");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw std::invalid_argument("heat quadrature window needs 0 < t_min < t_max");
}

double HeatQuadRule::log_spacing() const { return (std::log(t_max) - std::log(t_min)) / (n_nodes - 1); }

double heat_neg_constant(double s) { return 1.0 / std::tgamma(0.5 * s); }

double heat_pos_constant(double s) { return s / (2.0 * std::tgamma(1.0 - 0.5 * s)); }

// In u = log t the integrand t^{s/2} e^{-lambda t} is analytic and decays at
// both ends, so the trapezoid rule on the infinite uniform u-lattice converges
// geometrically. Nodes below t_min are summed in closed form using
// e^{-lambda t} ~ 1 - lambda t (lambda t_min <= 1e-8); nodes above t_max carry
// e^{-40} or less and are dropped.
SpectralField lambda_neg_power_heat(const SpectralField& f, double s, const HeatQuadRule& rule) {
  require_finite(s, "exponent s");
  if (!(s > 0.0)) throw std::invalid_argument("heat representation of Lambda^{-s} needs s > 0");
  rule.validate();
  const double a = 0.5 * s;
  const double h = rule.log_spacing();
  const double u0 = std::log(rule.t_min);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.size()));
  for (int q = 0; q < rule.n_nodes; ++q) {
    const double t = std::exp(u0 + q * h);
    acc += std::pow(t, a) * heat_semigroup(f, t).coeffs();
  }
  const Eigen::ArrayXd lam = f.basis().eigenvalues().array();
  const Eigen::ArrayXd tail = left_geometric_tail(a, u0, h) - left_geometric_tail(a + 1.0, u0, h) * lam;
  acc += (tail * f.coeffs().array()).matrix();
  return SpectralField(f.basis_ptr(), heat_neg_constant(s) * h * acc);
}

// Integrand t^{-s/2} (1 - e^{-lambda t}) in u = log t; the lower tail uses the
// two-term expansion of 1 - e^{-lambda t}, the upper tail is t^{-s/2} exactly
// up to e^{-40}.
SpectralField lambda_pos_power_heat(const SpectralField& f, double s, const HeatQuadRule& rule) {
  require_finite(s, "exponent s");
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("heat representation of Lambda^{s} needs 0 < s < 2");
  rule.validate();
  const double b = 0.5 * s;
  const double h = rule.log_spacing();
  const double u0 = std::log(rule.t_min);
  const double u_last = u0 + (rule.n_nodes - 1) * h;

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.size()));
  for (int q = 0; q < rule.n_nodes; ++q) {
    const double t = std::exp(u0 + q * h);
    acc += std::pow(t, -b) * (f.coeffs() - heat_semigroup(f, t).coeffs());
  }
  const Eigen::ArrayXd lam = f.basis().eigenvalues().array();
  const double r = std::exp(-b * h);
  const double upper = std::exp(-b * u_last) * r / (1.0 - r);
  const Eigen::ArrayXd tail =
      left_geometric_tail(1.0 - b, u0, h) * lam - 0.5 * left_geometric_tail(2.0 - b, u0, h) * lam.square() + upper;
  acc += (tail * f.coeffs().array()).matrix();
  return SpectralField(f.basis_ptr(), heat_pos_constant(s) * h * acc);
}

}  // namespace gsqg
