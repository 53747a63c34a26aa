#pragma once

// Spectral powers of the Dirichlet Laplacian, D(Lambda^s) norms, the heat
// semigroup, the truncation P_m, and heat-time quadrature routes to Lambda^{+-s}.

#include <cstddef>

#include "gsqg/basis.hpp"

namespace gsqg {

/// Lambda^s f: f_j -> lambda_j^{s/2} f_j.
SpectralField apply_lambda_power(const SpectralField& f, double s);

/// ||f||_{D(Lambda^s)} = (sum lambda_j^s f_j^2)^{1/2}; negative s gives the dual norms.
double sobolev_norm(const SpectralField& f, double s);

/// P_m: keeps the first m coefficients in the basis ordering.
SpectralField project(const SpectralField& f, std::size_t m);

/// e^{t Delta} f: f_j -> exp(-lambda_j t) f_j.
SpectralField heat_semigroup(const SpectralField& f, double t);

/// Log-uniform heat-time nodes on [t_min, t_max].
struct HeatQuadRule {
  double t_min = 0.0;
  double t_max = 0.0;
  int n_nodes = 0;

  /// t_min = 1e-8 / lambda_max, t_max = 40 / lambda_min.
  static HeatQuadRule default_for(const EigenBasis& basis, int n_nodes = kDefaultNodes);
  void validate() const;
  double log_spacing() const;

  static constexpr int kDefaultNodes = 160;
};

/// Normalizations of the two heat-kernel representations.
double heat_neg_constant(double s);  // 1 / Gamma(s/2)
double heat_pos_constant(double s);  // s / (2 Gamma(1 - s/2))

/// Lambda^{-s} f = c_s int_0^inf t^{-1+s/2} e^{t Delta} f dt, s > 0.
SpectralField lambda_neg_power_heat(const SpectralField& f, double s, const HeatQuadRule& rule);

/// Lambda^{s} f = c_s int_0^inf t^{-1-s/2} (1 - e^{t Delta}) f dt, 0 < s < 2.
SpectralField lambda_pos_power_heat(const SpectralField& f, double s, const HeatQuadRule& rule);

}  // namespace gsqg
