#pragma once

// Commutators of spectral fractional powers with gradients and multipliers,
// evaluated on a padded sine band, plus empirical monitors for the associated
// operator bounds.

#include <cstddef>
#include <functional>
#include <string>

#include "gsqg/analytic.hpp"
#include "gsqg/basis.hpp"

namespace gsqg {

/// A dynamical band (first m modes), a padded band (first M >= m modes) on
/// which non-sine-compatible fields are projected, and the product grid.
struct PaddedSpace {
  BasisPtr base;
  BasisPtr padded;
  QuadratureGrid grid;

  static constexpr int kGridFactor = 3;  // N+1 >= 3 * padded wavenumber

  static PaddedSpace with_modes(std::size_t m, std::size_t padded_modes, int grid_factor = kGridFactor);
  /// M = factor * m.
  static PaddedSpace with_factor(std::size_t m, std::size_t factor, int grid_factor = kGridFactor);
  /// Smallest leading band containing every sine mode with both wavenumbers
  /// <= 2 K_m, so products of two base-band factors (one possibly a cosine
  /// derivative) are represented without truncation.
  static PaddedSpace covering(std::size_t m, int grid_factor = kGridFactor);

  std::size_t m() const { return base->size(); }
  std::size_t padded_modes() const { return padded->size(); }
};

using LinearOp = std::function<SpectralField(const SpectralField&)>;

/// [A, B] f = A(B f) - B(A f).
SpectralField commutator(const LinearOp& a, const LinearOp& b, const SpectralField& f);

/// Lambda^s as a diagonal operator.
LinearOp power_op(double s);
/// f -> P_M(a f) with a sampled on the space's grid.
LinearOp multiply_op(const GridField& a, const PaddedSpace& space);

/// P_M(grad f) per component, via grid differentiation and analysis.
SpectralVector project_gradient(const SpectralField& f, const PaddedSpace& space);
SpectralVector project_perp_gradient(const SpectralField& f, const PaddedSpace& space);

/// [Lambda^s, grad] psi = Lambda^s P_M(grad psi) - P_M(grad Lambda^s psi), s in (0,2).
SpectralVector comm_lambda_grad_spectral(const SpectralField& psi, double s, const PaddedSpace& space);
VectorGridField comm_lambda_grad(const SpectralField& psi, double s, const PaddedSpace& space);

/// [Lambda^{-s}, a] f on the padded band.
SpectralField comm_neg_lambda_mult(const Multiplier& a, const SpectralField& f, double s, const PaddedSpace& space);
SpectralField comm_neg_lambda_mult(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space);
/// [a, Lambda^{-s}] f = -[Lambda^{-s}, a] f.
SpectralField comm_mult_neg_lambda(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space);

/// [Lambda^s, a] f on the padded band, s in (0,1).
SpectralField comm_lambda_mult(const Multiplier& a, const SpectralField& f, double s, const PaddedSpace& space);
SpectralField comm_lambda_mult(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space);

enum class BoundKind {
  LambdaGrad,     // ||a [Lambda^s, grad] f||_q <= C ||a d^{-s-1-2/p}||_q ||f||_p
  NegLambdaMult,  // ||[Lambda^{-s}, a] f||_{W^{1,r}} <= C ||a||_{W^{1,inf}} ||f||_p
  LambdaMult,     // ||[Lambda^s, a] f||_r <= C ||a||_{C^gamma} ||f||_p
  Gain,           // ||[Lambda^s, a] f||_{D(Lambda^{1-s})} <= C ||a||_{W^{1,inf}} ||f||_{D(Lambda^s)}
};

std::string to_string(BoundKind kind);

struct BoundParams {
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;  // target exponent (q for LambdaGrad, r for the multiplier bounds)
  double gamma = 1.0;
};

struct BoundReport {
  BoundKind kind = BoundKind::LambdaGrad;
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double ratio = 0.0;
  std::size_t padded_modes = 0;
  int grid_points = 0;
};

/// Nodes whose distance weight exceeds this are excluded from weighted norms.
inline constexpr double kDistanceWeightCap = 1e8;

/// Computes both sides of the selected estimate and reports lhs/rhs. Throws
/// std::invalid_argument naming the violated exponent relation.
BoundReport monitor_bounds(BoundKind kind, const Multiplier& a, const SpectralField& f, const BoundParams& params,
                           const PaddedSpace& space);

}  // namespace gsqg
