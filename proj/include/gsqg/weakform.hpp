#pragma once

// Commutator representations of the transport nonlinearity int theta u.grad(phi)
// in terms of the stream function psi = Lambda^{-alpha} theta.

#include <array>

#include "gsqg/analytic.hpp"
#include "gsqg/commutators.hpp"

namespace gsqg {

struct WeakFormValue {
  double n1 = 0.0;
  double n2 = 0.0;
  double n_total = 0.0;  // (n1 - n2) / 2
  double alpha = 0.0;
  double delta = 0.0;
  std::size_t padded_modes = 0;
};

/// Observed ratios for the three bound monitors of the representation.
struct WeakFormBounds {
  double n1_ratio = 0.0;        // |N1| / (||phi||_{H^4} ||psi||^2)
  double n2_ratio = 0.0;        // |N2| / (||grad phi||_{W^{1,inf}} ||psi||^2_{D(Lambda^alpha)})
  double n2_delta_ratio = 0.0;  // |N2| / (||grad phi|| (||psi||_{a-d} ||psi||_a + ||psi||_a ||psi||_d))
};

double default_delta(double alpha);

/// Evaluator bound to a padded space, a test function and alpha. All
/// functionals take psi on any band contained in the padded band.
class WeakForm {
 public:
  WeakForm(PaddedSpace space, TestFunction phi, double alpha);

  const PaddedSpace& space() const { return space_; }
  const TestFunction& phi() const { return phi_; }
  double alpha() const { return alpha_; }

  /// N1(a, b) = int [Lambda^alpha, grad^perp] a . grad(phi) b.
  double n1_bilinear(const SpectralField& a, const SpectralField& b) const;
  double n1(const SpectralField& psi) const { return n1_bilinear(psi, psi); }

  /// N2(a, b) = <Lambda^{-1+alpha} grad^perp a, Lambda [grad phi, Lambda^{-alpha}] Lambda^alpha b>.
  double n2_bilinear(const SpectralField& a, const SpectralField& b) const;
  double n2(const SpectralField& psi) const { return n2_bilinear(psi, psi); }

  /// First and second integrals of the delta-shifted representation.
  double shifted_first(const SpectralField& a, const SpectralField& b, double delta) const;
  double shifted_second(const SpectralField& a, const SpectralField& b, double delta) const;
  double n2_alt(const SpectralField& psi, double delta) const;

  WeakFormValue n_total(const SpectralField& psi) const;

  /// int theta (grad^perp Lambda^{-alpha} theta) . grad(phi) with exact
  /// gradients of the band-limited factors.
  double classical_transport(const SpectralField& theta) const;

  WeakFormBounds bounds(const SpectralField& psi, double delta) const;

  void check_delta(double delta) const;

 private:
  SpectralField lift(const SpectralField& f) const;
  /// Lambda [grad_c phi, Lambda^{-s}] g for component c.
  SpectralField gain_commutator(int c, const SpectralField& g, double s) const;
  double shifted_pair(const SpectralField& a, const SpectralField& b, double outer, double s, double inner) const;

  PaddedSpace space_;
  TestFunction phi_;
  double alpha_;
  std::array<GridField, 2> grad_phi_;
};

}  // namespace gsqg
