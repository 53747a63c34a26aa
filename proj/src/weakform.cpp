#include "gsqg/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsqg/fractional.hpp"

namespace gsqg {

namespace {
constexpr int kReferenceGrid = 256;
}  // namespace

double default_delta(double alpha) { return 0.5 * std::min(alpha, 1.0 - alpha); }

WeakForm::WeakForm(PaddedSpace space, TestFunction phi, double alpha)
    : space_(std::move(space)),
      phi_(std::move(phi)),
      alpha_(alpha),
      grad_phi_{phi_.field.sample(space_.grid, 1, 0), phi_.field.sample(space_.grid, 0, 1)} {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1) for the weak form");
}

void WeakForm::check_delta(double delta) const {
  const double hi = std::min(alpha_, 1.0 - alpha_);
  if (!(delta > 0.0 && delta < hi))
    throw std::invalid_argument("delta = " + std::to_string(delta) + " outside (0, min(alpha, 1 - alpha)) = (0, " +
                                std::to_string(hi) + ")");
}

SpectralField WeakForm::lift(const SpectralField& f) const {
  if (!represented_in(f.basis(), *space_.padded)) throw std::invalid_argument("psi band exceeds the padded band");
  return rebase(f, space_.padded);
}

double WeakForm::n1_bilinear(const SpectralField& a, const SpectralField& b) const {
  const SpectralVector c = comm_lambda_grad_spectral(lift(a), alpha_, space_);
  const GridField cx = synthesize(c.x, space_.grid);
  const GridField cy = synthesize(c.y, space_.grid);
  const GridField bg = synthesize(lift(b), space_.grid);
  // [Lambda^alpha, grad^perp] = (-[., d_y], [., d_x])
  GridField integrand(space_.grid);
  integrand.values = ((-cy.values.array()) * grad_phi_[0].values.array() + cx.values.array() * grad_phi_[1].values.array()) *
                     bg.values.array();
  return integrate(integrand);
}

SpectralField WeakForm::gain_commutator(int c, const SpectralField& g, double s) const {
  const LinearOp mult = multiply_op(grad_phi_[c], space_);
  return apply_lambda_power(commutator(mult, power_op(-s), g), 1.0);
}

double WeakForm::shifted_pair(const SpectralField& a, const SpectralField& b, double outer, double s,
                              double inner) const {
  const SpectralVector perp = project_perp_gradient(lift(a), space_);
  const SpectralField bi = apply_lambda_power(lift(b), inner);
  return apply_lambda_power(perp.x, outer).dot(gain_commutator(0, bi, s)) +
         apply_lambda_power(perp.y, outer).dot(gain_commutator(1, bi, s));
}

double WeakForm::n2_bilinear(const SpectralField& a, const SpectralField& b) const {
  return shifted_pair(a, b, -1.0 + alpha_, alpha_, alpha_);
}

double WeakForm::shifted_first(const SpectralField& a, const SpectralField& b, double delta) const {
  check_delta(delta);
  return shifted_pair(a, b, -1.0 + alpha_ - delta, alpha_ - delta, alpha_);
}

double WeakForm::shifted_second(const SpectralField& a, const SpectralField& b, double delta) const {
  check_delta(delta);
  return shifted_pair(a, b, -1.0 + alpha_, delta, delta);
}

double WeakForm::n2_alt(const SpectralField& psi, double delta) const {
  return shifted_first(psi, psi, delta) + shifted_second(psi, psi, delta);
}

WeakFormValue WeakForm::n_total(const SpectralField& psi) const {
  WeakFormValue v;
  v.n1 = n1(psi);
  v.n2 = n2(psi);
  v.n_total = 0.5 * (v.n1 - v.n2);
  v.alpha = alpha_;
  v.delta = default_delta(alpha_);
  v.padded_modes = space_.padded_modes();
  return v;
}

double WeakForm::classical_transport(const SpectralField& theta) const {
  // Reference quadrature on a fixed fine grid so the value does not depend on
  // the padding under study.
  const QuadratureGrid grid(std::max(kReferenceGrid, 8 * theta.basis().max_wavenumber()) - 1);
  const VectorGridField u = perp_gradient(apply_lambda_power(theta, -alpha_), grid);
  const GridField tg = synthesize(theta, grid);
  const GridField px = phi_.field.sample(grid, 1, 0), py = phi_.field.sample(grid, 0, 1);
  GridField integrand(grid);
  integrand.values = tg.values.array() * (u.x.array() * px.values.array() + u.y.array() * py.values.array());
  return integrate(integrand);
}

WeakFormBounds WeakForm::bounds(const SpectralField& psi, double delta) const {
  check_delta(delta);
  auto ratio = [](double lhs, double rhs) { return rhs > 0.0 ? std::abs(lhs) / rhs : 0.0; };
  const double l2 = psi.l2_norm();
  const double na = sobolev_norm(psi, alpha_);
  const double nad = sobolev_norm(psi, alpha_ - delta);
  const double nd = sobolev_norm(psi, delta);
  const double v2 = n2(psi);
  WeakFormBounds out;
  out.n1_ratio = ratio(n1(psi), phi_.h4_norm * l2 * l2);
  out.n2_ratio = ratio(v2, phi_.grad_w1inf_norm * na * na);
  out.n2_delta_ratio = ratio(v2, phi_.grad_w1inf_norm * (nad * na + na * nd));
  return out;
}

}  // namespace gsqg
