#include "gsqg/commutators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsqg/fractional.hpp"

namespace gsqg {

namespace {

SpectralField lift(const SpectralField& f, const PaddedSpace& space) {
  if (!represented_in(f.basis(), *space.padded))
    throw std::invalid_argument("field band exceeds the padded band (M = " + std::to_string(space.padded_modes()) + ")");
  return rebase(f, space.padded);
}

double relation_defect(double lhs, double rhs) { return std::abs(lhs - rhs); }

constexpr double kDim = 2.0;
constexpr double kRelationTol = 1e-12;

}  // namespace

PaddedSpace PaddedSpace::with_modes(std::size_t m, std::size_t padded_modes, int grid_factor) {
  if (padded_modes < m) throw std::invalid_argument("padded band M must be >= m");
  auto padded = build_leading_basis(padded_modes);
  auto base = std::make_shared<const EigenBasis>(padded->prefix(m));
  return {base, padded, QuadratureGrid::for_band(padded->max_wavenumber(), grid_factor)};
}

PaddedSpace PaddedSpace::with_factor(std::size_t m, std::size_t factor, int grid_factor) {
  if (factor < 1) throw std::invalid_argument("padding factor must be >= 1");
  return with_modes(m, factor * m, grid_factor);
}

PaddedSpace PaddedSpace::covering(std::size_t m, int grid_factor) {
  const int k2 = 2 * EigenBasis::leading(m).max_wavenumber();
  const long target = 2L * k2 * k2;
  std::size_t count = 0;
  const int reach = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(target))));
  for (int j = 1; j <= reach; ++j)
    for (int k = 1; k <= reach; ++k) {
      const long lam = static_cast<long>(j) * j + static_cast<long>(k) * k;
      if (lam < target || (lam == target && (j < k2 || (j == k2 && k <= k2)))) ++count;
    }
  return with_modes(m, count, grid_factor);
}

SpectralField commutator(const LinearOp& a, const LinearOp& b, const SpectralField& f) { return a(b(f)) - b(a(f)); }

LinearOp power_op(double s) {
  return [s](const SpectralField& f) { return apply_lambda_power(f, s); };
}

LinearOp multiply_op(const GridField& a, const PaddedSpace& space) {
  if (!(a.grid == space.grid)) throw std::invalid_argument("multiplier sampled on a different grid");
  return [a, space](const SpectralField& f) {
    GridField g = synthesize(lift(f, space), space.grid);
    g.values.array() *= a.values.array();
    return analyze(g, space.padded);
  };
}

SpectralVector project_gradient(const SpectralField& f, const PaddedSpace& space) {
  return analyze(gradient(lift(f, space), space.grid), space.padded);
}

SpectralVector project_perp_gradient(const SpectralField& f, const PaddedSpace& space) {
  auto g = project_gradient(f, space);
  return {-g.y, g.x};
}

SpectralVector comm_lambda_grad_spectral(const SpectralField& psi, double s, const PaddedSpace& space) {
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("[Lambda^s, grad] needs s in (0, 2)");
  const SpectralVector grad = project_gradient(psi, space);
  const SpectralVector grad_of_power = project_gradient(apply_lambda_power(lift(psi, space), s), space);
  return {apply_lambda_power(grad.x, s) - grad_of_power.x, apply_lambda_power(grad.y, s) - grad_of_power.y};
}

VectorGridField comm_lambda_grad(const SpectralField& psi, double s, const PaddedSpace& space) {
  const SpectralVector c = comm_lambda_grad_spectral(psi, s, space);
  return VectorGridField(space.grid, synthesize(c.x, space.grid).values, synthesize(c.y, space.grid).values);
}

SpectralField comm_neg_lambda_mult(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space) {
  if (!(s > 0.0 && s < kDim)) throw std::invalid_argument("[Lambda^{-s}, a] needs s in (0, d)");
  return commutator(power_op(-s), multiply_op(a, space), lift(f, space));
}

SpectralField comm_neg_lambda_mult(const Multiplier& a, const SpectralField& f, double s, const PaddedSpace& space) {
  return comm_neg_lambda_mult(a.field.sample(space.grid), f, s, space);
}

SpectralField comm_mult_neg_lambda(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space) {
  if (!(s > 0.0 && s < kDim)) throw std::invalid_argument("[a, Lambda^{-s}] needs s in (0, d)");
  return commutator(multiply_op(a, space), power_op(-s), lift(f, space));
}

SpectralField comm_lambda_mult(const GridField& a, const SpectralField& f, double s, const PaddedSpace& space) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("[Lambda^s, a] needs s in (0, 1)");
  return commutator(power_op(s), multiply_op(a, space), lift(f, space));
}

SpectralField comm_lambda_mult(const Multiplier& a, const SpectralField& f, double s, const PaddedSpace& space) {
  return comm_lambda_mult(a.field.sample(space.grid), f, s, space);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::LambdaGrad: return "lambda_grad";
    case BoundKind::NegLambdaMult: return "neg_lambda_mult";
    case BoundKind::LambdaMult: return "lambda_mult";
    case BoundKind::Gain: return "gain";
  }
  return "unknown";
}

BoundReport monitor_bounds(BoundKind kind, const Multiplier& a, const SpectralField& f, const BoundParams& prm,
                           const PaddedSpace& space) {
  const double s = prm.s, p = prm.p, q = prm.q;
  BoundReport rep;
  rep.kind = kind;
  rep.padded_modes = space.padded_modes();
  rep.grid_points = space.grid.size();
  const GridField a_grid = a.field.sample(space.grid);
  const SpectralField fp = lift(f, space);
  const double f_lp = lp_norm(synthesize(fp, space.grid), p);

  switch (kind) {
    case BoundKind::LambdaGrad: {
      if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("lambda_grad bound needs s in (0, 2)");
      if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("lambda_grad bound needs p, q in [1, inf]");
      VectorGridField c = comm_lambda_grad(fp, s, space);
      c.x.array() *= a_grid.values.array();
      c.y.array() *= a_grid.values.array();
      rep.lhs_norm = lp_norm(c, q);
      const double exponent = -s - 1.0 - kDim / p;
      GridField weighted(space.grid);
      for (int i = 0; i < space.grid.size(); ++i)
        for (int j = 0; j < space.grid.size(); ++j) {
          const double w = std::pow(boundary_distance(space.grid.node(i), space.grid.node(j)), exponent);
          weighted.values(i, j) = (w > kDistanceWeightCap) ? 0.0 : a_grid.values(i, j) * w;
        }
      rep.rhs_norm = lp_norm(weighted, q) * f_lp;
      break;
    }
    case BoundKind::NegLambdaMult: {
      if (!(p > 1.0 && q > 1.0) || std::isinf(p) || std::isinf(q))
        throw std::invalid_argument("neg_lambda_mult bound needs p, r in (1, inf)");
      if (p == q) {
        if (!(s > 0.0 && s < kDim / p)) throw std::invalid_argument("violated relation: s in (0, d/p) for r = p");
      } else if (!(s > 0.0 && s < kDim) ||
                 relation_defect(1.0 / p + (kDim - s) / kDim, 1.0 + 1.0 / q) > kRelationTol) {
        throw std::invalid_argument("violated relation: 1/p + (d-s)/d = 1 + 1/r with s in (0, d)");
      }
      const SpectralField c = comm_neg_lambda_mult(a_grid, fp, s, space);
      const double val = lp_norm(synthesize(c, space.grid), q);
      const double grad = lp_norm(gradient(c, space.grid), q);
      rep.lhs_norm = std::pow(std::pow(val, q) + std::pow(grad, q), 1.0 / q);
      rep.rhs_norm = a.w1inf_norm * f_lp;
      break;
    }
    case BoundKind::LambdaMult: {
      const double g = prm.gamma;
      if (!(s > 0.0 && s < 1.0) || !(g >= 0.0 && g <= 1.0))
        throw std::invalid_argument("lambda_mult bound needs s in (0, 1) and gamma in [0, 1]");
      if (!(p > 1.0 && q > 1.0) || std::isinf(p) || std::isinf(q))
        throw std::invalid_argument("lambda_mult bound needs p, r in (1, inf)");
      if (p == q) {
        const double lo = std::max(g - kDim / p, 0.0), hi = std::max(g - kDim / p + kDim, g);
        if (!(s > lo && s < hi))
          throw std::invalid_argument("violated relation: s in (max(gamma - d/p, 0), max(gamma - d/p + d, gamma))");
      } else if (!(s < g) || relation_defect(1.0 / p + (kDim + s - g) / kDim, 1.0 + 1.0 / q) > kRelationTol) {
        throw std::invalid_argument("violated relation: s < gamma and 1/p + (d+s-gamma)/d = 1 + 1/r");
      }
      const SpectralField c = comm_lambda_mult(a_grid, fp, s, space);
      rep.lhs_norm = lp_norm(synthesize(c, space.grid), q);
      rep.rhs_norm = a.holder_norm(g) * f_lp;
      break;
    }
    case BoundKind::Gain: {
      if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("violated relation: gain bound needs s in (0, d/2)");
      const SpectralField c = comm_lambda_mult(a_grid, fp, s, space);
      rep.lhs_norm = sobolev_norm(c, 1.0 - s);
      rep.rhs_norm = a.w1inf_norm * sobolev_norm(fp, s);
      break;
    }
  }
  if (rep.rhs_norm > 0.0) {
    rep.ratio = rep.lhs_norm / rep.rhs_norm;
  } else {
    rep.ratio = rep.lhs_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace gsqg
