#include "gsqg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsqg {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double poly_derivative(const std::vector<double>& c, int order, double x) {
  double sum = 0.0;
  double xp = 1.0;
  for (std::size_t p = static_cast<std::size_t>(order); p < c.size(); ++p) {
    double falling = 1.0;
    for (int r = 0; r < order; ++r) falling *= static_cast<double>(p) - r;
    sum += c[p] * falling * xp;
    xp *= x;
  }
  return sum;
}

// Sample points on the closed square, boundary included.
constexpr int kClosedSamples = 160;

double closed_node(int i, int n) { return kPi * i / n; }

template <class Fn>
double closed_trapezoid(Fn&& fn, int n) {
  const double h = kPi / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wx = (i == 0 || i == n) ? 0.5 : 1.0;
    for (int j = 0; j <= n; ++j) {
      const double wy = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += wx * wy * fn(closed_node(i, n), closed_node(j, n));
    }
  }
  return sum * h * h;
}

template <class Fn>
double closed_max(Fn&& fn, int n) {
  double m = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) m = std::max(m, fn(closed_node(i, n), closed_node(j, n)));
  return m;
}

}  // namespace

Factor1D::Factor1D(std::vector<double> poly, double cos_coeff, double sin_coeff, double frequency)
    : poly_(std::move(poly)), cos_(cos_coeff), sin_(sin_coeff), freq_(frequency) {
  if (poly_.empty()) poly_.push_back(0.0);
}

double Factor1D::derivative(int order, double x) const {
  // Leibniz rule on poly * harmonic
  double sum = 0.0;
  for (int k = 0; k <= order; ++k) {
    const int r = order - k;
    const double pk = poly_derivative(poly_, k, x);
    if (pk == 0.0) continue;
    double hr;
    if (freq_ == 0.0) {
      hr = (r == 0) ? cos_ : 0.0;
    } else {
      const double phase = freq_ * x + r * kPi / 2.0;
      hr = std::pow(freq_, r) * (cos_ * std::cos(phase) + sin_ * std::sin(phase));
    }
    sum += binomial(order, k) * pk * hr;
  }
  return sum;
}

AnalyticField AnalyticField::from_spectral(const SpectralField& f) {
  std::vector<SeparableTerm> terms;
  const auto& basis = f.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double c = f.coeffs()[static_cast<Eigen::Index>(i)];
    if (c == 0.0) continue;
    terms.push_back({c * 2.0 / kPi, Factor1D::sine(basis.mode(i).j), Factor1D::sine(basis.mode(i).k)});
  }
  return AnalyticField(std::move(terms));
}

AnalyticField AnalyticField::constant(double c) {
  return AnalyticField({{c, Factor1D::polynomial({1.0}), Factor1D::polynomial({1.0})}});
}

double AnalyticField::eval(double x, double y, int dx_order, int dy_order) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.scale * t.fx.derivative(dx_order, x) * t.fy.derivative(dy_order, y);
  return sum;
}

GridField AnalyticField::sample(const QuadratureGrid& grid, int dx_order, int dy_order) const {
  const int n = grid.size();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd ux(n), uy(n);
  for (const auto& t : terms_) {
    for (int i = 0; i < n; ++i) {
      ux[i] = t.fx.derivative(dx_order, grid.node(i));
      uy[i] = t.fy.derivative(dy_order, grid.node(i));
    }
    values.noalias() += t.scale * ux * uy.transpose();
  }
  return GridField(grid, std::move(values));
}

VectorGridField AnalyticField::sample_gradient(const QuadratureGrid& grid) const {
  return VectorGridField(grid, sample(grid, 1, 0).values, sample(grid, 0, 1).values);
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> boundary_bump(int p, int q) {
  std::vector<double> c{1.0};
  for (int i = 0; i < p; ++i) c = poly_multiply(c, {0.0, 1.0});
  for (int i = 0; i < q; ++i) c = poly_multiply(c, {kPi, -1.0});
  const double xm = kPi * p / (p + q);
  const double peak = std::pow(xm, p) * std::pow(kPi - xm, q);
  for (auto& v : c) v /= peak;
  return c;
}

TestFunction finalize_test_function(std::string name, AnalyticField field) {
  TestFunction phi{std::move(name), std::move(field), 0.0, 0.0};
  const auto& f = phi.field;
  double h4 = 0.0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      h4 += closed_trapezoid([&](double x, double y) { return std::pow(f.eval(x, y, a, b), 2); }, kClosedSamples);
  phi.h4_norm = std::sqrt(h4);
  const double grad = closed_max([&](double x, double y) { return std::hypot(f.eval(x, y, 1, 0), f.eval(x, y, 0, 1)); },
                                 kClosedSamples);
  const double hess = closed_max(
      [&](double x, double y) {
        const double xx = f.eval(x, y, 2, 0), xy = f.eval(x, y, 1, 1), yy = f.eval(x, y, 0, 2);
        return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
      },
      kClosedSamples);
  phi.grad_w1inf_norm = grad + hess;
  return phi;
}

std::vector<std::string> test_function_names() { return {"quartic", "asymmetric", "tilted"}; }

TestFunction make_test_function(const std::string& name) {
  if (name == "quartic") {
    const auto b = boundary_bump(4, 4);
    return finalize_test_function(name, AnalyticField({{1.0, Factor1D::polynomial(b), Factor1D::polynomial(b)}}));
  }
  if (name == "asymmetric") {
    return finalize_test_function(
        name, AnalyticField({{1.0, Factor1D::polynomial(boundary_bump(5, 4)), Factor1D::polynomial(boundary_bump(4, 6))}}));
  }
  if (name == "tilted") {
    // b(x) b(y) cos(x - y) = b cos x * b cos y + b sin x * b sin y
    const auto b = boundary_bump(4, 4);
    return finalize_test_function(name, AnalyticField({{1.0, Factor1D(b, 1.0, 0.0, 1.0), Factor1D(b, 1.0, 0.0, 1.0)},
                                                       {1.0, Factor1D(b, 0.0, 1.0, 1.0), Factor1D(b, 0.0, 1.0, 1.0)}}));
  }
  throw std::invalid_argument("unknown test function '" + name + "' (available: quartic, asymmetric, tilted)");
}

SpectralField test_function_coefficients(const TestFunction& phi, const BasisPtr& basis) {
  // phi vanishes to high order at the boundary, so the rectangle rule on a
  // fine grid is accurate well below double-precision noise of the results.
  const QuadratureGrid fine(std::max(255, 4 * basis->max_wavenumber()));
  return analyze(phi.field.sample(fine), basis);
}

TestFunction project_test_function(const TestFunction& phi, const BasisPtr& basis) {
  return finalize_test_function("P_" + std::to_string(basis->size()) + "(" + phi.name + ")",
                                AnalyticField::from_spectral(test_function_coefficients(phi, basis)));
}

double Multiplier::holder_norm(double gamma) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("Hoelder exponent must lie in [0, 1]");
  constexpr int n = 32;
  std::vector<double> xs, ys, vs;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      xs.push_back(closed_node(i, n));
      ys.push_back(closed_node(j, n));
      vs.push_back(field.eval(xs.back(), ys.back()));
    }
  double seminorm = 0.0;
  for (std::size_t p = 0; p < vs.size(); ++p)
    for (std::size_t q = p + 1; q < vs.size(); ++q) {
      const double d = std::hypot(xs[p] - xs[q], ys[p] - ys[q]);
      seminorm = std::max(seminorm, std::abs(vs[p] - vs[q]) / std::pow(d, gamma));
    }
  return linf_norm + seminorm;
}

Multiplier finalize_multiplier(std::string name, AnalyticField field) {
  Multiplier a{std::move(name), std::move(field), 0.0, 0.0};
  const auto& f = a.field;
  a.linf_norm = closed_max([&](double x, double y) { return std::abs(f.eval(x, y)); }, kClosedSamples);
  const double grad = closed_max([&](double x, double y) { return std::hypot(f.eval(x, y, 1, 0), f.eval(x, y, 0, 1)); },
                                 kClosedSamples);
  a.w1inf_norm = a.linf_norm + grad;
  return a;
}

std::vector<std::string> multiplier_names() { return {"constant", "linear_x", "bump", "wave"}; }

Multiplier make_multiplier(const std::string& name, double constant_value) {
  if (name == "constant") return finalize_multiplier(name, AnalyticField::constant(constant_value));
  if (name == "linear_x")
    return finalize_multiplier(name, AnalyticField({{1.0, Factor1D::polynomial({0.0, 1.0}), Factor1D::polynomial({1.0})}}));
  if (name == "bump") {
    const auto b = boundary_bump(4, 4);
    return finalize_multiplier(name, AnalyticField({{1.0, Factor1D::polynomial(b), Factor1D::polynomial(b)}}));
  }
  if (name == "wave") {
    // 1 + 0.5 sin(x) cos(2y)
    return finalize_multiplier(name, AnalyticField({{1.0, Factor1D::polynomial({1.0}), Factor1D::polynomial({1.0})},
                                                    {0.5, Factor1D({1.0}, 0.0, 1.0, 1.0), Factor1D({1.0}, 1.0, 0.0, 2.0)}}));
  }
  throw std::invalid_argument("unknown multiplier '" + name + "' (available: constant, linear_x, bump, wave)");
}

}  // namespace gsqg
