#pragma once

// Closed-form fields with exact derivatives: sums of separable products of 1D
// factors poly(x) * (c cos(wx) + d sin(wx)). Test functions and commutator
// multipliers are built from these.

#include <string>
#include <vector>

#include "gsqg/basis.hpp"

namespace gsqg {

class Factor1D {
 public:
  Factor1D() = default;
  /// poly coefficients in ascending powers.
  Factor1D(std::vector<double> poly, double cos_coeff, double sin_coeff, double frequency);

  static Factor1D polynomial(std::vector<double> poly) { return {std::move(poly), 1.0, 0.0, 0.0}; }
  static Factor1D sine(int n) { return {{1.0}, 0.0, 1.0, static_cast<double>(n)}; }

  double derivative(int order, double x) const;
  double operator()(double x) const { return derivative(0, x); }

 private:
  std::vector<double> poly_{1.0};
  double cos_ = 1.0;
  double sin_ = 0.0;
  double freq_ = 0.0;
};

struct SeparableTerm {
  double scale = 1.0;
  Factor1D fx;
  Factor1D fy;
};

class AnalyticField {
 public:
  AnalyticField() = default;
  explicit AnalyticField(std::vector<SeparableTerm> terms) : terms_(std::move(terms)) {}

  /// The sine series of f as a sum of separable terms.
  static AnalyticField from_spectral(const SpectralField& f);
  static AnalyticField constant(double c);

  double eval(double x, double y, int dx_order = 0, int dy_order = 0) const;
  GridField sample(const QuadratureGrid& grid, int dx_order = 0, int dy_order = 0) const;
  VectorGridField sample_gradient(const QuadratureGrid& grid) const;

  const std::vector<SeparableTerm>& terms() const { return terms_; }

 private:
  std::vector<SeparableTerm> terms_;
};

/// Polynomial helpers used by the catalogs.
std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b);
/// x^p (pi - x)^q scaled to unit maximum on [0, pi].
std::vector<double> boundary_bump(int p, int q);

/// Spatial test function phi with cached norm metadata.
struct TestFunction {
  std::string name;
  AnalyticField field;
  double h4_norm = 0.0;         // ||phi||_{H^4}
  double grad_w1inf_norm = 0.0; // ||grad phi||_{W^{1,inf}} = sup|grad phi| + sup|Hess phi|
};

/// Catalog: "quartic" (separable), "asymmetric" (separable, unequal vanishing
/// orders), "tilted" (b(x) b(y) cos(x - y), non-separable).
TestFunction make_test_function(const std::string& name);
std::vector<std::string> test_function_names();

/// P_m phi as a band-limited test function on the given basis.
TestFunction project_test_function(const TestFunction& phi, const BasisPtr& basis);
SpectralField test_function_coefficients(const TestFunction& phi, const BasisPtr& basis);

TestFunction finalize_test_function(std::string name, AnalyticField field);

struct Multiplier {
  std::string name;
  AnalyticField field;
  double linf_norm = 0.0;
  double w1inf_norm = 0.0;  // sup|a| + sup|grad a|

  /// ||a||_{C^gamma} = sup|a| + sampled Hoelder seminorm of exponent gamma.
  double holder_norm(double gamma) const;
};

/// Catalog: "constant", "linear_x", "bump", "wave".
Multiplier make_multiplier(const std::string& name, double constant_value = 1.0);
std::vector<std::string> multiplier_names();
Multiplier finalize_multiplier(std::string name, AnalyticField field);

}  // namespace gsqg
