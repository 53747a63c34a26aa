#include <doctest.h>

#include <cmath>

#include "gsqg/fractional.hpp"
#include "helpers.hpp"

using namespace gsqg;

TEST_SUITE("fractional") {
  TEST_CASE("lambda powers") {
    const auto basis = build_rectangle_basis(3);
    const std::size_t i12 = *basis->index_of({1, 2});
    const SpectralField w = SpectralField::unit(basis, i12);
    CHECK((apply_lambda_power(w, 2.0) - 5.0 * w).l2_norm() < 1e-14);

    const SpectralField f = test::random_field(basis, 2);
    CHECK((apply_lambda_power(f, 0.0) - f).l2_norm() == 0.0);
    CHECK((apply_lambda_power(apply_lambda_power(f, -0.6), 0.6) - f).l2_norm() < 1e-13);
    CHECK_THROWS(apply_lambda_power(f, NAN));
    CHECK_THROWS(apply_lambda_power(f, INFINITY));
  }

  TEST_CASE("sobolev norms") {
    const auto basis = build_rectangle_basis(2);
    CHECK(sobolev_norm(SpectralField::unit(basis, 0), 1.0) == doctest::Approx(std::sqrt(2.0)));
    const SpectralField f = test::random_field(basis, 1);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(f.l2_norm()));
    SpectralField g(basis);
    g.coeffs()[0] = 1.0;
    g.coeffs()[3] = 1.0;  // (2,2)
    CHECK(sobolev_norm(g, 2.0) == doctest::Approx(std::sqrt(68.0)));
  }

  TEST_CASE("projection") {
    const auto basis = build_leading_basis(6);
    const SpectralField f = test::random_field(basis, 3);
    CHECK((project(f, 6) - f).l2_norm() == 0.0);
    SpectralField two(basis);
    two.coeffs()[0] = 1.0;
    two.coeffs()[1] = 1.0;
    CHECK((project(two, 1) - SpectralField::unit(basis, 0)).l2_norm() == 0.0);
    CHECK_THROWS(project(f, 7));
  }

  TEST_CASE("heat semigroup") {
    const auto basis = build_leading_basis(10);
    const SpectralField f = test::random_field(basis, 4);
    CHECK((heat_semigroup(f, 0.0) - f).l2_norm() == 0.0);
    const SpectralField w = SpectralField::unit(basis, 0);
    CHECK(heat_semigroup(w, 1.0).coeffs()[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK_THROWS(heat_semigroup(f, -1.0));
  }

  TEST_CASE("heat quadrature: negative powers") {
    const auto basis = build_leading_basis(40);
    const auto rule = HeatQuadRule::default_for(*basis);
    const SpectralField w = SpectralField::unit(basis, 0);
    CHECK(lambda_neg_power_heat(w, 1.0, rule).coeffs()[0] == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-6));
    CHECK(lambda_neg_power_heat(SpectralField(basis), 1.0, rule).l2_norm() == 0.0);
    const SpectralField f = test::random_field(basis, 6);
    const SpectralField ex = apply_lambda_power(f, -0.5);
    CHECK((lambda_neg_power_heat(f, 0.5, rule) - ex).l2_norm() / ex.l2_norm() < 1e-6);
    CHECK_THROWS(lambda_neg_power_heat(f, 0.5, HeatQuadRule{}));
    CHECK_THROWS(lambda_neg_power_heat(f, 0.0, rule));
  }

  TEST_CASE("heat quadrature: positive powers") {
    const auto basis = build_leading_basis(40);
    const auto rule = HeatQuadRule::default_for(*basis);
    const SpectralField w = SpectralField::unit(basis, 0);
    CHECK(lambda_pos_power_heat(w, 1.0, rule).coeffs()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(lambda_pos_power_heat(SpectralField(basis), 1.0, rule).l2_norm() == 0.0);
    const SpectralField f = test::random_field(basis, 7);

    // Small s: the t^{-1-s/2} integrand has a long tail, so widen the window.
    HeatQuadRule wide = rule;
    wide.t_max *= 1e4;
    wide.n_nodes = 320;
    const SpectralField ex = apply_lambda_power(f, 0.1);
    CHECK((lambda_pos_power_heat(f, 0.1, wide) - ex).l2_norm() / ex.l2_norm() < 1e-5);

    CHECK_THROWS(lambda_pos_power_heat(f, 2.0, rule));
    CHECK_THROWS(lambda_pos_power_heat(f, 0.0, rule));
  }

  TEST_CASE("heat quadrature converges under node doubling") {
    const auto basis = build_leading_basis(64);
    const SpectralField f = test::random_field(basis, 8);
    for (double s : {0.3, 0.5, 1.0, 1.5}) {
      double prev = INFINITY;
      for (int n : {20, 40, 80}) {
        const SpectralField ex = apply_lambda_power(f, -s);
        const double e = (lambda_neg_power_heat(f, s, HeatQuadRule::default_for(*basis, n)) - ex).l2_norm() / ex.l2_norm();
        CHECK(e < prev);
        prev = e;
      }
    }
  }

  TEST_CASE("rule validation") {
    HeatQuadRule r{1.0, 0.5, 10};
    CHECK_THROWS(r.validate());
    r = HeatQuadRule{0.1, 1.0, 1};
    CHECK_THROWS(r.validate());
    r = HeatQuadRule{0.1, 1.0, 2};
    CHECK_NOTHROW(r.validate());
  }
}
