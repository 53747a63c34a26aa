#include <doctest.h>

#include <cmath>

#include "gsqg/commutators.hpp"
#include "gsqg/fractional.hpp"
#include "helpers.hpp"

using namespace gsqg;

namespace {

SpectralField padded_random(const PaddedSpace& space, std::uint64_t seed) {
  return rebase(test::random_field(space.base, seed), space.padded);
}

double vec_norm(const SpectralVector& v) { return std::sqrt(v.dot(v)); }

}  // namespace

TEST_SUITE("commutators") {
  TEST_CASE("padded spaces") {
    const PaddedSpace s = PaddedSpace::with_factor(16, 4);
    CHECK(s.m() == 16);
    CHECK(s.padded_modes() == 64);
    CHECK(s.base->is_prefix_of(*s.padded));
    CHECK(s.grid.size() + 1 >= 3 * s.padded->max_wavenumber());
    const PaddedSpace c = PaddedSpace::covering(16);
    const int k2 = 2 * s.base->max_wavenumber();
    for (int j = 1; j <= k2; ++j)
      for (int k = 1; k <= k2; ++k) CHECK(c.padded->index_of({j, k}).has_value());
    CHECK_THROWS(PaddedSpace::with_modes(16, 8));
  }

  TEST_CASE("lambda-gradient commutator") {
    const PaddedSpace space = PaddedSpace::with_factor(8, 4);
    CHECK(vec_norm(comm_lambda_grad_spectral(SpectralField(space.padded), 0.5, space)) == 0.0);

    // Lambda^0 is the identity, so the commutator vanishes linearly as s -> 0.
    const SpectralField w = SpectralField::unit(space.padded, 0);
    const double n1 = vec_norm(comm_lambda_grad_spectral(w, 1e-4, space));
    const double n2 = vec_norm(comm_lambda_grad_spectral(w, 2e-4, space));
    CHECK(n1 < 1e-3);
    CHECK(n2 / n1 == doctest::Approx(2.0).epsilon(1e-3));

    // w_(1,1), s = 1: the x-component on w_(2,1) is (sqrt 5 - sqrt 2) <d_x w_11, w_21> = (sqrt 5 - sqrt 2) 8 / (3 pi).
    // P_M(grad psi) is taken on the grid, so the coefficient approaches this under padding refinement.
    const double exact = (std::sqrt(5.0) - std::sqrt(2.0)) * 8.0 / (3.0 * kPi);
    double prev = INFINITY;
    for (std::size_t factor : {4, 8, 16}) {
      const PaddedSpace sp = PaddedSpace::with_factor(8, factor);
      const SpectralVector c = comm_lambda_grad_spectral(SpectralField::unit(sp.padded, 0), 1.0, sp);
      const Eigen::Index i21 = static_cast<Eigen::Index>(*sp.padded->index_of({2, 1}));
      const double err = std::abs(c.x.coeffs()[i21] - exact);
      CHECK(err < 1e-2);
      CHECK(err < prev);
      CHECK(std::abs(c.y.coeffs()[i21]) < 1e-14);
      prev = err;
    }

    CHECK_THROWS(comm_lambda_grad_spectral(w, 2.0, space));
    CHECK_THROWS(comm_lambda_grad_spectral(SpectralField::unit(build_leading_basis(200), 0), 0.5, space));
  }

  TEST_CASE("negative-power multiplier commutator") {
    const PaddedSpace space = PaddedSpace::with_factor(8, 4);
    const SpectralField f = padded_random(space, 1);
    CHECK(comm_neg_lambda_mult(make_multiplier("constant"), f, 0.7, space).l2_norm() < 1e-13);

    // a = x, f = w_(1,1), s = 1 against a 4x finer product grid.
    const Multiplier ax = make_multiplier("linear_x");
    const SpectralField w = SpectralField::unit(space.padded, 0);
    const PaddedSpace dense = PaddedSpace::with_modes(8, space.padded_modes(), 4 * PaddedSpace::kGridFactor);
    const SpectralField coarse = comm_neg_lambda_mult(ax, w, 1.0, space);
    const SpectralField oracle = comm_neg_lambda_mult(ax, SpectralField::unit(dense.padded, 0), 1.0, dense);
    CHECK((coarse - oracle).l2_norm() < 1e-3 * oracle.l2_norm());

    // [a, Lambda^{-s}] = -[Lambda^{-s}, a].
    const GridField ag = ax.field.sample(space.grid);
    CHECK((comm_mult_neg_lambda(ag, f, 0.4, space) + comm_neg_lambda_mult(ag, f, 0.4, space)).l2_norm() < 1e-14);
  }

  TEST_CASE("commutator vanishes at the boundary") {
    const Multiplier a = make_multiplier("wave");
    double prev = INFINITY;
    for (std::size_t m : {8, 16, 32}) {
      const PaddedSpace space = PaddedSpace::with_factor(m, 4);
      const SpectralField c = comm_neg_lambda_mult(a, SpectralField::unit(space.padded, 0), 0.5, space);
      const GridField g = synthesize(c, space.grid);
      const double h = space.grid.spacing() * 1.01;
      double edge = 0.0;
      for (int i = 0; i < space.grid.size(); ++i)
        for (int j = 0; j < space.grid.size(); ++j)
          if (boundary_distance(space.grid.node(i), space.grid.node(j)) < h) edge = std::max(edge, std::abs(g.values(i, j)));
      CHECK(edge < prev);
      prev = edge;
    }
  }

  TEST_CASE("positive-power multiplier commutator") {
    const PaddedSpace space = PaddedSpace::with_factor(8, 4);
    const SpectralField f = padded_random(space, 2);
    CHECK(comm_lambda_mult(make_multiplier("constant", 3.0), f, 0.5, space).l2_norm() < 1e-13);
    CHECK_THROWS(comm_lambda_mult(make_multiplier("bump"), f, 1.0, space));
    CHECK_THROWS(comm_lambda_mult(make_multiplier("bump"), f, 0.0, space));

    for (double s : {0.3, 0.7})
      for (const auto& name : multiplier_names()) {
        const Multiplier a = make_multiplier(name);
        const SpectralField lhs = apply_lambda_power(comm_lambda_mult(a, f, s, space), -s);
        const SpectralField rhs = comm_mult_neg_lambda(a.field.sample(space.grid), apply_lambda_power(f, s), s, space);
        CHECK((lhs - rhs).l2_norm() < 1e-8 * f.l2_norm());
      }

    // f = w_1, a = x, s = 0.5 against a 4x finer product grid.
    const Multiplier ax = make_multiplier("linear_x");
    const PaddedSpace dense = PaddedSpace::with_modes(8, space.padded_modes(), 4 * PaddedSpace::kGridFactor);
    const SpectralField coarse = comm_lambda_mult(ax, SpectralField::unit(space.padded, 0), 0.5, space);
    const SpectralField oracle = comm_lambda_mult(ax, SpectralField::unit(dense.padded, 0), 0.5, dense);
    CHECK((coarse - oracle).l2_norm() < 1e-3 * oracle.l2_norm());
  }

  TEST_CASE("bilinearity and bracket antisymmetry") {
    const PaddedSpace space = PaddedSpace::with_factor(8, 4);
    const SpectralField f = padded_random(space, 3), g = padded_random(space, 4);
    const GridField a = make_multiplier("bump").field.sample(space.grid);
    const GridField b = make_multiplier("wave").field.sample(space.grid);
    GridField ab(space.grid);
    ab.values = 2.0 * a.values - 0.5 * b.values;
    const double s = 0.6;
    const SpectralField lin_f =
        comm_neg_lambda_mult(a, 1.5 * f - 2.0 * g, s, space) -
        (1.5 * comm_neg_lambda_mult(a, f, s, space) - 2.0 * comm_neg_lambda_mult(a, g, s, space));
    const SpectralField lin_a =
        comm_neg_lambda_mult(ab, f, s, space) -
        (2.0 * comm_neg_lambda_mult(a, f, s, space) - 0.5 * comm_neg_lambda_mult(b, f, s, space));
    CHECK(lin_f.l2_norm() < 1e-12);
    CHECK(lin_a.l2_norm() < 1e-12);

    const LinearOp p = power_op(0.3), m = multiply_op(a, space);
    CHECK((commutator(p, m, f) + commutator(m, p, f)).l2_norm() == 0.0);
  }

  TEST_CASE("bound monitors") {
    const PaddedSpace space = PaddedSpace::with_factor(8, 4);
    const SpectralField f = padded_random(space, 5);
    const BoundReport zero = monitor_bounds(BoundKind::NegLambdaMult, make_multiplier("constant", 0.0), f,
                                            BoundParams{0.5, 2.0, 2.0, 1.0}, space);
    CHECK(zero.lhs_norm == 0.0);
    CHECK(zero.ratio == 0.0);

    double lo = INFINITY, hi = 0.0;
    for (std::uint64_t seed = 10; seed < 30; ++seed) {
      const BoundReport r = monitor_bounds(BoundKind::LambdaGrad, make_multiplier("bump"), padded_random(space, seed),
                                           BoundParams{0.5, 2.0, 2.0, 1.0}, space);
      REQUIRE(std::isfinite(r.ratio));
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo < 100.0);

    std::vector<double> gains;
    for (std::size_t factor : {2, 4, 8}) {
      const PaddedSpace sp = PaddedSpace::with_factor(8, factor);
      gains.push_back(monitor_bounds(BoundKind::Gain, make_multiplier("bump"), padded_random(sp, 6),
                                     BoundParams{0.5, 2.0, 2.0, 1.0}, sp)
                          .ratio);
    }
    for (double g : gains) CHECK(std::isfinite(g));
    CHECK(*std::max_element(gains.begin(), gains.end()) / *std::min_element(gains.begin(), gains.end()) < 10.0);

    CHECK_THROWS_WITH_AS(monitor_bounds(BoundKind::NegLambdaMult, make_multiplier("bump"), f,
                                        BoundParams{1.5, 2.0, 2.0, 1.0}, space),
                         doctest::Contains("d/p"), std::invalid_argument);
    CHECK_THROWS_AS(monitor_bounds(BoundKind::LambdaMult, make_multiplier("bump"), f, BoundParams{0.9, 2.0, 4.0, 0.5},
                                   space),
                    std::invalid_argument);
  }
}
