#include <doctest.h>

#include <cmath>

#include "gsqg/experiments.hpp"
#include "gsqg/fractional.hpp"

using namespace gsqg;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.m = 16;
  c.dt = 2e-3;
  c.t_final = 0.5;
  c.stride = 5;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("space-time bump") {
    const SpaceTimeTest t{make_test_function("quartic"), 2.0};
    CHECK(t.chi(1.0) == doctest::Approx(1.0));
    CHECK(t.chi(0.0) == 0.0);
    CHECK(t.chi(2.0) == 0.0);
    CHECK(t.dchi(1.0) == doctest::Approx(0.0));
    const double h = 1e-6;
    for (double x : {0.3, 0.7, 1.4})
      CHECK(t.dchi(x) == doctest::Approx((t.chi(x + h) - t.chi(x - h)) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("weak residual of a steady mode") {
    SimConfig c = small_config();
    const Trajectory traj = run(c);
    const WeakResidual r = weak_residual(traj, {make_test_function("asymmetric"), c.t_final});
    CHECK(r.residual < 1e-8);
    CHECK(std::abs(r.time_term) < 1e-12);
  }

  TEST_CASE("weak residual rejects mismatched inputs") {
    SimConfig c = small_config();
    const Trajectory traj = run(c);
    CHECK_THROWS_WITH(weak_residual(traj, {make_test_function("quartic"), 1.0}), doctest::Contains("T ="));
    c.stride = 20;
    c.t_final = 0.4;
    const Trajectory coarse = run(c);
    CHECK_THROWS_WITH(weak_residual(coarse, {make_test_function("quartic"), 0.4}), doctest::Contains("stride"));
  }

  TEST_CASE("viscous term scales linearly in epsilon") {
    SimConfig c = small_config();
    c.initial = "random";
    c.epsilon = 0.01;
    Trajectory traj = run(c);
    const SpaceTimeTest t{make_test_function("tilted"), c.t_final};
    const WeakResidual a = weak_residual(traj, t, 8);
    traj.config.epsilon = 0.02;
    const WeakResidual b = weak_residual(traj, t, 8);
    CHECK(a.viscous_term != 0.0);
    CHECK(b.viscous_term == doctest::Approx(2.0 * a.viscous_term).epsilon(1e-12));
    CHECK(b.time_term == a.time_term);
    CHECK(b.nonlinear_term == a.nonlinear_term);
  }

  TEST_CASE("mode sweep") {
    SimConfig c = small_config();
    c.t_final = 0.2;
    const SweepReport steady = mode_sweep(c, {8, 16, 32});
    REQUIRE(steady.rows.size() == 3);
    CHECK(steady.at(0, "diff_nu1") < 1e-14);
    CHECK(steady.at(1, "diff_nu1") < 1e-14);
    CHECK(std::isnan(steady.at(2, "diff_nu1")));
    CHECK(steady.at(0, "tail_l2") == 0.0);

    c.initial = "random";
    c.decay = 0.6;
    const SweepReport rough = mode_sweep(c, {8, 16, 32});
    CHECK(rough.at(0, "tail_l2") > rough.at(1, "tail_l2"));
    CHECK(rough.at(1, "tail_l2") > rough.at(2, "tail_l2"));
    CHECK(rough.fits.at("tail_decay_exponent") < 0.0);

    CHECK_THROWS(mode_sweep(c, {}));
    CHECK_THROWS(mode_sweep(c, {16, 8}));
    CHECK_THROWS(mode_sweep(c, {8, 8}));
  }

  TEST_CASE("viscosity sweep") {
    SimConfig c = small_config();
    c.initial = "random";
    std::vector<Trajectory> keep;
    const SweepReport r = viscosity_sweep(c, {0.1, 0.01, 0.001}, &keep);
    REQUIRE(keep.size() == 3);
    CHECK(r.fits.at("uni_tt_all") == 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r.at(i, "uni_tt") == 1.0);
      CHECK(r.at(i, "max_l2") <= r.at(i, "l2_0") * (1 + kUniformBoundSlack));
      CHECK(r.at(i, "l2_T") < r.at(i, "l2_0"));
      CHECK(std::isfinite(r.at(i, "dtheta_hm4")));
    }
    CHECK(r.at(0, "diff_nu1") > r.at(1, "diff_nu1"));

    CHECK_THROWS(viscosity_sweep(c, {}));
    CHECK_THROWS(viscosity_sweep(c, {0.01, 0.1}));
    CHECK_THROWS(viscosity_sweep(c, {0.1, -0.1}));
  }

  TEST_CASE("weak continuity decomposition") {
    SimConfig c = small_config();
    c.initial = "random";
    c.m = 8;
    c.epsilon = 0.0;
    const Trajectory base = run(c);
    c.epsilon = 0.05;
    const Trajectory other = run(c);
    const SpaceTimeTest t{make_test_function("quartic"), c.t_final};
    const double delta = default_delta(c.alpha);

    const ContinuityTerms same = weak_continuity_terms(base, base, t, delta);
    for (double x : same.terms) CHECK(x == 0.0);
    CHECK(same.two_delta_n == 0.0);

    const ContinuityTerms d = weak_continuity_terms(base, other, t, delta);
    CHECK(d.scale > 0.0);
    CHECK(std::abs(d.sum - d.two_delta_n) < 1e-8 * d.scale);

    CHECK_THROWS(weak_continuity_terms(base, other, t, 0.5));
    c.dt = 1e-3;
    CHECK_THROWS(weak_continuity_terms(base, run(c), t, delta));
  }

  TEST_CASE("fits") {
    CHECK(log_log_slope({1, 2, 4}, {1, 0.25, 0.0625}) == doctest::Approx(-2.0));
    CHECK(std::isnan(log_log_slope({1}, {1})));
    CHECK(observed_order(16.0, 1.0) == doctest::Approx(4.0));
  }
}
