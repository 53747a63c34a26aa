// One PASS/FAIL line per acceptance criterion. Each criterion is judged from
// the observed values of named verify checks against tolerances pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gsqg/verify.hpp"

using namespace gsqg;

namespace {

struct Bound {
  std::string check;    // suite.name
  std::string relation; // "<" or ">="
  double tolerance;
};

struct Criterion {
  std::string id;
  std::string title;
  std::vector<Bound> bounds;
};

const std::vector<Criterion> kCriteria = {
    {"AC1",
     "tensor antisymmetry, zero diagonal, analytic = quadrature (m = 100)",
     {{"tensor.antisymmetry", "<", 1e-12},
      {"tensor.diagonal", "<", 1e-12},
      {"tensor.analytic_vs_quadrature", "<", 1e-12}}},
    {"AC2", "inviscid drift of ||theta|| and ||psi||_{alpha/2}", {{"galerkin.inviscid_conservation", "<", 1e-8}}},
    {"AC3",
     "viscous energy and Hamiltonian balances, order under dt halving",
     {{"galerkin.viscous_balances", "<", 1e-6}, {"galerkin.viscous_balance_order", ">=", 2.0}}},
    {"AC4",
     "heat-kernel quadrature of Lambda^{+-s}, monotone under node doubling",
     {{"fractional.heat_neg s=0.3", "<", 1e-6},
      {"fractional.heat_neg s=0.5", "<", 1e-6},
      {"fractional.heat_neg s=1", "<", 1e-6},
      {"fractional.heat_neg s=1.5", "<", 1e-6},
      {"fractional.heat_pos s=0.3", "<", 1e-6},
      {"fractional.heat_pos s=0.5", "<", 1e-6},
      {"fractional.heat_pos s=1", "<", 1e-6},
      {"fractional.heat_node_doubling_monotone", "<", 0.5}}},
    {"AC5",
     "representation identity at M = 4m, m in {8, 16, 32}; refinement monotone",
     {{"weakform.representation_identity M=4m", "<", 1e-4}, {"weakform.padding_refinement", "<", 0.5}}},
    {"AC6", "N2 against its delta-shifted form, and delta spread", {{"weakform.n2_delta_equivalence", "<", 1e-6}}},
    {"AC7", "commutator adjoint identity", {{"commutators.adjoint_identity", "<", 1e-8}}},
    {"AC8", "uniform L2 bound over the epsilon sweep", {{"experiments.uniform_l2_bound", "<", 1e-8}}},
    {"AC9",
     "weak residual at dt = 2.5e-4 and its observed order",
     {{"experiments.weak_residual", "<", 1e-5}, {"experiments.weak_residual_order", ">=", 2.0}}},
    {"AC10", "six continuity terms sum to 2 delta N", {{"experiments.continuity_decomposition", "<", 1e-8}}},
};

constexpr double kTensorSeconds = 30.0;
constexpr double kQuickSeconds = 60.0;
constexpr double kFullSeconds = 15.0 * 60.0;

bool holds(const Bound& b, double observed) {
  if (!std::isfinite(observed)) return false;
  return b.relation == "<" ? observed < b.tolerance : observed >= b.tolerance;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double timed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::vector<CheckResult> quick, full;
  const double quick_s = timed([&] { quick = run_verify({VerifyLevel::Quick, std::nullopt, 1}, nullptr); });
  const double full_s = timed([&] { full = run_verify({VerifyLevel::Full, std::nullopt, 1}, nullptr); });

  std::map<std::string, const CheckResult*> by_name;
  for (const auto& r : full) by_name[r.suite + "." + r.name] = &r;

  int failed = 0;
  for (const auto& c : kCriteria) {
    bool pass = true;
    std::string detail;
    double tensor_time = 0.0;
    for (const auto& b : c.bounds) {
      const auto it = by_name.find(b.check);
      const bool ok = it != by_name.end() && holds(b, it->second->observed);
      pass = pass && ok;
      if (!detail.empty()) detail += "; ";
      if (it == by_name.end()) {
        detail += b.check + " missing";
        continue;
      }
      detail += b.check.substr(b.check.find('.') + 1) + " " + num(it->second->observed) + " " + b.relation + " " +
                num(b.tolerance);
      if (!ok && !it->second->detail.empty()) detail += " (" + it->second->detail + ")";
      if (c.id == "AC1") tensor_time += it->second->seconds;
    }
    if (c.id == "AC1") {
      pass = pass && tensor_time < kTensorSeconds;
      detail += "; " + num(tensor_time) + " s < " + num(kTensorSeconds) + " s";
    }
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << c.id << "  " << c.title << ": " << detail << std::endl;
  }

  const bool ac11 = quick_s < kQuickSeconds && full_s < kFullSeconds;
  if (!ac11) ++failed;
  std::cout << (ac11 ? "PASS " : "FAIL ") << "AC11 verify runtimes: quick " << num(quick_s) << " s < "
            << num(kQuickSeconds) << " s; full " << num(full_s) << " s < " << num(kFullSeconds) << " s" << std::endl;

  std::cout << (11 - failed) << "/11 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
