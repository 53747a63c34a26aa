#pragma once

#include <cstdint>
#include <random>

#include "gsqg/basis.hpp"

namespace gsqg::test {

inline SpectralField random_field(const BasisPtr& basis, std::uint64_t seed, double decay = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField f(basis);
  for (std::size_t i = 0; i < basis->size(); ++i)
    f.coeffs()[static_cast<Eigen::Index>(i)] = normal(rng) * std::pow(basis->eigenvalue(i) / 2.0, -decay);
  return f;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gsqg::test
