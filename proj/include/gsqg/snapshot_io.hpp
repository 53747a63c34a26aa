#pragma once

// Binary snapshot records and the diagnostics CSV.
//
// Record layout (little-endian): "GSQG", u16 version, u32 m, f64 alpha,
// f64 epsilon, f64 t, then m f64 coefficients. Files hold records back to back.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsqg/galerkin.hpp"

namespace gsqg {

inline constexpr std::uint16_t kSnapshotVersion = 1;

struct SnapshotRecord {
  double alpha = 0.0;
  double epsilon = 0.0;
  double t = 0.0;
  Eigen::VectorXd coeffs;
};

void write_snapshots(const std::string& path, const std::vector<SnapshotRecord>& records);
std::vector<SnapshotRecord> read_snapshots(const std::string& path);

std::vector<SnapshotRecord> trajectory_records(const Trajectory& traj);

/// 17 significant digits, round-trips exactly.
std::string format_double(double x);

void write_diagnostics_csv(const std::string& path, const std::vector<Diagnostics>& rows);

}  // namespace gsqg
