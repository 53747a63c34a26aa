#include "gsqg/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gsqg {

namespace {

template <class T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& v) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  std::memcpy(&v, buf, sizeof(T));
  return true;
}

}  // namespace

void write_snapshots(const std::string& path, const std::vector<SnapshotRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (const auto& r : records) {
    out.write("GSQG", 4);
    put<std::uint16_t>(out, kSnapshotVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(r.coeffs.size()));
    put<double>(out, r.alpha);
    put<double>(out, r.epsilon);
    put<double>(out, r.t);
    for (Eigen::Index i = 0; i < r.coeffs.size(); ++i) put<double>(out, r.coeffs[i]);
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SnapshotRecord> read_snapshots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot file '" + path + "'");
  std::vector<SnapshotRecord> records;
  while (true) {
    char magic[4];
    if (!in.read(magic, 4)) {
      if (in.gcount() == 0) break;
      throw std::runtime_error("truncated snapshot header in '" + path + "'");
    }
    if (std::memcmp(magic, "GSQG", 4) != 0)
      throw std::runtime_error("bad magic in '" + path + "' at record " + std::to_string(records.size()));
    std::uint16_t version = 0;
    std::uint32_t m = 0;
    SnapshotRecord r;
    if (!get(in, version) || !get(in, m) || !get(in, r.alpha) || !get(in, r.epsilon) || !get(in, r.t))
      throw std::runtime_error("truncated snapshot header in '" + path + "'");
    if (version != kSnapshotVersion) throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    r.coeffs.resize(m);
    for (std::uint32_t i = 0; i < m; ++i)
      if (!get(in, r.coeffs[i])) throw std::runtime_error("truncated coefficient block in '" + path + "'");
    records.push_back(std::move(r));
  }
  if (records.empty()) throw std::runtime_error("snapshot file '" + path + "' holds no records");
  return records;
}

std::vector<SnapshotRecord> trajectory_records(const Trajectory& traj) {
  std::vector<SnapshotRecord> out;
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i)
    out.push_back({traj.config.alpha, traj.config.epsilon, traj.times[i], traj.snapshots[i]});
  return out;
}

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_diagnostics_csv(const std::string& path, const std::vector<Diagnostics>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "t,l2_theta,h1_theta,hdot_psi,energy_residual,hamiltonian_residual\n";
  for (const auto& d : rows)
    out << format_double(d.t) << ',' << format_double(d.l2_theta) << ',' << format_double(d.h1_theta) << ','
        << format_double(d.hdot_psi) << ',' << format_double(d.energy_residual) << ','
        << format_double(d.hamiltonian_residual) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace gsqg
