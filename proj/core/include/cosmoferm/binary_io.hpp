#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "cosmoferm/entanglement.hpp"
#include "cosmoferm/gaussian_state.hpp"

namespace cosmoferm::io {

// Trajectory dump, little endian:
//   char[8]  magic "CFTRAJ01"
//   uint64   N_S
//   uint64   sample count S
//   float64  eta[S]
//   float64  a[S]
//   complex128 blocks[S][N_S][2][2]    (k-major, row-major 2x2, re then im)
inline constexpr char kTrajectoryMagic[8] = {'C', 'F', 'T', 'R',
                                             'A', 'J', '0', '1'};

// Contour grid, little endian:
//   char[8]  magic "CFCONT01"
//   uint64   sample count S
//   uint64   block length L
//   uint64   block first site
//   uint64   N_S
//   float64  eta[S]
//   float64  t[S]
//   float64  values[S][2][L]           (spinor-major: up leg, then down leg)
inline constexpr char kContourMagic[8] = {'C', 'F', 'C', 'O',
                                          'N', 'T', '0', '1'};

void write_trajectory(std::ostream& out, const Trajectory& trajectory);
void write_trajectory(const std::filesystem::path& path,
                      const Trajectory& trajectory);

struct TrajectoryDump {
  std::uint64_t num_sites = 0;
  std::vector<double> times;
  std::vector<double> scale_factors;
  std::vector<std::vector<Mat2>> blocks;
};
TrajectoryDump read_trajectory(std::istream& in);

void write_contour(std::ostream& out, const ContourField& field);
void write_contour(const std::filesystem::path& path, const ContourField& field);
ContourField read_contour(std::istream& in);

}  // namespace cosmoferm::io
