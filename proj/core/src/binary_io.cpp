#include "cosmoferm/binary_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "cosmoferm/errors.hpp"

namespace cosmoferm::io {

namespace {

template <class T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), sizeof(T))) {
    throw Error("binary read: unexpected end of stream");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void check_magic(std::istream& in, const char (&magic)[8]) {
  char buf[8];
  if (!in.read(buf, 8) || std::memcmp(buf, magic, 8) != 0) {
    throw Error("binary read: bad magic, expected " + std::string(magic, 8));
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  out.write(kTrajectoryMagic, 8);
  const std::uint64_t n =
      trajectory.snapshots.empty() ? 0 : trajectory.snapshots.front().size();
  put<std::uint64_t>(out, n);
  put<std::uint64_t>(out, trajectory.size());
  for (double eta : trajectory.times) put(out, eta);
  for (double a : trajectory.scale_factors) put(out, a);
  for (const CorrelationState& s : trajectory.snapshots) {
    for (const Mat2& g : s.blocks()) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          put(out, g(r, c).real());
          put(out, g(r, c).imag());
        }
      }
    }
  }
  if (!out) throw Error("trajectory write failed");
}

void write_trajectory(const std::filesystem::path& path,
                      const Trajectory& trajectory) {
  std::ofstream out = open_out(path);
  write_trajectory(out, trajectory);
}

TrajectoryDump read_trajectory(std::istream& in) {
  check_magic(in, kTrajectoryMagic);
  TrajectoryDump dump;
  dump.num_sites = get<std::uint64_t>(in);
  const auto samples = get<std::uint64_t>(in);
  dump.times.resize(samples);
  dump.scale_factors.resize(samples);
  for (auto& v : dump.times) v = get<double>(in);
  for (auto& v : dump.scale_factors) v = get<double>(in);
  dump.blocks.assign(samples, std::vector<Mat2>(dump.num_sites));
  for (auto& sample : dump.blocks) {
    for (Mat2& g : sample) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          const double re = get<double>(in);
          const double im = get<double>(in);
          g(r, c) = Complex(re, im);
        }
      }
    }
  }
  return dump;
}

void write_contour(std::ostream& out, const ContourField& field) {
  out.write(kContourMagic, 8);
  put<std::uint64_t>(out, field.num_samples());
  put<std::uint64_t>(out, static_cast<std::uint64_t>(field.length()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(field.block().first));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(field.block().num_sites));
  for (double eta : field.times()) put(out, eta);
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    put(out, field.cosmological_times().empty() ? 0.0
                                                : field.cosmological_times()[s]);
  }
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    for (Spinor sp : {Spinor::Up, Spinor::Down}) {
      for (int i = 0; i < field.length(); ++i) put(out, field.value(s, sp, i));
    }
  }
  if (!out) throw Error("contour write failed");
}

void write_contour(const std::filesystem::path& path, const ContourField& field) {
  std::ofstream out = open_out(path);
  write_contour(out, field);
}

ContourField read_contour(std::istream& in) {
  check_magic(in, kContourMagic);
  const auto samples = get<std::uint64_t>(in);
  const auto length = static_cast<int>(get<std::uint64_t>(in));
  const auto first = static_cast<int>(get<std::uint64_t>(in));
  const auto sites = static_cast<int>(get<std::uint64_t>(in));
  std::vector<double> eta(samples);
  std::vector<double> t(samples);
  for (auto& v : eta) v = get<double>(in);
  for (auto& v : t) v = get<double>(in);
  ContourField field(BlockSpec{first, length, sites}, std::move(eta), std::move(t));
  for (std::size_t s = 0; s < samples; ++s) {
    BlockContour c;
    c.values.resize(static_cast<std::size_t>(length));
    for (int sp = 0; sp < 2; ++sp) {
      for (int i = 0; i < length; ++i) {
        c.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(sp)] =
            get<double>(in);
      }
    }
    c.entropy = c.sum();
    field.set_sample(s, c);
  }
  return field;
}

}  // namespace cosmoferm::io
