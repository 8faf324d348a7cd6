#include <cstring>
#include <sstream>

#include "cosmoferm/binary_io.hpp"
#include "cosmoferm/errors.hpp"
#include "doctest.h"

using namespace cosmoferm;

TEST_CASE("trajectory dump round trip and layout") {
  const LatticeSpec spec{8, 1.0, 1.0, 0.0};
  const GroundState q = mass_quench_prepare(spec, -1.0, 1.0);
  EvolutionOptions opts;
  opts.step = 1e-2;
  opts.sample_every = 10;
  const Trajectory t = evolve(q.state, ScaleFactorProfile(StaticProfile{1.0}), 0.5, opts);
  std::stringstream buf;
  io::write_trajectory(buf, t);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 8 + 16 + t.size() * 16 + t.size() * 8 * 4 * 16);
  CHECK(bytes.substr(0, 8) == "CFTRAJ01");
  std::uint64_t n = 0;
  std::memcpy(&n, bytes.data() + 8, 8);
  CHECK(n == 8);
  // first block entry of the first sample, real part
  double re = 0.0;
  std::memcpy(&re, bytes.data() + 24 + t.size() * 16, 8);
  CHECK(re == t.snapshots[0].block(0)(0, 0).real());

  const io::TrajectoryDump d = io::read_trajectory(buf);
  CHECK(d.num_sites == 8);
  CHECK(d.times == t.times);
  CHECK(d.scale_factors == t.scale_factors);
  for (std::size_t s = 0; s < t.size(); ++s) {
    for (std::size_t k = 0; k < 8; ++k) CHECK(d.blocks[s][k] == t.snapshots[s].block(k));
  }
}

TEST_CASE("contour grid round trip") {
  ContourField f(BlockSpec{3, 2, 16}, {0.0, 1.5}, {0.0, 2.5});
  BlockContour c;
  c.values = {{0.1, 0.2}, {0.3, 0.4}};
  c.entropy = c.sum();
  f.set_sample(1, c);
  std::stringstream buf;
  io::write_contour(buf, f);
  CHECK(buf.str().size() == 8 + 32 + 2 * 16 + 2 * 2 * 2 * 8);
  const ContourField g = io::read_contour(buf);
  CHECK(g.block().first == 3);
  CHECK(g.block().num_sites == 16);
  CHECK(g.times() == f.times());
  CHECK(g.cosmological_times() == f.cosmological_times());
  CHECK(g.value(1, Spinor::Down, 1) == 0.4);
  CHECK(g.value(1, Spinor::Up, 0) == 0.1);
}

TEST_CASE("corrupt input is rejected") {
  std::stringstream bad("NOTMAGIC");
  CHECK_THROWS_AS(io::read_trajectory(bad), Error);
  std::stringstream truncated(std::string("CFCONT01\x02", 9));
  CHECK_THROWS_AS(io::read_contour(truncated), Error);
}
