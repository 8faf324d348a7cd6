#include <cmath>

#include "cosmoferm/errors.hpp"
#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/real_space.hpp"
#include "doctest.h"
#include "fock_oracle.hpp"
#include "test_helpers.hpp"

using namespace cosmoferm;
using testing_util::max_abs;

TEST_CASE("condensates vanish without coupling") {
  const LatticeSpec spec{16, 1.0, -1.0, 0.0};
  const CorrelationState s = free_ground_state(spec, -0.7, 0.3, 0.4);
  const CondensatePair c = condensates(s);
  CHECK(c.sigma == 0.0);
  CHECK(c.pi == 0.0);
}

TEST_CASE("pseudo-scalar condensate vanishes mode by mode without a Pi term") {
  const LatticeSpec spec{32, 1.0, 0.5, 2.0};
  const CorrelationState s = free_ground_state(spec, 0.5, 0.0, 0.0);
  for (const Mat2& g : s.blocks()) {
    const Complex ty = Complex(0.0, 1.0) * (g(0, 1) - g(1, 0));
    CHECK(std::abs(ty) < 1e-15);
  }
  CHECK(std::abs(condensates(s).pi) < 1e-15);
}

TEST_CASE("deep mass limit saturates the scalar condensate") {
  // every mode contributes tr(G gamma0) -> 1, so Sigma -> g0^2 / (2 a)
  for (double a : {1.0, 0.5}) {
    const LatticeSpec spec{64, a, 1.0, 2.0};
    const CorrelationState s = free_ground_state(spec, 1e3, 0.0, 0.0);
    const double limit = spec.g0sq / (2.0 * a);
    CHECK(std::abs(condensates(s).sigma - limit) < 1e-3 * limit);
  }
}

TEST_CASE("complex traces are rejected") {
  const LatticeSpec spec{4, 1.0, 0.0, 1.0};
  std::vector<Mat2> blocks(4, Mat2::Identity() * 0.5);
  blocks[1](0, 0) += Complex(0.0, 1e-6);
  CHECK_THROWS_AS(condensates(spec, blocks), ConsistencyError);
}

TEST_CASE("free ground state is the Dirac sea projector") {
  const LatticeSpec spec{24, 0.8, -0.6, 0.0};
  for (double pi : {0.0, 0.35}) {
    const CorrelationState s = free_ground_state(spec, -0.6, 0.1, pi);
    CHECK(s.purity_defect() < 1e-14);
    CHECK(s.trace_defect() < 1e-14);
    const auto [lo, hi] = s.spectrum_bounds();
    CHECK(lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 0; n < s.size(); ++n) {
      const Mat2 h = hamiltonian_block(s.grid()[n], -0.6, 0.1, pi, spec.spacing);
      CHECK(max_abs(h * s.block(n) - s.block(n) * h) < 1e-12);
      // the filled (lower) band is 1 - Gamma: energy -eps per k
      const double eps = band_energy(s.grid()[n], -0.6, 0.1, pi, spec.spacing);
      CHECK(-(s.block(n) * h).trace().real() == doctest::Approx(-eps));
    }
  }
}

TEST_CASE("free ground state energy and correlations match Fock-space diagonalisation") {
  const int sites = 4;
  const double mass = 1.0;
  const LatticeSpec spec{sites, 1.0, mass, 0.0};
  const CorrelationState s = free_ground_state(spec, mass, 0.0, 0.0);
  const oracle::FockGround fock = oracle::fock_ground_state(oracle::wilson_real_space(sites, mass));
  CHECK(mean_field_energy(s, mass) == doctest::Approx(fock.energy).epsilon(1e-12));
  const ComplexMatrix dense = real_space_correlation(s).dense();
  CHECK(max_abs(dense - oracle::fock_correlation(fock)) < 1e-10);

  // a massless-ish point away from the gap closure too
  const LatticeSpec spec2{sites, 1.0, -0.4, 0.0};
  const CorrelationState s2 = free_ground_state(spec2, -0.4, 0.0, 0.0);
  const oracle::FockGround fock2 = oracle::fock_ground_state(oracle::wilson_real_space(sites, -0.4));
  CHECK(mean_field_energy(s2, -0.4) == doctest::Approx(fock2.energy).epsilon(1e-12));
}

TEST_CASE("gap closure on the grid is reported with its momentum") {
  const LatticeSpec spec{8, 1.0, 0.0, 0.0};
  try {
    (void)free_ground_state(spec, 0.0, 0.0, 0.0);
    FAIL("expected a degenerate ground state");
  } catch (const DegenerateGroundStateError& e) {
    CHECK(e.momentum() == 0.0);
  }
  try {
    (void)free_ground_state(spec, -2.0, 0.0, 0.0);
    FAIL("expected a degenerate ground state");
  } catch (const DegenerateGroundStateError& e) {
    CHECK(e.momentum() == doctest::Approx(-kPi));
  }
  // a finite Pi keeps the gap open
  CHECK_NOTHROW(free_ground_state(spec, 0.0, 0.0, 0.1));
}

TEST_CASE("self-consistent ground state") {
  SUBCASE("zero coupling reduces to the free ground state") {
    const LatticeSpec spec{32, 1.0, -1.0, 0.0};
    const GroundState g = self_consistent_ground_state(spec, 0.7);
    const CorrelationState f = free_ground_state(spec, -0.7, 0.0, 0.0);
    CHECK(g.condensates.sigma == 0.0);
    CHECK(g.condensates.pi == 0.0);
    for (std::size_t n = 0; n < f.size(); ++n) {
      CHECK(max_abs(g.state.block(n) - f.block(n)) == 0.0);
    }
    CHECK(g.state.scale_factor() == 0.7);
  }
  SUBCASE("returned pair is a fixed point") {
    const LatticeSpec spec{64, 1.0, -1.0, 1.0};
    const GroundState g = self_consistent_ground_state(spec, 1.3);
    const CondensatePair again = condensates(g.state);
    CHECK(std::abs(again.sigma - g.condensates.sigma) < 1e-9);
    CHECK(std::abs(again.pi - g.condensates.pi) < 1e-9);
    CHECK(std::abs(g.condensates.sigma) > 1e-2);
    CHECK(std::abs(g.condensates.pi) < 1e-8);
  }
  SUBCASE("Aoki-phase vacuum and its parity partner") {
    const LatticeSpec spec{512, 1.0, -1.0, 3.0};
    const GroundState g = self_consistent_ground_state(spec, 0.7);
    CHECK(std::abs(g.condensates.pi) > 0.1);
    // regression values of this implementation
    CHECK(g.condensates.sigma == doctest::Approx(1.2604).epsilon(1e-3));
    CHECK(std::abs(g.condensates.pi) == doctest::Approx(0.4318).epsilon(1e-3));

    GapOptions plus;
    plus.pi_seeds = {0.1};
    GapOptions minus;
    minus.pi_seeds = {-0.1};
    const GroundState gp = self_consistent_ground_state(spec, 0.7, plus);
    const GroundState gm = self_consistent_ground_state(spec, 0.7, minus);
    CHECK(gp.condensates.pi == doctest::Approx(-gm.condensates.pi).epsilon(1e-9));
    CHECK(gp.condensates.sigma == doctest::Approx(gm.condensates.sigma).epsilon(1e-9));
    CHECK(gp.energy == doctest::Approx(gm.energy).epsilon(1e-12));

    GapOptions symmetric;
    symmetric.pi_seeds = {0.0};
    const GroundState g0 = self_consistent_ground_state(spec, 0.7, symmetric);
    CHECK(g0.condensates.pi == 0.0);
    CHECK(g0.energy > g.energy);
  }
  SUBCASE("errors") {
    const LatticeSpec spec{64, 1.0, -1.0, 3.0};
    GapOptions bad;
    bad.mixing = 0.0;
    CHECK_THROWS_AS(self_consistent_ground_state(spec, 0.7, bad), DomainError);
    bad.mixing = 0.5;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(self_consistent_ground_state(spec, 0.7, bad), DomainError);
    GapOptions short_run;
    short_run.max_iterations = 2;
    CHECK_THROWS_AS(self_consistent_ground_state(spec, 0.7, short_run), ConvergenceError);
  }
}

TEST_CASE("mass quench preparation") {
  const LatticeSpec spec{32, 1.0, 1.0, 0.0};
  const GroundState same = mass_quench_prepare(spec, 1.0, 1.0);
  const GroundState vac = self_consistent_ground_state(spec, 1.0);
  for (std::size_t n = 0; n < vac.state.size(); ++n) {
    CHECK(max_abs(same.state.block(n) - vac.state.block(n)) == 0.0);
  }
  const GroundState q = mass_quench_prepare(spec, -1.0, 1.0);
  CHECK(q.state.spec().mass == 1.0);
  CHECK(q.state.purity_defect() < 1e-14);
  const LatticeSpec interacting{32, 1.0, 1.0, 2.0};
  const GroundState qi = mass_quench_prepare(interacting, -1.0, 1.0 / 3.0);
  CHECK(qi.state.spec().mass == 1.0);
  CHECK(qi.state.purity_defect() < 1e-12);
  CHECK(qi.state.scale_factor() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("state construction checks block count") {
  const LatticeSpec spec{4, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(CorrelationState(spec, std::vector<Mat2>(3), 0.0, 1.0), DomainError);
}
