#include <cmath>

#include "cosmoferm/errors.hpp"
#include "cosmoferm/symmetry.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace cosmoferm;
using testing_util::max_abs;

TEST_CASE("operators square to one where asserted") {
  CHECK(max_abs(time_reversal().squared() - Mat2::Identity()) == 0.0);
  CHECK(max_abs(particle_hole().squared() - Mat2::Identity()) == 0.0);
  CHECK(max_abs(sublattice().squared() - Mat2::Identity()) == 0.0);
  CHECK(discrete_symmetries().size() == 5);
}

TEST_CASE("all relations hold without a pseudo-scalar condensate") {
  const LatticeSpec spec{64, 1.0, -1.0, 0.0};
  const SymmetryReport r = symmetry_report(spec, -1.3, 0.4, 0.0);
  for (const auto& e : r.entries) {
    CHECK_MESSAGE(e.residual < 1e-12, e.name);
    CHECK(e.holds);
  }
}

TEST_CASE("a pseudo-scalar condensate breaks P, C and S but not T and CP") {
  const LatticeSpec spec{64, 1.0, -1.0, 3.0};
  const double pi = 0.3;
  const SymmetryReport r = symmetry_report(spec, -0.7, 1.26, pi);
  CHECK(r.at("T").residual < 1e-12);
  CHECK(r.at("CP").residual < 1e-12);
  CHECK(r.at("T").holds);
  CHECK(r.at("CP").holds);
  for (const char* name : {"P", "C", "S"}) {
    CHECK_MESSAGE(r.at(name).residual > 0.1 * pi, name);
    CHECK_FALSE(r.at(name).holds);
  }
  CHECK_THROWS_AS(r.at("X"), DomainError);
}

TEST_CASE("breaking residuals scale linearly with Pi") {
  const LatticeSpec spec{32, 1.0, -1.0, 3.0};
  for (const char* name : {"P", "C", "S"}) {
    const double r1 = symmetry_report(spec, -0.7, 0.5, 1e-3).at(name).residual;
    const double r2 = symmetry_report(spec, -0.7, 0.5, 1e-2).at(name).residual;
    const double r3 = symmetry_report(spec, -0.7, 0.5, 1e-1).at(name).residual;
    CHECK(r2 / r1 == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(r3 / r2 == doctest::Approx(10.0).epsilon(1e-6));
  }
}

TEST_CASE("band energy stays even when parity is broken") {
  for (double k : {0.2, 1.4, 2.8}) {
    CHECK(band_energy(k, -0.7, 1.2, 0.43, 1.0) == band_energy(-k, -0.7, 1.2, 0.43, 1.0));
  }
}

TEST_CASE("contour CP detector") {
  ContourField f(BlockSpec{0, 4, 8}, {0.0}, {});
  BlockContour c;
  c.values = {{0.1, 0.4}, {0.2, 0.3}, {0.3, 0.2}, {0.4, 0.1}};
  c.entropy = c.sum();
  f.set_sample(0, c);
  CHECK(contour_cp_check(f) == 0.0);
  f.value(0, Spinor::Up, 1) += 1e-3;
  CHECK(contour_cp_check(f) >= 1e-3 - 1e-15);
}

TEST_CASE("time-reversal condition holds at the reflection point") {
  const LatticeSpec spec{32, 1.0, -1.0, 3.0};
  const ScaleFactorProfile p(ExponentialProfile{0.7, 1.3, 0.3});
  const double mid = 0.5 * p.ramp_end();
  CHECK(time_reversal_condition(spec, p, {1.2, 0.4}, mid, mid) < 1e-14);
  CHECK(time_reversal_condition(spec, p, {1.2, 0.4}, mid + 0.3, mid) > 1e-3);
  const ScaleFactorProfile ds(DeSitterProfile{0.1, -30.0, -0.001362});
  CHECK(time_reversal_condition(spec, ds, {0.3, 0.0}, -12.0, -12.0) < 1e-14);
}

TEST_CASE("spectrum symmetry sweep") {
  ExpansionSweep sweep;
  sweep.spec = LatticeSpec{128, 1.0, -1.0, 3.0};
  const std::vector<SweepRow> rows = spectrum_symmetry_check(sweep, {100.0, 0.3}, 2);
  REQUIRE(rows.size() == 2);
  MESSAGE("asymmetry Ha=100: " << rows[0].asymmetry << ", Ha=0.3: " << rows[1].asymmetry);
  CHECK(rows[0].asymmetry < 1e-8);
  CHECK(rows[1].asymmetry > 1e-3);
  CHECK(rows[0].duration == doctest::Approx((1.0 - 0.7 / 1.3) / 70.0));
  CHECK(std::abs(rows[1].final_condensates.pi) > 0.0);

  ExpansionSweep exact = sweep;
  exact.quench_limit = 50.0;
  const std::vector<SweepRow> q = spectrum_symmetry_check(exact, {100.0}, 1);
  CHECK(q[0].exact_quench);
  CHECK(q[0].asymmetry < 1e-12);
  CHECK(default_step(100.0) == 1e-4);
  CHECK(default_step(0.3) == 1e-3);
}
