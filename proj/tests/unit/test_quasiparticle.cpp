#include <cmath>

#include "cosmoferm/errors.hpp"
#include "cosmoferm/quasiparticle.hpp"
#include "doctest.h"

using namespace cosmoferm;

namespace {

QPInput mass_quench_input(int n, double block, int min_points = 4096) {
  const LatticeSpec spec{n, 1.0, 1.0, 0.0};
  const GroundState q = mass_quench_prepare(spec, -1.0, 1.0);
  const ProductionSpectrum sp = bogoliubov_spectrum(q.state, instantaneous_reference(q.state, 1.0));
  const Dispersion d = dispersion_and_velocity(spec, 1.0, 0.0, 0.0);
  std::vector<QPRecord> rec;
  for (std::size_t i = 0; i < sp.records.size(); ++i) {
    rec.push_back({sp.records[i].k, d.points[i].velocity, mode_pair_entropy(sp.records[i].beta_sq).pair});
  }
  return QPInput(rec, block, 1.0, min_points);
}

}  // namespace

TEST_CASE("entropy growth limits") {
  const QPInput in = mass_quench_input(128, 32.0);
  CHECK(in.quadrature_points() >= 4096);
  CHECK(qp_entropy(in, 0.0) == 0.0);
  CHECK(qp_entropy(in, 1e6) == doctest::Approx(qp_plateau(in)).epsilon(1e-9));
  CHECK(qp_plateau(in) == doctest::Approx(32.0 * in.integrate_all()));
  double prev = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double s = qp_entropy(in, 0.2 * i);
    CHECK(s >= prev - 1e-12);
    prev = s;
  }
  // early times: S = 2 eta int v s
  const double eta = 0.5;
  const double slope_integral = (qp_entropy(in, eta) / eta);
  CHECK(qp_entropy(in, 2 * eta) == doctest::Approx(2 * eta * slope_integral).epsilon(1e-12));
  CHECK_THROWS_AS(qp_entropy(in, -1.0), DomainError);
}

TEST_CASE("contour prediction") {
  const QPInput in = mass_quench_input(128, 32.0);
  const double len = 32.0;
  CHECK(qp_contour(in, 0.0, 10.0) == 0.0);
  const double eta = 5.0;
  const double reach = in.v_max() * eta;
  for (double x = 0.5; x < len; x += 1.0) {
    CHECK(qp_contour(in, eta, x) == doctest::Approx(qp_contour(in, eta, len - x)).epsilon(1e-13));
    CHECK(qp_contour_spinor(in, eta, x) == doctest::Approx(0.5 * qp_contour(in, eta, x)));
    if (x > reach && len - x > reach) CHECK(qp_contour(in, eta, x) == 0.0);
  }
  CHECK(qp_contour(in, 1e6, 16.0) == doctest::Approx(in.integrate_all()));
  CHECK_THROWS_AS(qp_contour(in, 1.0, 33.0), DomainError);
}

TEST_CASE("spatial integral of the contour reproduces the entropy") {
  const QPInput in = mass_quench_input(128, 32.0);
  auto integral = [&](double eta) {
    const int n = 64000;
    const double dx = 32.0 / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += qp_contour(in, eta, (i + 0.5) * dx) * dx;
    return s;
  };
  const double early = 32.0 / (4.0 * in.v_max());
  for (double eta : {0.25 * early, 0.9 * early}) {
    CHECK(integral(eta) == doctest::Approx(qp_entropy(in, eta)).epsilon(1e-4));
  }
  CHECK(integral(1e5) == doctest::Approx(qp_plateau(in)).epsilon(1e-6));
}

TEST_CASE("quadrature is converged") {
  const QPInput a = mass_quench_input(128, 32.0, 4096);
  const QPInput b = mass_quench_input(128, 32.0, 8192);
  for (double eta : {1.0, 5.0, 12.0, 100.0}) {
    CHECK(qp_entropy(a, eta) == doctest::Approx(qp_entropy(b, eta)).epsilon(1e-6));
    CHECK(qp_contour(a, eta, 3.5) == doctest::Approx(qp_contour(b, eta, 3.5)).epsilon(1e-6));
  }
}

TEST_CASE("input validation and validity tags") {
  CHECK_THROWS_AS(QPInput({{0.0, 1.0, 0.1}}, 4.0), DomainError);
  CHECK_THROWS_AS(QPInput({{0.0, -1.0, 0.1}, {1.0, 0.0, 0.1}}, 4.0), DomainError);
  CHECK_THROWS_AS(QPInput({{0.0, 1.0, 3.0}, {1.0, 0.0, 0.1}}, 4.0), DomainError);
  CHECK_THROWS_AS(QPInput({{0.0, 1.0, 0.1}, {1.0, 0.0, 0.1}}, 0.0), DomainError);
  QPInput in({{-kPi, 0.2, 0.1}, {0.0, 0.5, 0.3}}, 4.0);
  CHECK(in.v_max() == doctest::Approx(1.0));
  CHECK(in.in_validity());
  in.mark_out_of_validity("persistent oscillations");
  CHECK_FALSE(in.in_validity());
  CHECK(in.validity_note() == "persistent oscillations");
}

TEST_CASE("renormalized velocity") {
  SUBCASE("free runs reproduce the bare group velocity") {
    const LatticeSpec spec{64, 1.0, 1.0, 0.0};
    const GroundState q = mass_quench_prepare(spec, -1.0, 1.0);
    EvolutionOptions opts;
    opts.step = 1e-2;
    opts.sample_every = 10;
    const Trajectory t = evolve(q.state, ScaleFactorProfile(StaticProfile{1.0}), 5.0, opts);
    const RenormalizedVelocity v = renormalized_velocity(t, 1.0, 5.0);
    CHECK(v.velocity == group_velocity(1.0, 0.0, 0.0, 1.0));
    CHECK(v.samples >= 2);
    CHECK_THROWS_AS(renormalized_velocity(t, 10.0, 20.0), DomainError);
  }
  SUBCASE("oscillating condensates are refused") {
    Trajectory t;
    const LatticeSpec spec{8, 1.0, -1.0, 3.0};
    const CorrelationState s = free_ground_state(spec, -0.7, 0.0, 0.0);
    for (int i = 0; i < 20; ++i) {
      t.times.push_back(i);
      t.scale_factors.push_back(1.3);
      t.snapshots.push_back(s);
      t.condensates.push_back({0.5, 0.3 * std::sin(i)});
    }
    CHECK_THROWS_AS(renormalized_velocity(t, 0.0, 19.0), NotEquilibratedError);
  }
}

TEST_CASE("horizon width") {
  CHECK(horizon_width(160.0, 1.0, 0.1, 1.0 / 3.0) == doctest::Approx(40.0));
  CHECK(horizon_width(160.0, 0.0, 0.1, 1.0) == 160.0);
  CHECK(horizon_width(160.0, 1.0, 1e12, 1.0) == doctest::Approx(160.0));
  CHECK(horizon_width(10.0, 1.0, 0.1, 1.0) < 0.0);
  CHECK_THROWS_AS(horizon_width(10.0, 1.0, 0.0, 1.0), DomainError);
}
