#include "cosmoferm/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "block_math.hpp"
#include "cosmoferm/errors.hpp"
#include "parallel.hpp"

namespace cosmoferm {

Mat2 SymmetryOperator::squared() const {
  return antiunitary ? Mat2(matrix * matrix.conjugate()) : Mat2(matrix * matrix);
}

double SymmetryOperator::residual(double k, double mass_term, double sigma,
                                  double pi, double spacing) const {
  const Mat2 target = hamiltonian_block(k, mass_term, sigma, pi, spacing);
  Mat2 source = hamiltonian_block(flips_momentum ? -k : k, mass_term, sigma, pi,
                                  spacing);
  if (antiunitary) source = source.conjugate().eval();
  const Mat2 image = matrix.adjoint() * source * matrix;
  return detail::operator_norm(image - static_cast<double>(sign) * target);
}

SymmetryOperator time_reversal() {
  return {"T", GammaAlgebra::gamma0(), true, true, +1};
}

SymmetryOperator particle_hole() {
  return {"C", GammaAlgebra::gamma0() * GammaAlgebra::gamma1(), true, true, -1};
}

SymmetryOperator sublattice() {
  // -i gamma0 gamma5 = sigma^y; the literal product T C = gamma1 squares to -1
  return {"S", Complex(0.0, -1.0) * GammaAlgebra::gamma0() * GammaAlgebra::gamma5(),
          false, false, -1};
}

SymmetryOperator parity() {
  return {"P", GammaAlgebra::gamma0(), false, true, +1};
}

SymmetryOperator charge_parity() {
  return {"CP", GammaAlgebra::gamma1(), true, false, -1};
}

std::vector<SymmetryOperator> discrete_symmetries() {
  return {time_reversal(), particle_hole(), sublattice(), parity(),
          charge_parity()};
}

const SymmetryEntry& SymmetryReport::at(const std::string& name) const {
  for (const SymmetryEntry& e : entries) {
    if (e.name == name) return e;
  }
  throw DomainError("symmetry report: no entry named " + name);
}

SymmetryReport symmetry_report(const LatticeSpec& spec, double mass_term,
                               double sigma, double pi) {
  spec.validate();
  const MomentumGrid grid(spec.num_sites, spec.spacing);
  SymmetryReport report;
  report.mass_term = mass_term;
  report.condensates = {sigma, pi};
  double scale = 0.0;
  for (double k : grid.momenta()) {
    scale = std::max(scale, detail::operator_norm(
                                hamiltonian_block(k, mass_term, sigma, pi, spec.spacing)));
  }
  report.threshold = 1e-10 * std::max(scale, std::numeric_limits<double>::min());
  for (const SymmetryOperator& op : discrete_symmetries()) {
    double worst = 0.0;
    for (double k : grid.momenta()) {
      worst = std::max(worst, op.residual(k, mass_term, sigma, pi, spec.spacing));
    }
    report.entries.push_back({op.name, worst, worst < report.threshold});
  }
  return report;
}

double contour_cp_check(const ContourField& field) {
  double worst = 0.0;
  const int len = field.length();
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    for (int i = 0; i < len; ++i) {
      worst = std::max(worst, std::abs(field.value(s, Spinor::Up, i) -
                                       field.value(s, Spinor::Down, len - 1 - i)));
    }
  }
  return worst;
}

double time_reversal_condition(const LatticeSpec& spec,
                               const ScaleFactorProfile& profile,
                               CondensatePair condensates, double eta,
                               double eta0) {
  spec.validate();
  const MomentumGrid grid(spec.num_sites, spec.spacing);
  const Mat2 t = time_reversal().matrix;
  const double m_now = spec.mass_term(profile.scale_factor(eta));
  const double m_mirror = spec.mass_term(profile.scale_factor(2.0 * eta0 - eta));
  double worst = 0.0;
  for (double k : grid.momenta()) {
    const Mat2 src = hamiltonian_block(-k, m_now, condensates.sigma,
                                       condensates.pi, spec.spacing)
                         .conjugate();
    const Mat2 target = hamiltonian_block(k, m_mirror, condensates.sigma,
                                          condensates.pi, spec.spacing);
    worst = std::max(worst, detail::operator_norm(t.adjoint() * src * t - target));
  }
  return worst;
}

double default_step(double hubble) { return hubble >= 10.0 ? 1e-4 : 1e-3; }

std::vector<SweepRow> spectrum_symmetry_check(
    const ExpansionSweep& sweep, const std::vector<double>& hubble_values,
    int workers) {
  sweep.spec.validate();
  std::vector<SweepRow> rows(hubble_values.size());
  detail::parallel_for(hubble_values.size(), workers, [&](std::size_t i) {
    const double hubble = hubble_values[i];
    SweepRow& row = rows[i];
    row.hubble = hubble;
    row.exact_quench = sweep.quench_limit > 0.0 && hubble >= sweep.quench_limit;
    const ScaleFactorProfile profile(
        ExponentialProfile{sweep.a0, sweep.af, hubble, row.exact_quench});
    row.duration = profile.ramp_end();

    const GroundState prepared =
        sweep.pre_quench_mass
            ? mass_quench_prepare(sweep.spec, *sweep.pre_quench_mass, sweep.a0,
                                  sweep.gap)
            : self_consistent_ground_state(sweep.spec, sweep.a0, sweep.gap);
    CorrelationState initial = prepared.state;
    initial.set_time(profile.start());

    EvolutionOptions opts;
    opts.step = sweep.step > 0.0 ? sweep.step : default_step(hubble);
    opts.sample_every = std::numeric_limits<int>::max();
    const Trajectory traj = evolve(initial, profile, row.duration, opts);
    const CorrelationState& last = traj.snapshots.back();
    row.final_condensates = traj.condensates.back();

    ReferenceHamiltonian ref;
    switch (sweep.reference) {
      case ReferenceMode::Instantaneous:
        ref = instantaneous_reference(last, sweep.af);
        break;
      case ReferenceMode::Vacuum:
        ref = vacuum_reference(sweep.spec, sweep.af, row.final_condensates.pi,
                               sweep.gap);
        break;
      case ReferenceMode::Frozen:
        ref = {sweep.spec.mass_term(sweep.af), sweep.frozen_reference.sigma,
               sweep.frozen_reference.pi, sweep.af};
        break;
    }
    row.spectrum = bogoliubov_spectrum(last, ref);
    row.asymmetry = spectrum_asymmetry(row.spectrum);
    row.total_beta_sq = row.spectrum.total();
    row.density = particle_density(row.spectrum, sweep.spec);
  });
  return rows;
}

}  // namespace cosmoferm
