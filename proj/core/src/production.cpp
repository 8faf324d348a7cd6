#include "cosmoferm/production.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

ReferenceHamiltonian instantaneous_reference(const CorrelationState& state,
                                             double a_ref) {
  const CondensatePair c = condensates(state);
  return {state.spec().mass_term(a_ref), c.sigma, c.pi, a_ref};
}

ReferenceHamiltonian vacuum_reference(const LatticeSpec& spec, double a_ref,
                                      double pi_hint, const GapOptions& options) {
  const GroundState g = self_consistent_ground_state(spec, a_ref, options);
  double pi = g.condensates.pi;
  if (pi_hint != 0.0 && pi != 0.0 && std::signbit(pi) != std::signbit(pi_hint)) {
    pi = -pi;
  }
  return {spec.mass_term(a_ref), g.condensates.sigma, pi, a_ref};
}

double ProductionSpectrum::total() const {
  double sum = 0.0;
  for (const ProductionRecord& r : records) sum += r.beta_sq;
  return sum;
}

ProductionSpectrum bogoliubov_spectrum(const CorrelationState& state,
                                       const ReferenceHamiltonian& reference) {
  const LatticeSpec& spec = state.spec();
  const MomentumGrid& grid = state.grid();
  ProductionSpectrum out;
  out.reference = reference;
  out.records.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double k = grid[n];
    const double eps = band_energy(k, reference.mass_term, reference.sigma,
                                   reference.pi, spec.spacing);
    if (eps < 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "spectrum: reference gap closes at k = " << k;
      throw DegenerateGroundStateError(msg.str(), k);
    }
    const Mat2 h = hamiltonian_block(k, reference.mass_term, reference.sigma,
                                     reference.pi, spec.spacing);
    // u+^dagger G u+ = tr(G P+) with P+ = (1 + h / eps) / 2
    const Mat2 projector = 0.5 * (Mat2::Identity() + h / eps);
    const double filled = (state.block(n) * projector).trace().real();
    out.records.push_back({k, 1.0 - filled});
  }
  return out;
}

double particle_density(const ProductionSpectrum& spectrum,
                        const LatticeSpec& spec) {
  return spectrum.total() / (spec.spacing * spec.num_sites *
                             spectrum.reference.scale_factor);
}

ModeEntropy mode_pair_entropy(double beta_sq) {
  if (!(beta_sq >= -1e-12 && beta_sq <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mode entropy: |beta|^2 = " << beta_sq << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  const double b = std::clamp(beta_sq, 0.0, 1.0);
  const double alpha = 1.0 - b;
  double s = 0.0;
  if (b > 0.0) s -= b * std::log(b);
  if (alpha > 0.0) s -= alpha * std::log(alpha);
  return {s, 2.0 * s};
}

double spectrum_asymmetry(const ProductionSpectrum& spectrum) {
  const std::size_t n = spectrum.records.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (n - i) % n;
    if (j == i) continue;
    worst = std::max(worst, std::abs(spectrum.records[i].beta_sq -
                                     spectrum.records[j].beta_sq));
  }
  return worst;
}

}  // namespace cosmoferm
