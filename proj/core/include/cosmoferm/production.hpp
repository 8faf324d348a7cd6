#pragma once

#include <vector>

#include "cosmoferm/gaussian_state.hpp"

namespace cosmoferm {

/// Hamiltonian whose ground state defines the out-vacuum of a spectrum.
struct ReferenceHamiltonian {
  double mass_term = 0.0;  ///< m a_ref
  double sigma = 0.0;
  double pi = 0.0;
  double scale_factor = 1.0;  ///< a_ref, enters the density normalisation
};

/// h_k(m a_ref, Sigma, Pi) with the state's own condensates.
ReferenceHamiltonian instantaneous_reference(const CorrelationState& state,
                                             double a_ref);
/// Gap-equation vacuum at (m a_ref, g0^2). Of a parity doublet the partner
/// whose Pi has the sign of `pi_hint` is taken.
ReferenceHamiltonian vacuum_reference(const LatticeSpec& spec, double a_ref,
                                      double pi_hint = 0.0,
                                      const GapOptions& options = {});

struct ProductionRecord {
  double k = 0.0;
  double beta_sq = 0.0;
};

struct ProductionSpectrum {
  std::vector<ProductionRecord> records;  ///< grid order
  ReferenceHamiltonian reference;

  double total() const;
};

/// |beta_k|^2 = 1 - u_+^dagger Gamma_k u_+, the occupation of the positive
/// band of the reference Hamiltonian. Throws DegenerateGroundStateError if
/// the reference gap closes on the grid.
ProductionSpectrum bogoliubov_spectrum(const CorrelationState& state,
                                       const ReferenceHamiltonian& reference);

/// n_a = sum_k |beta_k|^2 / (a N_S a_ref).
double particle_density(const ProductionSpectrum& spectrum,
                        const LatticeSpec& spec);

struct ModeEntropy {
  double mode = 0.0;  ///< S(rho_k^part), nats
  double pair = 0.0;  ///< s(k) = 2 S(rho_k^part)
};

/// Two-outcome entropy of |alpha|^2 = 1 - beta_sq and |beta|^2 = beta_sq.
/// Throws DomainError outside [0, 1] beyond 1e-12 slack.
ModeEntropy mode_pair_entropy(double beta_sq);

/// max over k != 0, -pi/a of | |beta_k|^2 - |beta_-k|^2 |.
double spectrum_asymmetry(const ProductionSpectrum& spectrum);

}  // namespace cosmoferm
