#pragma once

#include <span>
#include <vector>

#include "cosmoferm/lattice_model.hpp"
#include "cosmoferm/scale_factor.hpp"
#include "cosmoferm/types.hpp"

namespace cosmoferm {

struct CondensatePair {
  double sigma = 0.0;  ///< scalar condensate, shifts the mass term
  double pi = 0.0;     ///< pseudo-scalar condensate, couples to -i gamma1
};

/// Translation-invariant, number-conserving fermionic Gaussian state stored as
/// one 2x2 block Gamma_k = <psi_k psi_k^dagger> per grid momentum.
class CorrelationState {
 public:
  CorrelationState() = default;
  CorrelationState(LatticeSpec spec, std::vector<Mat2> blocks, double time,
                   double scale_factor);

  const LatticeSpec& spec() const { return spec_; }
  const MomentumGrid& grid() const { return grid_; }
  std::span<const Mat2> blocks() const { return blocks_; }
  std::span<Mat2> blocks() { return blocks_; }
  const Mat2& block(std::size_t n) const { return blocks_[n]; }
  std::size_t size() const { return blocks_.size(); }

  double time() const { return time_; }
  void set_time(double eta) { time_ = eta; }
  double scale_factor() const { return scale_factor_; }
  void set_scale_factor(double a) { scale_factor_ = a; }

  /// max_k ||Gamma_k^2 - Gamma_k|| (operator norm).
  double purity_defect() const;
  /// max_k |tr Gamma_k - 1|.
  double trace_defect() const;
  /// Smallest and largest block eigenvalue over all k.
  std::pair<double, double> spectrum_bounds() const;

 private:
  LatticeSpec spec_;
  MomentumGrid grid_;
  std::vector<Mat2> blocks_;
  double time_ = 0.0;
  double scale_factor_ = 1.0;
};

/// Self-energies of the momentum blocks:
///   Sigma = g0^2/(2 a N_S) sum_k tr(Gamma_k gamma0),
///   Pi    = g0^2/(2 a N_S) sum_k tr(Gamma_k sigma^y).
/// Both channels lower the mean-field energy, see mean_field_energy().
/// Sums run in grid order. Throws ConsistencyError if either trace picks up an
/// imaginary part above 1e-12.
CondensatePair condensates(const LatticeSpec& spec, std::span<const Mat2> blocks);
CondensatePair condensates(const CorrelationState& state);

/// E = -sum_k tr(Gamma_k h_k(m_eff)) - (a N_S / g0^2) (Sigma^2 + Pi^2), the
/// functional whose stationary points are the gap-equation fixed points.
double mean_field_energy(const CorrelationState& state, double mass_term);

/// Dirac sea of hamiltonian_block(k, m_eff, Sigma, Pi): Gamma_k is the
/// projector (1 + h_k / eps_k) / 2 onto the empty positive band.
/// Throws DegenerateGroundStateError when eps_k < 1e-12 at a grid momentum.
CorrelationState free_ground_state(const LatticeSpec& spec, double mass_term,
                                   double sigma_ext, double pi_ext);

struct GapOptions {
  double tolerance = 1e-10;
  double mixing = 0.5;
  int max_iterations = 10000;
  std::vector<double> pi_seeds{0.0, 0.1, -0.1, 0.5, -0.5};
  double sigma_seed = 0.0;
};

struct GroundState {
  CorrelationState state;
  CondensatePair condensates;
  double energy = 0.0;
  int iterations = 0;
};

/// Lowest-energy fixed point of (Sigma, Pi) -> condensates(free_ground_state)
/// over the Pi seeds, with linear mixing. For g0^2 = 0 this is the free ground
/// state at m a_val.
GroundState self_consistent_ground_state(const LatticeSpec& spec, double a_val,
                                         const GapOptions& options = {});

/// Ground state at bare mass m_pre (self-consistent when g0^2 > 0), meant to
/// be evolved with the Hamiltonian at spec.mass.
GroundState mass_quench_prepare(const LatticeSpec& spec, double m_pre,
                                double a_val, const GapOptions& options = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<double> scale_factors;
  std::vector<CorrelationState> snapshots;
  std::vector<CondensatePair> condensates;
  ScaleFactorProfile profile;

  std::size_t size() const { return times.size(); }
};

enum class TimeVariable { Conformal, Cosmological };

struct EvolutionOptions {
  double step = 1e-3;
  /// Step used while eta < profile.ramp_end(); defaults to `step`.
  double ramp_step = 0.0;
  int sample_every = 100;
  /// Cosmological steps use a fixed dt with d eta = dt / a(eta).
  TimeVariable variable = TimeVariable::Conformal;
  double purity_tolerance = 1e-6;
};

/// Right-hand side d Gamma_k / d eta = -i [h_k(m a, Sigma, Pi), Gamma_k] with
/// the condensates of the full set of blocks.
void correlation_rhs(const LatticeSpec& spec, std::span<const double> sin_ka,
                     std::span<const double> cos_ka, double scale_factor,
                     std::span<const Mat2> blocks, std::span<Mat2> out);

/// Classical RK4 from initial.time() to eta_end. The initial sample, every
/// sample_every-th step and the final step are recorded. Throws StepSizeError
/// when purity drifts beyond options.purity_tolerance at a sample.
Trajectory evolve(const CorrelationState& initial,
                  const ScaleFactorProfile& profile, double eta_end,
                  const EvolutionOptions& options);

}  // namespace cosmoferm
