#pragma once

#include <string>
#include <vector>

#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/lattice_model.hpp"
#include "cosmoferm/production.hpp"

namespace cosmoferm {

struct QPRecord {
  double k = 0.0;
  double velocity = 0.0;  ///< v_k >= 0
  double s_pair = 0.0;    ///< entanglement carried by the (k, -k) pair
};

/// Quasi-particle data for one block. The lattice records are resampled onto
/// a periodic grid of at least 4096 points (cubic interpolation, clamped to
/// the physical ranges) on which every integral is evaluated exactly for the
/// piecewise-linear integrand, with cells split at the step-function edges.
class QPInput {
 public:
  QPInput() = default;
  QPInput(std::vector<QPRecord> records, double block_length,
          double spacing = 1.0, int min_points = 4096);

  const std::vector<QPRecord>& records() const { return records_; }
  double block_length() const { return block_length_; }
  /// v_max = 2 max_k v_k over the input records.
  double v_max() const { return v_max_; }
  std::size_t quadrature_points() const { return fine_v_.size(); }

  /// Predictions made outside the regime where the picture holds carry a
  /// reason here (e.g. persistent condensate oscillations).
  const std::string& validity_note() const { return validity_note_; }
  bool in_validity() const { return validity_note_.empty(); }
  void mark_out_of_validity(std::string reason) {
    validity_note_ = std::move(reason);
  }

  /// int dk/2pi s(k) min(2 v_k eta, l_A)
  double integrate_min(double eta) const;
  /// int dk/2pi s(k) Theta(v_k - threshold)
  double integrate_above(double threshold) const;
  /// int dk/2pi s(k)
  double integrate_all() const;

 private:
  std::vector<QPRecord> records_;
  double block_length_ = 0.0;
  double v_max_ = 0.0;
  double cell_ = 0.0;  // fine-grid momentum step
  std::vector<double> fine_v_;
  std::vector<double> fine_s_;
  std::string validity_note_;
};

/// Pairs a production spectrum with band velocities on the same grid;
/// s_pair = 2 S(rho^part).
QPInput make_qp_input(const ProductionSpectrum& spectrum,
                      const Dispersion& dispersion, double block_length,
                      double spacing = 1.0);

/// Entropy growth, eta measured from the creation of the pairs:
///   S_A(eta) = eta int_{v_k < l_A/2eta} dk/2pi 2 v_k s(k)
///            + l_A int_{v_k > l_A/2eta} dk/2pi s(k).
double qp_entropy(const QPInput& input, double eta);
/// Volume-law value l_A int dk/2pi s(k).
double qp_plateau(const QPInput& input);

/// Spinor-summed contour at position 0 <= x <= l_A:
///   1/2 int dk/2pi s(k) (Theta(2 v_k eta - x) + Theta(2 v_k eta - (l_A - x))).
/// Each edge carries one member of a pair, hence S(rho^part) = s(k)/2 per
/// step; with this weight the profile integrates to qp_entropy both while the
/// cones grow and on the plateau, where it equipartitions to int dk/2pi s(k).
double qp_contour(const QPInput& input, double eta, double x);
/// Per-spinor share, half of qp_contour.
double qp_contour_spinor(const QPInput& input, double eta, double x);

struct RenormalizedVelocity {
  double velocity = 0.0;
  CondensatePair mean;
  double sigma_stdev = 0.0;
  double pi_stdev = 0.0;
  std::size_t samples = 0;
};

/// Averages the condensates over [eta_begin, eta_end] and returns the group
/// velocity of h_k(m a_f + <Sigma>, <Pi>), a_f being the scale factor at the
/// last sample of the window. Throws NotEquilibratedError when the spread of
/// Sigma or Pi exceeds `relative_tolerance` of the mean shift
/// sqrt(<Sigma>^2 + <Pi>^2).
RenormalizedVelocity renormalized_velocity(const Trajectory& trajectory,
                                           double eta_begin, double eta_end,
                                           double relative_tolerance = 0.05);

/// Central region that no cone reaches during a de Sitter expansion,
/// l_A - 4 v_g / (H a0). Non-positive values mean the cones meet.
double horizon_width(double block_length, double group_velocity, double hubble,
                     double a0);

}  // namespace cosmoferm
