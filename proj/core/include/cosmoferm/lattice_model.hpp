#pragma once

#include <cstddef>
#include <vector>

#include "cosmoferm/types.hpp"

namespace cosmoferm {

/// Co-moving Wilson-Dirac chain with a Gross-Neveu coupling.
///
/// `mass` is the dimensionless product m a of the bare mass and the lattice
/// spacing; the physical mass entering the Hamiltonian at scale factor value
/// a(eta) is (mass / spacing) * a(eta).
struct LatticeSpec {
  int num_sites = 0;
  double spacing = 1.0;
  double mass = 0.0;
  double g0sq = 0.0;

  /// Throws DomainError unless num_sites >= 2 is even and spacing > 0.
  void validate() const;

  /// Mass term m a(eta) in units of 1/spacing.
  double mass_term(double scale_factor) const {
    return mass / spacing * scale_factor;
  }

  /// Prefactor g0^2 / (2 a N_S) of the condensate sums.
  double condensate_prefactor() const {
    return g0sq / (2.0 * spacing * num_sites);
  }
};

/// Dirac matrices of the 1+1D theory: gamma0 = sigma^z, gamma1 = i sigma^y,
/// gamma5 = gamma0 gamma1 (= sigma^x).
struct GammaAlgebra {
  static Mat2 identity();
  static Mat2 sigma_x();
  static Mat2 sigma_y();
  static Mat2 sigma_z();
  static Mat2 gamma0();
  static Mat2 gamma1();
  static Mat2 gamma5();
};

/// Periodic Brillouin-zone grid k_n = -pi/a + 2 pi n / (N a).
///
/// Momenta are generated from the signed integer j = n - N/2, so the entry at
/// negative_index(n) is bit-for-bit the negative of the entry at n (the zone
/// edge -pi/a is its own partner).
class MomentumGrid {
 public:
  MomentumGrid() = default;
  MomentumGrid(int num_sites, double spacing);

  std::size_t size() const { return momenta_.size(); }
  double operator[](std::size_t n) const { return momenta_[n]; }
  const std::vector<double>& momenta() const { return momenta_; }
  double spacing() const { return spacing_; }
  double step() const;

  std::size_t negative_index(std::size_t n) const;
  /// True for k = 0 and k = -pi/a.
  bool self_paired(std::size_t n) const { return negative_index(n) == n; }

 private:
  std::vector<double> momenta_;
  double spacing_ = 1.0;
};

/// Mean-field Bloch Hamiltonian
///   h_k = -(sin ka / a) gamma0 gamma1 + (m_eff + Sigma + (1 - cos ka)/a) gamma0
///         - i Pi gamma1.
Mat2 hamiltonian_block(double k, double mass_term, double sigma, double pi,
                       double spacing);

/// Positive band energy of hamiltonian_block.
double band_energy(double k, double mass_term, double sigma, double pi,
                   double spacing);

/// |d eps_k / dk| from the analytic derivative of band_energy.
double band_velocity(double k, double mass_term, double sigma, double pi,
                     double spacing);

struct DispersionPoint {
  double k = 0.0;
  double energy = 0.0;
  double velocity = 0.0;
};

struct Dispersion {
  std::vector<DispersionPoint> points;  ///< one per grid momentum
  double group_velocity = 0.0;          ///< sup of velocity over the zone
};

/// Maximum of band_velocity over the continuous zone [0, pi/a]: a coarse scan
/// brackets the peak, then golden-section search refines it.
double group_velocity(double mass_term, double sigma, double pi,
                      double spacing);

Dispersion dispersion_and_velocity(const LatticeSpec& spec, double mass_term,
                                   double sigma, double pi);

}  // namespace cosmoferm
