#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosmoferm/entanglement.hpp"
#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/lattice_model.hpp"
#include "cosmoferm/production.hpp"
#include "cosmoferm/scale_factor.hpp"

namespace cosmoferm {

/// Single-particle symmetry operator U or U K (K = complex conjugation).
struct SymmetryOperator {
  std::string name;
  Mat2 matrix;
  bool antiunitary = false;
  /// Whether the defining relation pairs h_k with h_-k.
  bool flips_momentum = false;
  /// +1 for a symmetry (O h O^-1 = h), -1 for an antisymmetry.
  int sign = 1;

  /// Matrix of the squared operator, U U^* for antiunitary ones.
  Mat2 squared() const;
  /// || O^dagger h_(+-k)^(*) O - sign h_k || for one momentum.
  double residual(double k, double mass_term, double sigma, double pi,
                  double spacing) const;
};

/// T = gamma0 K, C = gamma0 gamma1 K, S = T C, P = gamma0 and the surviving
/// combination CP = gamma1 K. S carries the phase that makes S^2 = +1.
SymmetryOperator time_reversal();
SymmetryOperator particle_hole();
SymmetryOperator sublattice();
SymmetryOperator parity();
SymmetryOperator charge_parity();
std::vector<SymmetryOperator> discrete_symmetries();

struct SymmetryEntry {
  std::string name;
  double residual = 0.0;
  bool holds = false;
};

struct SymmetryReport {
  std::vector<SymmetryEntry> entries;
  double mass_term = 0.0;
  CondensatePair condensates;
  double threshold = 0.0;  ///< absolute threshold used for `holds`

  const SymmetryEntry& at(const std::string& name) const;
};

/// Max-over-grid residual of each defining relation; a relation holds when its
/// residual is below 1e-10 times the largest ||h_k||.
SymmetryReport symmetry_report(const LatticeSpec& spec, double mass_term,
                               double sigma, double pi);

/// max over (i, eta) of |S^u_i - S^d_(l+1-i)|.
double contour_cp_check(const ContourField& field);

/// max_k || T^dagger h_-k^*(eta) T - h_k(2 eta0 - eta) || with the given
/// condensates held fixed. Vanishes at eta = eta0 for any profile.
double time_reversal_condition(const LatticeSpec& spec,
                               const ScaleFactorProfile& profile,
                               CondensatePair condensates, double eta,
                               double eta0);

enum class ReferenceMode { Instantaneous, Vacuum, Frozen };

/// Expansion a0 -> af from a prepared state, analysed at the end of the ramp.
struct ExpansionSweep {
  LatticeSpec spec;
  double a0 = 0.7;
  double af = 1.3;
  std::optional<double> pre_quench_mass;  ///< vacuum preparation when empty
  ReferenceMode reference = ReferenceMode::Instantaneous;
  CondensatePair frozen_reference;
  /// 0 selects 1e-4 for H a >= 10 and 1e-3 below.
  double step = 0.0;
  /// Hubble rates at or above this value are run as exact quenches.
  double quench_limit = 0.0;  ///< 0 disables
  GapOptions gap;
};

struct SweepRow {
  double hubble = 0.0;
  double duration = 0.0;  ///< conformal length of the ramp
  bool exact_quench = false;
  double asymmetry = 0.0;
  double total_beta_sq = 0.0;
  double density = 0.0;
  CondensatePair final_condensates;
  ProductionSpectrum spectrum;
};

/// prepare -> evolve over the ramp -> spectrum -> asymmetry for each H.
/// Rows are independent and evaluated on up to `workers` threads.
std::vector<SweepRow> spectrum_symmetry_check(
    const ExpansionSweep& sweep, const std::vector<double>& hubble_values,
    int workers = 1);

/// Default conformal step for a ramp with the given Hubble rate.
double default_step(double hubble);

}  // namespace cosmoferm
