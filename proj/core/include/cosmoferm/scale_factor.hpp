#pragma once

#include <string>
#include <variant>
#include <vector>

namespace cosmoferm {

struct StaticProfile {
  double value = 1.0;
};

/// a(t) = a0 exp(H t) between two flat regions, written in conformal time as
/// a(eta) = a0 / (1 - a0 H eta) for 0 <= eta <= eta_f and held at a0 before,
/// af after. With `sudden` set the switch a0 -> af happens at eta = 0.
struct ExponentialProfile {
  double a0 = 1.0;
  double af = 1.0;
  double hubble = 1.0;
  bool sudden = false;
};

/// a(eta) = -1 / (H eta) on eta0 <= eta <= eta_max < 0.
struct DeSitterProfile {
  double hubble = 1.0;
  double eta0 = -1.0;
  double eta_max = -0.001362;
};

/// Piecewise-linear interpolation of (eta, a) samples.
struct TabulatedProfile {
  std::vector<double> eta;
  std::vector<double> value;
};

class ScaleFactorProfile {
 public:
  using Kind = std::variant<StaticProfile, ExponentialProfile, DeSitterProfile,
                            TabulatedProfile>;

  ScaleFactorProfile() : ScaleFactorProfile(StaticProfile{}) {}
  /// Throws DomainError when the profile parameters violate their invariants.
  explicit ScaleFactorProfile(Kind kind);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  double scale_factor(double eta) const;

  /// t(eta) with the convention t(start()) = 0.
  double cosmological_time(double eta) const;
  /// Inverse of cosmological_time.
  double conformal_time(double t) const;

  /// Reference conformal time: 0 for static and exponential profiles, eta0
  /// for de Sitter, the first sample for tabulated ones.
  double start() const;
  /// Conformal time from which a(eta) stays constant (start() for static
  /// profiles, eta_f for exponential ones, +inf otherwise).
  double ramp_end() const;

  double domain_begin() const;
  double domain_end() const;
  bool in_domain(double eta) const;

 private:
  void check_domain(double eta) const;

  Kind kind_;
  std::vector<double> cumulative_time_;  // tabulated profiles only
};

}  // namespace cosmoferm
