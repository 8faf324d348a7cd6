#include "cosmoferm/lattice_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

void LatticeSpec::validate() const {
  if (num_sites < 2 || num_sites % 2 != 0) {
    throw DomainError("lattice: num_sites must be even and >= 2, got " +
                      std::to_string(num_sites));
  }
  if (!(spacing > 0.0)) {
    throw DomainError("lattice: spacing must be positive");
  }
  if (!std::isfinite(mass) || !std::isfinite(g0sq)) {
    throw DomainError("lattice: mass and g0sq must be finite");
  }
}

Mat2 GammaAlgebra::identity() { return Mat2::Identity(); }

Mat2 GammaAlgebra::sigma_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 GammaAlgebra::sigma_y() {
  Mat2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Mat2 GammaAlgebra::sigma_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Mat2 GammaAlgebra::gamma0() { return sigma_z(); }
Mat2 GammaAlgebra::gamma1() { return Complex(0.0, 1.0) * sigma_y(); }
Mat2 GammaAlgebra::gamma5() { return gamma0() * gamma1(); }

MomentumGrid::MomentumGrid(int num_sites, double spacing) : spacing_(spacing) {
  momenta_.resize(static_cast<std::size_t>(num_sites));
  const int half = num_sites / 2;
  for (int n = 0; n < num_sites; ++n) {
    const int j = n - half;
    momenta_[static_cast<std::size_t>(n)] =
        2.0 * kPi * j / (static_cast<double>(num_sites) * spacing);
  }
}

double MomentumGrid::step() const {
  return 2.0 * kPi / (static_cast<double>(momenta_.size()) * spacing_);
}

std::size_t MomentumGrid::negative_index(std::size_t n) const {
  const std::size_t size = momenta_.size();
  return (size - n) % size;
}

Mat2 hamiltonian_block(double k, double mass_term, double sigma, double pi,
                       double spacing) {
  const double ka = k * spacing;
  const double hop = -std::sin(ka) / spacing;
  const double mk = mass_term + sigma + (1.0 - std::cos(ka)) / spacing;
  // -(sin ka / a) gamma0 gamma1 = hop sigma^x, -i Pi gamma1 = Pi sigma^y
  Mat2 h;
  h << mk, Complex(hop, -pi), Complex(hop, pi), -mk;
  return h;
}

double band_energy(double k, double mass_term, double sigma, double pi,
                   double spacing) {
  const double ka = k * spacing;
  const double hop = std::sin(ka) / spacing;
  const double mk = mass_term + sigma + (1.0 - std::cos(ka)) / spacing;
  return std::sqrt(hop * hop + mk * mk + pi * pi);
}

double band_velocity(double k, double mass_term, double sigma, double pi,
                     double spacing) {
  const double ka = k * spacing;
  const double s = std::sin(ka);
  const double c = std::cos(ka);
  const double mk = mass_term + sigma + (1.0 - c) / spacing;
  const double eps = std::sqrt(s * s / (spacing * spacing) + mk * mk + pi * pi);
  if (eps == 0.0) return 0.0;
  return std::abs((s * c / spacing + mk * s) / eps);
}

double group_velocity(double mass_term, double sigma, double pi,
                      double spacing) {
  auto v = [&](double k) {
    return band_velocity(k, mass_term, sigma, pi, spacing);
  };
  const double kmax = kPi / spacing;
  constexpr int kScan = 1024;
  const double dk = kmax / kScan;
  int best = 0;
  double best_v = v(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double vi = v(i * dk);
    if (vi > best_v) {
      best_v = vi;
      best = i;
    }
  }
  double lo = std::max(0, best - 1) * dk;
  double hi = std::min(kScan, best + 1) * dk;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = v(x1);
  double f2 = v(x2);
  while (hi - lo > 1e-13 * kmax) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = v(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = v(x1);
    }
  }
  return std::max({best_v, f1, f2});
}

Dispersion dispersion_and_velocity(const LatticeSpec& spec, double mass_term,
                                   double sigma, double pi) {
  spec.validate();
  const MomentumGrid grid(spec.num_sites, spec.spacing);
  Dispersion out;
  out.points.reserve(grid.size());
  for (double k : grid.momenta()) {
    out.points.push_back(
        {k, band_energy(k, mass_term, sigma, pi, spec.spacing),
         band_velocity(k, mass_term, sigma, pi, spec.spacing)});
  }
  out.group_velocity = group_velocity(mass_term, sigma, pi, spec.spacing);
  return out;
}

}  // namespace cosmoferm
