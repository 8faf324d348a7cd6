#include "cosmoferm/quasiparticle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

namespace {

constexpr double kMaxPairEntropy = 2.0 * 0.69314718055994530942;

double catmull_rom(double p0, double p1, double p2, double p3, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return 0.5 * (2.0 * p1 + (-p0 + p2) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t3);
}

// Exact integral over u in [ua, ub] of f(u) g(u), both linear on [0, 1].
double linear_product(double f0, double f1, double g0, double g1, double ua,
                      double ub) {
  auto f = [&](double u) { return f0 + (f1 - f0) * u; };
  auto g = [&](double u) { return g0 + (g1 - g0) * u; };
  const double um = 0.5 * (ua + ub);
  return (ub - ua) / 6.0 * (f(ua) * g(ua) + 4.0 * f(um) * g(um) + f(ub) * g(ub));
}

double linear_integral(double f0, double f1, double ua, double ub) {
  const double fa = f0 + (f1 - f0) * ua;
  const double fb = f0 + (f1 - f0) * ub;
  return 0.5 * (ub - ua) * (fa + fb);
}

// Sub-interval of [0, 1] on which the linear function v0 + (v1 - v0) u exceeds
// `threshold`.
std::pair<double, double> above(double v0, double v1, double threshold) {
  if (v0 > threshold && v1 > threshold) return {0.0, 1.0};
  if (v0 <= threshold && v1 <= threshold) return {0.0, 0.0};
  const double u = (threshold - v0) / (v1 - v0);
  return v0 > threshold ? std::pair{0.0, u} : std::pair{u, 1.0};
}

}  // namespace

QPInput::QPInput(std::vector<QPRecord> records, double block_length,
                 double spacing, int min_points)
    : records_(std::move(records)), block_length_(block_length) {
  if (records_.size() < 2) throw DomainError("qp input: need at least two records");
  if (!(block_length_ > 0.0)) throw DomainError("qp input: block length must be positive");
  if (!(spacing > 0.0)) throw DomainError("qp input: spacing must be positive");
  for (const QPRecord& r : records_) {
    if (r.velocity < 0.0 || r.s_pair < -1e-12 || r.s_pair > kMaxPairEntropy + 1e-12) {
      throw DomainError("qp input: velocity or pair entropy out of range");
    }
    v_max_ = std::max(v_max_, 2.0 * r.velocity);
  }
  std::vector<QPRecord> sorted = records_;
  std::sort(sorted.begin(), sorted.end(),
            [](const QPRecord& a, const QPRecord& b) { return a.k < b.k; });

  const int n = static_cast<int>(sorted.size());
  int m = std::max(min_points, n);
  m = ((m + n - 1) / n) * n;  // fine grid contains the coarse one
  const double zone = 2.0 * kPi / spacing;
  const double coarse = zone / n;
  cell_ = zone / m;
  fine_v_.resize(static_cast<std::size_t>(m));
  fine_s_.resize(static_cast<std::size_t>(m));
  auto at = [&](int i) -> const QPRecord& {
    return sorted[static_cast<std::size_t>(((i % n) + n) % n)];
  };
  for (int j = 0; j < m; ++j) {
    const double pos = (j * cell_) / coarse;
    const int i = static_cast<int>(std::floor(pos + 1e-12));
    const double t = std::clamp(pos - i, 0.0, 1.0);
    const double v = catmull_rom(at(i - 1).velocity, at(i).velocity,
                                 at(i + 1).velocity, at(i + 2).velocity, t);
    const double s = catmull_rom(at(i - 1).s_pair, at(i).s_pair, at(i + 1).s_pair,
                                 at(i + 2).s_pair, t);
    fine_v_[static_cast<std::size_t>(j)] = std::max(0.0, v);
    fine_s_[static_cast<std::size_t>(j)] = std::clamp(s, 0.0, kMaxPairEntropy);
  }
}

double QPInput::integrate_all() const {
  const std::size_t m = fine_s_.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sum += 0.5 * (fine_s_[j] + fine_s_[(j + 1) % m]);
  }
  return sum * cell_ / (2.0 * kPi);
}

double QPInput::integrate_above(double threshold) const {
  const std::size_t m = fine_s_.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t jn = (j + 1) % m;
    const auto [ua, ub] = above(fine_v_[j], fine_v_[jn], threshold);
    if (ub > ua) sum += linear_integral(fine_s_[j], fine_s_[jn], ua, ub);
  }
  return sum * cell_ / (2.0 * kPi);
}

double QPInput::integrate_min(double eta) const {
  if (eta <= 0.0) return 0.0;
  const double vc = block_length_ / (2.0 * eta);
  const std::size_t m = fine_s_.size();
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t jn = (j + 1) % m;
    const double v0 = fine_v_[j];
    const double v1 = fine_v_[jn];
    const double s0 = fine_s_[j];
    const double s1 = fine_s_[jn];
    const auto [ua, ub] = above(v0, v1, vc);
    // saturated part contributes l_A s, the rest 2 v eta s
    if (ub > ua) sum += block_length_ * linear_integral(s0, s1, ua, ub);
    if (ua > 0.0) sum += 2.0 * eta * linear_product(s0, s1, v0, v1, 0.0, ua);
    if (ub < 1.0) sum += 2.0 * eta * linear_product(s0, s1, v0, v1, ub, 1.0);
  }
  return sum * cell_ / (2.0 * kPi);
}

QPInput make_qp_input(const ProductionSpectrum& spectrum,
                      const Dispersion& dispersion, double block_length,
                      double spacing) {
  if (spectrum.records.size() != dispersion.points.size()) {
    throw DomainError("qp input: spectrum and dispersion grids differ");
  }
  std::vector<QPRecord> records;
  records.reserve(spectrum.records.size());
  for (std::size_t n = 0; n < spectrum.records.size(); ++n) {
    records.push_back({spectrum.records[n].k, dispersion.points[n].velocity,
                       mode_pair_entropy(spectrum.records[n].beta_sq).pair});
  }
  return QPInput(std::move(records), block_length, spacing);
}

double qp_entropy(const QPInput& input, double eta) {
  if (eta < 0.0) throw DomainError("qp_entropy: eta must be >= 0");
  return input.integrate_min(eta);
}

double qp_plateau(const QPInput& input) {
  return input.block_length() * input.integrate_all();
}

double qp_contour(const QPInput& input, double eta, double x) {
  const double len = input.block_length();
  if (eta < 0.0) throw DomainError("qp_contour: eta must be >= 0");
  if (x < 0.0 || x > len) throw DomainError("qp_contour: x outside the block");
  if (eta == 0.0) return 0.0;
  return 0.5 * (input.integrate_above(x / (2.0 * eta)) +
                input.integrate_above((len - x) / (2.0 * eta)));
}

double qp_contour_spinor(const QPInput& input, double eta, double x) {
  return 0.5 * qp_contour(input, eta, x);
}

RenormalizedVelocity renormalized_velocity(const Trajectory& trajectory,
                                           double eta_begin, double eta_end,
                                           double relative_tolerance) {
  std::vector<std::size_t> window;
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    if (trajectory.times[s] >= eta_begin && trajectory.times[s] <= eta_end) {
      window.push_back(s);
    }
  }
  if (window.size() < 2) {
    throw DomainError("renormalized velocity: fewer than two samples in window");
  }
  RenormalizedVelocity out;
  out.samples = window.size();
  const double n = static_cast<double>(window.size());
  for (std::size_t s : window) {
    out.mean.sigma += trajectory.condensates[s].sigma;
    out.mean.pi += trajectory.condensates[s].pi;
  }
  out.mean.sigma /= n;
  out.mean.pi /= n;
  double vs = 0.0, vp = 0.0;
  for (std::size_t s : window) {
    const double ds = trajectory.condensates[s].sigma - out.mean.sigma;
    const double dp = trajectory.condensates[s].pi - out.mean.pi;
    vs += ds * ds;
    vp += dp * dp;
  }
  out.sigma_stdev = std::sqrt(vs / n);
  out.pi_stdev = std::sqrt(vp / n);
  const double shift = std::hypot(out.mean.sigma, out.mean.pi);
  const double limit = relative_tolerance * shift;
  if (out.sigma_stdev > limit || out.pi_stdev > limit) {
    std::ostringstream msg;
    msg << "renormalized velocity: condensates still oscillate in ["
        << eta_begin << ", " << eta_end << "] (stdev Sigma " << out.sigma_stdev
        << ", Pi " << out.pi_stdev << " vs " << relative_tolerance
        << " x mean shift " << shift
        << "); persistent oscillations admit no single renormalized velocity";
    throw NotEquilibratedError(msg.str());
  }
  const CorrelationState& last = trajectory.snapshots[window.back()];
  const double a_f = trajectory.scale_factors[window.back()];
  out.velocity = group_velocity(last.spec().mass_term(a_f), out.mean.sigma,
                                out.mean.pi, last.spec().spacing);
  return out;
}

double horizon_width(double block_length, double group_velocity, double hubble,
                     double a0) {
  if (!(hubble > 0.0) || !(a0 > 0.0)) {
    throw DomainError("horizon width: H and a0 must be positive");
  }
  return block_length - 4.0 * group_velocity / (hubble * a0);
}

}  // namespace cosmoferm
