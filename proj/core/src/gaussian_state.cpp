#include "cosmoferm/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "block_math.hpp"
#include "cosmoferm/errors.hpp"

namespace cosmoferm {

CorrelationState::CorrelationState(LatticeSpec spec, std::vector<Mat2> blocks,
                                   double time, double scale_factor)
    : spec_(spec),
      grid_(spec.num_sites, spec.spacing),
      blocks_(std::move(blocks)),
      time_(time),
      scale_factor_(scale_factor) {
  spec_.validate();
  if (blocks_.size() != static_cast<std::size_t>(spec_.num_sites)) {
    throw DomainError("state: expected one block per grid momentum");
  }
}

double CorrelationState::purity_defect() const {
  double worst = 0.0;
  for (const Mat2& g : blocks_) {
    worst = std::max(worst, detail::operator_norm(g * g - g));
  }
  return worst;
}

double CorrelationState::trace_defect() const {
  double worst = 0.0;
  for (const Mat2& g : blocks_) {
    worst = std::max(worst, std::abs(g.trace() - 1.0));
  }
  return worst;
}

std::pair<double, double> CorrelationState::spectrum_bounds() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Mat2& g : blocks_) {
    const auto [a, b] = detail::hermitian_eigenvalues(g);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

CondensatePair condensates(const LatticeSpec& spec,
                           std::span<const Mat2> blocks) {
  // tr(G sigma^z) = G00 - G11, tr(G sigma^y) = i (G01 - G10)
  double sz_re = 0.0;
  double sz_im = 0.0;
  double sy_re = 0.0;
  double sy_im = 0.0;
  for (const Mat2& g : blocks) {
    const Complex tz = g(0, 0) - g(1, 1);
    const Complex ty = Complex(0.0, 1.0) * (g(0, 1) - g(1, 0));
    sz_re += tz.real();
    sz_im += tz.imag();
    sy_re += ty.real();
    sy_im += ty.imag();
  }
  const double c = spec.condensate_prefactor();
  if (std::abs(c * sz_im) > 1e-12 || std::abs(c * sy_im) > 1e-12) {
    std::ostringstream msg;
    msg << "condensates: imaginary parts " << c * sz_im << ", " << c * sy_im
        << " exceed 1e-12; blocks are not Hermitian";
    throw ConsistencyError(msg.str());
  }
  return {c * sz_re, c * sy_re};
}

CondensatePair condensates(const CorrelationState& state) {
  return condensates(state.spec(), state.blocks());
}

double mean_field_energy(const CorrelationState& state, double mass_term) {
  const LatticeSpec& spec = state.spec();
  const MomentumGrid& grid = state.grid();
  double e = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Mat2 h = hamiltonian_block(grid[n], mass_term, 0.0, 0.0, spec.spacing);
    e -= (state.block(n) * h).trace().real();
  }
  if (spec.g0sq > 0.0) {
    const CondensatePair c = condensates(state);
    e -= (c.sigma * c.sigma + c.pi * c.pi) / (2.0 * spec.condensate_prefactor());
  }
  return e;
}

CorrelationState free_ground_state(const LatticeSpec& spec, double mass_term,
                                   double sigma_ext, double pi_ext) {
  spec.validate();
  const MomentumGrid grid(spec.num_sites, spec.spacing);
  std::vector<Mat2> blocks(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double k = grid[n];
    const double eps = band_energy(k, mass_term, sigma_ext, pi_ext, spec.spacing);
    if (eps < 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "ground state: gap closes at k = " << k << " (eps = " << eps
          << ")";
      throw DegenerateGroundStateError(msg.str(), k);
    }
    const Mat2 h = hamiltonian_block(k, mass_term, sigma_ext, pi_ext, spec.spacing);
    blocks[n] = 0.5 * (Mat2::Identity() + h / eps);
  }
  return CorrelationState(spec, std::move(blocks), 0.0, 1.0);
}

namespace {

// Closed form of condensates(free_ground_state(...)): tr(G sigma^z) = M_k/eps,
// tr(G sigma^y) = Pi/eps.
CondensatePair gap_map(const LatticeSpec& spec, const MomentumGrid& grid,
                       double mass_term, CondensatePair in) {
  double sz = 0.0;
  double sy = 0.0;
  for (double k : grid.momenta()) {
    const double ka = k * spec.spacing;
    const double mk = mass_term + in.sigma + (1.0 - std::cos(ka)) / spec.spacing;
    const double eps = band_energy(k, mass_term, in.sigma, in.pi, spec.spacing);
    if (eps < 1e-12) {
      throw DegenerateGroundStateError("gap equation: gap closes on the grid", k);
    }
    sz += mk / eps;
    sy += in.pi / eps;
  }
  const double c = spec.condensate_prefactor();
  return {c * sz, c * sy};
}

}  // namespace

GroundState self_consistent_ground_state(const LatticeSpec& spec, double a_val,
                                         const GapOptions& options) {
  spec.validate();
  if (!(options.tolerance > 0.0)) {
    throw DomainError("gap equation: tolerance must be positive");
  }
  if (!(options.mixing > 0.0 && options.mixing <= 1.0)) {
    throw DomainError("gap equation: mixing must lie in (0, 1]");
  }
  const double mass_term = spec.mass_term(a_val);
  if (spec.g0sq == 0.0) {
    GroundState out;
    out.state = free_ground_state(spec, mass_term, 0.0, 0.0);
    out.state.set_scale_factor(a_val);
    out.energy = mean_field_energy(out.state, mass_term);
    return out;
  }

  const MomentumGrid grid(spec.num_sites, spec.spacing);
  const std::vector<double> seeds =
      options.pi_seeds.empty() ? std::vector<double>{0.0} : options.pi_seeds;
  bool have_best = false;
  GroundState best;
  std::vector<double> last_residuals;
  for (double seed : seeds) {
    CondensatePair x{options.sigma_seed, seed};
    bool converged = false;
    int it = 0;
    std::vector<double> history;
    for (; it < options.max_iterations; ++it) {
      const CondensatePair f = gap_map(spec, grid, mass_term, x);
      const double res = std::max(std::abs(f.sigma - x.sigma), std::abs(f.pi - x.pi));
      history.push_back(res);
      if (res < options.tolerance) {
        x = f;
        converged = true;
        break;
      }
      x.sigma = (1.0 - options.mixing) * x.sigma + options.mixing * f.sigma;
      x.pi = (1.0 - options.mixing) * x.pi + options.mixing * f.pi;
    }
    if (!converged) {
      last_residuals.assign(history.end() - std::min<std::size_t>(history.size(), 5),
                            history.end());
      continue;
    }
    CorrelationState state = free_ground_state(spec, mass_term, x.sigma, x.pi);
    state.set_scale_factor(a_val);
    const double e = mean_field_energy(state, mass_term);
    if (!have_best || e < best.energy - 1e-12) {
      best.state = std::move(state);
      best.condensates = x;
      best.energy = e;
      best.iterations = it + 1;
      have_best = true;
    }
  }
  if (!have_best) {
    std::ostringstream msg;
    msg << "gap equation: no seed converged within " << options.max_iterations
        << " iterations; last residuals:";
    for (double r : last_residuals) msg << ' ' << r;
    throw ConvergenceError(msg.str());
  }
  return best;
}

GroundState mass_quench_prepare(const LatticeSpec& spec, double m_pre,
                                double a_val, const GapOptions& options) {
  LatticeSpec pre = spec;
  pre.mass = m_pre;
  GroundState g = self_consistent_ground_state(pre, a_val, options);
  std::vector<Mat2> blocks(g.state.blocks().begin(), g.state.blocks().end());
  g.state = CorrelationState(spec, std::move(blocks), g.state.time(), a_val);
  return g;
}

}  // namespace cosmoferm
