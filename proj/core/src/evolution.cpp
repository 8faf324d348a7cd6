#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cosmoferm/errors.hpp"
#include "cosmoferm/gaussian_state.hpp"

namespace cosmoferm {

void correlation_rhs(const LatticeSpec& spec, std::span<const double> sin_ka,
                     std::span<const double> cos_ka, double scale_factor,
                     std::span<const Mat2> blocks, std::span<Mat2> out) {
  const CondensatePair c = condensates(spec, blocks);
  const double base = spec.mass_term(scale_factor) + c.sigma;
  const double inv_a = 1.0 / spec.spacing;
  const Complex minus_i(0.0, -1.0);
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const double hop = -sin_ka[n] * inv_a;
    const double mk = base + (1.0 - cos_ka[n]) * inv_a;
    Mat2 h;
    h << mk, Complex(hop, -c.pi), Complex(hop, c.pi), -mk;
    const Mat2& g = blocks[n];
    out[n] = minus_i * (h * g - g * h);
  }
}

namespace {

struct Segment {
  double begin;
  double end;
  double step;
};

// Splits [begin, end] at `kink` and gives each part a step that divides it
// exactly, so the integration lands on both the kink and the end point.
std::vector<Segment> plan_segments(double begin, double end, double kink,
                                   double ramp_step, double step) {
  std::vector<Segment> out;
  if (kink > begin && kink < end) {
    out.push_back({begin, kink, ramp_step});
    out.push_back({kink, end, step});
  } else {
    out.push_back({begin, end, kink > begin ? ramp_step : step});
  }
  return out;
}

class Integrator {
 public:
  Integrator(const LatticeSpec& spec, std::size_t n)
      : spec_(spec), sin_(n), cos_(n), k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {
    const MomentumGrid grid(spec.num_sites, spec.spacing);
    for (std::size_t i = 0; i < n; ++i) {
      sin_[i] = std::sin(grid[i] * spec.spacing);
      cos_[i] = std::cos(grid[i] * spec.spacing);
    }
  }

  // One RK4 step of dG/ds = w(s) (-i [h(a(s)), G]) where at(s) = (w, a).
  void step(std::vector<Mat2>& g, double s, double h,
            const std::function<std::pair<double, double>(double)>& at) {
    const auto [w1, a1] = at(s);
    const auto [w2, a2] = at(s + 0.5 * h);
    const auto [w4, a4] = at(s + h);
    const std::size_t n = g.size();

    rhs(a1, g, k1_, w1);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = g[i] + (0.5 * h) * k1_[i];
    rhs(a2, tmp_, k2_, w2);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = g[i] + (0.5 * h) * k2_[i];
    rhs(a2, tmp_, k3_, w2);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = g[i] + h * k3_[i];
    rhs(a4, tmp_, k4_, w4);
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += h6 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

 private:
  void rhs(double a, const std::vector<Mat2>& g, std::vector<Mat2>& out,
           double weight) {
    correlation_rhs(spec_, sin_, cos_, a, g, out);
    if (weight != 1.0) {
      for (Mat2& m : out) m *= weight;
    }
  }

  LatticeSpec spec_;
  std::vector<double> sin_, cos_;
  std::vector<Mat2> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

Trajectory evolve(const CorrelationState& initial,
                  const ScaleFactorProfile& profile, double eta_end,
                  const EvolutionOptions& options) {
  if (!(options.step > 0.0) || options.ramp_step < 0.0) {
    throw DomainError("evolve: step must be positive");
  }
  if (options.sample_every < 1) {
    throw DomainError("evolve: sample_every must be >= 1");
  }
  const double eta0 = initial.time();
  if (!profile.in_domain(eta0) || !profile.in_domain(eta_end)) {
    throw DomainError("evolve: time span outside the profile domain");
  }
  if (!(eta_end >= eta0)) {
    throw DomainError("evolve: eta_end precedes the initial time");
  }
  const LatticeSpec& spec = initial.spec();
  const double ramp_step = options.ramp_step > 0.0 ? options.ramp_step : options.step;
  const bool cosmological = options.variable == TimeVariable::Cosmological;

  // Parameter s is eta or t; `at(s)` returns (d eta/ds, a).
  const double s0 = cosmological ? profile.cosmological_time(eta0) : eta0;
  const double s1 = cosmological ? profile.cosmological_time(eta_end) : eta_end;
  const double kink_eta = profile.ramp_end();
  double kink = kink_eta;
  if (cosmological && profile.in_domain(kink_eta)) {
    kink = profile.cosmological_time(kink_eta);
  }
  auto eta_of = [&](double s) {
    if (!cosmological) return s;
    if (s <= s0) return eta0;
    if (s >= s1) return eta_end;
    return profile.conformal_time(s);
  };
  std::function<std::pair<double, double>(double)> at = [&](double s) {
    const double a = profile.scale_factor(eta_of(s));
    return std::pair<double, double>{cosmological ? 1.0 / a : 1.0, a};
  };

  Trajectory traj;
  traj.profile = profile;
  std::vector<Mat2> g(initial.blocks().begin(), initial.blocks().end());

  auto record = [&](double eta) {
    const double a = profile.scale_factor(eta);
    CorrelationState snap(spec, g, eta, a);
    const double defect = snap.purity_defect();
    if (defect > options.purity_tolerance) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "evolve: purity drift " << defect << " at eta = " << eta
          << " exceeds " << options.purity_tolerance
          << "; reduce the step (currently " << options.step << ")";
      throw StepSizeError(msg.str());
    }
    traj.times.push_back(eta);
    traj.scale_factors.push_back(a);
    traj.condensates.push_back(condensates(spec, g));
    traj.snapshots.push_back(std::move(snap));
  };

  record(eta0);
  Integrator rk(spec, g.size());
  long long count = 0;
  const auto segments = plan_segments(s0, s1, kink, ramp_step, options.step);
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    const double len = seg.end - seg.begin;
    if (len <= 0.0) continue;
    const long long n =
        std::max(1LL, static_cast<long long>(std::ceil(len / seg.step - 1e-9)));
    const double h = len / static_cast<double>(n);
    for (long long i = 0; i < n; ++i) {
      const double s = seg.begin + static_cast<double>(i) * h;
      rk.step(g, s, h, at);
      ++count;
      const bool last = (si + 1 == segments.size()) && (i + 1 == n);
      if (last) {
        record(eta_end);
      } else if (count % options.sample_every == 0) {
        const double s_next = seg.begin + static_cast<double>(i + 1) * h;
        record(eta_of(s_next));
      }
    }
  }
  return traj;
}

}  // namespace cosmoferm
