#include "cosmoferm/scale_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double ramp_length(const ExponentialProfile& p) {
  if (p.sudden) return 0.0;
  return (1.0 - p.a0 / p.af) / (p.a0 * p.hubble);
}

std::size_t segment(const std::vector<double>& xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0) return 0;
  return std::min(i - 1, xs.size() - 2);
}

}  // namespace

ScaleFactorProfile::ScaleFactorProfile(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      Overloaded{
          [](const StaticProfile& p) {
            if (!(p.value > 0.0) || !std::isfinite(p.value)) {
              throw DomainError("profile: static scale factor must be positive");
            }
          },
          [](const ExponentialProfile& p) {
            if (!(p.a0 > 0.0) || !(p.af >= p.a0) || !std::isfinite(p.af)) {
              throw DomainError("profile: exponential requires a_f >= a_0 > 0");
            }
            if (!(p.hubble > 0.0) || !std::isfinite(p.hubble)) {
              throw DomainError("profile: exponential requires H > 0");
            }
          },
          [](const DeSitterProfile& p) {
            if (!(p.hubble > 0.0) || !std::isfinite(p.hubble)) {
              throw DomainError("profile: de Sitter requires H > 0");
            }
            if (!(p.eta0 < p.eta_max && p.eta_max < 0.0)) {
              throw DomainError(
                  "profile: de Sitter requires eta0 < eta_max < 0");
            }
          },
          [this](const TabulatedProfile& p) {
            if (p.eta.size() < 2 || p.eta.size() != p.value.size()) {
              throw DomainError(
                  "profile: tabulated needs >= 2 (eta, a) samples of equal "
                  "length");
            }
            for (std::size_t i = 0; i < p.eta.size(); ++i) {
              if (!(p.value[i] > 0.0) || !std::isfinite(p.value[i])) {
                throw DomainError("profile: tabulated a must be positive");
              }
              if (i > 0 && !(p.eta[i] > p.eta[i - 1])) {
                throw DomainError(
                    "profile: tabulated eta must be strictly increasing");
              }
            }
            cumulative_time_.assign(p.eta.size(), 0.0);
            for (std::size_t i = 1; i < p.eta.size(); ++i) {
              cumulative_time_[i] = cumulative_time_[i - 1] +
                                    0.5 * (p.value[i] + p.value[i - 1]) *
                                        (p.eta[i] - p.eta[i - 1]);
            }
          },
      },
      kind_);
}

std::string ScaleFactorProfile::name() const {
  return std::visit(Overloaded{
                        [](const StaticProfile&) { return std::string("static"); },
                        [](const ExponentialProfile&) {
                          return std::string("exponential");
                        },
                        [](const DeSitterProfile&) {
                          return std::string("de_sitter");
                        },
                        [](const TabulatedProfile&) {
                          return std::string("tabulated");
                        },
                    },
                    kind_);
}

double ScaleFactorProfile::domain_begin() const {
  if (const auto* d = std::get_if<DeSitterProfile>(&kind_)) return d->eta0;
  if (const auto* t = std::get_if<TabulatedProfile>(&kind_)) {
    return t->eta.front();
  }
  return -std::numeric_limits<double>::infinity();
}

double ScaleFactorProfile::domain_end() const {
  if (const auto* d = std::get_if<DeSitterProfile>(&kind_)) return d->eta_max;
  if (const auto* t = std::get_if<TabulatedProfile>(&kind_)) {
    return t->eta.back();
  }
  return std::numeric_limits<double>::infinity();
}

bool ScaleFactorProfile::in_domain(double eta) const {
  return std::isfinite(eta) && eta >= domain_begin() && eta <= domain_end();
}

void ScaleFactorProfile::check_domain(double eta) const {
  if (in_domain(eta)) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "profile " << name() << ": eta = " << eta << " outside ["
      << domain_begin() << ", " << domain_end() << "]";
  throw DomainError(msg.str());
}

double ScaleFactorProfile::start() const {
  if (const auto* d = std::get_if<DeSitterProfile>(&kind_)) return d->eta0;
  if (const auto* t = std::get_if<TabulatedProfile>(&kind_)) {
    return t->eta.front();
  }
  return 0.0;
}

double ScaleFactorProfile::ramp_end() const {
  if (std::holds_alternative<StaticProfile>(kind_)) return 0.0;
  if (const auto* e = std::get_if<ExponentialProfile>(&kind_)) {
    return ramp_length(*e);
  }
  return std::numeric_limits<double>::infinity();
}

double ScaleFactorProfile::scale_factor(double eta) const {
  check_domain(eta);
  return std::visit(
      Overloaded{
          [](const StaticProfile& p) { return p.value; },
          [eta](const ExponentialProfile& p) {
            if (eta < 0.0) return p.a0;
            if (p.sudden || eta >= ramp_length(p)) return p.af;
            return std::min(p.a0 / (1.0 - p.a0 * p.hubble * eta), p.af);
          },
          [eta](const DeSitterProfile& p) { return -1.0 / (p.hubble * eta); },
          [eta](const TabulatedProfile& p) {
            const std::size_t i = segment(p.eta, eta);
            const double w = (eta - p.eta[i]) / (p.eta[i + 1] - p.eta[i]);
            return p.value[i] + w * (p.value[i + 1] - p.value[i]);
          },
      },
      kind_);
}

double ScaleFactorProfile::cosmological_time(double eta) const {
  check_domain(eta);
  return std::visit(
      Overloaded{
          [eta](const StaticProfile& p) { return p.value * eta; },
          [eta](const ExponentialProfile& p) {
            if (eta < 0.0) return p.a0 * eta;
            const double eta_f = ramp_length(p);
            if (eta >= eta_f) {
              const double t_f =
                  p.sudden ? 0.0 : std::log(p.af / p.a0) / p.hubble;
              return t_f + p.af * (eta - eta_f);
            }
            return -std::log1p(-p.a0 * p.hubble * eta) / p.hubble;
          },
          [eta](const DeSitterProfile& p) {
            return std::log(p.eta0 / eta) / p.hubble;
          },
          [this, eta](const TabulatedProfile& p) {
            const std::size_t i = segment(p.eta, eta);
            const double slope =
                (p.value[i + 1] - p.value[i]) / (p.eta[i + 1] - p.eta[i]);
            const double x = eta - p.eta[i];
            return cumulative_time_[i] + p.value[i] * x + 0.5 * slope * x * x;
          },
      },
      kind_);
}

double ScaleFactorProfile::conformal_time(double t) const {
  if (!std::isfinite(t)) throw DomainError("profile: non-finite time");
  const double eta = std::visit(
      Overloaded{
          [t](const StaticProfile& p) { return t / p.value; },
          [t](const ExponentialProfile& p) {
            if (t < 0.0) return t / p.a0;
            const double eta_f = ramp_length(p);
            const double t_f = p.sudden ? 0.0 : std::log(p.af / p.a0) / p.hubble;
            if (t >= t_f) return eta_f + (t - t_f) / p.af;
            return -std::expm1(-p.hubble * t) / (p.a0 * p.hubble);
          },
          [t](const DeSitterProfile& p) {
            return p.eta0 * std::exp(-p.hubble * t);
          },
          [this, t](const TabulatedProfile& p) {
            if (t < cumulative_time_.front() || t > cumulative_time_.back()) {
              throw DomainError("profile tabulated: time outside table");
            }
            const std::size_t i = segment(cumulative_time_, t);
            const double slope =
                (p.value[i + 1] - p.value[i]) / (p.eta[i + 1] - p.eta[i]);
            const double dt = t - cumulative_time_[i];
            const double ai = p.value[i];
            // root of ai x + slope x^2 / 2 = dt in the stable form
            const double x =
                2.0 * dt / (ai + std::sqrt(ai * ai + 2.0 * slope * dt));
            return p.eta[i] + x;
          },
      },
      kind_);
  // absorb rounding at the chart edges
  const double lo = domain_begin();
  const double hi = domain_end();
  if (eta < lo && lo - eta <= 1e-12 * std::max(1.0, std::abs(lo))) return lo;
  if (eta > hi && eta - hi <= 1e-12 * std::max(1.0, std::abs(hi))) return hi;
  check_domain(eta);
  return eta;
}

}  // namespace cosmoferm
