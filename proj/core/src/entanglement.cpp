#include "cosmoferm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cosmoferm/errors.hpp"
#include "parallel.hpp"

namespace cosmoferm {

void BlockSpec::validate() const {
  if (num_sites < 2) throw DomainError("block: chain needs at least 2 sites");
  if (length < 1 || length > num_sites) {
    std::ostringstream msg;
    msg << "block: length " << length << " outside [1, " << num_sites << "]";
    throw DomainError(msg.str());
  }
  if (first < 0 || first >= num_sites) {
    std::ostringstream msg;
    msg << "block: first site " << first << " outside [0, " << num_sites << ")";
    throw DomainError(msg.str());
  }
}

BlockSpec BlockSpec::centered(int length, int num_sites) {
  BlockSpec b{(num_sites - length) / 2, length, num_sites};
  b.validate();
  return b;
}

double binary_entropy(double nu) {
  const double x = std::clamp(nu, 1e-14, 1.0 - 1e-14);
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

namespace {

void check_spectrum(const Eigen::VectorXd& nu) {
  for (Eigen::Index m = 0; m < nu.size(); ++m) {
    if (nu[m] < -1e-8 || nu[m] > 1.0 + 1e-8) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "restricted correlation eigenvalue " << nu[m]
          << " outside [-1e-8, 1 + 1e-8]";
      throw InvalidStateError(msg.str());
    }
  }
}

}  // namespace

double block_entropy(const ComplexMatrix& restricted) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(restricted,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvalidStateError("restricted correlation: eigensolver failed");
  }
  const Eigen::VectorXd& nu = solver.eigenvalues();
  check_spectrum(nu);
  double s = 0.0;
  for (Eigen::Index m = 0; m < nu.size(); ++m) s += binary_entropy(nu[m]);
  return s;
}

double block_entropy(const RealSpaceCorrelation& correlation,
                     const BlockSpec& block) {
  block.validate();
  return block_entropy(correlation.restrict_to(block.first, block.length));
}

double BlockContour::sum() const {
  double s = 0.0;
  for (const auto& v : values) s += v[0] + v[1];
  return s;
}

BlockContour entanglement_contour(const ComplexMatrix& restricted) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(restricted);
  if (solver.info() != Eigen::Success) {
    throw InvalidStateError("restricted correlation: eigensolver failed");
  }
  const Eigen::VectorXd& nu = solver.eigenvalues();
  check_spectrum(nu);
  const ComplexMatrix& u = solver.eigenvectors();
  const Eigen::Index dim = restricted.rows();
  Eigen::VectorXd s(dim);
  BlockContour out;
  for (Eigen::Index m = 0; m < dim; ++m) {
    s[m] = binary_entropy(nu[m]);
    out.entropy += s[m];
  }
  const Eigen::VectorXd site_alpha = u.cwiseAbs2() * s;
  out.values.resize(static_cast<std::size_t>(dim / 2));
  for (Eigen::Index i = 0; i < dim / 2; ++i) {
    out.values[static_cast<std::size_t>(i)] = {site_alpha[2 * i],
                                               site_alpha[2 * i + 1]};
  }
  return out;
}

BlockContour entanglement_contour(const RealSpaceCorrelation& correlation,
                                  const BlockSpec& block) {
  block.validate();
  return entanglement_contour(correlation.restrict_to(block.first, block.length));
}

ContourField::ContourField(BlockSpec block, std::vector<double> times,
                           std::vector<double> cosmological_times)
    : block_(block),
      times_(std::move(times)),
      cosmological_times_(std::move(cosmological_times)) {
  block_.validate();
  if (!cosmological_times_.empty() && cosmological_times_.size() != times_.size()) {
    throw DomainError("contour field: time axes differ in length");
  }
  values_.assign(times_.size() * 2 * static_cast<std::size_t>(block_.length), 0.0);
  entropies_.assign(times_.size(), 0.0);
}

std::size_t ContourField::offset(std::size_t sample, Spinor spinor,
                                 int site) const {
  const auto len = static_cast<std::size_t>(block_.length);
  return (sample * 2 + static_cast<std::size_t>(spinor)) * len +
         static_cast<std::size_t>(site);
}

double ContourField::value(std::size_t sample, Spinor spinor, int site) const {
  return values_[offset(sample, spinor, site)];
}

double& ContourField::value(std::size_t sample, Spinor spinor, int site) {
  return values_[offset(sample, spinor, site)];
}

double ContourField::spinor_summed(std::size_t sample, int site) const {
  return value(sample, Spinor::Up, site) + value(sample, Spinor::Down, site);
}

void ContourField::set_sample(std::size_t sample, const BlockContour& contour) {
  if (contour.values.size() != static_cast<std::size_t>(block_.length)) {
    throw DomainError("contour field: sample has the wrong block length");
  }
  for (int i = 0; i < block_.length; ++i) {
    value(sample, Spinor::Up, i) = contour.values[static_cast<std::size_t>(i)][0];
    value(sample, Spinor::Down, i) = contour.values[static_cast<std::size_t>(i)][1];
  }
  entropies_[sample] = contour.entropy;
}

std::vector<std::vector<double>> ContourField::spinor_view(Spinor spinor) const {
  std::vector<std::vector<double>> out(num_samples());
  for (std::size_t s = 0; s < num_samples(); ++s) {
    out[s].resize(static_cast<std::size_t>(block_.length));
    for (int i = 0; i < block_.length; ++i) {
      out[s][static_cast<std::size_t>(i)] = value(s, spinor, i);
    }
  }
  return out;
}

std::vector<std::vector<double>> ContourField::summed_view() const {
  std::vector<std::vector<double>> out(num_samples());
  for (std::size_t s = 0; s < num_samples(); ++s) {
    out[s].resize(static_cast<std::size_t>(block_.length));
    for (int i = 0; i < block_.length; ++i) {
      out[s][static_cast<std::size_t>(i)] = spinor_summed(s, i);
    }
  }
  return out;
}

double ContourField::sum_rule_defect() const {
  double worst = 0.0;
  for (std::size_t s = 0; s < num_samples(); ++s) {
    double total = 0.0;
    for (int i = 0; i < block_.length; ++i) total += spinor_summed(s, i);
    worst = std::max(worst, std::abs(total - entropies_[s]));
  }
  return worst;
}

double ContourField::min_value() const {
  if (values_.empty()) return 0.0;
  return *std::min_element(values_.begin(), values_.end());
}

namespace {

std::vector<std::size_t> strided(std::size_t size, int stride) {
  if (stride < 1) throw DomainError("contour: time stride must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < size; s += static_cast<std::size_t>(stride)) {
    out.push_back(s);
  }
  return out;
}

}  // namespace

ContourField contour_trajectory(const Trajectory& trajectory,
                                const BlockSpec& block, int time_stride,
                                int workers) {
  block.validate();
  const std::vector<std::size_t> picks = strided(trajectory.size(), time_stride);
  std::vector<double> times;
  std::vector<double> cosmo;
  for (std::size_t s : picks) {
    times.push_back(trajectory.times[s]);
    cosmo.push_back(trajectory.profile.cosmological_time(trajectory.times[s]));
  }
  ContourField field(block, std::move(times), std::move(cosmo));
  std::vector<BlockContour> results(picks.size());
  detail::parallel_for(picks.size(), workers, [&](std::size_t i) {
    const RealSpaceCorrelation corr =
        real_space_correlation(trajectory.snapshots[picks[i]]);
    results[i] = entanglement_contour(corr, block);
  });
  for (std::size_t i = 0; i < picks.size(); ++i) field.set_sample(i, results[i]);
  return field;
}

std::vector<double> entropy_trajectory(const Trajectory& trajectory,
                                       const BlockSpec& block, int time_stride,
                                       int workers) {
  block.validate();
  const std::vector<std::size_t> picks = strided(trajectory.size(), time_stride);
  std::vector<double> out(picks.size());
  detail::parallel_for(picks.size(), workers, [&](std::size_t i) {
    const RealSpaceCorrelation corr =
        real_space_correlation(trajectory.snapshots[picks[i]]);
    out[i] = block_entropy(corr, block);
  });
  return out;
}

ZigzagField zigzag_view(const ContourField& field) {
  ZigzagField z{field.block(), field.times(), {}};
  const int len = field.length();
  z.rows.resize(field.num_samples());
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    auto& row = z.rows[s];
    row.resize(2 * static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      row[2 * static_cast<std::size_t>(i)] = field.value(s, Spinor::Up, i);
      row[2 * static_cast<std::size_t>(i) + 1] = field.value(s, Spinor::Down, i);
    }
  }
  return z;
}

ContourField from_zigzag(const ZigzagField& zigzag,
                         const std::vector<double>& cosmological_times) {
  ContourField field(zigzag.block, zigzag.times, cosmological_times);
  const int len = zigzag.block.length;
  for (std::size_t s = 0; s < zigzag.rows.size(); ++s) {
    BlockContour c;
    c.values.resize(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      c.values[ii] = {zigzag.rows[s][2 * ii], zigzag.rows[s][2 * ii + 1]};
    }
    c.entropy = c.sum();
    field.set_sample(s, c);
  }
  return field;
}

double mirror_asymmetry(const ZigzagField& zigzag) {
  double worst = 0.0;
  for (const auto& row : zigzag.rows) {
    const std::size_t n = row.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
      worst = std::max(worst, std::abs(row[j] - row[n - 1 - j]));
    }
  }
  return worst;
}

double spinor_mirror_asymmetry(const ContourField& field, Spinor spinor) {
  double worst = 0.0;
  const int len = field.length();
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    for (int i = 0; i < len / 2; ++i) {
      worst = std::max(worst, std::abs(field.value(s, spinor, i) -
                                       field.value(s, spinor, len - 1 - i)));
    }
  }
  return worst;
}

double spinor_difference(const ContourField& field) {
  double worst = 0.0;
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    for (int i = 0; i < field.length(); ++i) {
      worst = std::max(worst, std::abs(field.value(s, Spinor::Up, i) -
                                       field.value(s, Spinor::Down, i)));
    }
  }
  return worst;
}

}  // namespace cosmoferm
