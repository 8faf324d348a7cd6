#pragma once

#include <array>
#include <vector>

#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/real_space.hpp"

namespace cosmoferm {

enum class Spinor : int { Up = 0, Down = 1 };

/// Contiguous block of `length` sites starting at `first` in a periodic chain.
struct BlockSpec {
  int first = 0;
  int length = 1;
  int num_sites = 2;

  /// Throws DomainError unless 1 <= length <= num_sites and first is a site.
  void validate() const;

  /// Block centred in the chain.
  static BlockSpec centered(int length, int num_sites);
};

/// Binary entropy -nu log nu - (1 - nu) log(1 - nu) with nu clipped to
/// [1e-14, 1 - 1e-14].
double binary_entropy(double nu);

/// Entropy of the restricted correlation matrix. Throws InvalidStateError for
/// eigenvalues outside [-1e-8, 1 + 1e-8].
double block_entropy(const ComplexMatrix& restricted);
double block_entropy(const RealSpaceCorrelation& correlation,
                     const BlockSpec& block);

/// Site- and spinor-resolved contour of one block at one time.
struct BlockContour {
  std::vector<std::array<double, 2>> values;  ///< [site in block][spinor]
  double entropy = 0.0;                       ///< sum of the eigenmode entropies

  double site_total(std::size_t i) const { return values[i][0] + values[i][1]; }
  double sum() const;
};

/// S_(i,alpha) = sum_m |U_(i,alpha),m|^2 s(nu_m) over eigenmodes m of the
/// restricted matrix. The mode index m is not a lattice momentum.
BlockContour entanglement_contour(const ComplexMatrix& restricted);
BlockContour entanglement_contour(const RealSpaceCorrelation& correlation,
                                  const BlockSpec& block);

/// Contour over sampled times, stored spinor-major: value(s, alpha, i).
class ContourField {
 public:
  ContourField() = default;
  ContourField(BlockSpec block, std::vector<double> times,
               std::vector<double> cosmological_times);

  const BlockSpec& block() const { return block_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& cosmological_times() const {
    return cosmological_times_;
  }
  const std::vector<double>& entropies() const { return entropies_; }
  std::size_t num_samples() const { return times_.size(); }
  int length() const { return block_.length; }

  double value(std::size_t sample, Spinor spinor, int site) const;
  double& value(std::size_t sample, Spinor spinor, int site);
  double spinor_summed(std::size_t sample, int site) const;
  void set_sample(std::size_t sample, const BlockContour& contour);

  /// One leg of the ladder, [sample][site].
  std::vector<std::vector<double>> spinor_view(Spinor spinor) const;
  /// S_i = S_(i,u) + S_(i,d), [sample][site].
  std::vector<std::vector<double>> summed_view() const;

  /// Largest |sum_(i,alpha) S - S_A| over samples.
  double sum_rule_defect() const;
  double min_value() const;

 private:
  std::size_t offset(std::size_t sample, Spinor spinor, int site) const;

  BlockSpec block_;
  std::vector<double> times_;
  std::vector<double> cosmological_times_;
  std::vector<double> values_;
  std::vector<double> entropies_;
};

/// Contour at every `time_stride`-th trajectory sample, evaluated on up to
/// `workers` threads. Results do not depend on the worker count.
ContourField contour_trajectory(const Trajectory& trajectory,
                                const BlockSpec& block, int time_stride = 1,
                                int workers = 1);

/// Block entropy at every `time_stride`-th sample.
std::vector<double> entropy_trajectory(const Trajectory& trajectory,
                                       const BlockSpec& block,
                                       int time_stride = 1, int workers = 1);

/// Entries ordered (1,u), (1,d), (2,u), (2,d), ... per sample.
struct ZigzagField {
  BlockSpec block;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  ///< [sample][2 * site + spinor]
};

ZigzagField zigzag_view(const ContourField& field);
ContourField from_zigzag(const ZigzagField& zigzag,
                         const std::vector<double>& cosmological_times = {});

/// max over rows and j of |z_j - z_(2 l - 1 - j)|.
double mirror_asymmetry(const ZigzagField& zigzag);
/// max over samples and sites of |S^alpha_i - S^alpha_(l+1-i)|.
double spinor_mirror_asymmetry(const ContourField& field, Spinor spinor);
/// max |S^u_i - S^d_i|.
double spinor_difference(const ContourField& field);

}  // namespace cosmoferm
