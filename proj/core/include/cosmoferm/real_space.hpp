#pragma once

#include <vector>

#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/types.hpp"

namespace cosmoferm {

/// Real-space two-point function of a translation-invariant state,
///   Gamma_{(i,alpha),(j,beta)} = (1/N_S) sum_k e^{i k (x_i - x_j)} (Gamma_k)_{alpha beta},
/// stored as the 2x2 kernel G(d) for separations d = 0 .. N_S - 1 (mod N_S).
/// Dense index of (site i, spinor alpha) is 2 i + alpha.
class RealSpaceCorrelation {
 public:
  RealSpaceCorrelation() = default;
  RealSpaceCorrelation(int num_sites, std::vector<Mat2> kernel);

  int num_sites() const { return num_sites_; }
  const Mat2& kernel(int separation) const;
  Mat2 block(int i, int j) const;

  /// 2 N_S x 2 N_S matrix.
  ComplexMatrix dense() const;
  /// 2 length x 2 length sub-matrix on sites first .. first + length - 1
  /// (periodic).
  ComplexMatrix restrict_to(int first, int length) const;

 private:
  int num_sites_ = 0;
  std::vector<Mat2> kernel_;
};

/// FFT over the block array.
RealSpaceCorrelation real_space_correlation(const CorrelationState& state);

/// Inverse transform back to grid-ordered momentum blocks.
std::vector<Mat2> momentum_blocks(const RealSpaceCorrelation& correlation);

}  // namespace cosmoferm
