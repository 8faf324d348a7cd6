#include "cosmoferm/real_space.hpp"

#include <unsupported/Eigen/FFT>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

namespace {

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

// Applies the forward or inverse FFT to each of the four block entries.
std::vector<Mat2> transform_entries(const std::vector<Mat2>& in, bool inverse) {
  const std::size_t n = in.size();
  Eigen::FFT<double> fft;
  std::vector<Complex> src(n);
  std::vector<Complex> dst(n);
  std::vector<Mat2> out(n);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < n; ++i) src[i] = in[i](r, c);
      if (inverse) {
        fft.inv(dst, src);
      } else {
        fft.fwd(dst, src);
      }
      for (std::size_t i = 0; i < n; ++i) out[i](r, c) = dst[i];
    }
  }
  return out;
}

}  // namespace

RealSpaceCorrelation::RealSpaceCorrelation(int num_sites, std::vector<Mat2> kernel)
    : num_sites_(num_sites), kernel_(std::move(kernel)) {
  if (num_sites_ < 1 || kernel_.size() != static_cast<std::size_t>(num_sites_)) {
    throw DomainError("real space: kernel size must equal the site count");
  }
}

const Mat2& RealSpaceCorrelation::kernel(int separation) const {
  return kernel_[static_cast<std::size_t>(wrap(separation, num_sites_))];
}

Mat2 RealSpaceCorrelation::block(int i, int j) const { return kernel(i - j); }

ComplexMatrix RealSpaceCorrelation::dense() const {
  return restrict_to(0, num_sites_);
}

ComplexMatrix RealSpaceCorrelation::restrict_to(int first, int length) const {
  if (length < 1 || length > num_sites_) {
    throw DomainError("real space: block length outside [1, N_S]");
  }
  ComplexMatrix out(2 * length, 2 * length);
  for (int i = 0; i < length; ++i) {
    for (int j = 0; j < length; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = kernel((first + i) - (first + j));
    }
  }
  return out;
}

RealSpaceCorrelation real_space_correlation(const CorrelationState& state) {
  const int n = state.spec().num_sites;
  std::vector<Mat2> blocks(state.blocks().begin(), state.blocks().end());
  // k_n a = 2 pi (n - N/2) / N, so exp(i k_n a d) = (-1)^d exp(2 pi i n d / N)
  std::vector<Mat2> kernel = transform_entries(blocks, true);
  for (int d = 1; d < n; d += 2) kernel[static_cast<std::size_t>(d)] *= -1.0;
  return RealSpaceCorrelation(n, std::move(kernel));
}

std::vector<Mat2> momentum_blocks(const RealSpaceCorrelation& correlation) {
  const int n = correlation.num_sites();
  std::vector<Mat2> signed_kernel(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    signed_kernel[static_cast<std::size_t>(d)] =
        (d % 2 == 0 ? 1.0 : -1.0) * correlation.kernel(d);
  }
  return transform_entries(signed_kernel, false);
}

}  // namespace cosmoferm
