#pragma once

#include <span>
#include <vector>

#include "cosmoferm/entanglement.hpp"

namespace cosmoferm {

/// Distance from the left block edge to the first site, scanning inward,
/// whose spinor-summed contour drops below `level`; one value per sample.
/// A profile that never drops below `level` yields length / 2.
std::vector<double> left_front(const ContourField& field, double level);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Least-squares line through the (x, y) pairs with lo <= y <= hi.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 double lo, double hi);

/// Longest run of consecutive sites in `profile` with values < threshold
/// that contains the block centre (0 when the centre is lit).
int dark_band_width(std::span<const double> profile, double threshold);

/// Mean and relative spread of a profile, used for equipartition checks.
struct ProfileStats {
  double mean = 0.0;
  double relative_stdev = 0.0;
};
ProfileStats profile_stats(std::span<const double> profile);

}  // namespace cosmoferm
