#include "cosmoferm/contour_analysis.hpp"

#include <cmath>

#include "cosmoferm/errors.hpp"

namespace cosmoferm {

std::vector<double> left_front(const ContourField& field, double level) {
  const int half = field.length() / 2;
  std::vector<double> out(field.num_samples(), static_cast<double>(half));
  for (std::size_t s = 0; s < field.num_samples(); ++s) {
    for (int i = 0; i < half; ++i) {
      if (field.spinor_summed(s, i) < level) {
        out[s] = static_cast<double>(i);
        break;
      }
    }
  }
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 double lo, double hi) {
  if (x.size() != y.size()) throw DomainError("fit_line: x and y differ in size");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < lo || y[i] > hi) continue;
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    ++n;
  }
  if (n < 2) throw DomainError("fit_line: fewer than two points in the window");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (dn * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.points = n;
  return fit;
}

int dark_band_width(std::span<const double> profile, double threshold) {
  const int n = static_cast<int>(profile.size());
  if (n == 0) return 0;
  int c = (n - 1) / 2;
  if (!(profile[static_cast<std::size_t>(c)] < threshold)) {
    c = n / 2;
    if (!(profile[static_cast<std::size_t>(c)] < threshold)) return 0;
  }
  int lo = c;
  int hi = c;
  while (lo > 0 && profile[static_cast<std::size_t>(lo - 1)] < threshold) --lo;
  while (hi + 1 < n && profile[static_cast<std::size_t>(hi + 1)] < threshold) ++hi;
  return hi - lo + 1;
}

ProfileStats profile_stats(std::span<const double> profile) {
  ProfileStats out;
  if (profile.empty()) return out;
  const double n = static_cast<double>(profile.size());
  for (double v : profile) out.mean += v;
  out.mean /= n;
  double var = 0.0;
  for (double v : profile) var += (v - out.mean) * (v - out.mean);
  var /= n;
  out.relative_stdev = out.mean != 0.0 ? std::sqrt(var) / std::abs(out.mean) : 0.0;
  return out;
}

}  // namespace cosmoferm
