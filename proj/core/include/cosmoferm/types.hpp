#pragma once

#include <complex>

#include <Eigen/Core>

namespace cosmoferm {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace cosmoferm
