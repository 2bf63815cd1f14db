#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace gcsie {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr cplx kI{0.0, 1.0};

}  // namespace gcsie
