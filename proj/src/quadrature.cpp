#include "gcsie/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace gcsie {
namespace {

void require_even(int n, const char* what) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument(std::string(what) + ": size must be even and >= 2");
}

}  // namespace

std::vector<double> kress_log_weights(int n) {
  if (n < 2) throw std::invalid_argument("kress_log_weights: n must be >= 2");
  std::vector<double> w(2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    const double t = kPi * j / n;
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * t) / m;
    w[j] = -(2.0 * kPi / n) * s - (kPi / (double(n) * n)) * std::cos(n * t);
  }
  return w;
}

Eigen::MatrixXd spectral_derivative_matrix(int n) {
  require_even(n, "spectral_derivative_matrix");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double h = 2.0 * kPi / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int diff = i - j;
      const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * diff * h);
    }
  return d;
}

CVector spectral_derivative(const CVector& values) {
  const int n = static_cast<int>(values.size());
  require_even(n, "spectral_derivative");
  const std::vector<cplx> c = fourier_coeffs(values);
  CVector out = CVector::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    cplx s = 0.0;
    // index 0 holds m = -N/2, the Nyquist mode, which is dropped
    for (int idx = 1; idx < n; ++idx) {
      const int m = idx - n / 2;
      s += kI * double(m) * c[idx] * std::exp(kI * (m * t));
    }
    out[j] = s;
  }
  return out;
}

std::vector<cplx> fourier_coeffs(const CVector& values) {
  const int n = static_cast<int>(values.size());
  require_even(n, "fourier_coeffs");
  std::vector<cplx> c(n);
  for (int idx = 0; idx < n; ++idx) {
    const int m = idx - n / 2;
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += values[j] * std::exp(-kI * (2.0 * kPi * double(m) * j / n));
    c[idx] = s / double(n);
  }
  return c;
}

Eigen::MatrixXd trig_interpolation_matrix(int n, int m) {
  require_even(n, "trig_interpolation_matrix");
  if (m < 1) throw std::invalid_argument("trig_interpolation_matrix: m must be positive");
  Eigen::MatrixXd p(m, n);
  for (int i = 0; i < m; ++i) {
    const double tau = 2.0 * kPi * i / m;
    for (int j = 0; j < n; ++j) {
      const double t = tau - 2.0 * kPi * j / n;
      const double s = std::sin(0.5 * t);
      // periodic sinc (1/n) sin(n t/2) cot(t/2)
      p(i, j) = (std::abs(s) < 1e-14) ? 1.0 : std::sin(0.5 * n * t) * std::cos(0.5 * t) / (n * s);
    }
  }
  return p;
}

}  // namespace gcsie
