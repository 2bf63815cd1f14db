#pragma once

#include <vector>

#include "gcsie/types.hpp"

namespace gcsie {

/// Weights R_j, j = 0..2n-1, of the Kress product rule for
/// int_0^{2pi} ln(4 sin^2((t_i - tau)/2)) p(tau) dtau  ~  sum_j R_{|i-j|} p(t_j),
/// exact for trigonometric polynomials p of degree < n.
std::vector<double> kress_log_weights(int n);

/// Dense spectral differentiation matrix on N equispaced nodes (N even),
/// Nyquist mode set to zero.
Eigen::MatrixXd spectral_derivative_matrix(int n);

/// Exact derivative of the trigonometric interpolant of nodal values.
CVector spectral_derivative(const CVector& values);

/// Discrete Fourier coefficients c_m, m = -N/2 .. N/2-1, stored in that order:
/// values_j = sum_m c_m e^{i m t_j}.
std::vector<cplx> fourier_coeffs(const CVector& values);

/// Values of the trigonometric interpolant on m equispaced nodes, given
/// nodal values on n nodes: an m x n matrix. The Nyquist mode of the
/// coarse grid is split symmetrically, so the map is real.
Eigen::MatrixXd trig_interpolation_matrix(int n, int m);

}  // namespace gcsie
