#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcsie/geometry.hpp"
#include "gcsie/operators.hpp"
#include "gcsie/types.hpp"

/// Analytic ground truth on a circle of radius R: Fourier symbols of the
/// boundary operators, Dirichlet-to-Neumann maps, admittance blocks and the
/// Mie series of the transmission problem.
namespace gcsie::oracle {

class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

/// Per-mode coefficients of the circular transmission problem.
/// Scattered field sum a_n H_n(k1 r) e^{i n theta}, interior sum b_n J_n(k2 r) e^{i n theta}.
struct MieSolution {
  double radius, k1, k2, nu, alpha;
  int n_max;
  std::vector<cplx> a, b;  // index n + n_max

  cplx a_n(int n) const { return a.at(n + n_max); }
  cplx b_n(int n) const { return b.at(n + n_max); }

  cplx incident(const Point2& x) const;
  cplx scattered(const Point2& x) const;
  cplx interior(const Point2& x) const;
  /// Radial derivatives, for boundary-condition checks.
  cplx incident_dr(const Point2& x) const;
  cplx scattered_dr(const Point2& x) const;
  cplx interior_dr(const Point2& x) const;
  /// u(x) ~ e^{i k1 r} / sqrt(r) * far_field(theta).
  cplx far_field(double theta) const;
};

/// Default truncation ceil(max(k1, k2) R) + 20.
int default_mie_order(double radius, double k1, double k2);

/// n_max < 0 selects the default truncation.
MieSolution mie_solve(double radius, double k1, double k2, double nu, double alpha, int n_max = -1);

/// Symbol at mode n (|n| by symmetry) of S, K (= K^T) or N on the circle.
cplx circle_operator_symbol(OpTag tag, double radius, cplx k, int n);

enum class Side { Exterior, Interior };

/// Exterior: k H_n'(kR) / H_n(kR); interior: k J_n'(kR) / J_n(kR).
cplx circle_dtn_symbol(Side side, double radius, cplx k, int n);

/// Four scalar symbols of a 2x2 block operator at one mode.
struct BlockSymbol {
  cplx b11, b12, b21, b22;
};

/// Exact admittance blocks: R12 = (Y1 - nu Y2)^{-1}, R11 = -nu R12 Y2,
/// R21 = Y1 R11, R22 = Y1 R12.
BlockSymbol exact_admittance_symbols(double radius, double k1, double k2, double nu, int n);

/// Symbols of the regularizer: nu/(1+nu), -2/(1+nu) S_kappa, 2nu/(1+nu) N_kappa, 1/(1+nu).
BlockSymbol regularizer_symbols(double radius, double nu, cplx kappa, int n);

/// Symbol of the combined-source system built from any regularizer symbol r:
///   D11 = 1/2 - K2 + (K1+K2) r11 - (S1 + S2/nu) r21, and the three analogous blocks.
BlockSymbol gcsie_block_symbols(double radius, double k1, double k2, double nu, const BlockSymbol& r,
                                int n);

/// Least-squares slope of log(magnitude) against log(n).
double smoothing_order(const std::vector<std::pair<int, double>>& samples);

}  // namespace gcsie::oracle
