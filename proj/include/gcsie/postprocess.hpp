#pragma once

#include <string>
#include <vector>

#include "gcsie/formulations.hpp"
#include "gcsie/geometry.hpp"
#include "gcsie/operators.hpp"
#include "gcsie/types.hpp"

namespace gcsie {

enum class Region { Exterior, Interior };

/// Scattered field at infinity: u(x) ~ e^{i k1 r} / sqrt(r) * (u_inf(xhat) + O(1/r)).
struct FarField {
  std::vector<double> theta;
  std::vector<cplx> values;
  std::string convention = "u ~ exp(i k1 r)/sqrt(r) * u_inf";
};

/// Minimum distance from an evaluation point to the boundary.
inline constexpr double kMinFieldDistance = 0.1;

/// DL_k[mu] - SL_k[sigma] at the given points, with densities given on the
/// coarse grid and integrated on the oversampled grid by the trapezoid rule.
/// Points closer than kMinFieldDistance to the curve, or lying in the wrong
/// region, are rejected with std::invalid_argument.
CVector layer_potentials(const Curve& curve, cplx k, const CVector& mu, const CVector& sigma,
                         const std::vector<Point2>& points, Region region, int oversample = 2);

/// u^1 = DL1(R11 a + R12 b) - SL1(R21 a + R22 b) outside,
/// u^2 = -DL2(R11 a + R12 b - a) + SL2(R21 a + R22 b - b)/nu inside.
CVector gcsie_fields(const CVector& a, const CVector& b, const TransmissionConfig& config,
                     const std::vector<Point2>& points, Region region);

/// Scattered u^1 = DL1(phi - f) - SL1(nu psi - g) outside, u^2 = SL2 psi - DL2 phi inside.
CVector classical_fields(const CVector& phi, const CVector& psi, const TransmissionConfig& config,
                         const IncidentWave& incident, const std::vector<Point2>& points, Region region);

/// Far field of DL_k[mu] - SL_k[sigma].
FarField potential_far_field(const Curve& curve, double k, const CVector& mu, const CVector& sigma,
                             const std::vector<double>& angles, int oversample = 2);

/// Far field of the scattered field for a solved system; `solution` is the
/// stacked unknown vector of the given formulation.
FarField far_field(Formulation formulation, const CVector& solution, const TransmissionConfig& config,
                   const IncidentWave& incident, const std::vector<double>& angles);

/// Fields for a solved system of any formulation (u^1 scattered outside, u^2 inside).
CVector fields(Formulation formulation, const CVector& solution, const TransmissionConfig& config,
               const IncidentWave& incident, const std::vector<Point2>& points, Region region);

/// sum_j (A phi)_j conj(phi_j) |x'(t_j)| (2pi/N), the discrete L2 pairing <A phi, phi>.
cplx quadratic_form(const DenseOp& op, const CVector& density, const Curve& curve);

/// `count` equispaced angles on [0, 2pi).
std::vector<double> uniform_angles(int count);

}  // namespace gcsie
