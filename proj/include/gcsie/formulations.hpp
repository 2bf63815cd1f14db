#pragma once

#include <string>
#include <utility>

#include "gcsie/geometry.hpp"
#include "gcsie/operators.hpp"
#include "gcsie/types.hpp"

namespace gcsie {

/// Physical and discretization data of one transmission problem.
struct TransmissionConfig {
  double k1 = 1.0;  // exterior wavenumber
  double k2 = 1.0;  // interior wavenumber
  double nu = 1.0;  // density ratio in the Neumann transmission condition
  cplx kappa{1.0, 0.5};
  int delta1 = 0, delta2 = 0;  // regularizer switches; only 0 is implemented
  int n = 128;
  Curve curve = Curve::circle(1.0);
  /// Operators and block products are formed on a grid `oversample` times
  /// finer and restricted back to the n nodes. Plain n-point products alias
  /// and spoil the second-kind structure; 2 is enough in practice.
  int oversample = 2;

  static cplx default_kappa(double k1) { return {k1, 0.5 * k1}; }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  NodeGrid grid() const { return NodeGrid(n); }
};

/// Plane wave e^{i k1 d.x}, d = (cos angle, sin angle).
struct IncidentWave {
  double angle = 0.0;
  Point2 direction() const { return {std::cos(angle), std::sin(angle)}; }
};

enum class Formulation { GcsieComposed, GcsieExplicit, Classical };

std::string to_string(Formulation f);
/// Accepts "gcsie", "gcsie-composed", "gcsie-explicit", "classical".
Formulation parse_formulation(const std::string& name);

/// 2x2 block system with stacked unknowns: (a, b) for the combined-source
/// formulations, (phi, psi) = interior Cauchy data for the classical one.
struct BlockSystem {
  DenseOp d11, d12, d21, d22;
  CVector rhs1, rhs2;
  Formulation tag;

  int block_size() const { return d11.size(); }
  CMatrix matrix() const;
  CVector rhs() const;
};

struct RegularizerBlocks {
  DenseOp r11, r12, r21, r22;
};

/// R11 = nu/(1+nu) I, R12 = -2/(1+nu) S_kappa, R21 = 2nu/(1+nu) N_kappa, R22 = 1/(1+nu) I.
RegularizerBlocks regularizer_blocks(const TransmissionConfig& config);

/// Dirichlet and Neumann traces (f, g) of the incident wave.
std::pair<CVector, CVector> incident_traces(const IncidentWave& incident, double k1, const Curve& curve,
                                            const NodeGrid& grid);

/// Combined-source system formed by composing operators with the regularizer.
BlockSystem assemble_gcsie_composed(const TransmissionConfig& config, const IncidentWave& incident);
/// The same system after simplification by the Calderon identities.
BlockSystem assemble_gcsie_explicit(const TransmissionConfig& config, const IncidentWave& incident);
/// Second-kind direct system in the interior Cauchy data.
BlockSystem assemble_classical(const TransmissionConfig& config, const IncidentWave& incident);

BlockSystem assemble_system(Formulation f, const TransmissionConfig& config, const IncidentWave& incident);

}  // namespace gcsie
