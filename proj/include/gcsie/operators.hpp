#pragma once

#include <string>

#include "gcsie/geometry.hpp"
#include "gcsie/types.hpp"

namespace gcsie {

enum class OpTag { S, K, KT, N };

std::string to_string(OpTag tag);

/// Nystrom matrix of a boundary operator acting on nodal densities.
struct DenseOp {
  CMatrix matrix;
  NodeGrid grid;
  cplx k;
  OpTag tag;

  int size() const { return grid.size(); }
  CVector operator*(const CVector& v) const { return matrix * v; }
};

/// S, K, K^T and N at one wavenumber, assembled from a single sweep of
/// kernel evaluations.
struct OperatorSet {
  DenseOp S, K, KT, N;
};

/// Single layer (S phi)(x) = int G_k(x - y) phi(y) ds(y), G_k = (i/4) H_0(k r).
DenseOp assemble_S(const Curve& curve, const NodeGrid& grid, cplx k);
/// Double layer (K phi)(x) = int d_{n(y)} G_k(x - y) phi(y) ds(y).
DenseOp assemble_K(const Curve& curve, const NodeGrid& grid, cplx k);
/// Adjoint double layer (K^T psi)(x) = int d_{n(x)} G_k(x - y) psi(y) ds(y).
DenseOp assemble_KT(const Curve& curve, const NodeGrid& grid, cplx k);
/// Hypersingular operator in Maue form:
/// N = k^2 B + diag(1/|x'|) D A D, with B the single layer weighted by
/// n(x).n(y), A the single layer without the arc-length factor and D
/// spectral differentiation.
DenseOp assemble_N(const Curve& curve, const NodeGrid& grid, cplx k);

OperatorSet assemble_all(const Curve& curve, const NodeGrid& grid, cplx k);

}  // namespace gcsie
