#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcsie/formulations.hpp"
#include "gcsie/types.hpp"

namespace gcsie {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveReport {
  CVector solution;  // stacked (a, b) or (phi, psi)
  std::string method;
  int iterations = 0;
  std::vector<double> residual_history;  // relative residuals, starting with 1
  bool converged = false;
  double relative_residual = 0.0;
  double seconds = 0.0;
  std::optional<double> norm_minus_identity;
  std::optional<double> sigma_min;

  CVector first() const { return solution.head(solution.size() / 2); }
  CVector second() const { return solution.tail(solution.size() / 2); }
};

/// Partial-pivoting LU. Throws SingularMatrixError when a pivot falls below 1e-300.
SolveReport lu_solve(const CMatrix& a, const CVector& b);
SolveReport lu_solve(const BlockSystem& system);

/// Full GMRES (no restart), modified Gram-Schmidt, Givens rotations, zero
/// initial guess. Iterations = Krylov dimension at convergence. A zero
/// right-hand side returns x = 0 after 0 iterations.
SolveReport gmres(const CMatrix& a, const CVector& b, double tol, int maxit);
SolveReport gmres(const BlockSystem& system, double tol, int maxit);

/// Largest singular value of A - shift I by power iteration on its normal matrix.
double norm2_estimate(const CMatrix& a, int shift = 0);

/// Smallest singular value by inverse power iteration with an LU factorization.
double sigma_min_estimate(const CMatrix& a);

}  // namespace gcsie
