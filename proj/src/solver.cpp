#include "gcsie/solver.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/LU>

namespace gcsie {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_square(const CMatrix& a, const CVector& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  if (a.rows() != b.size()) throw std::invalid_argument("right-hand side length mismatch");
}

Eigen::PartialPivLU<CMatrix> factorize(const CMatrix& a) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  const auto& m = lu.matrixLU();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (std::abs(m(i, i)) < 1e-300) throw SingularMatrixError("matrix is numerically singular");
  return lu;
}

// Deterministic start vector that is unlikely to be orthogonal to anything.
CVector start_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.5 * std::sin(1.7 * i + 0.3), 0.3 * std::cos(0.9 * i));
  return v.normalized();
}

}  // namespace

SolveReport lu_solve(const CMatrix& a, const CVector& b) {
  check_square(a, b);
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.method = "lu";
  const auto lu = factorize(a);
  rep.solution = lu.solve(b);
  const double bn = b.norm();
  rep.relative_residual = bn > 0.0 ? (a * rep.solution - b).norm() / bn : 0.0;
  rep.residual_history = {rep.relative_residual};
  rep.converged = true;
  rep.seconds = seconds_since(t0);
  return rep;
}

SolveReport lu_solve(const BlockSystem& system) { return lu_solve(system.matrix(), system.rhs()); }

SolveReport gmres(const CMatrix& a, const CVector& b, double tol, int maxit) {
  check_square(a, b);
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("gmres: tol must lie in (0, 1)");
  const auto t0 = Clock::now();
  const Eigen::Index n = b.size();
  maxit = std::max(0, std::min<int>(maxit, static_cast<int>(n)));
  SolveReport rep;
  rep.method = "gmres";
  rep.solution = CVector::Zero(n);
  const double beta = b.norm();
  if (beta == 0.0) {
    rep.converged = true;
    rep.residual_history = {0.0};
    rep.seconds = seconds_since(t0);
    return rep;
  }
  rep.residual_history = {1.0};

  CMatrix v(n, maxit + 1);
  CMatrix h = CMatrix::Zero(maxit + 1, maxit);
  std::vector<cplx> cs(maxit), sn(maxit);
  CVector g = CVector::Zero(maxit + 1);
  g[0] = beta;
  v.col(0) = b / beta;

  int k = 0;
  double rel = 1.0;
  while (k < maxit && rel > tol) {
    CVector w = a * v.col(k);
    for (int i = 0; i <= k; ++i) {
      h(i, k) = v.col(i).dot(w);  // conjugates the first argument
      w -= h(i, k) * v.col(i);
    }
    const double hn = w.norm();
    h(k + 1, k) = hn;
    if (hn > 0.0) v.col(k + 1) = w / hn;
    for (int i = 0; i < k; ++i) {
      const cplx t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
      h(i + 1, k) = -std::conj(sn[i]) * h(i, k) + cs[i] * h(i + 1, k);
      h(i, k) = t;
    }
    // rotation zeroing h(k+1, k)
    const cplx hk = h(k, k);
    const double denom = std::hypot(std::abs(hk), hn);
    if (denom == 0.0) break;
    if (std::abs(hk) == 0.0) {
      cs[k] = 0.0;
      sn[k] = 1.0;
    } else {
      cs[k] = std::abs(hk) / denom;
      sn[k] = (hk / std::abs(hk)) * hn / denom;
    }
    h(k, k) = cs[k] * hk + sn[k] * hn;
    h(k + 1, k) = 0.0;
    g[k + 1] = -std::conj(sn[k]) * g[k];
    g[k] = cs[k] * g[k];
    ++k;
    rel = std::abs(g[k]) / beta;
    rep.residual_history.push_back(rel);
    if (hn == 0.0) break;  // lucky breakdown: exact solution in this space
  }
  if (k > 0) {
    const CVector y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    rep.solution = v.leftCols(k) * y;
  }
  rep.iterations = k;
  rep.relative_residual = (a * rep.solution - b).norm() / beta;
  rep.converged = rel <= tol;
  rep.seconds = seconds_since(t0);
  return rep;
}

SolveReport gmres(const BlockSystem& system, double tol, int maxit) {
  return gmres(system.matrix(), system.rhs(), tol, maxit);
}

double norm2_estimate(const CMatrix& a, int shift) {
  if (shift != 0 && shift != 1) throw std::invalid_argument("norm2_estimate: shift must be 0 or 1");
  CMatrix m = a;
  if (shift == 1) m.diagonal().array() -= 1.0;
  CVector x = start_vector(m.cols());
  double sigma = 0.0;
  for (int it = 0; it < 200; ++it) {
    const CVector y = m.adjoint() * (m * x);
    const double lambda = y.norm();
    if (lambda == 0.0) return 0.0;
    const double next = std::sqrt(lambda);
    x = y / lambda;
    const bool stagnant = std::abs(next - sigma) <= 1e-6 * next;
    sigma = next;
    if (stagnant) break;
  }
  return sigma;
}

double sigma_min_estimate(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sigma_min_estimate: matrix must be square");
  const auto lu = factorize(a);
  CVector x = start_vector(a.cols());
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    // (A^H A)^{-1} x = A^{-1} A^{-H} x
    const CVector y = lu.solve(lu.adjoint().solve(x));
    const double lambda = y.norm();
    if (!std::isfinite(lambda)) throw SingularMatrixError("matrix is numerically singular");
    const double next = 1.0 / std::sqrt(lambda);
    x = y / lambda;
    const bool stagnant = std::abs(next - sigma) <= 1e-12 * next;
    sigma = next;
    if (stagnant) break;
  }
  return sigma;
}

}  // namespace gcsie
