#include "gcsie/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gcsie/quadrature.hpp"
#include "gcsie/specfun.hpp"

namespace gcsie {
namespace {

void check_wavenumber(cplx k) {
  if (std::abs(k) == 0.0) throw std::invalid_argument("wavenumber k = 0 is not supported");
  if (k.imag() < 0.0) throw std::invalid_argument("wavenumber must satisfy Im k >= 0");
  if (k.real() < 0.0) throw std::invalid_argument("wavenumber must satisfy Re k >= 0");
}

enum Which : unsigned { kS = 1, kK = 2, kKT = 4, kN = 8 };

// For large Im k the log coefficient J0(k r) grows like e^{Im k r} while the kernel decays, so
// forming the smooth remainder cancels catastrophically. The coefficient is then multiplied by
// exp(-(s/sigma)^8) in the wrapped parameter distance s: it equals 1 to eighth order on the
// diagonal and confines the split to Im k r of order 12, trading about e^{12} eps of cancellation
// against resolution of the window. Below Im k diam = 12 the plain split is already that accurate.
double split_width(const CurveSamples& cs, cplx k) {
  double diam = 0.0, speed = 0.0;
  for (int i = 0; i < cs.speed.size(); ++i) {
    speed = std::max(speed, cs.speed[i]);
    for (int j = 0; j < i; ++j) diam = std::max(diam, std::hypot(cs.x(0, i) - cs.x(0, j), cs.x(1, i) - cs.x(1, j)));
  }
  if (k.imag() * diam <= 12.0) return 0.0;
  return std::min(1.5, 12.0 / (k.imag() * speed));
}

double split_window(double t, double sigma) {
  if (sigma == 0.0) return 1.0;
  const double s = std::abs(std::remainder(t, 2.0 * kPi)) / sigma;
  const double s2 = s * s, s4 = s2 * s2;
  return std::exp(-s4 * s4);
}

// Log-split Nystrom assembly. For a kernel M(t, tau) = M1 ln(4 sin^2((t-tau)/2)) + M2
// the matrix entry is R_{|i-j|} M1 + (pi/n) M2.
OperatorSet assemble(const Curve& curve, const NodeGrid& grid, cplx k, unsigned which) {
  check_wavenumber(k);
  const CurveSamples cs(curve, grid);
  const int n_nodes = grid.size();
  const int half = n_nodes / 2;
  const std::vector<double> rw = kress_log_weights(half);
  const double h = kPi / half;
  const bool need_n = which & kN;
  const double sigma = split_width(cs, k);

  CMatrix s = CMatrix::Zero(n_nodes, n_nodes), kd, kt, a, b;
  if (which & kK) kd = CMatrix::Zero(n_nodes, n_nodes);
  if (which & kKT) kt = CMatrix::Zero(n_nodes, n_nodes);
  if (need_n) {
    a = CMatrix::Zero(n_nodes, n_nodes);
    b = CMatrix::Zero(n_nodes, n_nodes);
  }

  const cplx i4 = 0.25 * kI;
  const double inv4pi = 1.0 / (4.0 * kPi);

#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n_nodes; ++i) {
    const double xi0 = cs.x(0, i), xi1 = cs.x(1, i);
    const double si = cs.speed[i];
    // unnormalized normal (x2', -x1') at t_i
    const double nui0 = cs.dx(1, i), nui1 = -cs.dx(0, i);
    for (int j = 0; j < n_nodes; ++j) {
      const int w = std::abs(i - j);
      if (i == j) {
        const cplx a2 = i4 - kEulerGamma / (2.0 * kPi) - std::log(k * si / 2.0) / (2.0 * kPi);
        const double a1 = -inv4pi;
        const cplx sa = rw[0] * a1 + h * a2;
        s(i, i) = sa * si;
        if (need_n) {
          a(i, i) = sa;
          b(i, i) = sa * si;
        }
        const double kdiag = h * (nui0 * cs.ddx(0, i) + nui1 * cs.ddx(1, i)) * inv4pi / (si * si);
        if (which & kK) kd(i, i) = kdiag;
        if (which & kKT) kt(i, i) = kdiag;
        continue;
      }
      const double dx0 = xi0 - cs.x(0, j), dx1 = xi1 - cs.x(1, j);
      const double r = std::hypot(dx0, dx1);
      const double sj = cs.speed[j];
      const double lg = std::log(4.0 * std::pow(std::sin(0.5 * (grid.node(i) - grid.node(j))), 2));
      const specfun::KernelBessel kb = specfun::kernel_bessel(k * r);
      const double chi = split_window(grid.node(i) - grid.node(j), sigma);

      // single layer without arc length
      const cplx a1 = -inv4pi * chi * kb.j0;
      const cplx a2 = i4 * kb.h0 - a1 * lg;
      const cplx aij = rw[w] * a1 + h * a2;
      s(i, j) = aij * sj;
      if (need_n) {
        a(i, j) = aij;
        const double nn = cs.normal(0, i) * cs.normal(0, j) + cs.normal(1, i) * cs.normal(1, j);
        b(i, j) = aij * sj * nn;
      }
      if (which & (kK | kKT)) {
        const cplx d1 = -(k * inv4pi) * chi * kb.j1 / r;
        const cplx d2 = (i4 * k) * kb.h1 / r;
        if (which & kK) {
          // (x(t) - x(tau)) . nu(tau)
          const double proj = dx0 * cs.dx(1, j) - dx1 * cs.dx(0, j);
          kd(i, j) = rw[w] * (d1 * proj) + h * (d2 * proj - d1 * proj * lg);
        }
        if (which & kKT) {
          // (x(tau) - x(t)) . nu(t) |x'(tau)| / |x'(t)|
          const double proj = -(dx0 * nui0 + dx1 * nui1) * sj / si;
          kt(i, j) = rw[w] * (d1 * proj) + h * (d2 * proj - d1 * proj * lg);
        }
      }
    }
  }

  OperatorSet out{DenseOp{std::move(s), grid, k, OpTag::S}, DenseOp{CMatrix(), grid, k, OpTag::K},
                  DenseOp{CMatrix(), grid, k, OpTag::KT}, DenseOp{CMatrix(), grid, k, OpTag::N}};
  if (which & kK) out.K.matrix = std::move(kd);
  if (which & kKT) out.KT.matrix = std::move(kt);
  if (need_n) {
    const CMatrix d = spectral_derivative_matrix(n_nodes).cast<cplx>();
    const CMatrix dad = d * (a * d);
    out.N.matrix = (k * k) * b;
    for (int i = 0; i < n_nodes; ++i) out.N.matrix.row(i) += dad.row(i) / cs.speed[i];
  }
  return out;
}

}  // namespace

std::string to_string(OpTag tag) {
  switch (tag) {
    case OpTag::S: return "S";
    case OpTag::K: return "K";
    case OpTag::KT: return "KT";
    case OpTag::N: return "N";
  }
  return "?";
}

DenseOp assemble_S(const Curve& curve, const NodeGrid& grid, cplx k) {
  return assemble(curve, grid, k, kS).S;
}
DenseOp assemble_K(const Curve& curve, const NodeGrid& grid, cplx k) {
  return assemble(curve, grid, k, kK).K;
}
DenseOp assemble_KT(const Curve& curve, const NodeGrid& grid, cplx k) {
  return assemble(curve, grid, k, kKT).KT;
}
DenseOp assemble_N(const Curve& curve, const NodeGrid& grid, cplx k) {
  return assemble(curve, grid, k, kN).N;
}
OperatorSet assemble_all(const Curve& curve, const NodeGrid& grid, cplx k) {
  return assemble(curve, grid, k, kS | kK | kKT | kN);
}

}  // namespace gcsie
