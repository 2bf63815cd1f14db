#include "gcsie/oracle.hpp"

#include <cmath>
#include <cstdlib>

#include "gcsie/specfun.hpp"

namespace gcsie::oracle {
namespace {

struct ModeValues {
  cplx j, jp, h, hp;
};

// J_n, J_n', H_n, H_n' at z for n >= 0.
ModeValues mode_values(int n, cplx z) {
  const std::vector<cplx> js = specfun::bessel_j_seq(n + 1, z);
  const std::vector<cplx> hs = specfun::hankel1_seq(n + 1, z);
  return {js[n], specfun::seq_derivative(js, n, z), hs[n], specfun::seq_derivative(hs, n, z)};
}

cplx ipow(int n) {
  static const cplx powers[4] = {1.0, kI, -1.0, -kI};
  return powers[((n % 4) + 4) % 4];
}

// Sign for negative orders: C_{-n} = (-1)^n C_n.
double parity(int n) { return (std::abs(n) % 2 == 0) ? 1.0 : -1.0; }

struct PolarPoint {
  double r, theta;
};

PolarPoint polar(const Point2& x) { return {x.norm(), std::atan2(x.y(), x.x())}; }

}  // namespace

int default_mie_order(double radius, double k1, double k2) {
  return static_cast<int>(std::ceil(std::max(k1, k2) * radius)) + 20;
}

MieSolution mie_solve(double radius, double k1, double k2, double nu, double alpha, int n_max) {
  if (!(radius > 0.0) || !(k1 > 0.0) || !(k2 > 0.0) || !(nu > 0.0))
    throw OracleError("mie_solve requires positive radius, wavenumbers and density ratio");
  if (n_max < 0) n_max = default_mie_order(radius, k1, k2);
  MieSolution sol{radius, k1, k2, nu, alpha, n_max, {}, {}};
  sol.a.assign(2 * n_max + 1, 0.0);
  sol.b.assign(2 * n_max + 1, 0.0);
  for (int m = 0; m <= n_max; ++m) {
    const ModeValues e = mode_values(m, k1 * radius);
    const ModeValues i = mode_values(m, k2 * radius);
    for (int n : {m, -m}) {
      const double p = parity(n);
      // Bessel values at order n = +-m
      const cplx h = p * e.h, hp = p * e.hp, j1 = p * e.j, j1p = p * e.jp;
      const cplx j2 = p * i.j, j2p = p * i.jp;
      const cplx inc = ipow(n) * std::exp(-kI * (double(n) * alpha));
      // [h, -j2; k1 hp, -nu k2 j2p] (a, b) = -inc (j1, k1 j1p)
      const cplx m11 = h, m12 = -j2, m21 = k1 * hp, m22 = -nu * k2 * j2p;
      const cplx det = m11 * m22 - m12 * m21;
      if (std::abs(det) < 1e-13) throw OracleError("Mie mode determinant vanishes at n = " + std::to_string(n));
      const cplx r1 = -inc * j1, r2 = -inc * k1 * j1p;
      sol.a[n + n_max] = (r1 * m22 - m12 * r2) / det;
      sol.b[n + n_max] = (m11 * r2 - m21 * r1) / det;
      if (m == 0) break;
    }
  }
  double amax = 0.0;
  for (const cplx& v : sol.a) amax = std::max(amax, std::abs(v));
  const double tail = std::max(std::abs(sol.a_n(n_max)), std::abs(sol.a_n(-n_max)));
  if (amax > 0.0 && tail > 1e-14 * amax) throw OracleError("Mie series not converged; raise n_max");
  return sol;
}

cplx MieSolution::incident(const Point2& x) const {
  return std::exp(kI * (k1 * (std::cos(alpha) * x.x() + std::sin(alpha) * x.y())));
}

cplx MieSolution::incident_dr(const Point2& x) const {
  const Point2 rhat = x / x.norm();
  return kI * k1 * (std::cos(alpha) * rhat.x() + std::sin(alpha) * rhat.y()) * incident(x);
}

cplx MieSolution::scattered(const Point2& x) const {
  const PolarPoint p = polar(x);
  const std::vector<cplx> hs = specfun::hankel1_seq(n_max, k1 * p.r);
  cplx u = a_n(0) * hs[0];
  for (int n = 1; n <= n_max; ++n)
    u += hs[n] * (a_n(n) * std::exp(kI * (n * p.theta)) + parity(n) * a_n(-n) * std::exp(-kI * (n * p.theta)));
  return u;
}

cplx MieSolution::scattered_dr(const Point2& x) const {
  const PolarPoint p = polar(x);
  const cplx z = k1 * p.r;
  const std::vector<cplx> hs = specfun::hankel1_seq(n_max + 1, z);
  cplx u = a_n(0) * k1 * specfun::seq_derivative(hs, 0, z);
  for (int n = 1; n <= n_max; ++n)
    u += k1 * specfun::seq_derivative(hs, n, z) *
         (a_n(n) * std::exp(kI * (n * p.theta)) + parity(n) * a_n(-n) * std::exp(-kI * (n * p.theta)));
  return u;
}

cplx MieSolution::interior(const Point2& x) const {
  const PolarPoint p = polar(x);
  const std::vector<cplx> js = specfun::bessel_j_seq(n_max, k2 * p.r);
  cplx u = b_n(0) * js[0];
  for (int n = 1; n <= n_max; ++n)
    u += js[n] * (b_n(n) * std::exp(kI * (n * p.theta)) + parity(n) * b_n(-n) * std::exp(-kI * (n * p.theta)));
  return u;
}

cplx MieSolution::interior_dr(const Point2& x) const {
  const PolarPoint p = polar(x);
  const cplx z = k2 * p.r;
  const std::vector<cplx> js = specfun::bessel_j_seq(n_max + 1, z);
  cplx u = b_n(0) * k2 * specfun::seq_derivative(js, 0, z);
  for (int n = 1; n <= n_max; ++n)
    u += k2 * specfun::seq_derivative(js, n, z) *
         (b_n(n) * std::exp(kI * (n * p.theta)) + parity(n) * b_n(-n) * std::exp(-kI * (n * p.theta)));
  return u;
}

cplx MieSolution::far_field(double theta) const {
  cplx s = 0.0;
  for (int n = -n_max; n <= n_max; ++n) s += a_n(n) * ipow(-n) * std::exp(kI * (n * theta));
  return std::sqrt(2.0 / (kPi * k1)) * std::exp(-0.25 * kI * kPi) * s;
}

cplx circle_operator_symbol(OpTag tag, double radius, cplx k, int n) {
  if (std::abs(k) == 0.0) throw OracleError("circle symbols need k != 0");
  const ModeValues v = mode_values(std::abs(n), k * radius);
  const cplx c = 0.5 * kI * kPi * radius;
  switch (tag) {
    case OpTag::S: return c * v.j * v.h;
    case OpTag::K:
    case OpTag::KT: return 0.5 + c * k * v.j * v.hp;
    case OpTag::N: return c * k * k * v.jp * v.hp;
  }
  return 0.0;
}

cplx circle_dtn_symbol(Side side, double radius, cplx k, int n) {
  const ModeValues v = mode_values(std::abs(n), k * radius);
  if (side == Side::Exterior) return k * v.hp / v.h;
  if (std::abs(v.j) < 1e-13 * std::abs(v.jp))
    throw OracleError("interior Dirichlet eigenvalue: J_n(kR) vanishes at n = " + std::to_string(n));
  return k * v.jp / v.j;
}

BlockSymbol exact_admittance_symbols(double radius, double k1, double k2, double nu, int n) {
  const cplx y1 = circle_dtn_symbol(Side::Exterior, radius, k1, n);
  const cplx y2 = circle_dtn_symbol(Side::Interior, radius, k2, n);
  const cplx den = y1 - nu * y2;
  if (std::abs(den) < 1e-12) throw OracleError("admittance symbol has a pole at n = " + std::to_string(n));
  BlockSymbol r;
  r.b12 = 1.0 / den;
  r.b11 = -nu * r.b12 * y2;
  r.b21 = y1 * r.b11;
  r.b22 = y1 * r.b12;
  return r;
}

BlockSymbol regularizer_symbols(double radius, double nu, cplx kappa, int n) {
  const double c = 1.0 / (1.0 + nu);
  return {nu * c, -2.0 * c * circle_operator_symbol(OpTag::S, radius, kappa, n),
          2.0 * nu * c * circle_operator_symbol(OpTag::N, radius, kappa, n), c};
}

BlockSymbol gcsie_block_symbols(double radius, double k1, double k2, double nu, const BlockSymbol& r,
                                int n) {
  const cplx s1 = circle_operator_symbol(OpTag::S, radius, k1, n);
  const cplx s2 = circle_operator_symbol(OpTag::S, radius, k2, n);
  const cplx kk1 = circle_operator_symbol(OpTag::K, radius, k1, n);
  const cplx kk2 = circle_operator_symbol(OpTag::K, radius, k2, n);
  const cplx n1 = circle_operator_symbol(OpTag::N, radius, k1, n);
  const cplx n2 = circle_operator_symbol(OpTag::N, radius, k2, n);
  const cplx ksum = kk1 + kk2;
  const cplx ssum = s1 + s2 / nu;
  const cplx nsum = n1 + nu * n2;
  BlockSymbol d;
  d.b11 = 0.5 - kk2 + ksum * r.b11 - ssum * r.b21;
  d.b12 = s2 / nu + ksum * r.b12 - ssum * r.b22;
  d.b21 = -nu * n2 + nsum * r.b11 - ksum * r.b21;
  d.b22 = 0.5 + kk2 + nsum * r.b12 - ksum * r.b22;
  return d;
}

double smoothing_order(const std::vector<std::pair<int, double>>& samples) {
  if (samples.size() < 4) throw OracleError("smoothing_order needs at least 4 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int prev = 0;
  for (const auto& [n, mag] : samples) {
    if (n <= prev) throw OracleError("smoothing_order needs increasing positive n");
    if (!(mag > 0.0)) throw OracleError("smoothing_order: zero magnitude at n = " + std::to_string(n));
    prev = n;
    const double x = std::log(double(n)), y = std::log(mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = double(samples.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace gcsie::oracle
