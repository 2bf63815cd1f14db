#include <doctest.h>

#include <cmath>

#include "gcsie/oracle.hpp"
#include "gcsie/specfun.hpp"

using namespace gcsie;
using namespace gcsie::oracle;

namespace {

std::vector<std::pair<int, double>> sweep(const std::function<double(int)>& f, int lo = 16, int hi = 64) {
  std::vector<std::pair<int, double>> s;
  for (int n = lo; n <= hi; ++n) s.push_back({n, f(n)});
  return s;
}

}  // namespace

TEST_CASE("Mie series without contrast") {
  const MieSolution m = mie_solve(1.0, 3.0, 3.0, 1.0, 0.4);
  for (int n = -m.n_max; n <= m.n_max; ++n) {
    CHECK(std::abs(m.a_n(n)) < 1e-14);
    const cplx expect = std::pow(kI, n) * std::exp(-kI * (n * 0.4));
    CHECK(std::abs(m.b_n(n) - expect) < 1e-12);
  }
}

TEST_CASE("Mie series satisfies the transmission conditions") {
  const MieSolution m = mie_solve(1.0, 4.0, 8.0, 2.0, 0.0);
  for (int j = 0; j < 64; ++j) {
    const double th = 2 * kPi * j / 64;
    const Point2 x(std::cos(th), std::sin(th));
    CHECK(std::abs(m.scattered(x) + m.incident(x) - m.interior(x)) <= 1e-12);
    CHECK(std::abs(m.scattered_dr(x) + m.incident_dr(x) - 2.0 * m.interior_dr(x)) <= 1e-11);
  }
}

TEST_CASE("Mie series conserves energy") {
  // Im of the outgoing flux through the boundary, from inside and outside.
  const MieSolution m = mie_solve(1.0, 4.0, 8.0, 2.0, 0.3);
  const int q = 256;
  cplx outside = 0.0, inside = 0.0;
  for (int j = 0; j < q; ++j) {
    const double th = 2 * kPi * j / q;
    const Point2 x(std::cos(th), std::sin(th));
    const cplx u = m.scattered(x) + m.incident(x);
    const cplx du = m.scattered_dr(x) + m.incident_dr(x);
    outside += u * std::conj(du);
    inside += m.interior(x) * std::conj(m.nu * m.interior_dr(x));
  }
  outside *= 2 * kPi / q;
  inside *= 2 * kPi / q;
  // a real interior wavenumber absorbs nothing
  CHECK(std::abs(outside.imag()) < 1e-10);
  CHECK(std::abs(outside.imag() - inside.imag()) < 1e-10);
}

TEST_CASE("Mie far field matches Green's representation at infinity") {
  // u_inf(xhat) = e^{i pi/4}/sqrt(8 pi k) int_{|y|=2} (u d_n e^{-ik xhat.y} - d_n u e^{-ik xhat.y}) ds
  const double k = 4.0, rho = 2.0;
  const MieSolution m = mie_solve(1.0, k, 8.0, 2.0, 0.3);
  const int q = 128;
  for (double th : {0.0, 1.0, 2.5, 4.0}) {
    const Point2 xhat(std::cos(th), std::sin(th));
    cplx sum = 0.0;
    for (int j = 0; j < q; ++j) {
      const double t = 2 * kPi * j / q;
      const Point2 n(std::cos(t), std::sin(t));
      const Point2 y = rho * n;
      const cplx e = std::exp(-kI * (k * xhat.dot(y)));
      sum += m.scattered(y) * (-kI * k * xhat.dot(n)) * e - m.scattered_dr(y) * e;
    }
    sum *= rho * 2 * kPi / q * std::exp(kI * (kPi / 4)) / std::sqrt(8 * kPi * k);
    CHECK(std::abs(sum - m.far_field(th)) < 1e-12 * std::max(1.0, std::abs(m.far_field(th))));
  }
}

TEST_CASE("operator symbol values and Calderon identity per mode") {
  CHECK(std::abs(circle_operator_symbol(OpTag::S, 1.0, 1.0, 0) - cplx(-0.1060822, 0.9197444)) < 1e-7);
  for (int n = 0; n <= 40; ++n) {
    const cplx s = circle_operator_symbol(OpTag::S, 1.0, 3.0, n);
    const cplx k = circle_operator_symbol(OpTag::K, 1.0, 3.0, n);
    const cplx nn = circle_operator_symbol(OpTag::N, 1.0, 3.0, n);
    CHECK(std::abs(s * nn - (k * k - 0.25)) <= 1e-12 * std::max(1.0, std::abs(k * k)));
  }
  const cplx n64 = circle_operator_symbol(OpTag::N, 1.0, 2.0, 64);
  CHECK(std::abs(std::abs(n64) / 32.0 - 1.0) < 0.05);
  CHECK(circle_operator_symbol(OpTag::S, 1.0, 2.0, -5) == circle_operator_symbol(OpTag::S, 1.0, 2.0, 5));
}

TEST_CASE("Dirichlet-to-Neumann symbols") {
  CHECK(std::abs(circle_dtn_symbol(Side::Exterior, 1.0, 2.0, 64) / 64.0 + 1.0) <= 0.05);
  CHECK(std::abs(circle_dtn_symbol(Side::Interior, 1.0, 2.0, 64) / 64.0 - 1.0) <= 0.05);
  for (int n = 0; n <= 32; ++n) {
    const cplx s = circle_operator_symbol(OpTag::S, 1.0, 2.0, n);
    const cplx k = circle_operator_symbol(OpTag::K, 1.0, 2.0, n);
    const cplx y1 = circle_dtn_symbol(Side::Exterior, 1.0, 2.0, n);
    CHECK(std::abs(s * y1 - (k - 0.5)) <= 1e-11 * std::max(1.0, std::abs(k)));
  }
  // first zero of J0
  CHECK_THROWS_AS(circle_dtn_symbol(Side::Interior, 1.0, 2.404825557695773, 0), OracleError);
}

TEST_CASE("exact admittance reproduces the identity") {
  for (int n = 0; n <= 32; ++n) {
    const BlockSymbol r = exact_admittance_symbols(1.0, 4.0, 8.0, 2.0, n);
    const BlockSymbol d = gcsie_block_symbols(1.0, 4.0, 8.0, 2.0, r, n);
    CHECK(std::abs(d.b11 - 1.0) < 1e-10);
    CHECK(std::abs(d.b12) < 1e-10);
    CHECK(std::abs(d.b21) < 1e-10);
    CHECK(std::abs(d.b22 - 1.0) < 1e-10);
  }
}

TEST_CASE("admittance asymptotics") {
  const double nu = 2.0;
  const cplx kappa(4.0, 2.0);
  const BlockSymbol r = exact_admittance_symbols(1.0, 4.0, 8.0, nu, 64);
  const cplx approx12 = -2.0 / (1.0 + nu) * circle_operator_symbol(OpTag::S, 1.0, kappa, 64);
  CHECK(std::abs(r.b12 / approx12 - 1.0) < 0.1);
  CHECK(std::abs(r.b11 / (nu / (1.0 + nu)) - 1.0) < 0.05);
}

TEST_CASE("smoothing_order on synthetic data") {
  CHECK(std::abs(smoothing_order(sweep([](int n) { return 5.0 * std::pow(n, -3.0); })) + 3.0) < 1e-10);
  CHECK(std::abs(smoothing_order(sweep([](int n) { return 1.0 / n; })) + 1.0) < 1e-10);
  CHECK_THROWS_AS(smoothing_order({{1, 1.0}, {2, 0.5}, {3, 0.3}}), OracleError);
  CHECK_THROWS_AS(smoothing_order({{1, 1.0}, {2, 0.0}, {3, 0.3}, {4, 0.2}}), OracleError);
  CHECK_THROWS_AS(smoothing_order({{3, 1.0}, {2, 0.5}, {4, 0.3}, {5, 0.2}}), OracleError);
}

TEST_CASE("regularizer smoothing orders on the circle") {
  const double k1 = 4, k2 = 8, nu = 2;
  const cplx kappa(4, 2);
  auto diff = [&](int which) {
    return sweep([&](int n) {
      const BlockSymbol a = regularizer_symbols(1.0, nu, kappa, n);
      const BlockSymbol e = exact_admittance_symbols(1.0, k1, k2, nu, n);
      switch (which) {
        case 11: return std::abs(a.b11 - e.b11);
        case 12: return std::abs(a.b12 - e.b12);
        case 21: return std::abs(a.b21 - e.b21);
        default: return std::abs(a.b22 - e.b22);
      }
    });
  };
  CHECK(smoothing_order(diff(12)) <= -3 + 0.3);
  CHECK(smoothing_order(diff(11)) <= -2 + 0.3);
  CHECK(smoothing_order(diff(21)) <= -1 + 0.3);
  CHECK(smoothing_order(diff(22)) <= -2 + 0.3);

  const auto dtn1 = sweep([&](int n) {
    return std::abs(2.0 * circle_operator_symbol(OpTag::N, 1.0, kappa, n) - circle_dtn_symbol(Side::Exterior, 1.0, k1, n));
  });
  const auto dtn2 = sweep([&](int n) {
    return std::abs(-2.0 * circle_operator_symbol(OpTag::N, 1.0, kappa, n) - circle_dtn_symbol(Side::Interior, 1.0, k2, n));
  });
  CHECK(smoothing_order(dtn1) <= -1 + 0.3);
  CHECK(smoothing_order(dtn2) <= -1 + 0.3);
}

TEST_CASE("mapping orders and wavenumber differences") {
  auto mag = [](OpTag t, cplx k) {
    return sweep([=](int n) { return std::abs(circle_operator_symbol(t, 1.0, k, n)); });
  };
  CHECK(std::abs(smoothing_order(mag(OpTag::S, 2.0)) + 1.0) < 0.3);
  CHECK(std::abs(smoothing_order(mag(OpTag::N, 2.0)) - 1.0) < 0.3);
  CHECK(std::abs(smoothing_order(mag(OpTag::K, 2.0)) + 3.0) < 0.3);
  const cplx a(2.0), b(3.0, 1.0);
  const auto ds = sweep([&](int n) {
    return std::abs(circle_operator_symbol(OpTag::S, 1.0, a, n) - circle_operator_symbol(OpTag::S, 1.0, b, n));
  });
  const auto dn = sweep([&](int n) {
    return std::abs(circle_operator_symbol(OpTag::N, 1.0, a, n) - circle_operator_symbol(OpTag::N, 1.0, b, n));
  });
  CHECK(smoothing_order(ds) <= -3 + 0.3);
  CHECK(smoothing_order(dn) <= -1 + 0.3);
}

TEST_CASE("combined-source symbol is a smoothing perturbation of the identity") {
  const double k1 = 4, k2 = 8, nu = 2;
  const cplx kappa(4, 2);
  std::vector<std::pair<int, double>> d11, d12, d21, d22, whole;
  for (int n = 16; n <= 64; ++n) {
    const BlockSymbol d = gcsie_block_symbols(1.0, k1, k2, nu, regularizer_symbols(1.0, nu, kappa, n), n);
    d11.push_back({n, std::abs(d.b11 - 1.0)});
    d12.push_back({n, std::abs(d.b12)});
    d21.push_back({n, std::abs(d.b21)});
    d22.push_back({n, std::abs(d.b22 - 1.0)});
    Eigen::Matrix2cd m;
    m << d.b11 - 1.0, d.b12, d.b21, d.b22 - 1.0;
    whole.push_back({n, m.operatorNorm()});
  }
  CHECK(smoothing_order(d11) <= -2 + 0.3);
  CHECK(smoothing_order(d12) <= -3 + 0.3);
  CHECK(smoothing_order(d21) <= -1 + 0.3);
  CHECK(smoothing_order(d22) <= -2 + 0.3);
  CHECK(smoothing_order(whole) <= -1 + 0.3);
}

TEST_CASE("Mie argument checks") {
  CHECK_THROWS_AS(mie_solve(0.0, 1.0, 1.0, 1.0, 0.0), OracleError);
  CHECK_THROWS_AS(mie_solve(1.0, 1.0, 1.0, -1.0, 0.0), OracleError);
  CHECK(default_mie_order(1.0, 4.0, 8.0) == 28);
}
