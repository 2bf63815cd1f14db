#include <doctest.h>

#include <cmath>
#include <random>

#include "gcsie/operators.hpp"
#include "gcsie/oracle.hpp"
#include "gcsie/quadrature.hpp"
#include "gcsie/specfun.hpp"
#include "reference.hpp"

using namespace gcsie;

namespace {

CVector mode(const NodeGrid& g, int n) {
  CVector v(g.size());
  for (int j = 0; j < g.size(); ++j) v[j] = std::exp(kI * (n * g.node(j)));
  return v;
}

double symbol_error(const DenseOp& op, int n, cplx symbol) {
  const CVector e = mode(op.grid, n);
  return (op * e - symbol * e).norm() / (std::abs(symbol) * e.norm());
}

}  // namespace

TEST_CASE("single layer on the unit circle") {
  const Curve c = Curve::circle(1.0);
  const DenseOp s1 = assemble_S(c, grid(64), 1.0);
  // (i pi/2) J0(1) H0(1)
  const cplx s0(-0.10608219815307811, 0.91974444547346407);
  CHECK(std::abs(oracle::circle_operator_symbol(OpTag::S, 1.0, 1.0, 0) - s0) < 1e-15);
  CHECK(symbol_error(s1, 0, s0) < 1e-10);
  const DenseOp s2 = assemble_S(c, grid(128), 2.0);
  CHECK(symbol_error(s2, 4, oracle::circle_operator_symbol(OpTag::S, 1.0, 2.0, 4)) < 1e-10);
}

TEST_CASE("single layer symmetry") {
  const Curve kite = Curve::kite();
  const NodeGrid g = grid(96);
  const DenseOp s = assemble_S(kite, g, {3.0, 1.0});
  const CurveSamples cs(kite, g);
  const CMatrix a = s.matrix * cs.speed.cwiseInverse().asDiagonal();
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("double layer symbols") {
  const Curve c = Curve::circle(1.0);
  // 1/2 + (i pi/2) J0(1) H0'(1), H0' = -H1
  const cplx k0 = oracle::circle_operator_symbol(OpTag::K, 1.0, 1.0, 0);
  CHECK(std::abs(k0 - cplx(-0.43899415242046, -0.52892747727301)) < 1e-12);
  const auto ops = assemble_all(c, grid(128), 1.0);
  CHECK(symbol_error(ops.K, 0, k0) < 1e-10);
  for (int n : {0, 1, 4, 8}) {
    const CVector e = mode(ops.K.grid, n);
    CHECK((ops.K * e - ops.KT * e).norm() <= 1e-10 * e.norm());
  }
}

TEST_CASE("two forms of the double layer symbol agree") {
  for (double k : {0.5, 1.0, 3.0, 7.0})
    for (int n = 0; n <= 20; ++n) {
      const auto j = specfun::bessel_j_seq(n + 1, k);
      const auto h = specfun::hankel1_seq(n + 1, k);
      const cplx a = 0.5 + 0.5 * kI * kPi * k * j[n] * specfun::seq_derivative(h, n, k);
      const cplx b = -0.5 + 0.5 * kI * kPi * k * specfun::seq_derivative(j, n, k) * h[n];
      CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("hypersingular symbols") {
  const Curve c = Curve::circle(1.0);
  const DenseOp n1 = assemble_N(c, grid(128), 1.0);
  const cplx n2 = oracle::circle_operator_symbol(OpTag::N, 1.0, 1.0, 2);
  CHECK(std::abs(n2 - cplx(-0.83228007443897, 0.06943293302749)) < 1e-12);
  CHECK(symbol_error(n1, 2, n2) < 1e-9);

  const DenseOp small = assemble_N(c, grid(128), 0.1);
  // (i pi k^2 / 2) J0' H0' = (i pi k^2 / 2) J1 H1
  const cplx expect = 0.5 * kI * kPi * 0.01 * specfun::bessel_j(1, 0.1) * specfun::hankel1(1, 0.1);
  const CVector one = CVector::Ones(128);
  CHECK((small * one - expect * one).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("operators match circle symbols for real and complex k") {
  const Curve c = Curve::circle(1.0);
  for (cplx k : {cplx(2.0), cplx(4.0, 2.0)}) {
    const auto ops = assemble_all(c, grid(128), k);
    for (const DenseOp* op : {&ops.S, &ops.K, &ops.KT, &ops.N})
      for (int n : {0, 1, 4, 8, 16}) {
        CAPTURE(to_string(op->tag));
        CAPTURE(n);
        CHECK(symbol_error(*op, n, oracle::circle_operator_symbol(op->tag, 1.0, k, n)) < 1e-9);
      }
  }
}

TEST_CASE("operators commute with rotation on the circle") {
  const auto ops = assemble_all(Curve::circle(1.0), grid(128), {2.5, 0.5});
  for (const DenseOp* op : {&ops.S, &ops.K, &ops.KT, &ops.N})
    for (int n = 0; n <= 16; ++n) {
      const CVector e = mode(op->grid, n);
      const CVector ae = *op * e;
      const cplx lambda = e.dot(ae) / e.squaredNorm();
      CHECK((ae - lambda * e).norm() <= 1e-9 * std::max(1.0, std::abs(lambda)) * e.norm());
    }
}

TEST_CASE("Calderon identity S N = -I/4 + K^2 on the kite") {
  const Curve kite = Curve::kite();
  // one fixed density with modes up to 16 = 64/4, sampled on each grid
  auto residual = [&](int n) {
    const auto ops = assemble_all(kite, grid(n), {4.0, 1.0});
    std::mt19937_64 gen(5);
    const CVector phi = ref::band_limited(n, 16, gen);
    const CVector r = ops.S * (ops.N * phi) + 0.25 * phi - ops.K * (ops.K * phi);
    return r.norm() / phi.norm();
  };
  const double r64 = residual(64), r128 = residual(128), r256 = residual(256);
  CAPTURE(r64);
  CAPTURE(r128);
  CHECK(r256 <= 1e-8);
  CHECK(r64 / r128 >= 1e2);
}

TEST_CASE("spectral convergence of the single layer on the kite") {
  const Curve kite = Curve::kite();
  auto value = [&](int n) {
    const NodeGrid g = grid(n);
    return (assemble_S(kite, g, 2.0) * mode(g, 1))[0];
  };
  const cplx ref_value = value(512);
  const double e64 = std::abs(value(64) - ref_value), e128 = std::abs(value(128) - ref_value);
  CHECK(e64 / e128 >= 1e2);
}

TEST_CASE("assembly arguments") {
  const Curve c = Curve::circle(1.0);
  CHECK_THROWS_AS(assemble_S(c, grid(16), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_K(c, grid(16), {1.0, -1.0}), std::invalid_argument);
  const DenseOp s = assemble_S(c, grid(16), {0.0, 1.0});
  CHECK(s.matrix.allFinite());
  CHECK(s.tag == OpTag::S);
  CHECK(s.grid == grid(16));
}

TEST_CASE("symbols stay accurate for a strongly damped wavenumber") {
  // Im k = 10 makes J0(k r) reach e^{20} across the circle
  const cplx k(20.0, 10.0);
  const auto ops = assemble_all(Curve::circle(1.0), grid(512), k);
  for (const DenseOp* op : {&ops.S, &ops.K, &ops.KT, &ops.N})
    for (int n : {0, 3, 17, 40}) {
      CAPTURE(to_string(op->tag));
      CAPTURE(n);
      CHECK(symbol_error(*op, n, oracle::circle_operator_symbol(op->tag, 1.0, k, n)) < 1e-9);
    }
}
