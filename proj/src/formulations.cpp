#include "gcsie/formulations.hpp"

#include <cmath>
#include <stdexcept>

#include "gcsie/quadrature.hpp"

namespace gcsie {
namespace {

// Maps fine-grid operators back to the coarse grid: the coarse operator is
// sample . X . interp, i.e. X applied to the trigonometric interpolant of the
// coarse density and read off at the coarse nodes.
class Restrictor {
 public:
  Restrictor(int n, int factor) : n_(n), factor_(factor) {
    interp_ = trig_interpolation_matrix(n, n * factor).cast<cplx>();
  }

  int fine_size() const { return n_ * factor_; }

  CMatrix op(const CMatrix& x) const { return rows(x) * interp_; }
  /// Restriction of the product x * y.
  CMatrix product(const CMatrix& x, const CMatrix& y) const { return rows(x) * (y * interp_); }
  /// Coarse-node samples of a fine-grid vector.
  CVector sample(const CVector& v) const { return rows(v); }

 private:
  CMatrix rows(const CMatrix& x) const {
    CMatrix out(n_, x.cols());
    for (int i = 0; i < n_; ++i) out.row(i) = x.row(i * factor_);
    return out;
  }

  int n_, factor_;
  CMatrix interp_;
};

struct FineOperators {
  Restrictor restrict;
  NodeGrid coarse, fine;
};

FineOperators fine_setup(const TransmissionConfig& c) {
  return {Restrictor(c.n, c.oversample), NodeGrid(c.n), NodeGrid(c.n * c.oversample)};
}

DenseOp wrap(CMatrix m, const NodeGrid& g, cplx k, OpTag tag) { return DenseOp{std::move(m), g, k, tag}; }

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

BlockSystem finish(const TransmissionConfig& c, const IncidentWave& inc, const NodeGrid& g, CMatrix d11,
                   CMatrix d12, CMatrix d21, CMatrix d22, Formulation tag) {
  auto [f, gn] = incident_traces(inc, c.k1, c.curve, g);
  BlockSystem sys{wrap(std::move(d11), g, c.k1, OpTag::S), wrap(std::move(d12), g, c.k1, OpTag::S),
                  wrap(std::move(d21), g, c.k1, OpTag::S), wrap(std::move(d22), g, c.k1, OpTag::S),
                  CVector(), CVector(), tag};
  if (tag == Formulation::Classical) {
    // right-hand side built from the incident Cauchy data
    sys.rhs1 = f;
    sys.rhs2 = gn;
  } else {
    sys.rhs1 = -f;
    sys.rhs2 = -gn;
  }
  return sys;
}

}  // namespace

void TransmissionConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (!(k1 > 0.0) || !std::isfinite(k1)) fail("k1", "must be a positive finite number");
  if (!(k2 > 0.0) || !std::isfinite(k2)) fail("k2", "must be a positive finite number");
  if (!(nu > 0.0) || !std::isfinite(nu)) fail("nu", "must be a positive finite number");
  if (!(kappa.real() >= 0.0)) fail("kappa", "real part must be >= 0");
  if (!(kappa.imag() > 0.0)) fail("kappa", "imaginary part must be > 0");
  if (delta1 != 0 || delta2 != 0) fail("delta", "only delta1 = delta2 = 0 is supported");
  if (n < 4 || n % 2 != 0) fail("N", "must be even and >= 4");
  if (n > 2048) fail("N", "must not exceed 2048");
  if (oversample < 1) fail("oversample", "must be >= 1");
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::GcsieComposed: return "gcsie";
    case Formulation::GcsieExplicit: return "gcsie-explicit";
    case Formulation::Classical: return "classical";
  }
  return "?";
}

Formulation parse_formulation(const std::string& name) {
  if (name == "gcsie" || name == "gcsie-composed") return Formulation::GcsieComposed;
  if (name == "gcsie-explicit") return Formulation::GcsieExplicit;
  if (name == "classical") return Formulation::Classical;
  throw std::invalid_argument("formulation: unknown value '" + name + "'");
}

CMatrix BlockSystem::matrix() const {
  const int n = block_size();
  CMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = d11.matrix;
  a.topRightCorner(n, n) = d12.matrix;
  a.bottomLeftCorner(n, n) = d21.matrix;
  a.bottomRightCorner(n, n) = d22.matrix;
  return a;
}

CVector BlockSystem::rhs() const {
  CVector b(rhs1.size() + rhs2.size());
  b << rhs1, rhs2;
  return b;
}

std::pair<CVector, CVector> incident_traces(const IncidentWave& incident, double k1, const Curve& curve,
                                            const NodeGrid& grid) {
  const CurveSamples cs(curve, grid);
  const Point2 d = incident.direction();
  CVector f(grid.size()), g(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const cplx e = std::exp(kI * (k1 * d.dot(cs.x.col(j))));
    f[j] = e;
    g[j] = kI * k1 * d.dot(cs.normal.col(j)) * e;
  }
  return {f, g};
}

RegularizerBlocks regularizer_blocks(const TransmissionConfig& config) {
  config.validate();
  const auto fo = fine_setup(config);
  const OperatorSet ok = assemble_all(config.curve, fo.fine, config.kappa);
  const double c = 1.0 / (1.0 + config.nu);
  const int n = config.n;
  return {wrap(config.nu * c * identity(n), fo.coarse, config.kappa, OpTag::S),
          wrap(-2.0 * c * fo.restrict.op(ok.S.matrix), fo.coarse, config.kappa, OpTag::S),
          wrap(2.0 * config.nu * c * fo.restrict.op(ok.N.matrix), fo.coarse, config.kappa, OpTag::N),
          wrap(c * identity(n), fo.coarse, config.kappa, OpTag::S)};
}

BlockSystem assemble_gcsie_composed(const TransmissionConfig& config, const IncidentWave& incident) {
  config.validate();
  const auto fo = fine_setup(config);
  const auto& r = fo.restrict;
  const OperatorSet o1 = assemble_all(config.curve, fo.fine, config.k1);
  const OperatorSet o2 = assemble_all(config.curve, fo.fine, config.k2);
  const OperatorSet ok = assemble_all(config.curve, fo.fine, config.kappa);
  const double nu = config.nu, c = 1.0 / (1.0 + nu);

  // fine-grid regularizer blocks; R11 and R22 are multiples of I
  const double r11 = nu * c, r22 = c;
  const CMatrix r12 = -2.0 * c * ok.S.matrix;
  const CMatrix r21 = 2.0 * nu * c * ok.N.matrix;

  const CMatrix ksum = o1.K.matrix + o2.K.matrix;
  const CMatrix ssum = o1.S.matrix + o2.S.matrix / nu;
  const CMatrix nsum = o1.N.matrix + nu * o2.N.matrix;
  const CMatrix ktsum = o1.KT.matrix + o2.KT.matrix;
  const int n = config.n;

  CMatrix d11 = 0.5 * identity(n) + r.op(r11 * ksum - o2.K.matrix) - r.product(ssum, r21);
  CMatrix d12 = r.op(o2.S.matrix / nu - r22 * ssum) + r.product(ksum, r12);
  CMatrix d21 = r.op(-nu * o2.N.matrix + r11 * nsum) - r.product(ktsum, r21);
  CMatrix d22 = 0.5 * identity(n) + r.op(o2.KT.matrix - r22 * ktsum) + r.product(nsum, r12);
  return finish(config, incident, fo.coarse, std::move(d11), std::move(d12), std::move(d21), std::move(d22),
                Formulation::GcsieComposed);
}

BlockSystem assemble_gcsie_explicit(const TransmissionConfig& config, const IncidentWave& incident) {
  config.validate();
  const auto fo = fine_setup(config);
  const auto& r = fo.restrict;
  const OperatorSet o1 = assemble_all(config.curve, fo.fine, config.k1);
  const OperatorSet o2 = assemble_all(config.curve, fo.fine, config.k2);
  const OperatorSet ok = assemble_all(config.curve, fo.fine, config.kappa);
  const double nu = config.nu, c = 1.0 / (1.0 + nu);
  const int n = config.n;
  const CMatrix& s1 = o1.S.matrix;
  const CMatrix& s2 = o2.S.matrix;
  const CMatrix& k1 = o1.K.matrix;
  const CMatrix& k2 = o2.K.matrix;
  const CMatrix& kt1 = o1.KT.matrix;
  const CMatrix& kt2 = o2.KT.matrix;
  const CMatrix& n1 = o1.N.matrix;
  const CMatrix& n2 = o2.N.matrix;
  const CMatrix& sk = ok.S.matrix;
  const CMatrix& nk = ok.N.matrix;
  const CMatrix& ktk = ok.KT.matrix;

  CMatrix d11 = identity(n) + r.op(nu * c * k1 - c * k2) - 2.0 * nu * c * r.product(s1, nk - n1) -
                2.0 * nu * c * r.product(k1, k1) - 2.0 * c * r.product(s2, nk - n2) -
                2.0 * c * r.product(k2, k2);
  CMatrix d12 = r.op(c * (s2 - s1)) - 2.0 * c * r.product(k1 + k2, sk);
  CMatrix d21 = r.op(nu * c * (n1 - n2)) - 2.0 * nu * c * r.product(kt1 + kt2, nk);
  CMatrix d22 = identity(n) + r.op(nu * c * kt2 - c * kt1) - 2.0 * c * r.product(n1 - nk, sk) -
                2.0 * nu * c * r.product(n2 - nk, sk) - 2.0 * r.product(ktk, ktk);
  return finish(config, incident, fo.coarse, std::move(d11), std::move(d12), std::move(d21), std::move(d22),
                Formulation::GcsieExplicit);
}

BlockSystem assemble_classical(const TransmissionConfig& config, const IncidentWave& incident) {
  config.validate();
  const auto fo = fine_setup(config);
  const auto& r = fo.restrict;
  const OperatorSet o1 = assemble_all(config.curve, fo.fine, config.k1);
  const OperatorSet o2 = assemble_all(config.curve, fo.fine, config.k2);
  const double nu = config.nu;
  const int n = config.n;

  CMatrix d11 = identity(n) + r.op(o2.K.matrix - o1.K.matrix);
  CMatrix d12 = r.op(nu * o1.S.matrix - o2.S.matrix);
  CMatrix d21 = r.op(o2.N.matrix - o1.N.matrix);
  CMatrix d22 = 0.5 * (1.0 + nu) * identity(n) + r.op(nu * o1.KT.matrix - o2.KT.matrix);
  BlockSystem sys = finish(config, incident, fo.coarse, std::move(d11), std::move(d12), std::move(d21),
                           std::move(d22), Formulation::Classical);
  // rows: (1/2 I - K1) f + S1 g  and  -N1 f + (1/2 I + K1^T) g, with the operators applied to
  // traces sampled on the fine grid rather than interpolated from the coarse one
  const auto [ff, gf] = incident_traces(incident, config.k1, config.curve, fo.fine);
  sys.rhs1 = 0.5 * sys.rhs1 + r.sample(o1.S.matrix * gf - o1.K.matrix * ff);
  sys.rhs2 = 0.5 * sys.rhs2 + r.sample(o1.KT.matrix * gf - o1.N.matrix * ff);
  return sys;
}

BlockSystem assemble_system(Formulation f, const TransmissionConfig& config, const IncidentWave& incident) {
  switch (f) {
    case Formulation::GcsieComposed: return assemble_gcsie_composed(config, incident);
    case Formulation::GcsieExplicit: return assemble_gcsie_explicit(config, incident);
    case Formulation::Classical: return assemble_classical(config, incident);
  }
  throw std::invalid_argument("unknown formulation");
}

}  // namespace gcsie
