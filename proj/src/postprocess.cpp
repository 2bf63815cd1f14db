#include "gcsie/postprocess.hpp"

#include <cmath>
#include <stdexcept>

#include "gcsie/quadrature.hpp"
#include "gcsie/specfun.hpp"

namespace gcsie {
namespace {

CVector interpolate(const CVector& v, int factor) {
  if (factor == 1) return v;
  const int n = static_cast<int>(v.size());
  return trig_interpolation_matrix(n, n * factor).cast<cplx>() * v;
}

// Winding number of the closed polygon through the samples around p.
bool inside(const CurveSamples& cs, const Point2& p) {
  double angle = 0.0;
  const int n = cs.size();
  for (int j = 0; j < n; ++j) {
    const Point2 a = cs.x.col(j) - p, b = cs.x.col((j + 1) % n) - p;
    angle += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return std::abs(angle) > kPi;
}

void check_points(const Curve& curve, const std::vector<Point2>& points, Region region) {
  const CurveSamples dense(curve, NodeGrid(4096));
  for (const Point2& p : points) {
    const double dist = (dense.x.colwise() - p).colwise().norm().minCoeff();
    if (dist < kMinFieldDistance)
      throw std::invalid_argument("evaluation point closer than 0.1 to the boundary");
    if (inside(dense, p) != (region == Region::Interior))
      throw std::invalid_argument("evaluation point lies in the wrong region");
  }
}

std::pair<CVector, CVector> split(const CVector& x) {
  const Eigen::Index n = x.size() / 2;
  return {x.head(n), x.tail(n)};
}

}  // namespace

CVector layer_potentials(const Curve& curve, cplx k, const CVector& mu, const CVector& sigma,
                         const std::vector<Point2>& points, Region region, int oversample) {
  check_points(curve, points, region);
  const int n = static_cast<int>(mu.size());
  if (sigma.size() != n) throw std::invalid_argument("layer_potentials: density length mismatch");
  const NodeGrid fine(n * oversample);
  const CurveSamples cs(curve, fine);
  const CVector mf = interpolate(mu, oversample), sf = interpolate(sigma, oversample);
  const double h = 2.0 * kPi / fine.size();
  CVector out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    cplx u = 0.0;
    for (int j = 0; j < fine.size(); ++j) {
      const Point2 d = points[p] - cs.x.col(j);
      const double r = d.norm();
      const specfun::KernelBessel kb = specfun::kernel_bessel(k * r);
      const cplx dl = 0.25 * kI * k * kb.h1 * d.dot(cs.normal.col(j)) / r;
      const cplx sl = 0.25 * kI * kb.h0;
      u += (dl * mf[j] - sl * sf[j]) * cs.speed[j];
    }
    out[p] = u * h;
  }
  return out;
}

CVector gcsie_fields(const CVector& a, const CVector& b, const TransmissionConfig& config,
                     const std::vector<Point2>& points, Region region) {
  const RegularizerBlocks r = regularizer_blocks(config);
  const CVector mu = r.r11 * a + r.r12 * b;
  const CVector sigma = r.r21 * a + r.r22 * b;
  if (region == Region::Exterior)
    return layer_potentials(config.curve, config.k1, mu, sigma, points, region, config.oversample);
  return layer_potentials(config.curve, config.k2, -(mu - a), -(sigma - b) / config.nu, points, region,
                          config.oversample);
}

CVector classical_fields(const CVector& phi, const CVector& psi, const TransmissionConfig& config,
                         const IncidentWave& incident, const std::vector<Point2>& points, Region region) {
  if (region == Region::Interior)
    return layer_potentials(config.curve, config.k2, -phi, -psi, points, region, config.oversample);
  const auto [f, g] = incident_traces(incident, config.k1, config.curve, config.grid());
  return layer_potentials(config.curve, config.k1, phi - f, config.nu * psi - g, points, region,
                          config.oversample);
}

FarField potential_far_field(const Curve& curve, double k, const CVector& mu, const CVector& sigma,
                             const std::vector<double>& angles, int oversample) {
  const int n = static_cast<int>(mu.size());
  const NodeGrid fine(n * oversample);
  const CurveSamples cs(curve, fine);
  const CVector mf = interpolate(mu, oversample), sf = interpolate(sigma, oversample);
  const double h = 2.0 * kPi / fine.size();
  // G(x - y) ~ e^{i pi/4} / sqrt(8 pi k) e^{i k r} / sqrt(r) e^{-i k xhat.y}
  const cplx pref = std::exp(0.25 * kI * kPi) / std::sqrt(8.0 * kPi * k);
  FarField ff;
  ff.theta = angles;
  for (double th : angles) {
    const Point2 xhat(std::cos(th), std::sin(th));
    cplx s = 0.0;
    for (int j = 0; j < fine.size(); ++j) {
      const cplx e = std::exp(-kI * (k * xhat.dot(cs.x.col(j))));
      s += e * (-kI * k * xhat.dot(cs.normal.col(j)) * mf[j] - sf[j]) * cs.speed[j];
    }
    ff.values.push_back(pref * s * h);
  }
  return ff;
}

FarField far_field(Formulation formulation, const CVector& solution, const TransmissionConfig& config,
                   const IncidentWave& incident, const std::vector<double>& angles) {
  const auto [x1, x2] = split(solution);
  if (formulation == Formulation::Classical) {
    const auto [f, g] = incident_traces(incident, config.k1, config.curve, config.grid());
    return potential_far_field(config.curve, config.k1, x1 - f, config.nu * x2 - g, angles, config.oversample);
  }
  const RegularizerBlocks r = regularizer_blocks(config);
  return potential_far_field(config.curve, config.k1, r.r11 * x1 + r.r12 * x2, r.r21 * x1 + r.r22 * x2, angles,
                             config.oversample);
}

CVector fields(Formulation formulation, const CVector& solution, const TransmissionConfig& config,
               const IncidentWave& incident, const std::vector<Point2>& points, Region region) {
  const auto [x1, x2] = split(solution);
  if (formulation == Formulation::Classical) return classical_fields(x1, x2, config, incident, points, region);
  return gcsie_fields(x1, x2, config, points, region);
}

cplx quadratic_form(const DenseOp& op, const CVector& density, const Curve& curve) {
  if (density.size() != op.size()) throw std::invalid_argument("quadratic_form: density does not match grid");
  const CurveSamples cs(curve, op.grid);
  const CVector ad = op.matrix * density;
  cplx s = 0.0;
  for (int j = 0; j < op.size(); ++j) s += ad[j] * std::conj(density[j]) * cs.speed[j];
  return s * (2.0 * kPi / op.size());
}

std::vector<double> uniform_angles(int count) {
  std::vector<double> out(count);
  for (int m = 0; m < count; ++m) out[m] = 2.0 * kPi * m / count;
  return out;
}

}  // namespace gcsie
