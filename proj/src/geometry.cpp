#include "gcsie/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gcsie {

Curve Curve::circle(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  return Curve(Kind::Circle, {radius});
}

Curve Curve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ellipse semi-axes must be positive");
  return Curve(Kind::Ellipse, {a, b});
}

Curve Curve::kite() { return Curve(Kind::Kite, {}); }

std::string Curve::name() const {
  switch (kind_) {
    case Kind::Circle: return "circle";
    case Kind::Ellipse: return "ellipse";
    case Kind::Kite: return "kite";
  }
  return "unknown";
}

Point2 Curve::position(double t) const {
  switch (kind_) {
    case Kind::Circle: return params_[0] * Point2(std::cos(t), std::sin(t));
    case Kind::Ellipse: return Point2(params_[0] * std::cos(t), params_[1] * std::sin(t));
    case Kind::Kite:
      return Point2(std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t));
  }
  return Point2::Zero();
}

Point2 Curve::d1(double t) const {
  switch (kind_) {
    case Kind::Circle: return params_[0] * Point2(-std::sin(t), std::cos(t));
    case Kind::Ellipse: return Point2(-params_[0] * std::sin(t), params_[1] * std::cos(t));
    case Kind::Kite: return Point2(-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t));
  }
  return Point2::Zero();
}

Point2 Curve::d2(double t) const {
  switch (kind_) {
    case Kind::Circle: return -params_[0] * Point2(std::cos(t), std::sin(t));
    case Kind::Ellipse: return Point2(-params_[0] * std::cos(t), -params_[1] * std::sin(t));
    case Kind::Kite: return Point2(-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t));
  }
  return Point2::Zero();
}

Point2 Curve::normal(double t) const {
  const Point2 d = d1(t);
  return Point2(d.y(), -d.x()) / d.norm();
}

double Curve::curvature(double t) const {
  const Point2 d = d1(t);
  const Point2 dd = d2(t);
  return (d.x() * dd.y() - d.y() * dd.x()) / std::pow(d.norm(), 3);
}

NodeGrid::NodeGrid(int n) : n_(n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and at least 4, got " + std::to_string(n));
}

std::vector<double> NodeGrid::nodes() const {
  std::vector<double> t(n_);
  for (int j = 0; j < n_; ++j) t[j] = node(j);
  return t;
}

CurveSamples::CurveSamples(const Curve& curve, const NodeGrid& grid)
    : x(2, grid.size()), dx(2, grid.size()), ddx(2, grid.size()), speed(grid.size()),
      normal(2, grid.size()) {
  for (int j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    x.col(j) = curve.position(t);
    dx.col(j) = curve.d1(t);
    ddx.col(j) = curve.d2(t);
    speed(j) = dx.col(j).norm();
    normal(0, j) = dx(1, j) / speed(j);
    normal(1, j) = -dx(0, j) / speed(j);
  }
}

}  // namespace gcsie
