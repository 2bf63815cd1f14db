#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "gcsie/types.hpp"

namespace gcsie {

using Point2 = Eigen::Vector2d;

/// Smooth closed 2pi-periodic planar curve with analytic first and second
/// derivatives. Orientation is counter-clockwise, so the normal
/// (x2', -x1')/|x'| points into the unbounded exterior domain.
class Curve {
 public:
  enum class Kind { Circle, Ellipse, Kite };

  static Curve circle(double radius);
  static Curve ellipse(double a, double b);
  static Curve kite();

  Kind kind() const { return kind_; }
  std::string name() const;

  Point2 position(double t) const;
  Point2 d1(double t) const;
  Point2 d2(double t) const;

  double speed(double t) const { return d1(t).norm(); }
  Point2 normal(double t) const;
  /// (x1' x2'' - x2' x1'') / |x'|^3, diagnostics only.
  double curvature(double t) const;

  /// Circle radius, or the semi-axes for an ellipse. Empty for the kite.
  const std::vector<double>& parameters() const { return params_; }

 private:
  Curve(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

  Kind kind_;
  std::vector<double> params_;
};

/// Equispaced nodes t_j = 2 pi j / N on [0, 2pi).
class NodeGrid {
 public:
  /// Requires N even and N >= 4 (the smallest size the log quadrature supports).
  explicit NodeGrid(int n);

  int size() const { return n_; }
  double node(int j) const { return 2.0 * kPi * j / n_; }
  std::vector<double> nodes() const;

  bool operator==(const NodeGrid&) const = default;

 private:
  int n_;
};

inline NodeGrid grid(int n) { return NodeGrid(n); }

/// Samples of curve quantities at every grid node, used by the assemblers.
struct CurveSamples {
  Eigen::MatrixXd x;    // 2 x N positions
  Eigen::MatrixXd dx;   // 2 x N first derivatives
  Eigen::MatrixXd ddx;  // 2 x N second derivatives
  RVector speed;        // |x'(t_j)|
  Eigen::MatrixXd normal;  // 2 x N unit outward normals

  CurveSamples(const Curve& curve, const NodeGrid& grid);
  int size() const { return static_cast<int>(speed.size()); }
};

}  // namespace gcsie
