#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace eis {

using Vec2 = Eigen::Vector2d;

// Fourier parameterization of a starlike log-radius,
//   p(t) = a0/sqrt(2 pi) + sum_m (a_m/m^s) cos(mt)/sqrt(pi)
//                        + (b_m/m^s) sin(mt)/sqrt(pi),
// boundary x(t) = exp(p(t)) (cos t, sin t) + z.
struct ShapeState {
  double a0 = 0.0;
  Eigen::VectorXd a;  // a_1..a_M
  Eigen::VectorXd b;  // b_1..b_M
  Vec2 z = Vec2::Zero();
  double s = 1.2;

  int modes() const { return static_cast<int>(a.size()); }
  int dim() const { return 2 * modes() + 3; }

  double log_radius(double theta) const;
  double log_radius_d(double theta) const;
  double log_radius_dd(double theta) const;
  double radius(double theta) const { return std::exp(log_radius(theta)); }

  // Flat layout (a0, a_1..a_M, b_1..b_M, z1, z2).
  Eigen::VectorXd to_vector() const;
  static ShapeState from_vector(const Eigen::VectorXd& xi, double s);
};

// Closed parametric curve sampled at n equidistant nodes t_k = 2 pi k / n,
// k = 1..n. Stores point, first and second derivative per node; tangent and
// outward normal derive from a counterclockwise parameterization.
class BoundaryCurve {
 public:
  // sampler(t, x, dx, ddx)
  using Sampler = std::function<void(double, Vec2&, Vec2&, Vec2&)>;

  BoundaryCurve(Sampler sampler, int n_nodes);

  int size() const { return static_cast<int>(x_.size()); }
  double theta(int i) const { return theta_[i]; }
  const Vec2& point(int i) const { return x_[i]; }
  const Vec2& deriv(int i) const { return dx_[i]; }
  const Vec2& deriv2(int i) const { return ddx_[i]; }
  double jacobian(int i) const { return jac_[i]; }  // |x'(t_i)|
  Vec2 tangent(int i) const { return dx_[i] / jac_[i]; }
  Vec2 normal(int i) const { return Vec2(dx_[i].y(), -dx_[i].x()) / jac_[i]; }

  Vec2 at(double theta) const;

  // Equidistant-parameter point sample (for exports and Hausdorff scoring).
  std::vector<Vec2> sample(int n_points) const;

 private:
  Sampler sampler_;
  std::vector<double> theta_;
  std::vector<Vec2> x_, dx_, ddx_;
  std::vector<double> jac_;
};

enum class PresetKind { Kite, Peanut, Pear };

PresetKind preset_from_name(const std::string& name);
std::string preset_name(PresetKind kind);

/// Boundary point of a preset obstacle at parameter theta.
Vec2 preset_point(PresetKind kind, double theta);

BoundaryCurve preset_boundary(PresetKind kind, int n_nodes);
BoundaryCurve circle_boundary(const Vec2& center, double radius, int n_nodes);

/// Builds the sampled curve of a starlike shape; throws ShapeError if the
/// radius reaches r_max at any node.
BoundaryCurve starlike_boundary(const ShapeState& shape, int n_nodes, double r_max = 10.0);

/// Discrete Hausdorff distance between two non-empty point sets.
double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B);

}  // namespace eis
