#include "eis/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "eis/errors.hpp"

namespace eis {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrtPi = std::sqrt(std::numbers::pi);
const double kSqrt2Pi = std::sqrt(kTwoPi);
}  // namespace

double ShapeState::log_radius(double t) const {
  double p = a0 / kSqrt2Pi;
  for (int m = 1; m <= modes(); ++m) {
    const double w = std::pow(static_cast<double>(m), -s) / kSqrtPi;
    p += w * (a[m - 1] * std::cos(m * t) + b[m - 1] * std::sin(m * t));
  }
  return p;
}

double ShapeState::log_radius_d(double t) const {
  double p = 0.0;
  for (int m = 1; m <= modes(); ++m) {
    const double w = std::pow(static_cast<double>(m), -s) / kSqrtPi;
    p += w * m * (-a[m - 1] * std::sin(m * t) + b[m - 1] * std::cos(m * t));
  }
  return p;
}

double ShapeState::log_radius_dd(double t) const {
  double p = 0.0;
  for (int m = 1; m <= modes(); ++m) {
    const double w = std::pow(static_cast<double>(m), -s) / kSqrtPi;
    p += -w * m * m * (a[m - 1] * std::cos(m * t) + b[m - 1] * std::sin(m * t));
  }
  return p;
}

Eigen::VectorXd ShapeState::to_vector() const {
  Eigen::VectorXd xi(dim());
  xi[0] = a0;
  xi.segment(1, modes()) = a;
  xi.segment(1 + modes(), modes()) = b;
  xi[dim() - 2] = z.x();
  xi[dim() - 1] = z.y();
  return xi;
}

ShapeState ShapeState::from_vector(const Eigen::VectorXd& xi, double s) {
  const int n = static_cast<int>(xi.size());
  if (n < 5 || n % 2 == 0) throw ShapeError("shape vector must have odd length 2M+3 >= 5");
  const int M = (n - 3) / 2;
  ShapeState sh;
  sh.a0 = xi[0];
  sh.a = xi.segment(1, M);
  sh.b = xi.segment(1 + M, M);
  sh.z = Vec2(xi[n - 2], xi[n - 1]);
  sh.s = s;
  return sh;
}

BoundaryCurve::BoundaryCurve(Sampler sampler, int n_nodes) : sampler_(std::move(sampler)) {
  if (n_nodes < 4 || n_nodes % 2 != 0) throw ShapeError("n_nodes must be even and >= 4");
  theta_.resize(n_nodes);
  x_.resize(n_nodes);
  dx_.resize(n_nodes);
  ddx_.resize(n_nodes);
  jac_.resize(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const double t = kTwoPi * (k + 1) / n_nodes;  // nodes in (0, 2 pi]
    theta_[k] = t;
    sampler_(t, x_[k], dx_[k], ddx_[k]);
    jac_[k] = dx_[k].norm();
    if (!(jac_[k] > 0.0) || !x_[k].allFinite()) {
      throw ShapeError("degenerate parameterization: x'(t) vanishes or is not finite");
    }
  }
}

Vec2 BoundaryCurve::at(double theta) const {
  Vec2 x, dx, ddx;
  sampler_(theta, x, dx, ddx);
  return x;
}

std::vector<Vec2> BoundaryCurve::sample(int n_points) const {
  std::vector<Vec2> pts(n_points);
  for (int k = 0; k < n_points; ++k) pts[k] = at(kTwoPi * (k + 1) / n_points);
  return pts;
}

PresetKind preset_from_name(const std::string& name) {
  if (name == "kite") return PresetKind::Kite;
  if (name == "peanut") return PresetKind::Peanut;
  if (name == "pear") return PresetKind::Pear;
  throw ConfigError("unknown obstacle preset: " + name);
}

std::string preset_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::Kite: return "kite";
    case PresetKind::Peanut: return "peanut";
    case PresetKind::Pear: return "pear";
  }
  return "?";
}

namespace {

const Vec2 kPresetOffset(-2.0, 3.0);

void kite_sample(double t, Vec2& x, Vec2& dx, Vec2& ddx) {
  const double c = std::cos(t), s = std::sin(t);
  const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
  x = Vec2(c + 0.65 * c2 - 0.65, 1.5 * s) + kPresetOffset;
  dx = Vec2(-s - 1.3 * s2, 1.5 * c);
  ddx = Vec2(-c - 2.6 * c2, -1.5 * s);
}

void peanut_sample(double t, Vec2& x, Vec2& dx, Vec2& ddx) {
  const double c = std::cos(t), s = std::sin(t);
  const double f = 1.0 + 3.0 * c * c;  // 4 cos^2 + sin^2
  const double fd = -3.0 * std::sin(2 * t);
  const double fdd = -6.0 * std::cos(2 * t);
  const double r = 0.4 * std::sqrt(f);
  const double rd = 0.2 * fd / std::sqrt(f);
  const double rdd = 0.2 * (fdd / std::sqrt(f) - 0.5 * fd * fd / std::pow(f, 1.5));
  x = r * Vec2(c, s) + kPresetOffset;
  dx = rd * Vec2(c, s) + r * Vec2(-s, c);
  ddx = rdd * Vec2(c, s) + 2.0 * rd * Vec2(-s, c) - r * Vec2(c, s);
}

void pear_sample(double t, Vec2& x, Vec2& dx, Vec2& ddx) {
  const double c = std::cos(t), s = std::sin(t);
  const double r = (5.0 + std::sin(3 * t)) / 6.0;
  const double rd = 0.5 * std::cos(3 * t);
  const double rdd = -1.5 * std::sin(3 * t);
  x = r * Vec2(c, s) + kPresetOffset;
  dx = rd * Vec2(c, s) + r * Vec2(-s, c);
  ddx = rdd * Vec2(c, s) + 2.0 * rd * Vec2(-s, c) - r * Vec2(c, s);
}

}  // namespace

Vec2 preset_point(PresetKind kind, double theta) {
  Vec2 x, dx, ddx;
  switch (kind) {
    case PresetKind::Kite: kite_sample(theta, x, dx, ddx); break;
    case PresetKind::Peanut: peanut_sample(theta, x, dx, ddx); break;
    case PresetKind::Pear: pear_sample(theta, x, dx, ddx); break;
  }
  return x;
}

BoundaryCurve preset_boundary(PresetKind kind, int n_nodes) {
  switch (kind) {
    case PresetKind::Kite: return BoundaryCurve(kite_sample, n_nodes);
    case PresetKind::Peanut: return BoundaryCurve(peanut_sample, n_nodes);
    case PresetKind::Pear: return BoundaryCurve(pear_sample, n_nodes);
  }
  throw ConfigError("bad preset kind");
}

BoundaryCurve circle_boundary(const Vec2& center, double radius, int n_nodes) {
  return BoundaryCurve(
      [center, radius](double t, Vec2& x, Vec2& dx, Vec2& ddx) {
        const double c = std::cos(t), s = std::sin(t);
        x = center + radius * Vec2(c, s);
        dx = radius * Vec2(-s, c);
        ddx = radius * Vec2(-c, -s);
      },
      n_nodes);
}

BoundaryCurve starlike_boundary(const ShapeState& shape, int n_nodes, double r_max) {
  BoundaryCurve curve(
      [shape](double t, Vec2& x, Vec2& dx, Vec2& ddx) {
        const double c = std::cos(t), s = std::sin(t);
        const double p = shape.log_radius(t);
        const double pd = shape.log_radius_d(t);
        const double pdd = shape.log_radius_dd(t);
        const double r = std::exp(p);
        const double rd = pd * r;
        const double rdd = (pdd + pd * pd) * r;
        x = shape.z + r * Vec2(c, s);
        dx = rd * Vec2(c, s) + r * Vec2(-s, c);
        ddx = rdd * Vec2(c, s) + 2.0 * rd * Vec2(-s, c) - r * Vec2(c, s);
      },
      n_nodes);
  for (int i = 0; i < curve.size(); ++i) {
    const double r = (curve.point(i) - shape.z).norm();
    if (!(r < r_max)) {
      throw ShapeError("starlike radius exceeds r_max at a node");
    }
  }
  return curve;
}

double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
  if (A.empty() || B.empty()) throw std::invalid_argument("hausdorff: empty point set");
  auto directed = [](const std::vector<Vec2>& P, const std::vector<Vec2>& Q) {
    double sup = 0.0;
    for (const auto& p : P) {
      double inf = std::numeric_limits<double>::infinity();
      for (const auto& q : Q) inf = std::min(inf, (p - q).norm());
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(A, B), directed(B, A));
}

}  // namespace eis
