// Obstacle localization from far-field data. For each sampling point z the
// far-field equation of a reference rigid disc centered at z is solved in
// the Tikhonov sense for every incident direction; the summed solution
// norms, normalized over the grid, dip at the obstacle location.

#include "eis/esm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eis/errors.hpp"

namespace eis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kImag(0.0, 1.0);

// Centered-disc kernel matrix plus per-row/per-column wavenumbers (for the
// translation phases) and norm weights.
struct KernelParts {
  Eigen::MatrixXcd a0;  // centered operator, quad_weight included
  std::vector<Vec2> row_dirs;
  std::vector<double> row_k;
  std::vector<Vec2> col_dirs;
  std::vector<double> col_k;
  Eigen::VectorXd w_obs;  // observation-side norm weights per row
  Eigen::VectorXd w_inc;  // kernel-side norm weights per column
};

KernelParts build_kernel(Channel ch, const std::vector<double>& obs_angles, int n_d,
                         const Medium& med, double radius) {
  if (n_d < 32 || n_d % 2 != 0) throw ConfigError("kernel direction count must be even and >= 32");
  if (obs_angles.empty()) throw ConfigError("empty observation aperture");
  const int n_obs = static_cast<int>(obs_angles.size());
  const double qw = kTwoPi / n_d;
  const double kp = med.kp(), ks = med.ks();

  KernelParts parts;
  std::vector<double> col_angles(n_d);
  for (int j = 0; j < n_d; ++j) col_angles[j] = kTwoPi * j / n_d;
  const auto arc_w = observation_arc_weights(obs_angles);

  if (ch == Channel::Full) {
    const int nt = disc_default_trunc(ks * radius);
    const ElasticDiscSeries series(radius, med, nt);
    parts.a0.resize(2 * n_obs, 2 * n_d);
    const double bw_p = std::sqrt(kp / med.omega);
    const double bw_s = std::sqrt(ks / med.omega);
    for (int i = 0; i < n_obs; ++i) {
      for (int j = 0; j < n_d; ++j) {
        Complex up_p, us_p, up_s, us_s;
        series.eval(obs_angles[i] - col_angles[j], up_p, us_p, up_s, us_s);
        parts.a0(i, j) = qw * bw_p * up_p;
        parts.a0(n_obs + i, j) = qw * bw_p * us_p;
        parts.a0(i, n_d + j) = qw * bw_s * up_s;
        parts.a0(n_obs + i, n_d + j) = qw * bw_s * us_s;
      }
    }
    parts.w_obs.resize(2 * n_obs);
    for (int blk = 0; blk < 2; ++blk) {
      const double k_row = blk == 0 ? kp : ks;
      for (int i = 0; i < n_obs; ++i) {
        parts.row_dirs.push_back(unit_dir(obs_angles[i]));
        parts.row_k.push_back(k_row);
        parts.w_obs[blk * n_obs + i] = arc_w[i] * med.omega / k_row;
      }
    }
    parts.w_inc.resize(2 * n_d);
    for (int blk = 0; blk < 2; ++blk) {
      const double k_col = blk == 0 ? kp : ks;
      for (int j = 0; j < n_d; ++j) {
        parts.col_dirs.push_back(unit_dir(col_angles[j]));
        parts.col_k.push_back(k_col);
        parts.w_inc[blk * n_d + j] = qw * med.omega / k_col;
      }
    }
  } else {
    const double kt = ch == Channel::P ? kp : ks;
    const int nt = disc_default_trunc(kt * radius);
    const ScalarDiscSeries series(radius, kt, nt);
    parts.a0.resize(n_obs, n_d);
    for (int i = 0; i < n_obs; ++i) {
      for (int j = 0; j < n_d; ++j) {
        parts.a0(i, j) = qw * series.eval(obs_angles[i] - col_angles[j]);
      }
    }
    parts.row_dirs.resize(n_obs);
    parts.row_k.assign(n_obs, kt);
    parts.w_obs.resize(n_obs);
    for (int i = 0; i < n_obs; ++i) {
      parts.row_dirs[i] = unit_dir(obs_angles[i]);
      parts.w_obs[i] = arc_w[i];
    }
    parts.col_dirs.resize(n_d);
    parts.col_k.assign(n_d, kt);
    parts.w_inc = Eigen::VectorXd::Constant(n_d, qw);
    for (int j = 0; j < n_d; ++j) parts.col_dirs[j] = unit_dir(col_angles[j]);
  }
  return parts;
}

}  // namespace

std::vector<double> observation_arc_weights(const std::vector<double>& angles) {
  const int n = static_cast<int>(angles.size());
  if (n == 0) throw ConfigError("empty observation aperture");
  if (n == 1) return {1.0};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return angles[a] < angles[b]; });
  std::vector<double> gap(n);  // gap[k]: sorted node k to its successor (wrap-aware)
  for (int k = 0; k < n; ++k) {
    const double a = angles[order[k]];
    const double b = angles[order[(k + 1) % n]];
    gap[k] = (k + 1 < n) ? b - a : b + kTwoPi - a;
  }
  std::vector<double> sorted_gaps = gap;
  std::sort(sorted_gaps.begin(), sorted_gaps.end());
  const double h = sorted_gaps[n / 2];  // in-arc spacing
  std::vector<double> w(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double right = gap[k];
    const double left = gap[(k - 1 + n) % n];
    double wi = 0.0;
    wi += (left <= 1.5 * h) ? 0.5 * left : 0.0;
    wi += (right <= 1.5 * h) ? 0.5 * right : 0.0;
    if (wi == 0.0) wi = h;  // isolated direction counts as its own arc
    w[order[k]] = wi;
  }
  return w;
}

FarFieldOperator assemble_operator(const Vec2& z, Channel channel,
                                   const std::vector<double>& obs_angles, int n_kernel_dirs,
                                   const Medium& med, double radius) {
  const auto parts = build_kernel(channel, obs_angles, n_kernel_dirs, med, radius);
  FarFieldOperator op;
  op.center = z;
  op.channel = channel;
  op.obs_angles = obs_angles;
  op.n_kernel_dirs = n_kernel_dirs;
  op.quad_weight = kTwoPi / n_kernel_dirs;
  op.matrix = parts.a0;
  for (int i = 0; i < op.matrix.rows(); ++i) {
    const Complex pr = std::exp(-kImag * parts.row_k[i] * z.dot(parts.row_dirs[i]));
    for (int j = 0; j < op.matrix.cols(); ++j) {
      op.matrix(i, j) *= pr * std::exp(kImag * parts.col_k[j] * z.dot(parts.col_dirs[j]));
    }
  }
  return op;
}

Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double eps) {
  if (!(eps > 0.0)) throw ConfigError("tikhonov_solve requires eps > 0");
  if (A.rows() != b.size()) throw ConfigError("tikhonov_solve: dimension mismatch");
  if (A.rows() < A.cols()) {
    // dual normal equations, g = A^H (A A^H + eps I)^{-1} b; identical
    // minimizer, avoids the epsilon-conditioned nullspace of A^H A
    Eigen::MatrixXcd G = A * A.adjoint();
    G.diagonal().array() += eps;
    return A.adjoint() * Eigen::LLT<Eigen::MatrixXcd>(G).solve(b);
  }
  Eigen::MatrixXcd G = A.adjoint() * A;
  G.diagonal().array() += eps;
  return Eigen::LLT<Eigen::MatrixXcd>(G).solve(A.adjoint() * b);
}

Eigen::VectorXcd far_field_rhs(const FarFieldData& data, int j, Channel channel) {
  if (channel != data.channel) throw ConfigError("far_field_rhs: channel mismatch");
  if (j < 0 || j >= static_cast<int>(data.inc_angles.size())) {
    throw ConfigError("far_field_rhs: incident index out of range");
  }
  if (channel == Channel::Full) return data.values.col(j);
  const double kt = data.medium.wavenumber(channel == Channel::S);
  return data.values.col(j) / (kImag * kt);
}

EsmContext::EsmContext(const FarFieldData& data, const EsmConfig& cfg) {
  data.validate();
  const auto parts =
      build_kernel(data.channel, data.obs_angles, cfg.n_kernel_dirs, data.medium, cfg.radius);
  row_dirs_ = parts.row_dirs;
  row_k_ = parts.row_k;

  const Eigen::VectorXd sqrt_wo = parts.w_obs.cwiseSqrt();
  const Eigen::VectorXd inv_sqrt_wi = parts.w_inc.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXcd a_tilde = parts.a0;
  for (int i = 0; i < a_tilde.rows(); ++i) a_tilde.row(i) *= sqrt_wo[i];
  for (int j = 0; j < a_tilde.cols(); ++j) a_tilde.col(j) *= inv_sqrt_wi[j];

  dual_ = a_tilde.rows() < a_tilde.cols();
  Eigen::MatrixXcd G =
      dual_ ? (a_tilde * a_tilde.adjoint()).eval() : (a_tilde.adjoint() * a_tilde).eval();
  G.diagonal().array() += cfg.eps;
  llt_.compute(G);
  if (llt_.info() != Eigen::Success) throw SolverError("ESM normal equations not SPD");
  m0_ = a_tilde.adjoint();

  const int n_inc = static_cast<int>(data.inc_angles.size());
  btilde_.resize(parts.a0.rows(), n_inc);
  for (int j = 0; j < n_inc; ++j) {
    btilde_.col(j) = far_field_rhs(data, j, data.channel).cwiseProduct(sqrt_wo.cast<Complex>());
  }
}

double EsmContext::indicator(const Vec2& z) const {
  const int rows = static_cast<int>(row_dirs_.size());
  Eigen::VectorXcd phased(rows);
  double acc = 0.0;
  for (int j = 0; j < btilde_.cols(); ++j) {
    for (int i = 0; i < rows; ++i) {
      phased[i] = std::exp(kImag * row_k_[i] * z.dot(row_dirs_[i])) * btilde_(i, j);
    }
    acc += dual_ ? (m0_ * llt_.solve(phased)).norm() : llt_.solve(m0_ * phased).norm();
  }
  return acc;
}

double indicator_at(const Vec2& z, const FarFieldData& data, const EsmConfig& cfg) {
  return EsmContext(data, cfg).indicator(z);
}

std::vector<Vec2> grid_points(const Rect& region, double step, int& nx, int& ny) {
  if (!(step > 0.0) || !(region.hi.x() > region.lo.x()) || !(region.hi.y() > region.lo.y())) {
    throw ConfigError("invalid sampling region or step");
  }
  nx = static_cast<int>(std::llround((region.hi.x() - region.lo.x()) / step)) + 1;
  ny = static_cast<int>(std::llround((region.hi.y() - region.lo.y()) / step)) + 1;
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(nx) * ny);
  for (int l = 0; l < ny; ++l) {
    for (int k = 0; k < nx; ++k) {
      pts.emplace_back(region.lo.x() + step * k, region.lo.y() + step * l);
    }
  }
  return pts;
}

IndicatorGrid scan(const FarFieldData& data, const EsmConfig& cfg) {
  const EsmContext ctx(data, cfg);
  IndicatorGrid grid;
  grid.region = cfg.region;
  grid.step = cfg.step;
  grid.points = grid_points(cfg.region, cfg.step, grid.nx, grid.ny);
  const int n = static_cast<int>(grid.points.size());
  grid.values.resize(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (int i = 0; i < n; ++i) {
    grid.values[i] = ctx.indicator(grid.points[i]);
  }
  const double vmax = *std::max_element(grid.values.begin(), grid.values.end());
  if (!(vmax > 0.0)) {
    // all-zero data: flat indicator, report the first point
    grid.argmin = grid.points.front();
    grid.min_value = 0.0;
    return grid;
  }
  for (auto& v : grid.values) v /= vmax;
  int best = 0;
  for (int i = 1; i < n; ++i) {
    const auto& p = grid.points[i];
    const auto& q = grid.points[best];
    if (grid.values[i] < grid.values[best] ||
        (grid.values[i] == grid.values[best] &&
         (p.x() < q.x() || (p.x() == q.x() && p.y() < q.y())))) {
      best = i;
    }
  }
  grid.argmin = grid.points[best];
  grid.min_value = grid.values[best];
  return grid;
}

}  // namespace eis
