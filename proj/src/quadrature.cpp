#include "eis/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eis::quad {

Eigen::VectorXd kress_log_weights(int n_nodes) {
  if (n_nodes < 4 || n_nodes % 2 != 0) {
    throw std::invalid_argument("kress_log_weights: N must be even and >= 4");
  }
  const int half = n_nodes / 2;
  const double pi = std::numbers::pi;
  Eigen::VectorXd R(n_nodes);
  for (int d = 0; d < n_nodes; ++d) {
    const double dt = pi * d / half;  // t_i - t_j
    double acc = 0.0;
    for (int m = 1; m < half; ++m) acc += std::cos(m * dt) / m;
    R[d] = -(2.0 * pi / half) * acc - (pi / (half * half)) * std::cos(half * dt);
  }
  return R;
}

Eigen::MatrixXd trig_diff_matrix(int n_nodes) {
  if (n_nodes < 4 || n_nodes % 2 != 0) {
    throw std::invalid_argument("trig_diff_matrix: N must be even and >= 4");
  }
  const double pi = std::numbers::pi;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    for (int j = 0; j < n_nodes; ++j) {
      if (i == j) continue;
      const int d = i - j;
      const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = 0.5 * sgn / std::tan(pi * d / n_nodes);
    }
  }
  return D;
}

Eigen::VectorXd hilbert_cot_weights(int n_nodes) {
  if (n_nodes < 4 || n_nodes % 2 != 0) {
    throw std::invalid_argument("hilbert_cot_weights: N must be even and >= 4");
  }
  const double pi = std::numbers::pi;
  Eigen::VectorXd W = Eigen::VectorXd::Zero(n_nodes);
  for (int d = 1; d < n_nodes; d += 2) {
    W[d] = (4.0 * pi / n_nodes) / std::tan(pi * d / n_nodes);
  }
  return W;
}

}  // namespace eis::quad
