#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <vector>

#include "eis/forward.hpp"
#include "eis/geometry.hpp"

namespace eis {

struct Rect {
  Vec2 lo = Vec2(-5.0, -5.0);
  Vec2 hi = Vec2(5.0, 5.0);
};

struct EsmConfig {
  Rect region;
  double step = 0.1;
  double radius = 1.0;     // reference disc radius R
  double eps = 1e-5;       // Tikhonov regularization parameter
  int n_kernel_dirs = 64;  // full-circle incident directions of the kernel
};

// Discrete far-field operator of the reference disc centered at z. Rows are
// restricted to the measured observation directions; columns always span the
// full circle of kernel directions. The Full channel stacks (p; s) row
// blocks and carries sqrt(kp/omega), sqrt(ks/omega) column-block weights.
struct FarFieldOperator {
  Vec2 center;
  Channel channel;
  std::vector<double> obs_angles;
  int n_kernel_dirs = 0;
  double quad_weight = 0.0;  // 2 pi / N_d
  Eigen::MatrixXcd matrix;
};

FarFieldOperator assemble_operator(const Vec2& z, Channel channel,
                                   const std::vector<double>& obs_angles, int n_kernel_dirs,
                                   const Medium& med, double radius);

/// Unique minimizer of ||A g - b||^2 + eps ||g||^2 via the normal equations.
Eigen::VectorXcd tikhonov_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double eps);

/// Right-hand side of the far-field equation for incident column j:
/// (1/(i k_t)) times the data column for P/S, the stacked column for Full.
Eigen::VectorXcd far_field_rhs(const FarFieldData& data, int j, Channel channel);

// Trapezoid weights on the observation aperture, derived from the angle
// list itself: uniform spacing inside each contiguous arc, half weight at
// arc endpoints, uniform weight when the arc closes the full circle.
std::vector<double> observation_arc_weights(const std::vector<double>& angles);

// Shared state of one indicator evaluation pass: the centered-disc kernel,
// its weighted normal-equation factorization, and the weighted data
// columns. Translation to any sampling point z is exact through the disc
// far-field phase identities, so the factorization is computed once.
class EsmContext {
 public:
  EsmContext(const FarFieldData& data, const EsmConfig& cfg);
  double indicator(const Vec2& z) const;
  int n_incident() const { return static_cast<int>(btilde_.cols()); }

 private:
  bool dual_ = false;                 // rows < cols: solve in the row space
  Eigen::MatrixXcd m0_;               // scaled-operator adjoint (cols x rows)
  Eigen::LLT<Eigen::MatrixXcd> llt_;  // of the primal or dual Gram matrix + eps I
  Eigen::MatrixXcd btilde_;           // weighted rhs columns (rows x n_inc)
  std::vector<Vec2> row_dirs_;        // observation direction per row
  std::vector<double> row_k_;         // wavenumber per row (translation phase)
};

/// Indicator value at one sampling point (convenience wrapper; the scan
/// builds one EsmContext and reuses it).
double indicator_at(const Vec2& z, const FarFieldData& data, const EsmConfig& cfg);

struct IndicatorGrid {
  Rect region;
  double step = 0.0;
  int nx = 0, ny = 0;
  std::vector<Vec2> points;    // row-major over (ix, iy), x fastest
  std::vector<double> values;  // normalized so the grid max is exactly 1
  Vec2 argmin;
  double min_value = 0.0;
};

std::vector<Vec2> grid_points(const Rect& region, double step, int& nx, int& ny);

/// Evaluates the indicator on the sampling lattice, normalizes by the grid
/// maximum and locates the global minimum (lexicographic tie-break).
IndicatorGrid scan(const FarFieldData& data, const EsmConfig& cfg);

}  // namespace eis
