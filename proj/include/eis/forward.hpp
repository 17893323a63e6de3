#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "eis/geometry.hpp"

namespace eis {

using Complex = std::complex<double>;

// Homogeneous isotropic elastic background. Time convention e^{-i omega t},
// outgoing waves carry H^(1).
struct Medium {
  double omega = std::numbers::pi;
  double lambda = 2.0;
  double mu = 1.0;

  Medium() = default;
  Medium(double omega_, double lambda_, double mu_);

  double kp() const { return omega / std::sqrt(lambda + 2.0 * mu); }
  double ks() const { return omega / std::sqrt(mu); }
  double wavenumber(bool shear) const { return shear ? ks() : kp(); }
};

// Plane wave  alpha_p d e^{i kp x.d} + alpha_s d_perp e^{i ks x.d},
// d_perp = d rotated counterclockwise by pi/2.
struct IncidentWave {
  Vec2 d = Vec2(1.0, 0.0);
  Complex alpha_p = 1.0;
  Complex alpha_s = 0.0;
};

enum class Channel { P, S, Full };

Channel channel_from_name(const std::string& name);
std::string channel_name(Channel ch);

inline Vec2 unit_dir(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

// Far-field measurements indexed (observation direction, incident direction).
// Channel Full stacks the compressional block on top of the shear block.
struct FarFieldData {
  Channel channel = Channel::P;
  std::vector<double> obs_angles;
  std::vector<double> inc_angles;
  Eigen::MatrixXcd values;
  Medium medium;
  double noise_level = 0.0;

  int rows_expected() const {
    return static_cast<int>(obs_angles.size()) * (channel == Channel::Full ? 2 : 1);
  }
  void validate() const;  // throws SolverError on dimension mismatch or NaN
};

Eigen::Vector2cd incident_field(const Vec2& x, const IncidentWave& wave, const Medium& med);

// Nystrom matrices of the boundary operators acting on parameterized
// densities (the arc element |x'(s)| is folded into the kernels). All three
// use global product quadratures and converge spectrally on analytic curves.
namespace bie {
/// Single-layer trace S_k.
Eigen::MatrixXcd single_layer_matrix(const BoundaryCurve& curve, double k);
/// Normal-derivative kernel K'_k; the exterior trace of d/dnu S_k is K' - I/2.
Eigen::MatrixXcd normal_deriv_matrix(const BoundaryCurve& curve, double k);
/// Tangential derivative T_k of the single-layer trace (Cauchy-singular part
/// handled by the Hilbert-kernel rule).
Eigen::MatrixXcd tangential_deriv_matrix(const BoundaryCurve& curve, double k);
}  // namespace bie

/// Rigid boundary data for the potential system: g1 = -nu.u_inc, g2 = -tau.u_inc.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> incident_traces(const BoundaryCurve& curve,
                                                              const IncidentWave& wave,
                                                              const Medium& med);

// Far-field evaluator of one scattering solve. Immutable and cheap to copy.
class FarFieldSolution {
 public:
  FarFieldSolution(std::vector<Vec2> points, std::vector<double> jacobians,
                   Eigen::VectorXcd sigma_p, Eigen::VectorXcd sigma_s, double kp, double ks);

  Complex phi_inf(const Vec2& xhat) const;
  Complex psi_inf(const Vec2& xhat) const;
  /// (u_p_inf, u_s_inf) = (i kp phi_inf, i ks psi_inf).
  std::pair<Complex, Complex> farfield(const Vec2& xhat) const;

 private:
  Complex layer_farfield(const Eigen::VectorXcd& sigma, double k, const Vec2& xhat) const;
  std::vector<Vec2> points_;
  std::vector<double> jac_;
  Eigen::VectorXcd sigma_p_, sigma_s_;
  double kp_, ks_;
};

// Nystrom discretization of the Helmholtz-decomposed rigid-obstacle system.
// phi and psi are single-layer potentials; the boundary conditions couple
// their normal and tangential derivatives. The factorization is reused
// across incident waves on the same curve.
class ScatteringSolver {
 public:
  ScatteringSolver(const BoundaryCurve& curve, const Medium& med);
  FarFieldSolution solve(const IncidentWave& wave) const;
  const BoundaryCurve& curve() const { return curve_; }

 private:
  BoundaryCurve curve_;
  Medium med_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

FarFieldSolution solve_scattering(const BoundaryCurve& curve, const IncidentWave& wave,
                                  const Medium& med);

/// Series truncation that keeps the modal tail below machine noise.
int disc_default_trunc(double kR);

/// Far-field pattern of the sound-soft disc (radius R, center z) for the
/// Helmholtz equation at wavenumber k and incident plane wave e^{i k x.d}.
Complex disc_farfield_scalar(double R, const Vec2& z, double k, const Vec2& d, const Vec2& xhat,
                             int n_trunc);

/// Far-field pair (u_p_inf, u_s_inf) of the rigid elastic disc.
std::pair<Complex, Complex> disc_farfield_elastic(double R, const Vec2& z, const Medium& med,
                                                  const IncidentWave& wave, const Vec2& xhat,
                                                  int n_trunc);

// Precomputed modal tables for the centered disc; translation is applied by
// the caller through the exact phase identities. Used for bulk kernel
// evaluation in the sampling scan.
class ScalarDiscSeries {
 public:
  ScalarDiscSeries(double R, double k, int n_trunc);
  /// Centered-disc far field as a function of (obs angle - incidence angle).
  Complex eval(double delta) const;
  double k() const { return k_; }

 private:
  double k_;
  std::vector<Complex> coef_;  // symmetric modal coefficients, n = 0..n_trunc
};

class ElasticDiscSeries {
 public:
  ElasticDiscSeries(double R, const Medium& med, int n_trunc);
  /// Centered-disc far fields for unit P and unit S incidence.
  void eval(double delta, Complex& up_of_p, Complex& us_of_p, Complex& up_of_s,
            Complex& us_of_s) const;

 private:
  int n_trunc_;
  // coefficient arrays over n = -n_trunc..n_trunc (offset n_trunc_)
  std::vector<Complex> up_p_, us_p_, up_s_, us_s_;
};

/// Exterior Dirichlet far field via a single-layer Nystrom solve; the
/// quadrature-route oracle for the scalar disc series.
Eigen::VectorXcd scalar_dirichlet_farfield(const BoundaryCurve& curve, double k, const Vec2& d,
                                           const std::vector<double>& obs_angles);

}  // namespace eis
