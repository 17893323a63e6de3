// Direct elastic scattering by a rigid obstacle via the Helmholtz
// decomposition. The scattered field is u = grad phi + curl psi with
//   phi = S_{kp} sigma_p,  psi = S_{ks} sigma_s
// (single-layer potentials on the boundary). With outward normal nu and the
// exterior trace jump  d/dnu S = (K' - I/2) sigma, the rigid boundary
// conditions give the 2x2 block system
//   (K'_p - I/2) sigma_p + T_s sigma_s = g1
//   T_p sigma_p + (I/2 - K'_s) sigma_s = g2,
// where T_k is the tangential derivative of the single-layer trace (a
// principal-value operator). Kernels are split into their
// ln(4 sin^2((t-s)/2)) and cot((t-s)/2) singular factors with smooth
// coefficients and discretized by the matching global product rules; the
// smooth remainders get the trapezoid rule. Everything is spectrally
// accurate on analytic curves.

#include "eis/forward.hpp"

#include <cmath>
#include <mutex>

#include "eis/errors.hpp"
#include "eis/quadrature.hpp"
#include "eis/specfun.hpp"

namespace eis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
const Complex kImag(0.0, 1.0);

// u ~ e^{ikr}/sqrt(r) u_inf with this single-layer density-to-far-field
// prefactor: u_inf = c(k) int e^{-ik xhat.y} sigma(y) ds(y).
Complex farfield_prefactor(double k) {
  return std::exp(kImag * (kPi / 4.0)) / std::sqrt(8.0 * kPi * k);
}

Complex ipow(int n) {  // i^n, exact
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void warn_once(const char* msg) {
  static std::once_flag flag;
  std::call_once(flag, [msg] { std::fputs(msg, stderr); });
}

}  // namespace

namespace bie {

Eigen::MatrixXcd single_layer_matrix(const BoundaryCurve& c, double k) {
  const int n = c.size();
  const Eigen::VectorXd R = quad::kress_log_weights(n);
  const double w = kTwoPi / n;
  Eigen::MatrixXcd S(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec2 xi = c.point(i);
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        const double jac = c.jacobian(i);
        S(i, i) = R[0] * (-jac / (4.0 * kPi)) +
                  w * jac * (kImag / 4.0 - kEulerGamma / kTwoPi - std::log(0.5 * k * jac) / kTwoPi);
        continue;
      }
      const double r = (xi - c.point(j)).norm();
      const double jac_j = c.jacobian(j);
      double j0, j1, y0, y1;
      specfun::bessel_j01_y01(k * r, j0, j1, y0, y1);
      const double half = 2.0 * std::sin(0.5 * (c.theta(i) - c.theta(j)));
      const double lg = std::log(half * half);  // ln(4 sin^2((t_i-t_j)/2))
      const Complex m_full = (kImag / 4.0) * Complex(j0, y0) * jac_j;
      const double m1 = -j0 * jac_j / (4.0 * kPi);
      S(i, j) = R[((i - j) % n + n) % n] * m1 + w * (m_full - m1 * lg);
    }
  }
  return S;
}

Eigen::MatrixXcd normal_deriv_matrix(const BoundaryCurve& c, double k) {
  const int n = c.size();
  const Eigen::VectorXd R = quad::kress_log_weights(n);
  const double w = kTwoPi / n;
  Eigen::MatrixXcd Kp(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec2 xi = c.point(i);
    const Vec2 nui = c.normal(i);
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        // lim (x(t)-x(s)).nu(t)/r^2 = -x''.nu / (2 |x'|^2)
        Kp(i, i) = w * c.deriv2(i).dot(nui) / (4.0 * kPi * c.jacobian(i));
        continue;
      }
      const Vec2 diff = xi - c.point(j);
      const double r = diff.norm();
      const double jac_j = c.jacobian(j);
      double j0, j1, y0, y1;
      specfun::bessel_j01_y01(k * r, j0, j1, y0, y1);
      const double half = 2.0 * std::sin(0.5 * (c.theta(i) - c.theta(j)));
      const double lg = std::log(half * half);
      const double wgt = diff.dot(nui) / r * jac_j;
      const Complex h_full = -(kImag * k / 4.0) * Complex(j1, y1) * wgt;
      const double h1 = k * j1 * wgt / (4.0 * kPi);
      Kp(i, j) = R[((i - j) % n + n) % n] * h1 + w * (h_full - h1 * lg);
    }
  }
  return Kp;
}

// Kernel tau(x(t)) . grad_x Phi_k(x(t), x(s)) |x'(s)| split as
//   C(t,s) cot((t-s)/2) + KL(t,s) ln(4 sin^2((t-s)/2)) + KR(t,s),
//   C(t,s)  = -|x'(s)| / (4 pi |x'(t)|),
//   KL(t,s) = (k/4pi) J_1(k r) (tau.rho / r) |x'(s)|,   rho = x(t) - x(s),
// with KR smooth; KR(t,t) = -x'.x'' / (4 pi |x'|^2).
Eigen::MatrixXcd tangential_deriv_matrix(const BoundaryCurve& c, double k) {
  const int n = c.size();
  const Eigen::VectorXd R = quad::kress_log_weights(n);
  const Eigen::VectorXd W = quad::hilbert_cot_weights(n);
  const double w = kTwoPi / n;
  
  Eigen::MatrixXcd T(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec2 xi = c.point(i);
    const Vec2 taui = c.tangent(i);
    const double jac_i = c.jacobian(i);
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        T(i, i) = w * (-c.deriv(i).dot(c.deriv2(i)) / (4.0 * kPi * jac_i * jac_i));
        continue;
      }
      const Vec2 diff = xi - c.point(j);
      const double r = diff.norm();
      const double jac_j = c.jacobian(j);
      const double ctau = taui.dot(diff);
      double j0, j1, y0, y1;
      specfun::bessel_j01_y01(k * r, j0, j1, y0, y1);
      const double dt = c.theta(i) - c.theta(j);
      const double half = 2.0 * std::sin(0.5 * dt);
      const double lg = std::log(half * half);
      const double cotv = std::cos(0.5 * dt) / std::sin(0.5 * dt);

      const Complex full = -(kImag * k / 4.0) * Complex(j1, y1) * (ctau / r) * jac_j;
      const double c_cot = -jac_j / (4.0 * kPi * jac_i);
      const double kl = (k / (4.0 * kPi)) * j1 * (ctau / r) * jac_j;
      const Complex kr_smooth = full - c_cot * cotv - kl * lg;
      // kernel carries cot((t-s)/2) = -cot((s-t)/2), hence the minus on W
      T(i, j) = -W[((j - i) % n + n) % n] * c_cot + R[((i - j) % n + n) % n] * kl + w * kr_smooth;
    }
  }
  return T;
}

}  // namespace bie

Medium::Medium(double omega_, double lambda_, double mu_) : omega(omega_), lambda(lambda_), mu(mu_) {
  if (!(mu > 0.0) || !(lambda + mu > 0.0) || !(omega > 0.0)) {
    throw ConfigError("medium requires mu > 0, lambda + mu > 0, omega > 0");
  }
}

Channel channel_from_name(const std::string& name) {
  if (name == "P" || name == "p") return Channel::P;
  if (name == "S" || name == "s") return Channel::S;
  if (name == "FULL" || name == "full" || name == "F") return Channel::Full;
  throw ConfigError("unknown channel: " + name);
}

std::string channel_name(Channel ch) {
  switch (ch) {
    case Channel::P: return "P";
    case Channel::S: return "S";
    case Channel::Full: return "FULL";
  }
  return "?";
}

void FarFieldData::validate() const {
  if (values.rows() != rows_expected() || values.cols() != static_cast<int>(inc_angles.size())) {
    throw SolverError("far-field data dimensions inconsistent with channel/apertures");
  }
  if (!values.allFinite()) throw SolverError("far-field data contains non-finite entries");
}

Eigen::Vector2cd incident_field(const Vec2& x, const IncidentWave& wave, const Medium& med) {
  const Complex ep = std::exp(kImag * med.kp() * x.dot(wave.d));
  const Complex es = std::exp(kImag * med.ks() * x.dot(wave.d));
  const Vec2 dp = perp(wave.d);
  return wave.alpha_p * ep * wave.d.cast<Complex>() + wave.alpha_s * es * dp.cast<Complex>();
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> incident_traces(const BoundaryCurve& curve,
                                                              const IncidentWave& wave,
                                                              const Medium& med) {
  const int n = curve.size();
  Eigen::VectorXcd g1(n), g2(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2cd u = incident_field(curve.point(i), wave, med);
    g1[i] = -(curve.normal(i).cast<Complex>().dot(u));
    g2[i] = -(curve.tangent(i).cast<Complex>().dot(u));
  }
  return {g1, g2};
}

FarFieldSolution::FarFieldSolution(std::vector<Vec2> points, std::vector<double> jacobians,
                                   Eigen::VectorXcd sigma_p, Eigen::VectorXcd sigma_s, double kp,
                                   double ks)
    : points_(std::move(points)),
      jac_(std::move(jacobians)),
      sigma_p_(std::move(sigma_p)),
      sigma_s_(std::move(sigma_s)),
      kp_(kp),
      ks_(ks) {}

Complex FarFieldSolution::layer_farfield(const Eigen::VectorXcd& sigma, double k,
                                         const Vec2& xhat) const {
  const int n = static_cast<int>(points_.size());
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += std::exp(-kImag * k * xhat.dot(points_[j])) * sigma[j] * jac_[j];
  }
  return farfield_prefactor(k) * (kTwoPi / n) * acc;
}

Complex FarFieldSolution::phi_inf(const Vec2& xhat) const {
  return layer_farfield(sigma_p_, kp_, xhat);
}

Complex FarFieldSolution::psi_inf(const Vec2& xhat) const {
  return layer_farfield(sigma_s_, ks_, xhat);
}

std::pair<Complex, Complex> FarFieldSolution::farfield(const Vec2& xhat) const {
  return {kImag * kp_ * phi_inf(xhat), kImag * ks_ * psi_inf(xhat)};
}

ScatteringSolver::ScatteringSolver(const BoundaryCurve& curve, const Medium& med)
    : curve_(curve), med_(med) {
  const int n = curve_.size();
  if (n < 32) throw SolverError("scattering solve needs at least 32 nodes");
  Eigen::MatrixXcd A(2 * n, 2 * n);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  A.topLeftCorner(n, n) = bie::normal_deriv_matrix(curve_, med_.kp()) - 0.5 * I;
  A.topRightCorner(n, n) = bie::tangential_deriv_matrix(curve_, med_.ks());
  A.bottomLeftCorner(n, n) = bie::tangential_deriv_matrix(curve_, med_.kp());
  A.bottomRightCorner(n, n) = 0.5 * I - bie::normal_deriv_matrix(curve_, med_.ks());
  lu_.compute(A);
  if (!(lu_.rcond() > 1e-12)) {
    throw SolverError("Nystrom system is numerically singular (rcond <= 1e-12)");
  }
}

FarFieldSolution ScatteringSolver::solve(const IncidentWave& wave) const {
  const int n = curve_.size();
  auto [g1, g2] = incident_traces(curve_, wave, med_);
  Eigen::VectorXcd rhs(2 * n);
  rhs << g1, g2;
  const Eigen::VectorXcd sigma = lu_.solve(rhs);
  if (!sigma.allFinite()) throw SolverError("Nystrom solve produced non-finite densities");
  std::vector<Vec2> pts(n);
  std::vector<double> jac(n);
  for (int i = 0; i < n; ++i) {
    pts[i] = curve_.point(i);
    jac[i] = curve_.jacobian(i);
  }
  return FarFieldSolution(std::move(pts), std::move(jac), sigma.head(n), sigma.tail(n),
                          med_.kp(), med_.ks());
}

FarFieldSolution solve_scattering(const BoundaryCurve& curve, const IncidentWave& wave,
                                  const Medium& med) {
  return ScatteringSolver(curve, med).solve(wave);
}

int disc_default_trunc(double kR) {
  return static_cast<int>(std::ceil(kR)) + 25;
}

ScalarDiscSeries::ScalarDiscSeries(double R, double k, int n_trunc) : k_(k) {
  if (!(R > 0.0) || !(k > 0.0)) throw SolverError("disc series requires R > 0 and k > 0");
  if (n_trunc < static_cast<int>(std::ceil(k * R)) + 20) {
    throw SolverError("disc series truncation too small");
  }
  const auto j = specfun::bessel_j_upto(n_trunc, k * R);
  const auto y = specfun::bessel_y_upto(n_trunc, k * R);
  const Complex pref = -std::sqrt(2.0 / (kPi * k)) * std::exp(-kImag * (kPi / 4.0));
  coef_.resize(n_trunc + 1);
  for (int n = 0; n <= n_trunc; ++n) coef_[n] = pref * j[n] / Complex(j[n], y[n]);
  if (std::abs(coef_[n_trunc]) > 1e-14 * std::abs(coef_[0])) {
    warn_once("eis: scalar disc series tail above 1e-14 of the leading mode\n");
  }
}

Complex ScalarDiscSeries::eval(double delta) const {
  // J_{-n}/H_{-n} = J_n/H_n, so the sum folds to cosines.
  Complex acc = coef_[0];
  for (std::size_t n = 1; n < coef_.size(); ++n) {
    acc += 2.0 * coef_[n] * std::cos(static_cast<double>(n) * delta);
  }
  return acc;
}

Complex disc_farfield_scalar(double R, const Vec2& z, double k, const Vec2& d, const Vec2& xhat,
                             int n_trunc) {
  const ScalarDiscSeries series(R, k, n_trunc);
  const double delta = std::atan2(xhat.y(), xhat.x()) - std::atan2(d.y(), d.x());
  return series.eval(delta) * std::exp(kImag * k * z.dot(d - xhat));
}

ElasticDiscSeries::ElasticDiscSeries(double R, const Medium& med, int n_trunc)
    : n_trunc_(n_trunc) {
  const double kp = med.kp(), ks = med.ks();
  if (n_trunc < static_cast<int>(std::ceil(ks * R)) + 20) {
    throw SolverError("disc series truncation too small");
  }
  const auto jp = specfun::bessel_j_upto(n_trunc + 1, kp * R);
  const auto yp = specfun::bessel_y_upto(n_trunc + 1, kp * R);
  const auto js = specfun::bessel_j_upto(n_trunc + 1, ks * R);
  const auto ys = specfun::bessel_y_upto(n_trunc + 1, ks * R);
  auto J = [](const std::vector<double>& tab, int n) {
    const int na = std::abs(n);
    return (n < 0 && na % 2 == 1) ? -tab[na] : tab[na];
  };
  auto H = [&](const std::vector<double>& jt, const std::vector<double>& yt, int n) {
    const int na = std::abs(n);
    const double sgn = (n < 0 && na % 2 == 1) ? -1.0 : 1.0;
    return sgn * Complex(jt[na], yt[na]);
  };
  // C_n'(x) = C_{n-1}(x) - (n/x) C_n(x)
  auto Jd = [&](const std::vector<double>& tab, int n, double x) {
    return J(tab, n - 1) - (n / x) * J(tab, n);
  };
  auto Hd = [&](const std::vector<double>& jt, const std::vector<double>& yt, int n, double x) {
    return H(jt, yt, n - 1) - (n / x) * H(jt, yt, n);
  };

  const int m = 2 * n_trunc + 1;
  up_p_.resize(m);
  us_p_.resize(m);
  up_s_.resize(m);
  us_s_.resize(m);
  const Complex pref_p = kImag * kp * std::sqrt(2.0 / (kPi * kp)) * std::exp(-kImag * (kPi / 4.0));
  const Complex pref_s = kImag * ks * std::sqrt(2.0 / (kPi * ks)) * std::exp(-kImag * (kPi / 4.0));

  for (int n = -n_trunc; n <= n_trunc; ++n) {
    const Complex in_pow = ipow(n);    // i^n
    const Complex min_pow = ipow(-n);  // (-i)^n
    Eigen::Matrix2cd A;
    A(0, 0) = kp * Hd(jp, yp, n, kp * R);
    A(0, 1) = (kImag * double(n) / R) * H(js, ys, n);
    A(1, 0) = (kImag * double(n) / R) * H(jp, yp, n);
    A(1, 1) = -ks * Hd(js, ys, n, ks * R);
    const Complex det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    if (std::abs(det) == 0.0) throw SolverError("elastic disc modal system singular");

    auto solve_mode = [&](Complex a_n, Complex b_n, Complex& A_n, Complex& B_n) {
      Eigen::Vector2cd rhs;
      rhs[0] = -(kp * a_n * Jd(jp, n, kp * R) + (kImag * double(n) / R) * b_n * J(js, n));
      rhs[1] = -((kImag * double(n) / R) * a_n * J(jp, n) - ks * b_n * Jd(js, n, ks * R));
      A_n = (rhs[0] * A(1, 1) - A(0, 1) * rhs[1]) / det;
      B_n = (A(0, 0) * rhs[1] - rhs[0] * A(1, 0)) / det;
    };

    // unit P incidence: phi_inc coefficient a_n = i^n/(i kp), b_n = 0
    Complex An, Bn;
    solve_mode(in_pow / (kImag * kp), 0.0, An, Bn);
    up_p_[n + n_trunc] = pref_p * min_pow * An;
    us_p_[n + n_trunc] = pref_s * min_pow * Bn;
    // unit S incidence: psi_inc coefficient b_n = i^{n+1}/ks
    solve_mode(0.0, kImag * in_pow / ks, An, Bn);
    up_s_[n + n_trunc] = pref_p * min_pow * An;
    us_s_[n + n_trunc] = pref_s * min_pow * Bn;
  }
  const double head = std::max(std::abs(up_p_[n_trunc]), std::abs(us_s_[n_trunc]));
  const double tail = std::max({std::abs(up_p_.front()), std::abs(up_p_.back()),
                                std::abs(us_s_.front()), std::abs(us_s_.back())});
  if (tail > 1e-14 * head) {
    warn_once("eis: elastic disc series tail above 1e-14 of the leading mode\n");
  }
}

void ElasticDiscSeries::eval(double delta, Complex& up_of_p, Complex& us_of_p, Complex& up_of_s,
                             Complex& us_of_s) const {
  up_of_p = us_of_p = up_of_s = us_of_s = 0.0;
  for (int n = -n_trunc_; n <= n_trunc_; ++n) {
    const Complex e = std::exp(kImag * static_cast<double>(n) * delta);
    const int idx = n + n_trunc_;
    up_of_p += up_p_[idx] * e;
    us_of_p += us_p_[idx] * e;
    up_of_s += up_s_[idx] * e;
    us_of_s += us_s_[idx] * e;
  }
}

std::pair<Complex, Complex> disc_farfield_elastic(double R, const Vec2& z, const Medium& med,
                                                  const IncidentWave& wave, const Vec2& xhat,
                                                  int n_trunc) {
  const ElasticDiscSeries series(R, med, n_trunc);
  const double delta = std::atan2(xhat.y(), xhat.x()) - std::atan2(wave.d.y(), wave.d.x());
  Complex up_p, us_p, up_s, us_s;
  series.eval(delta, up_p, us_p, up_s, us_s);
  const double kp = med.kp(), ks = med.ks();
  const Complex cp = wave.alpha_p * std::exp(kImag * kp * z.dot(wave.d));
  const Complex cs = wave.alpha_s * std::exp(kImag * ks * z.dot(wave.d));
  const Complex up = std::exp(-kImag * kp * z.dot(xhat)) * (cp * up_p + cs * up_s);
  const Complex us = std::exp(-kImag * ks * z.dot(xhat)) * (cp * us_p + cs * us_s);
  return {up, us};
}

Eigen::VectorXcd scalar_dirichlet_farfield(const BoundaryCurve& curve, double k, const Vec2& d,
                                           const std::vector<double>& obs_angles) {
  const int n = curve.size();
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = -std::exp(kImag * k * curve.point(i).dot(d));
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bie::single_layer_matrix(curve, k));
  if (!(lu.rcond() > 1e-12)) {
    throw SolverError("scalar single-layer system is numerically singular");
  }
  const Eigen::VectorXcd sigma = lu.solve(rhs);
  Eigen::VectorXcd out(obs_angles.size());
  for (std::size_t m = 0; m < obs_angles.size(); ++m) {
    const Vec2 xhat = unit_dir(obs_angles[m]);
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += std::exp(-kImag * k * xhat.dot(curve.point(j))) * sigma[j] * curve.jacobian(j);
    }
    out[m] = farfield_prefactor(k) * (kTwoPi / n) * acc;
  }
  return out;
}

}  // namespace eis
