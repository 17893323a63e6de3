// Cylindrical Bessel functions for real arguments and integer orders.
//
// J_n: power series for x < 8, otherwise Miller's downward recurrence
// normalized with  1 = J_0 + 2 sum_k J_{2k}.  Y_0 and Y_1 come from the
// log-series written in terms of the J-array,
//   Y_0 = (2/pi)(ln(x/2)+gamma) J_0 + (4/pi) sum_k (-1)^{k+1} J_{2k}/k,
// and its termwise derivative (Y_1 = -Y_0'); both are stable for the whole
// supported range because the J_{2k} are O(1) and decay superexponentially
// once 2k > x.  Y_n then follows by forward recurrence, which runs in the
// dominant direction for Y.

#include "eis/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eis::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

void check_order(int n) {
  if (n > kMaxOrder || n < -kMaxOrder) {
    throw std::domain_error("bessel order |n| > " + std::to_string(kMaxOrder) +
                            " not supported (n=" + std::to_string(n) + ")");
  }
}

// J_n(x) by the ascending power series; adequate for x < 8.
double j_series(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;  // (x/2)^n / n!
  double sum = term;
  const double h2 = h * h;
  for (int m = 1; m <= 80; ++m) {
    term *= -h2 / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Normalized J_0..J_M with M comfortably past the turning point, so the
// array also feeds the Y_0/Y_1 series tails.
std::vector<double> miller_array(double x) {
  const double top = std::max(static_cast<double>(kMaxOrder), x);
  const int M =
      static_cast<int>(std::ceil(top)) + 30 + static_cast<int>(std::ceil(6.0 * std::cbrt(top)));
  std::vector<double> j(static_cast<std::size_t>(M) + 2, 0.0);
  j[M + 1] = 0.0;
  j[M] = 1e-30;
  double norm = (M >= 2 && M % 2 == 0) ? 2.0 * j[M] : 0.0;
  for (int n = M; n >= 1; --n) {
    j[n - 1] = (2.0 * n / x) * j[n] - j[n + 1];
    if (n - 1 >= 2 && (n - 1) % 2 == 0) norm += 2.0 * j[n - 1];
    if (std::abs(j[n - 1]) > 1e250) {
      for (int m = n - 1; m <= M + 1; ++m) j[m] *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j[0];
  const double inv = 1.0 / norm;
  for (auto& v : j) v *= inv;
  return j;
}

void y01_from_jarray(const std::vector<double>& j, double x, double& y0, double& y1) {
  const double lg = std::log(0.5 * x) + kEulerGamma;
  const int kmax = (static_cast<int>(j.size()) - 2) / 2;
  double s0 = 0.0;  // sum (-1)^{k+1} J_{2k} / k
  double s1 = 0.0;  // sum (-1)^{k+1} (J_{2k-1} - J_{2k+1}) / k
  for (int k = kmax; k >= 1; --k) {
    const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    s0 += sgn * j[2 * k] / k;
    s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  y0 = (2.0 / M_PI) * lg * j[0] + (4.0 / M_PI) * s0;
  y1 = (2.0 / M_PI) * (lg * j[1] - j[0] / x) - (2.0 / M_PI) * s1;
}

}  // namespace

double bessel_j(int n, double x) {
  check_order(n);
  if (!(x >= 0.0)) throw std::domain_error("bessel_j requires x >= 0");
  const int na = std::abs(n);
  const double sgn = (n < 0 && na % 2 == 1) ? -1.0 : 1.0;  // J_{-n} = (-1)^n J_n
  if (x == 0.0) return na == 0 ? 1.0 : 0.0;
  if (x < 8.0) return sgn * j_series(na, x);
  return sgn * miller_array(x)[na];
}

std::vector<double> bessel_j_upto(int nmax, double x) {
  check_order(nmax);
  if (!(x >= 0.0)) throw std::domain_error("bessel_j_upto requires x >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const auto j = miller_array(x);
  for (int n = 0; n <= nmax; ++n) out[n] = j[n];
  return out;
}

std::vector<double> bessel_y_upto(int nmax, double x) {
  check_order(nmax);
  if (!(x > 0.0)) throw std::domain_error("Y_n requires x > 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double y0, y1;
  y01_from_jarray(miller_array(x), x, y0, y1);
  out[0] = y0;
  if (nmax >= 1) out[1] = y1;
  for (int n = 1; n < nmax; ++n) out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1];
  return out;
}

double bessel_y(int n, double x) {
  check_order(n);
  const int na = std::abs(n);
  const double sgn = (n < 0 && na % 2 == 1) ? -1.0 : 1.0;
  return sgn * bessel_y_upto(na, x)[na];
}

std::complex<double> hankel1(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw std::domain_error("hankel1 requires x > 0");
  const int na = std::abs(n);
  const double sgn = (n < 0 && na % 2 == 1) ? -1.0 : 1.0;
  const auto j = miller_array(x);
  std::vector<double> y(static_cast<std::size_t>(na) + 1, 0.0);
  double y0, y1;
  y01_from_jarray(j, x, y0, y1);
  y[0] = y0;
  if (na >= 1) y[1] = y1;
  for (int m = 1; m < na; ++m) y[m + 1] = (2.0 * m / x) * y[m] - y[m - 1];
  return sgn * std::complex<double>(x < 8.0 ? j_series(na, x) : j[na], y[na]);
}

void bessel_j01_y01(double x, double& j0, double& j1, double& y0, double& y1) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j01_y01 requires x > 0");
  const auto j = miller_array(x);
  j0 = j[0];
  j1 = j[1];
  y01_from_jarray(j, x, y0, y1);
}

}  // namespace eis::specfun
