#pragma once

#include <complex>
#include <vector>

namespace eis::specfun {

// Maximum supported order for the single-order entry points. The modal
// series in the solver never need more than ~40; anything larger is a bug
// upstream and is rejected loudly.
inline constexpr int kMaxOrder = 60;

/// Bessel function of the first kind J_n(x), x >= 0, |n| <= kMaxOrder.
double bessel_j(int n, double x);

/// Bessel function of the second kind Y_n(x), x > 0, |n| <= kMaxOrder.
double bessel_y(int n, double x);

/// Hankel function of the first kind H^(1)_n(x) = J_n(x) + i Y_n(x), x > 0.
std::complex<double> hankel1(int n, double x);

// Array forms, orders 0..nmax at a fixed argument. These are what the
// modal series and the Nystrom kernels actually consume.
std::vector<double> bessel_j_upto(int nmax, double x);
std::vector<double> bessel_y_upto(int nmax, double x);

// J0, J1, Y0, Y1 in one pass; the hot path of the kernel assembly.
void bessel_j01_y01(double x, double& j0, double& j1, double& y0, double& y1);

}  // namespace eis::specfun
