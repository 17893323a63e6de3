#pragma once

#include <Eigen/Dense>

namespace eis::quad {

// Weights for the product quadrature
//   int_0^{2pi} ln(4 sin^2((t_i - s)/2)) f(s) ds  ~=  sum_j R[d(i,j)] f(t_j)
// on N equidistant nodes (N even), where d(i,j) = (i - j) mod N. Exact for
// trigonometric polynomials of degree < N/2.
Eigen::VectorXd kress_log_weights(int n_nodes);

// Spectral differentiation matrix for 2 pi-periodic functions on N
// equidistant nodes (N even): (D f)(t_i) = f'(t_i) exactly for
// trigonometric polynomials of degree < N/2.
Eigen::MatrixXd trig_diff_matrix(int n_nodes);

// Weights for the principal-value quadrature with the Hilbert kernel,
//   p.v. int_0^{2pi} cot((s - t_i)/2) f(s) ds ~= sum_j W[(j-i) mod N] f(t_j),
// exact for trigonometric polynomials of degree < N/2 (the N/2 mode is
// annihilated). Only odd offsets carry weight.
Eigen::VectorXd hilbert_cot_weights(int n_nodes);

}  // namespace eis::quad
