#pragma once

#include <vector>

#include "esmhd/types.hpp"

namespace esmhd {

// Legendre-Gauss-Lobatto collocation operator of degree p on [-1,1].
// Q = diag(w) D satisfies Q + Q^T = B with B = diag(-1,0,...,0,1).
struct SbpOperator {
  int p = 0;                    // polynomial degree, N = p
  std::vector<double> nodes;    // xi_k, k = 0..N
  std::vector<double> weights;  // quadrature weights
  std::vector<double> D;        // (N+1)^2 row major, D_jk = l_k'(xi_j)
  std::vector<double> Q;        // Q_jk = w_j D_jk

  int n_nodes() const { return p + 1; }
  double d(int j, int k) const { return D[(p + 1) * j + k]; }
  double q(int j, int k) const { return Q[(p + 1) * j + k]; }
};

// Supported degrees: 1 <= p <= 12; throws UnsupportedDegree otherwise.
SbpOperator build_sbp(int p);

// Legendre polynomial P_n and derivative at x (used by node construction and
// available to tests).
double legendre(int n, double x);
double legendre_deriv(int n, double x);

}  // namespace esmhd
