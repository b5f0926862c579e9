#include "esmhd/sbp.hpp"

#include <cmath>

namespace esmhd {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  return p;
}

double legendre_deriv(int n, double x) {
  if (n == 0) return 0.0;
  // (1-x^2) P_n' = n (P_{n-1} - x P_n)
  const double denom = 1.0 - x * x;
  if (std::abs(denom) < 1e-14) {
    // P_n'(+-1) = (+-1)^{n-1} n(n+1)/2
    const double sign = (x > 0.0) ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0);
    return sign * 0.5 * n * (n + 1.0);
  }
  return n * (legendre(n - 1, x) - x * legendre(n, x)) / denom;
}

SbpOperator build_sbp(int p) {
  if (p < 1 || p > 12) throw UnsupportedDegree(p);
  const int N = p;
  const int n = N + 1;
  SbpOperator op;
  op.p = p;
  op.nodes.assign(n, 0.0);
  op.weights.assign(n, 0.0);
  op.D.assign(n * n, 0.0);
  op.Q.assign(n * n, 0.0);

  op.nodes[0] = -1.0;
  op.nodes[N] = 1.0;
  // Interior LGL nodes are the roots of P_N'; Newton from the Chebyshev-
  // Lobatto guess, second derivative from the Legendre ODE.
  for (int k = 1; k < N; ++k) {
    double x = -std::cos(M_PI * k / N);
    for (int it = 0; it < 100; ++it) {
      const double d1 = legendre_deriv(N, x);
      const double d2 = (2.0 * x * d1 - N * (N + 1.0) * legendre(N, x)) / (1.0 - x * x);
      const double dx = d1 / d2;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    op.nodes[k] = x;
  }
  // Enforce symmetry xi_k = -xi_{N-k} exactly.
  for (int k = 0; 2 * k <= N; ++k) {
    const double v = 0.5 * (op.nodes[N - k] - op.nodes[k]);
    op.nodes[k] = -v;
    op.nodes[N - k] = v;
  }

  for (int k = 0; k <= N; ++k) {
    const double Pn = legendre(N, op.nodes[k]);
    op.weights[k] = 2.0 / (N * (N + 1.0) * Pn * Pn);
  }

  // Classic closed-form LGL differentiation matrix.
  for (int j = 0; j <= N; ++j) {
    for (int k = 0; k <= N; ++k) {
      double v;
      if (j == k) {
        if (j == 0)
          v = -0.25 * N * (N + 1.0);
        else if (j == N)
          v = 0.25 * N * (N + 1.0);
        else
          v = 0.0;
      } else {
        v = legendre(N, op.nodes[j]) / (legendre(N, op.nodes[k]) * (op.nodes[j] - op.nodes[k]));
      }
      op.D[n * j + k] = v;
      op.Q[n * j + k] = op.weights[j] * v;
    }
  }
  return op;
}

}  // namespace esmhd
