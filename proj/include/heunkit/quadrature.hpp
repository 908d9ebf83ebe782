#pragma once

#include <vector>

namespace heunkit {

// Nodes and weights on [0, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre with n points.
QuadRule gauss_legendre01(int n);

// Gauss-Jacobi for the weight t^e (1-t)^f on [0,1], e, f > -1 (Golub-Welsch).
QuadRule gauss_jacobi01(int n, double e, double f = 0.0);

// Rule for integral_0^1 t^e g(t) dt with the weight t^e folded into the weights.
// A nonnegative integer e keeps the plain Legendre rule; anything else uses Jacobi.
QuadRule weighted_rule01(int n, double e);

}  // namespace heunkit
