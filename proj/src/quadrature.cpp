#include "abclab/quadrature.hpp"

#include <array>
#include <string>

#include <Eigen/Eigenvalues>

namespace abclab {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(Errc::ValidationError, "quadrature tolerances must be positive");
  }
  if (max_depth < 1) throw Error(Errc::ValidationError, "quadrature max_depth must be >= 1");
}

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix of
// the Legendre recurrence, weights are 2 * (first eigenvector component)^2.
GaussLegendreRule compute_rule(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussLegendreRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

constexpr int kCachedRules = 32;

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1 || n > kCachedRules) {
    throw Error(Errc::BadDiscretization,
                "Gauss-Legendre order must be in [1, " + std::to_string(kCachedRules) + "]");
  }
  static const auto rules = [] {
    std::array<GaussLegendreRule, kCachedRules> out;
    for (int k = 1; k <= kCachedRules; ++k) out[k - 1] = compute_rule(k);
    return out;
  }();
  return rules[n - 1];
}

}  // namespace abclab
