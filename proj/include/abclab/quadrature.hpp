#pragma once

#include <cmath>
#include <span>
#include <type_traits>

#include <Eigen/Core>

#include "abclab/model.hpp"

namespace abclab {

/// Budget for the adaptive disk quadrature.
struct QuadratureSpec {
  int max_depth = 12;
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;

  void validate() const;
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Cached for n <= 32; computed from the Jacobi matrix eigenproblem.
const GaussLegendreRule& gauss_legendre(int n);

template <typename T>
struct QuadratureResult {
  T value;
  double error_estimate;
  int level;
};

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.norm();
}
template <typename T>
T zero_like() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    return T::Zero();
  }
}
}  // namespace detail

/// Fixed polar tensor rule on a disk of radius `radius` centred at the origin:
/// 4 * 2^level trapezoid nodes in angle times 2^level four-point
/// Gauss-Legendre panels in radius. `f` receives the offset from the centre.
template <typename F>
auto integrate_disk_level(double radius, F&& f, int level) {
  using T = std::decay_t<decltype(f(Vec2()))>;
  const int n_theta = 4 << level;
  const int panels = 1 << level;
  const auto& gl = gauss_legendre(4);
  const double dtheta = kTwoPi / n_theta;
  const double h = radius / panels;

  T sum = detail::zero_like<T>();
  for (int p = 0; p < panels; ++p) {
    for (Eigen::Index g = 0; g < gl.nodes.size(); ++g) {
      const double rho = h * (p + 0.5 * (gl.nodes[g] + 1.0));
      const double w = 0.5 * h * gl.weights[g] * rho * dtheta;
      T ring = detail::zero_like<T>();
      for (int j = 0; j < n_theta; ++j) {
        const double theta = (j + 0.5) * dtheta;
        ring += f(Vec2(rho * std::cos(theta), rho * std::sin(theta)));
      }
      sum += w * ring;
    }
  }
  return sum;
}

/// Doubles the rule resolution until two successive levels agree to
/// max(abs_tol, rel_tol * |value|). Throws QuadratureNotConverged when
/// max_depth is exhausted.
template <typename F>
auto integrate_disk(double radius, F&& f, const QuadratureSpec& spec) {
  using T = std::decay_t<decltype(f(Vec2()))>;
  spec.validate();
  T previous = integrate_disk_level(radius, f, 0);
  for (int level = 1; level <= spec.max_depth; ++level) {
    T current = integrate_disk_level(radius, f, level);
    const double err = detail::magnitude(T(current - previous));
    if (err <= std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(current))) {
      return QuadratureResult<T>{current, err, level};
    }
    previous = current;
  }
  throw Error(Errc::QuadratureNotConverged, "disk quadrature exceeded max_depth");
}

/// Integral of field(x) . dx along the polyline through `points`, each
/// straight segment integrated with `gauss_points`-point Gauss-Legendre (one
/// point is the midpoint rule).
template <typename F>
double polyline_integral(std::span<const Vec2> points, F&& field, int gauss_points) {
  const auto& gl = gauss_legendre(gauss_points);
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Vec2 a = points[i - 1];
    const Vec2 d = points[i] - a;
    double seg = 0.0;
    for (Eigen::Index g = 0; g < gl.nodes.size(); ++g) {
      const Vec2 x = a + 0.5 * (gl.nodes[g] + 1.0) * d;
      seg += gl.weights[g] * field(x).dot(d);
    }
    total += 0.5 * seg;
  }
  return total;
}

}  // namespace abclab
