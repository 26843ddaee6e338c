#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "abclab/model.hpp"

namespace testing {

using abclab::Vec2;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Closed polygon on a circle, n segments, first point repeated at the end.
inline std::vector<Vec2> circle_points(const Vec2& c, double r, int n, int turns = 1, int dir = 1) {
  std::vector<Vec2> pts;
  for (int k = 0; k <= n * turns; ++k) {
    const double t = dir * 2.0 * std::acos(-1.0) * k / n;
    pts.push_back(c + r * Vec2(std::cos(t), std::sin(t)));
  }
  pts.back() = pts.front();
  return pts;
}

inline abclab::Trajectory circle(const Vec2& c, double r, int n, int turns = 1, int dir = 1) {
  return abclab::Trajectory::from_points(circle_points(c, r, n, turns, dir), 1.0, true);
}

}  // namespace testing
