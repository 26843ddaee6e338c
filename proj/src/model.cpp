#include "abclab/model.hpp"

#include <algorithm>
#include <cmath>

namespace abclab {

Trajectory::Trajectory(std::vector<TrajectorySample> samples, bool closed)
    : samples_(std::move(samples)), closed_(closed) {
  if (samples_.size() < 3) {
    throw Error(Errc::BadDiscretization, "a trajectory needs at least 3 samples");
  }
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].time > samples_[i - 1].time)) {
      throw Error(Errc::BadDiscretization, "trajectory times must be strictly increasing");
    }
  }
  if (closed_ && (samples_.front().position - samples_.back().position).norm() > kClosureTolerance) {
    throw Error(Errc::NonClosedTrajectory, "closed trajectory does not return to its start");
  }
}

Trajectory Trajectory::from_points(std::span<const Vec2> points, double dt, bool closed,
                                   double t0) {
  if (!(dt > 0.0)) throw Error(Errc::BadDiscretization, "time step must be positive");
  std::vector<TrajectorySample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    samples.push_back({t0 + dt * static_cast<double>(i), points[i]});
  }
  return Trajectory(std::move(samples), closed);
}

Trajectory Trajectory::translated(const Vec2& offset) const {
  auto out = samples_;
  for (auto& s : out) s.position += offset;
  return Trajectory(std::move(out), closed_);
}

Trajectory Trajectory::reversed() const {
  std::vector<TrajectorySample> out;
  out.reserve(samples_.size());
  const double t_end = samples_.back().time;
  const double t_begin = samples_.front().time;
  for (auto it = samples_.rbegin(); it != samples_.rend(); ++it) {
    out.push_back({t_begin + (t_end - it->time), it->position});
  }
  return Trajectory(std::move(out), closed_);
}

double Trajectory::min_distance_to(const Vec2& p) const {
  double best = (samples_.front().position - p).norm();
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const Vec2& a = samples_[i - 1].position;
    const Vec2 ab = samples_[i].position - a;
    const double len2 = ab.squaredNorm();
    const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + s * ab - p).norm());
  }
  return best;
}

int winding_number(const Trajectory& traj, const Vec2& center) {
  if (!traj.closed()) throw Error(Errc::NonClosedTrajectory, "winding number needs a closed path");
  for (const auto& s : traj.samples()) {
    if ((s.position - center).norm() < 1e-9) {
      throw Error(Errc::CenterOnPath, "a trajectory sample lies on the winding center");
    }
  }
  double total = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const Vec2 a = traj.position(i - 1) - center;
    const Vec2 b = traj.position(i) - center;
    total += std::atan2(cross(a, b), a.dot(b));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Trajectory make_circular_trajectory(const Vec2& center, double radius, double angular_velocity,
                                    int n_samples, double turns) {
  if (n_samples < 16) throw Error(Errc::BadDiscretization, "need at least 16 samples");
  if (!(radius > 0.0)) throw Error(Errc::BadDiscretization, "radius must be positive");
  if (angular_velocity == 0.0 || !std::isfinite(angular_velocity)) {
    throw Error(Errc::BadDiscretization, "angular velocity must be finite and nonzero");
  }
  if (!(turns > 0.0)) throw Error(Errc::BadDiscretization, "turns must be positive");

  const bool closed = std::abs(turns - std::round(turns)) < 1e-12;
  const double sweep = std::copysign(kTwoPi * turns, angular_velocity);
  const double step = sweep / n_samples;
  const double dt = std::abs(step / angular_velocity);

  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(n_samples) + 1);
  for (int k = 0; k <= n_samples; ++k) {
    const double theta = step * k;
    samples.push_back({dt * k, center + radius * Vec2(std::cos(theta), std::sin(theta))});
  }
  if (closed) samples.back().position = samples.front().position;
  return Trajectory(std::move(samples), closed);
}

}  // namespace abclab

namespace abclab {

Trajectory make_star_trajectory(const Vec2& center, double radius,
                                std::span<const double> harmonics,
                                std::span<const double> harmonic_phases, int n_samples, int turns,
                                int direction) {
  if (n_samples < 16) throw Error(Errc::BadDiscretization, "need at least 16 samples");
  if (harmonics.size() != harmonic_phases.size()) {
    throw Error(Errc::BadDiscretization, "one phase per harmonic is required");
  }
  if (turns < 1 || (direction != 1 && direction != -1)) {
    throw Error(Errc::BadDiscretization, "turns must be >= 1 and direction +-1");
  }
  double spread = 0.0;
  for (double a : harmonics) spread += std::abs(a);
  if (!(radius > 0.0) || !(spread < 1.0)) {
    throw Error(Errc::BadDiscretization, "star loop radius must stay positive");
  }
  const int n = n_samples * turns;
  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double theta = direction * kTwoPi * static_cast<double>(k) / n_samples;
    double rho = 1.0;
    for (std::size_t h = 0; h < harmonics.size(); ++h) {
      rho += harmonics[h] * std::cos(static_cast<double>(h + 1) * theta + harmonic_phases[h]);
    }
    samples.push_back({static_cast<double>(k),
                       center + radius * rho * Vec2(std::cos(theta), std::sin(theta))});
  }
  samples.back().position = samples.front().position;
  return Trajectory(std::move(samples), true);
}

}  // namespace abclab
