#pragma once

// Domain types shared by every module.
//
// Units: hbar = c = 1, charge in units of e, flux in units of hc/e. With these
// conventions the Aharonov-Bohm phase q*Phi/(hbar c) becomes 2*pi*q*Phi, and the
// superconducting flux quantum hc/2e is 1/2. Orientation: counter-clockwise is
// positive and z points out of the plane.

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "abclab/error.hpp"

namespace abclab {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
using Vec2 = Vector2<double>;

/// Hard cap on |v|/c; every formula in the library is first order in v/c.
inline constexpr double kVelocityCap = 0.1;
/// Superconducting flux quantum hc/2e in units of hc/e.
inline constexpr double kSuperconductingFluxQuantum = 0.5;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// z-component of a x b.
template <typename Scalar>
Scalar cross(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// z_hat x v (rotate by +90 degrees).
template <typename Scalar>
Vector2<Scalar> z_cross(const Vector2<Scalar>& v) {
  return Vector2<Scalar>(-v.y(), v.x());
}

/// v x z_hat (rotate by -90 degrees).
template <typename Scalar>
Vector2<Scalar> cross_z(const Vector2<Scalar>& v) {
  return Vector2<Scalar>(v.y(), -v.x());
}

namespace detail {
template <typename Scalar>
void check_velocity(const Vector2<Scalar>& v, const char* who) {
  using std::isfinite;
  if (!isfinite(v.x()) || !isfinite(v.y()) || !(v.norm() < Scalar(kVelocityCap))) {
    throw Error(Errc::InvalidState, std::string(who) + " velocity must satisfy |v| < 0.1 c");
  }
}
}  // namespace detail

/// Point charge: position, velocity (units of c), charge (units of e), mass.
template <typename Scalar>
class BasicChargeState {
 public:
  BasicChargeState(const Vector2<Scalar>& position, const Vector2<Scalar>& velocity,
                   Scalar charge, Scalar mass = Scalar(1))
      : position_(position), velocity_(velocity), charge_(charge), mass_(mass) {
    using std::isfinite;
    detail::check_velocity(velocity, "charge");
    if (!isfinite(charge)) throw Error(Errc::InvalidState, "charge must be finite");
    if (!(mass > Scalar(0))) throw Error(Errc::InvalidState, "charge mass must be positive");
  }

  const Vector2<Scalar>& position() const { return position_; }
  const Vector2<Scalar>& velocity() const { return velocity_; }
  Scalar charge() const { return charge_; }
  Scalar mass() const { return mass_; }

  BasicChargeState with_position(const Vector2<Scalar>& x) const {
    return BasicChargeState(x, velocity_, charge_, mass_);
  }
  BasicChargeState with_velocity(const Vector2<Scalar>& v) const {
    return BasicChargeState(position_, v, charge_, mass_);
  }

 private:
  Vector2<Scalar> position_;
  Vector2<Scalar> velocity_;
  Scalar charge_;
  Scalar mass_;
};

/// Regularized fluxon: flux (units of hc/e) spread uniformly over a disk of
/// radius core_radius.
template <typename Scalar>
class BasicFluxonState {
 public:
  BasicFluxonState(const Vector2<Scalar>& position, const Vector2<Scalar>& velocity,
                   Scalar flux, Scalar core_radius, Scalar mass = Scalar(1))
      : position_(position), velocity_(velocity), flux_(flux), core_radius_(core_radius),
        mass_(mass) {
    using std::isfinite;
    detail::check_velocity(velocity, "fluxon");
    if (!isfinite(flux)) throw Error(Errc::InvalidState, "flux must be finite");
    if (!(core_radius > Scalar(0))) throw Error(Errc::InvalidState, "core radius must be positive");
    if (!(mass > Scalar(0))) throw Error(Errc::InvalidState, "fluxon mass must be positive");
  }

  const Vector2<Scalar>& position() const { return position_; }
  const Vector2<Scalar>& velocity() const { return velocity_; }
  Scalar flux() const { return flux_; }
  Scalar core_radius() const { return core_radius_; }
  Scalar mass() const { return mass_; }

  BasicFluxonState with_position(const Vector2<Scalar>& x) const {
    return BasicFluxonState(x, velocity_, flux_, core_radius_, mass_);
  }
  BasicFluxonState with_velocity(const Vector2<Scalar>& v) const {
    return BasicFluxonState(position_, v, flux_, core_radius_, mass_);
  }

 private:
  Vector2<Scalar> position_;
  Vector2<Scalar> velocity_;
  Scalar flux_;
  Scalar core_radius_;
  Scalar mass_;
};

using ChargeState = BasicChargeState<double>;
using FluxonState = BasicFluxonState<double>;

struct TrajectorySample {
  double time;
  Vec2 position;
};

/// Time-stamped polyline. A closed trajectory repeats its first position as
/// the last sample.
class Trajectory {
 public:
  static constexpr double kClosureTolerance = 1e-12;

  Trajectory(std::vector<TrajectorySample> samples, bool closed);

  /// Samples at t = t0 + k*dt.
  static Trajectory from_points(std::span<const Vec2> points, double dt, bool closed,
                                double t0 = 0.0);

  std::span<const TrajectorySample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool closed() const { return closed_; }
  const Vec2& position(std::size_t i) const { return samples_[i].position; }
  double time(std::size_t i) const { return samples_[i].time; }

  Trajectory translated(const Vec2& offset) const;
  /// Same geometric path traversed in the opposite direction.
  Trajectory reversed() const;
  /// Minimum distance from any point of the polyline to `p`.
  double min_distance_to(const Vec2& p) const;

 private:
  std::vector<TrajectorySample> samples_;
  bool closed_;
};

/// Signed number of counter-clockwise revolutions of a closed polyline about
/// `center`.
int winding_number(const Trajectory& traj, const Vec2& center);

/// Circle split into `n_samples` uniform intervals, starting on the +x side of
/// `center`. The sense of rotation follows the sign of `angular_velocity`.
/// When `turns` is an integer the path is closed and the last sample is the
/// first one repeated exactly.
Trajectory make_circular_trajectory(const Vec2& center, double radius, double angular_velocity,
                                    int n_samples, double turns);

/// Closed star-shaped loop rho(theta) = radius * (1 + sum_k a_k cos(k theta + p_k))
/// about `center`, k = 1..harmonics.size(); `direction` is +1 (CCW) or -1.
/// Requires sum |a_k| < 1.
Trajectory make_star_trajectory(const Vec2& center, double radius,
                                std::span<const double> harmonics,
                                std::span<const double> harmonic_phases, int n_samples,
                                int turns = 1, int direction = 1);

}  // namespace abclab
