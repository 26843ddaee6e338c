#pragma once

// Two-body charge/fluxon dynamics for
//   L = m rdot^2 / 2 + M Rdot^2 / 2 + (rdot - Rdot) . Pi(r - R).
// The Euler-Lagrange equations reduce to a Lorentz-like force
//   m rddot = -M Rddot = (rdot - Rdot) x z_hat curl(Pi),
// and curl(Pi) = q B_Phi vanishes everywhere outside the fluxon core.

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "abclab/model.hpp"

namespace abclab {

struct SystemState {
  ChargeState charge;
  FluxonState fluxon;
  double time = 0.0;
};

struct IntegrationResult {
  std::vector<SystemState> states;
  double deflection_angle = 0.0;  ///< angle between final and initial charge velocity
  double energy_drift = 0.0;      ///< max |H(t) - H(0)|
  double momentum_drift = 0.0;    ///< max |(p + P)(t) - (p + P)(0)|
};

/// Force (per unit curl) of the curl form: u x (curl_pi z_hat).
inline Vec2 curl_force(const Vec2& relative_velocity, double curl_pi) {
  return curl_pi * cross_z(relative_velocity);
}

/// Accelerations of the charge and the fluxon.
std::pair<Vec2, Vec2> equations_of_motion(const SystemState& state);

/// Classic fourth-order Runge-Kutta step for y' = f(t, y).
template <typename Vector, typename Derivative>
Vector rk4_step(const Vector& y, double t, double dt, Derivative&& f) {
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + 0.5 * dt, Vector(y + 0.5 * dt * k1));
  const Vector k3 = f(t + 0.5 * dt, Vector(y + 0.5 * dt * k2));
  const Vector k4 = f(t + dt, Vector(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates n_steps RK4 steps. Throws CoreEntry if the charge would enter
/// the fluxon core.
IntegrationResult integrate(const SystemState& initial, double dt, int n_steps);

struct StepHalvingReport {
  double error_coarse;         ///< position error after one period, n steps
  double error_fine;           ///< same with 2n steps
  double observed_order;       ///< log2(error_coarse / error_fine)
  double energy_drift_coarse;  ///< max |E(t) - E(0)| with n steps
  double energy_drift_fine;
};

/// Order check of the RK4 stepper on the curl-form force with a nonzero,
/// uniform curl: a charge gyrating in a uniform field, whose exact orbit is a
/// circle that closes after one period 2 pi m / curl.
StepHalvingReport step_halving_gyration(double curl_pi, double mass, const Vec2& velocity,
                                        int steps_per_period);

/// Same positions, reversed velocities.
SystemState time_reversed(const SystemState& state);

}  // namespace abclab
