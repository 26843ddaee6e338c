#include "abclab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "abclab/fields2d.hpp"
#include "abclab/interaction.hpp"

namespace abclab {

namespace {

using PhaseVector = Eigen::Matrix<double, 8, 1>;  // r, rdot, R, Rdot

PhaseVector pack(const SystemState& s) {
  PhaseVector y;
  y << s.charge.position(), s.charge.velocity(), s.fluxon.position(), s.fluxon.velocity();
  return y;
}

SystemState unpack(const PhaseVector& y, const SystemState& like, double t) {
  return SystemState{
      ChargeState(y.segment<2>(0), y.segment<2>(2), like.charge.charge(), like.charge.mass()),
      FluxonState(y.segment<2>(4), y.segment<2>(6), like.fluxon.flux(), like.fluxon.core_radius(),
                  like.fluxon.mass()),
      t};
}

double distance_to_segment(const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp(-a.dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + s * ab).norm();
}

}  // namespace

std::pair<Vec2, Vec2> equations_of_motion(const SystemState& state) {
  const Vec2 sep = state.charge.position() - state.fluxon.position();
  if (!(sep.norm() > state.fluxon.core_radius())) {
    throw Error(Errc::CoreOverlap, "charge inside the fluxon core");
  }
  const double curl_pi = state.charge.charge() * b_field_fluxon(state.fluxon, state.charge.position());
  const Vec2 force = curl_force(state.charge.velocity() - state.fluxon.velocity(), curl_pi);
  return {force / state.charge.mass(), -force / state.fluxon.mass()};
}

SystemState time_reversed(const SystemState& s) {
  return SystemState{s.charge.with_velocity(-s.charge.velocity()),
                     s.fluxon.with_velocity(-s.fluxon.velocity()), s.time};
}

IntegrationResult integrate(const SystemState& initial, double dt, int n_steps) {
  if (!(dt > 0.0)) throw Error(Errc::BadDiscretization, "time step must be positive");
  if (n_steps < 1) throw Error(Errc::BadDiscretization, "need at least one step");

  const double core = initial.fluxon.core_radius();
  auto derivative = [&initial](double t, const PhaseVector& y) {
    const SystemState s = unpack(y, initial, t);
    if (!((s.charge.position() - s.fluxon.position()).norm() > s.fluxon.core_radius())) {
      throw Error(Errc::CoreEntry, "trajectory entered the fluxon core");
    }
    const auto [acc_q, acc_f] = equations_of_motion(s);
    PhaseVector dy;
    dy << y.segment<2>(2), acc_q, y.segment<2>(6), acc_f;
    return dy;
  };

  auto energy = [](const SystemState& s) {
    const auto [p, P] = canonical_momenta(s.charge, s.fluxon);
    return hamiltonian(s.charge, s.fluxon, p, P);
  };
  auto total_momentum = [](const SystemState& s) -> Vec2 {
    const auto [p, P] = canonical_momenta(s.charge, s.fluxon);
    return p + P;
  };

  IntegrationResult result;
  result.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  result.states.push_back(initial);
  const double h0 = energy(initial);
  const Vec2 m0 = total_momentum(initial);

  PhaseVector y = pack(initial);
  double t = initial.time;
  for (int step = 0; step < n_steps; ++step) {
    const PhaseVector next = rk4_step(y, t, dt, derivative);
    const Vec2 rel_before = y.segment<2>(0) - y.segment<2>(4);
    const Vec2 rel_after = next.segment<2>(0) - next.segment<2>(4);
    if (!(distance_to_segment(rel_before, rel_after) > core)) {
      throw Error(Errc::CoreEntry, "trajectory entered the fluxon core");
    }
    y = next;
    t = initial.time + dt * (step + 1);
    SystemState s = unpack(y, initial, t);
    result.energy_drift = std::max(result.energy_drift, std::abs(energy(s) - h0));
    result.momentum_drift = std::max(result.momentum_drift, (total_momentum(s) - m0).norm());
    result.states.push_back(std::move(s));
  }

  const Vec2 v0 = initial.charge.velocity();
  const Vec2 v1 = result.states.back().charge.velocity();
  if (v0.norm() > 0.0 && v1.norm() > 0.0) {
    result.deflection_angle = std::abs(std::atan2(cross(v0, v1), v0.dot(v1)));
  }
  return result;
}

StepHalvingReport step_halving_gyration(double curl_pi, double mass, const Vec2& velocity,
                                        int steps_per_period) {
  if (!(curl_pi != 0.0) || !(mass > 0.0) || steps_per_period < 4) {
    throw Error(Errc::BadDiscretization, "gyration check needs nonzero curl and >= 4 steps");
  }
  using State = Eigen::Vector4d;  // x, v
  auto f = [&](double, const State& y) {
    State dy;
    dy << y.segment<2>(2), curl_force(y.segment<2>(2), curl_pi) / mass;
    return dy;
  };
  const double period = kTwoPi * mass / std::abs(curl_pi);
  auto run = [&](int n, double& drift) {
    State y;
    y << 0.0, 0.0, velocity;
    const double e0 = 0.5 * mass * velocity.squaredNorm();
    const double dt = period / n;
    drift = 0.0;
    for (int k = 0; k < n; ++k) {
      y = rk4_step(y, k * dt, dt, f);
      drift = std::max(drift, std::abs(0.5 * mass * y.segment<2>(2).squaredNorm() - e0));
    }
    return y.segment<2>(0).norm();  // exact orbit returns to the origin
  };
  StepHalvingReport r{};
  r.error_coarse = run(steps_per_period, r.energy_drift_coarse);
  r.error_fine = run(2 * steps_per_period, r.energy_drift_fine);
  r.observed_order = std::log2(r.error_coarse / r.error_fine);
  return r;
}

}  // namespace abclab
