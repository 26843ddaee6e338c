#include <doctest.h>

#include <cmath>
#include <random>

#include "abclab/dynamics.hpp"
#include "abclab/error.hpp"
#include "abclab/interaction.hpp"
#include "support.hpp"

using namespace abclab;

namespace {

SystemState beam(double impact, double flux, double speed = 0.01, double half_length = 10.0) {
  return SystemState{ChargeState(Vec2(-half_length, impact), Vec2(speed, 0.0), 1.0),
                     FluxonState(Vec2::Zero(), Vec2::Zero(), flux, 1e-3), 0.0};
}

}  // namespace

TEST_CASE("no force outside the core") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const SystemState s{
        ChargeState(Vec2(testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)),
                    Vec2(testing::uniform(rng, -0.05, 0.05), testing::uniform(rng, -0.05, 0.05)),
                    testing::uniform(rng, -2, 2)),
        FluxonState(Vec2(testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)),
                    Vec2(testing::uniform(rng, -0.05, 0.05), testing::uniform(rng, -0.05, 0.05)),
                    testing::uniform(rng, -2, 2), 1e-3),
        0.0};
    const auto [aq, af] = equations_of_motion(s);
    CHECK(aq.norm() < 1e-12);
    CHECK(af.norm() < 1e-12);
  }
}

TEST_CASE("zero flux gives exactly zero acceleration") {
  const auto [aq, af] = equations_of_motion(beam(1.0, 0.0));
  CHECK(aq == Vec2::Zero());
  CHECK(af == Vec2::Zero());
}

TEST_CASE("equations of motion reject a charge inside the core") {
  SystemState s = beam(0.0, 1.0);
  s.charge = s.charge.with_position(Vec2(5e-4, 0.0));
  try {
    equations_of_motion(s);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoreOverlap);
  }
}

TEST_CASE("Euler-Lagrange force from finite differences of the Lagrangian vanishes") {
  // With L = T + (rdot - Rdot) . Pi(r - R), the charge obeys
  // m rddot = grad(u . Pi) - (u . grad) Pi; evaluate it by central differences.
  std::mt19937_64 rng(8);
  const double h = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const FluxonState f(Vec2::Zero(), Vec2(0.01, -0.02), testing::uniform(rng, -2, 2), 1e-3);
    const Vec2 r(testing::uniform(rng, 0.5, 2), testing::uniform(rng, -2, 2));
    const Vec2 u = Vec2(testing::uniform(rng, -0.05, 0.05), testing::uniform(rng, -0.05, 0.05)) -
                   f.velocity();
    auto pi_at = [&](const Vec2& x) {
      return field_momentum_closed(ChargeState(x, Vec2::Zero(), 1.3), f);
    };
    Vec2 force = Vec2::Zero();
    for (int k = 0; k < 2; ++k) {
      const Vec2 e = Vec2::Unit(k);
      const Vec2 dpi = (pi_at(r + h * e) - pi_at(r - h * e)) / (2 * h);  // d Pi / d x_k
      force[k] += u.dot(dpi);
      force -= u[k] * dpi;
    }
    CHECK(force.norm() < 1e-8);
    const SystemState s{ChargeState(r, Vec2(u + f.velocity()), 1.3), f, 0.0};
    CHECK(equations_of_motion(s).first.norm() < 1e-12);
  }
}

TEST_CASE("curl force is the Lorentz form u x curl") {
  const Vec2 f = curl_force(Vec2(1.0, 0.0), 2.0);
  CHECK(f.isApprox(Vec2(0.0, -2.0)));  // x_hat x z_hat = -y_hat
}

TEST_CASE("scattering past the fluxon is undeflected") {
  const auto res = integrate(beam(1.0, 1.0), 1.0, 2000);
  CHECK(res.deflection_angle < 1e-6);
  CHECK(res.energy_drift < 1e-10);
  CHECK(res.momentum_drift < 1e-10);
  CHECK(res.states.size() == 2001);
  CHECK(res.states.back().time == doctest::Approx(2000.0));
}

TEST_CASE("zero flux trajectory is a straight line") {
  const SystemState s0 = beam(0.5, 0.0);
  const auto res = integrate(s0, 0.5, 400);
  for (const auto& s : res.states) {
    const Vec2 expected = s0.charge.position() + s.time * s0.charge.velocity();
    CHECK((s.charge.position() - expected).norm() < 1e-12);
  }
  CHECK(res.deflection_angle == 0.0);
}

TEST_CASE("time reversal returns to the initial state") {
  SystemState s0 = beam(0.7, 1.0);
  s0.fluxon = s0.fluxon.with_velocity(Vec2(-0.003, 0.002));
  const auto forward = integrate(s0, 1.0, 1000);
  const auto back = integrate(time_reversed(forward.states.back()), 1.0, 1000);
  const SystemState end = time_reversed(back.states.back());
  CHECK((end.charge.position() - s0.charge.position()).norm() < 1e-9);
  CHECK((end.fluxon.position() - s0.fluxon.position()).norm() < 1e-9);
  CHECK((end.charge.velocity() - s0.charge.velocity()).norm() < 1e-9);
}

TEST_CASE("aiming at the core raises CoreEntry") {
  try {
    integrate(beam(0.0, 1.0), 1.0, 2000);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoreEntry);
  }
  // A large step that would jump over the core is caught too.
  CHECK_THROWS_AS(integrate(beam(1e-4, 1.0, 0.05), 300.0, 2), Error);
}

TEST_CASE("integrate argument checks") {
  CHECK_THROWS_AS(integrate(beam(1.0, 1.0), 0.0, 10), Error);
  CHECK_THROWS_AS(integrate(beam(1.0, 1.0), 1.0, 0), Error);
}

TEST_CASE("RK4 is fourth order on a gyration orbit") {
  const auto r = step_halving_gyration(1.0, 1.0, Vec2(0.05, 0.0), 64);
  CHECK(r.observed_order >= 3.8);
  CHECK(r.observed_order <= 4.5);
  CHECK(r.energy_drift_coarse / r.energy_drift_fine >= 14.0);
  CHECK_THROWS_AS(step_halving_gyration(0.0, 1.0, Vec2(0.05, 0.0), 64), Error);
}

TEST_CASE("rk4_step integrates a cubic in time exactly") {
  using V = Eigen::Matrix<double, 1, 1>;
  auto f = [](double t, const V&) { return V(3.0 * t * t); };
  V y(0.0);
  for (int k = 0; k < 4; ++k) y = rk4_step(y, 0.5 * k, 0.5, f);
  CHECK(y(0) == doctest::Approx(8.0).epsilon(1e-14));
}
