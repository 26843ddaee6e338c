#include <doctest.h>

#include <cmath>
#include <random>

#include "abclab/error.hpp"
#include "abclab/fields2d.hpp"
#include "abclab/interaction.hpp"
#include "support.hpp"

using namespace abclab;
using doctest::Approx;

namespace {

// (1/4 pi) Bz cross_z(E_q) summed on a polar midpoint grid over the core,
// written out from the field formulas directly.
Vec2 momentum_polar_grid(const ChargeState& q, const FluxonState& f, int nr, int nt) {
  const double a = f.core_radius();
  const double bz = 2.0 * f.flux() / (a * a);
  Vec2 sum = Vec2::Zero();
  for (int i = 0; i < nr; ++i) {
    const double rho = (i + 0.5) * a / nr;
    for (int j = 0; j < nt; ++j) {
      const double t = (j + 0.5) * kTwoPi / nt;
      const Vec2 x = f.position() + rho * Vec2(std::cos(t), std::sin(t));
      const Vec2 d = x - q.position();
      const Vec2 e = 2.0 * q.charge() * d / d.squaredNorm();
      sum += rho * Vec2(e.y(), -e.x());
    }
  }
  return sum * (bz / (4.0 * std::acos(-1.0))) * (a / nr) * (kTwoPi / nt);
}

}  // namespace

TEST_CASE("closed-form field momentum example") {
  const ChargeState q(Vec2::Zero(), Vec2::Zero(), 1.0);
  const FluxonState f(Vec2(2, 0), Vec2::Zero(), 1.0, 0.01);
  const Vec2 pi = field_momentum_closed(q, f);
  CHECK(pi.norm() == Approx(0.5));
  CHECK(pi.isApprox(Vec2(0, -0.5)));
  const ChargeState zero(Vec2::Zero(), Vec2::Zero(), 0.0);
  CHECK(field_momentum_closed(zero, f) == Vec2::Zero());
  try {
    field_momentum_closed(q, f.with_position(Vec2(0.005, 0)));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoreOverlap);
  }
}

TEST_CASE("field momentum equals q A evaluated at the charge") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const ChargeState q(Vec2(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)),
                        Vec2::Zero(), testing::uniform(rng, -2, 2));
    const FluxonState f(Vec2(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)),
                        Vec2::Zero(), testing::uniform(rng, -2, 2), 1e-3);
    const Vec2 qa = q.charge() * vector_potential_fluxon(f, q.position());
    CHECK((field_momentum_closed(q, f) - qa).norm() < 1e-13 * (1.0 + qa.norm()));
  }
}

TEST_CASE("field momentum depends only on the separation") {
  const ChargeState q(Vec2(0.3, 0.4), Vec2::Zero(), 1.5);
  const FluxonState f(Vec2(-1, 2), Vec2::Zero(), -0.7, 1e-3);
  const Vec2 s(17.0, -3.0);
  const Vec2 a = field_momentum_closed(q, f);
  const Vec2 b = field_momentum_closed(q.with_position(q.position() + s), f.with_position(f.position() + s));
  CHECK((a - b).norm() < 1e-14);
}

TEST_CASE("closed form works for other scalar types") {
  using Q = BasicChargeState<long double>;
  using F = BasicFluxonState<long double>;
  using V = Vector2<long double>;
  const Q q(V(0, 0), V(0, 0), 1.0L);
  const F f(V(2, 0), V(0, 0), 1.0L, 0.01L);
  CHECK(static_cast<double>(field_momentum_closed(q, f).y()) == Approx(-0.5));
  const BasicChargeState<float> qf(Vector2<float>(0, 0), Vector2<float>(0, -0.01f), 1.0f);
  const BasicFluxonState<float> ff(Vector2<float>(2, 0), Vector2<float>(0, 0), 1.0f, 0.01f);
  CHECK(interaction_lagrangian_pi(qf, ff) == Approx(0.005).epsilon(1e-6));
}

TEST_CASE("quadrature field momentum example and edge cases") {
  const ChargeState q(Vec2::Zero(), Vec2::Zero(), 1.0);
  const FluxonState f(Vec2(2, 0), Vec2::Zero(), 1.0, 0.01);
  const Vec2 pi = field_momentum_quadrature(q, f);
  CHECK((pi - Vec2(0, -0.5)).norm() / 0.5 < 1e-4);
  CHECK(field_momentum_quadrature(q, f.with_position(Vec2(2, 0))) == pi);
  const FluxonState none(Vec2(2, 0), Vec2::Zero(), 0.0, 0.01);
  CHECK(field_momentum_quadrature(q, none) == Vec2::Zero());
  try {
    field_momentum_quadrature(q, FluxonState(Vec2(0.015, 0), Vec2::Zero(), 1.0, 0.01));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoreOverlap);
  }
}

TEST_CASE("quadrature agrees with an independent polar grid even for a thick core") {
  const ChargeState q(Vec2(0.1, -0.2), Vec2::Zero(), 1.3);
  const FluxonState f(Vec2(1.0, 0.5), Vec2::Zero(), 0.6, 0.3);
  const Vec2 grid = momentum_polar_grid(q, f, 400, 400);
  const Vec2 quad = field_momentum_quadrature(q, f, QuadratureSpec{12, 1e-10, 1e-14});
  CHECK((grid - quad).norm() < 1e-5 * grid.norm());
  // A uniform core sees the point-fluxon value exactly (harmonic mean value).
  CHECK((quad - field_momentum_closed(q, f)).norm() < 1e-9 * quad.norm());
}

TEST_CASE("quadrature matches the closed form for small cores over random geometries") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const double d = testing::uniform(rng, 0.5, 5.0);
    const double angle = testing::uniform(rng, 0, kTwoPi);
    const Vec2 r(testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3));
    const ChargeState q(r, Vec2::Zero(), testing::uniform(rng, -2, 2));
    const FluxonState f(r + d * Vec2(std::cos(angle), std::sin(angle)), Vec2::Zero(),
                        testing::uniform(rng, -2, 2), d * testing::uniform(rng, 1e-4, 1e-2));
    const Vec2 exact = field_momentum_closed(q, f);
    CHECK((field_momentum_quadrature(q, f) - exact).norm() <= 1e-4 * exact.norm());
  }
}

TEST_CASE("fixed disk rule error falls at least quadratically with the core radius") {
  const ChargeState q(Vec2::Zero(), Vec2::Zero(), 1.0);
  double previous = 0.0;
  for (double a : {0.08, 0.04, 0.02}) {
    const FluxonState f(Vec2(1.0, 0.0), Vec2::Zero(), 1.0, a);
    const double err = (field_momentum_disk_rule(q, f, 0) - field_momentum_closed(q, f)).norm();
    if (previous > 0.0) CHECK(std::log2(previous / err) >= 2.0);
    previous = err;
  }
}

TEST_CASE("Lagrangian from field momentum") {
  const FluxonState f(Vec2(2, 0), Vec2::Zero(), 1.0, 0.01);
  const ChargeState q(Vec2::Zero(), Vec2(0, -0.01), 1.0);
  CHECK(interaction_lagrangian_pi(q, f) == Approx(0.005));
  CHECK(interaction_lagrangian_pi(q.with_velocity(Vec2(0.02, 0.01)),
                                  f.with_velocity(Vec2(0.02, 0.01))) == 0.0);
  CHECK(interaction_lagrangian_pi(q.with_velocity(Vec2(0.05, 0)), f) == 0.0);
}

TEST_CASE("frame pairing: moving charge couples through A, moving fluxon through the dual form") {
  const FluxonState f(Vec2(1.5, -0.5), Vec2::Zero(), 0.9, 1e-3);
  const ChargeState q(Vec2(-0.2, 0.3), Vec2(0.03, 0.04), -1.2);
  CHECK(interaction_lagrangian_pi(q, f) ==
        Approx(q.charge() * q.velocity().dot(vector_potential_fluxon(f, q.position()))));

  const ChargeState still = q.with_velocity(Vec2::Zero());
  const FluxonState moving = f.with_velocity(Vec2(-0.02, 0.05));
  const Vec2 dual = 0.5 * f.flux() * z_cross(e_field_charge(still, moving.position()));
  CHECK(interaction_lagrangian_pi(still, moving) == Approx(moving.velocity().dot(dual)));
}

TEST_CASE("field Lagrangian examples") {
  const FluxonState f(Vec2(2, 0), Vec2::Zero(), 1.0, 0.01);
  const ChargeState q(Vec2::Zero(), Vec2(0, -0.01), 1.0);
  CHECK(interaction_lagrangian_fields(q.with_velocity(Vec2::Zero()), f) == 0.0);

  const double l = interaction_lagrangian_fields(q, f);
  CHECK(std::abs(l - 0.005) <= std::max(1e-6, 1e-4 * 0.005));

  const double swapped = interaction_lagrangian_fields(q.with_velocity(Vec2::Zero()),
                                                       f.with_velocity(Vec2(0, 0.01)));
  CHECK(swapped == Approx(l).epsilon(1e-3));
  CHECK(interaction_lagrangian_fields(q, f, {}, MovingFieldModel::first_order) == Approx(0.005).epsilon(1e-6));
}

TEST_CASE("field Lagrangian discrepancy scales as v squared") {
  const QuadratureSpec tight{14, 1e-13, 1e-18};
  const FluxonState f0(Vec2(1.3, 0.4), Vec2::Zero(), 0.8, 0.02);
  const ChargeState q0(Vec2::Zero(), Vec2::Zero(), 1.1);
  const Vec2 dir_q = Vec2(0.3, -1.0).normalized();
  const Vec2 dir_f = Vec2(-0.6, 0.2).normalized();
  std::vector<double> logv;
  std::vector<double> loge;
  for (double v : {1e-3, 3e-3, 1e-2, 3e-2}) {
    const ChargeState q = q0.with_velocity(v * dir_q);
    const FluxonState f = f0.with_velocity(0.5 * v * dir_f);
    const double lp = interaction_lagrangian_pi(q, f);
    const double lf = interaction_lagrangian_fields(q, f, tight);
    CHECK(std::abs(lf - lp) <= v * v * std::abs(lp));
    logv.push_back(std::log(v));
    loge.push_back(std::log(std::abs(lf - lp) / std::abs(lp)));
  }
  const double n = static_cast<double>(logv.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logv.size(); ++i) {
    sx += logv[i];
    sy += loge[i];
    sxx += logv[i] * logv[i];
    sxy += logv[i] * loge[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 1.9);
}

TEST_CASE("Hamiltonian and canonical momenta") {
  const FluxonState f(Vec2(2, 0), Vec2::Zero(), 1.0, 0.01);
  const ChargeState q(Vec2::Zero(), Vec2(0.01, 0), 1.0);
  const Vec2 pi = field_momentum_closed(q, f);
  CHECK(hamiltonian(q, f, pi, Vec2(-pi)) == 0.0);

  const auto [p, P] = canonical_momenta(q, f);
  CHECK(p.isApprox(Vec2(0.01, -0.5)));
  CHECK(P.isApprox(Vec2(0, 0.5)));

  const auto [p0, P0] = canonical_momenta(q.with_velocity(Vec2::Zero()), f);
  CHECK(p0.isApprox(pi));
  CHECK((p0 + P0).norm() == 0.0);
}

TEST_CASE("Hamiltonian at the canonical momenta is the kinetic energy") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const ChargeState q(Vec2(testing::uniform(rng, -1, 1), 0.0),
                        Vec2(testing::uniform(rng, -0.05, 0.05), testing::uniform(rng, -0.05, 0.05)),
                        1.0, testing::uniform(rng, 0.5, 3.0));
    const FluxonState f(Vec2(2.0, testing::uniform(rng, -1, 1)),
                        Vec2(testing::uniform(rng, -0.05, 0.05), testing::uniform(rng, -0.05, 0.05)),
                        0.7, 1e-3, testing::uniform(rng, 0.5, 3.0));
    const auto [p, P] = canonical_momenta(q, f);
    const double kinetic = 0.5 * q.mass() * q.velocity().squaredNorm() +
                           0.5 * f.mass() * f.velocity().squaredNorm();
    CHECK(hamiltonian(q, f, p, P) == Approx(kinetic).epsilon(1e-12));
  }
}
