#include "abclab/interaction.hpp"

#include <numbers>

namespace abclab {

namespace {

constexpr double kInvFourPi = 0.25 / std::numbers::pi;

void require_exterior(const ChargeState& charge, const FluxonState& fluxon) {
  const double d = (fluxon.position() - charge.position()).norm();
  if (!(d > 2.0 * fluxon.core_radius())) {
    throw Error(Errc::CoreOverlap, "quadrature needs the charge beyond two core radii");
  }
}

// Lab-frame offset of a point whose offset in the fluxon rest frame is `u`.
Vec2 contract(const Vec2& u, const Vec2& velocity) {
  const double speed = velocity.norm();
  if (speed == 0.0) return u;
  const Vec2 n = velocity / speed;
  const double gamma = 1.0 / std::sqrt(1.0 - speed * speed);
  return u + (1.0 / gamma - 1.0) * u.dot(n) * n;
}

// Integrand over rest-frame core offsets. The lab-frame area element is
// dA = dA_rest / gamma and B_lab = gamma * B_rest, so the Jacobian cancels
// against the field boost and every rest-frame offset carries B_rest.
auto momentum_integrand(const ChargeState& charge, const FluxonState& fluxon,
                        MovingFieldModel model) {
  const double b_rest = 2.0 * fluxon.flux() / (fluxon.core_radius() * fluxon.core_radius());
  return [&charge, &fluxon, model, b_rest](const Vec2& u) -> Vec2 {
    if (model == MovingFieldModel::first_order) {
      const Vec2 x = fluxon.position() + u;
      return (kInvFourPi * b_rest) * cross_z(e_field_charge(charge, x));
    }
    const Vec2 x = fluxon.position() + contract(u, fluxon.velocity());
    return (kInvFourPi * b_rest) * cross_z(e_field_charge_uniform_motion(charge, x));
  };
}

}  // namespace

Vec2 field_momentum_quadrature(const ChargeState& charge, const FluxonState& fluxon,
                               const QuadratureSpec& spec, MovingFieldModel model) {
  require_exterior(charge, fluxon);
  if (fluxon.flux() == 0.0 || charge.charge() == 0.0) return Vec2::Zero();
  return integrate_disk(fluxon.core_radius(), momentum_integrand(charge, fluxon, model), spec)
      .value;
}

Vec2 field_momentum_disk_rule(const ChargeState& charge, const FluxonState& fluxon, int level) {
  require_exterior(charge, fluxon);
  return integrate_disk_level(fluxon.core_radius(),
                              momentum_integrand(charge, fluxon, MovingFieldModel::first_order),
                              level);
}

double interaction_lagrangian_fields(const ChargeState& charge, const FluxonState& fluxon,
                                     const QuadratureSpec& spec, MovingFieldModel model) {
  require_exterior(charge, fluxon);
  const Vec2& center = fluxon.position();

  if (model == MovingFieldModel::first_order) {
    auto density = [&](const Vec2& u) {
      const Vec2 x = center + u;
      return kInvFourPi * (b_field_charge(charge, x) * b_field_fluxon(fluxon, x) -
                           e_field_charge(charge, x).dot(e_field_fluxon(fluxon, x)));
    };
    return integrate_disk(fluxon.core_radius(), density, spec).value;
  }

  const double v2 = fluxon.velocity().squaredNorm();
  const double inv_gamma = std::sqrt(1.0 - v2);
  auto density = [&](const Vec2& u) {
    const Vec2 x = center + contract(u, fluxon.velocity());
    // dA_lab = inv_gamma * dA_rest.
    return inv_gamma * kInvFourPi *
           (b_field_charge_uniform_motion(charge, x) * b_field_fluxon_uniform_motion(fluxon, x) -
            e_field_charge_uniform_motion(charge, x).dot(e_field_fluxon_uniform_motion(fluxon, x)));
  };
  return integrate_disk(fluxon.core_radius(), density, spec).value;
}

}  // namespace abclab
