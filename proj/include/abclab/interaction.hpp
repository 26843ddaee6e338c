#pragma once

// Field momentum Pi = (1/4pi) \int E_q x B_Phi dA stored in the overlap of the
// charge's electric field and the fluxon's magnetic field, and the
// interaction Lagrangian built from it.
//
// For a point-like fluxon (anything outside the core sees only the total flux)
//   Pi = q Phi (R - r) x z_hat / |R - r|^2,
// i.e. Pi = q A(r - R): the field momentum is the charge times the fluxon's
// vector potential evaluated at the charge.

#include <cmath>
#include <utility>

#include "abclab/fields2d.hpp"
#include "abclab/model.hpp"
#include "abclab/quadrature.hpp"

namespace abclab {

enum class MovingFieldModel {
  first_order,     ///< B_q = v x E_q, E_Phi = -V x B_Phi, rest-frame shapes
  uniform_motion,  ///< exact fields of uniformly moving sources
};

template <typename Scalar>
Vector2<Scalar> field_momentum_closed(const BasicChargeState<Scalar>& charge,
                                      const BasicFluxonState<Scalar>& fluxon) {
  const Vector2<Scalar> d = fluxon.position() - charge.position();
  const Scalar d2 = d.squaredNorm();
  const Scalar a = fluxon.core_radius();
  if (!(d2 > a * a)) throw Error(Errc::CoreOverlap, "charge lies inside the fluxon core");
  return (charge.charge() * fluxon.flux() / d2) * cross_z(d);
}

/// Adaptive quadrature of (1/4pi) E_q x B_Phi over the fluxon core. Requires
/// the charge to be farther than two core radii from the fluxon.
Vec2 field_momentum_quadrature(const ChargeState& charge, const FluxonState& fluxon,
                               const QuadratureSpec& spec = {},
                               MovingFieldModel model = MovingFieldModel::first_order);

/// The same integrand on the fixed (non-adaptive) polar rule of the given
/// level; used to study how the discretization error scales with the core size.
Vec2 field_momentum_disk_rule(const ChargeState& charge, const FluxonState& fluxon, int level);

/// L_int = (rdot - Rdot) . Pi with the closed-form Pi.
template <typename Scalar>
Scalar interaction_lagrangian_pi(const BasicChargeState<Scalar>& charge,
                                 const BasicFluxonState<Scalar>& fluxon) {
  return (charge.velocity() - fluxon.velocity()).dot(field_momentum_closed(charge, fluxon));
}

/// L_int = (1/4pi) \int (B_q B_Phi - E_q . E_Phi) dA, integrated over the
/// (possibly Lorentz-contracted) fluxon core where B_Phi and E_Phi live.
double interaction_lagrangian_fields(const ChargeState& charge, const FluxonState& fluxon,
                                     const QuadratureSpec& spec = {},
                                     MovingFieldModel model = MovingFieldModel::uniform_motion);

/// H = (p - Pi)^2 / 2m + (P + Pi)^2 / 2M.
template <typename Scalar>
Scalar hamiltonian(const BasicChargeState<Scalar>& charge, const BasicFluxonState<Scalar>& fluxon,
                   const Vector2<Scalar>& p, const Vector2<Scalar>& P) {
  const Vector2<Scalar> pi = field_momentum_closed(charge, fluxon);
  return (p - pi).squaredNorm() / (Scalar(2) * charge.mass()) +
         (P + pi).squaredNorm() / (Scalar(2) * fluxon.mass());
}

/// (p, P) = (m rdot + Pi, M Rdot - Pi).
template <typename Scalar>
std::pair<Vector2<Scalar>, Vector2<Scalar>> canonical_momenta(
    const BasicChargeState<Scalar>& charge, const BasicFluxonState<Scalar>& fluxon) {
  const Vector2<Scalar> pi = field_momentum_closed(charge, fluxon);
  return {charge.mass() * charge.velocity() + pi, fluxon.mass() * fluxon.velocity() - pi};
}

}  // namespace abclab
