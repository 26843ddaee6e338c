#pragma once

// Electromagnetic fields of the point charge and the regularized fluxon in two
// spatial dimensions.
//
// Normalization: the charge carries a 2D (line-charge) Coulomb field
//   E_q(x) = 2 q (x - r) / |x - r|^2,
// and the fluxon's magnetic field integrates to 2*pi*Phi over the plane, so
// that the vector potential circulation around the core is 2*pi*Phi and a
// charge q circling once picks up the phase 2*pi*q*Phi.
//
// Moving sources come in two flavours. The plain functions are first order in
// v/c (B_q = v x E_q, E_Phi = -V x B_Phi). The *_uniform_motion variants are
// the exact fields of sources in uniform motion (Lorentz-boosted rest-frame
// fields); they agree with the first-order ones up to O(v^2/c^2).

#include <cmath>

#include "abclab/model.hpp"

namespace abclab {

template <typename Scalar>
Vector2<Scalar> e_field_charge(const BasicChargeState<Scalar>& src, const Vector2<Scalar>& x) {
  const Vector2<Scalar> d = x - src.position();
  const Scalar rho2 = d.squaredNorm();
  if (!(rho2 > Scalar(1e-24))) {
    throw Error(Errc::EvaluationAtSource, "electric field evaluated at the charge");
  }
  return (Scalar(2) * src.charge() / rho2) * d;
}

template <typename Scalar>
Scalar b_field_charge(const BasicChargeState<Scalar>& src, const Vector2<Scalar>& x) {
  return cross(src.velocity(), e_field_charge(src, x));
}

/// Uniform disk: Bz = 2 Phi / a^2 inside the core, zero outside.
template <typename Scalar>
Scalar b_field_fluxon(const BasicFluxonState<Scalar>& src, const Vector2<Scalar>& x) {
  const Scalar a = src.core_radius();
  if ((x - src.position()).squaredNorm() < a * a) return Scalar(2) * src.flux() / (a * a);
  return Scalar(0);
}

template <typename Scalar>
Vector2<Scalar> e_field_fluxon(const BasicFluxonState<Scalar>& src, const Vector2<Scalar>& x) {
  return b_field_fluxon(src, x) * z_cross(src.velocity());
}

/// A = (Phi / rho) phi_hat outside the core.
template <typename Scalar>
Vector2<Scalar> vector_potential_fluxon(const BasicFluxonState<Scalar>& src,
                                        const Vector2<Scalar>& x) {
  const Vector2<Scalar> d = x - src.position();
  const Scalar rho2 = d.squaredNorm();
  const Scalar a = src.core_radius();
  if (!(rho2 > a * a)) {
    throw Error(Errc::InsideCore, "vector potential requested inside the fluxon core");
  }
  return (src.flux() / rho2) * z_cross(d);
}

namespace detail {
template <typename Scalar>
Scalar lorentz_gamma(const Vector2<Scalar>& v) {
  using std::sqrt;
  return Scalar(1) / sqrt(Scalar(1) - v.squaredNorm());
}

/// Rest-frame coordinates of a lab-frame offset `d` from a source moving with
/// velocity `v` (both evaluated at the same lab time).
template <typename Scalar>
Vector2<Scalar> rest_frame_offset(const Vector2<Scalar>& d, const Vector2<Scalar>& v) {
  const Scalar speed = v.norm();
  if (speed == Scalar(0)) return d;
  const Vector2<Scalar> n = v / speed;
  const Scalar along = d.dot(n);
  return d + (lorentz_gamma(v) - Scalar(1)) * along * n;
}
}  // namespace detail

template <typename Scalar>
Vector2<Scalar> e_field_charge_uniform_motion(const BasicChargeState<Scalar>& src,
                                              const Vector2<Scalar>& x) {
  const Vector2<Scalar> d = x - src.position();
  const Vector2<Scalar> d_rest = detail::rest_frame_offset(d, src.velocity());
  const Scalar rho2 = d_rest.squaredNorm();
  if (!(rho2 > Scalar(1e-24))) {
    throw Error(Errc::EvaluationAtSource, "electric field evaluated at the charge");
  }
  return (Scalar(2) * src.charge() * detail::lorentz_gamma(src.velocity()) / rho2) * d;
}

template <typename Scalar>
Scalar b_field_charge_uniform_motion(const BasicChargeState<Scalar>& src,
                                     const Vector2<Scalar>& x) {
  return cross(src.velocity(), e_field_charge_uniform_motion(src, x));
}

/// Lorentz-contracted core (ellipse) carrying gamma * Bz_rest; the total flux
/// stays 2*pi*Phi.
template <typename Scalar>
Scalar b_field_fluxon_uniform_motion(const BasicFluxonState<Scalar>& src,
                                     const Vector2<Scalar>& x) {
  const Vector2<Scalar> d_rest = detail::rest_frame_offset(Vector2<Scalar>(x - src.position()),
                                                           src.velocity());
  const Scalar a = src.core_radius();
  if (d_rest.squaredNorm() < a * a) {
    return detail::lorentz_gamma(src.velocity()) * Scalar(2) * src.flux() / (a * a);
  }
  return Scalar(0);
}

template <typename Scalar>
Vector2<Scalar> e_field_fluxon_uniform_motion(const BasicFluxonState<Scalar>& src,
                                              const Vector2<Scalar>& x) {
  return b_field_fluxon_uniform_motion(src, x) * z_cross(src.velocity());
}

}  // namespace abclab
