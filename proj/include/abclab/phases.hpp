#pragma once

// Loop phases of the charge/fluxon pair computed three ways:
//   vector potential  q \oint A(x) . dx           (fluxon at rest)
//   dual electric     (Phi/2) \oint (z x E(xbar)) . dxbar   (charge at rest)
//   field momentum    \oint Pi . d(r - R)         (both moving)
// All three equal 2 pi q Phi times the winding number.

#include <complex>
#include <optional>

#include "abclab/model.hpp"

namespace abclab {

enum class PhaseMethod { vector_potential, dual_electric, field_momentum };

struct PhaseResult {
  double phase;
  int winding;
  PhaseMethod method;
};

/// Gauss points per polyline segment used by the phase integrals.
inline constexpr int kDefaultGaussPoints = 4;

/// The charge (charge q) travels `charge_path` around the static fluxon.
PhaseResult phase_vector_potential(const Trajectory& charge_path, double charge,
                                   const FluxonState& fluxon,
                                   int gauss_points = kDefaultGaussPoints);

/// The fluxon (flux and core radius from `fluxon`; its position is ignored)
/// travels `fluxon_path` around the static charge.
PhaseResult phase_dual_electric(const Trajectory& fluxon_path, const FluxonState& fluxon,
                                const ChargeState& charge,
                                int gauss_points = kDefaultGaussPoints);

/// Both particles move; the samples of the two paths must share time stamps
/// and the relative path r - R must close.
PhaseResult phase_field_momentum(const Trajectory& charge_path, const Trajectory& fluxon_path,
                                 double charge, double flux, double core_radius,
                                 int gauss_points = kDefaultGaussPoints);

struct FringeResult {
  double relative_phase;            ///< phi_a - phi_b wrapped to (-pi, pi]
  double visibility;                ///< |u1| with a shield, otherwise 1
  std::complex<double> amplitude;   ///< (exp(i phi_a) + u1 exp(i phi_b)) / 2
};

/// Two-path interference of a charge q around a static fluxon. Both paths
/// start and end at the same points.
FringeResult two_path_fringe(const Trajectory& path_a, const Trajectory& path_b, double charge,
                             const FluxonState& fluxon,
                             std::optional<std::complex<double>> shield_factor = std::nullopt,
                             int gauss_points = kDefaultGaussPoints);

}  // namespace abclab
