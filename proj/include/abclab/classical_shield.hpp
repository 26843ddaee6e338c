#pragma once

// Grounded, ideally conducting circular shield between the charge and the
// fluxon. The charge outside induces the Poisson-kernel surface density
//   dn(phi) = -(q / 2 pi R) (r^2 - R^2) / (r^2 + R^2 - 2 r R cos phi),
// whose field cancels the charge's field everywhere inside the shield.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "abclab/model.hpp"

namespace abclab {

class CircularShield {
 public:
  /// Sources closer than this to the surface are rejected.
  static constexpr double kMinGap = 1e-6;

  CircularShield(const Vec2& center, double radius);

  const Vec2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec2 center_;
  double radius_;
};

/// Density per unit arc length at N uniformly spaced lab-frame azimuths
/// theta_j = (j + 1/2) 2 pi / N about the shield centre.
struct SurfaceDensity {
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
  double spacing() const { return kTwoPi / static_cast<double>(values.size()); }
  double angle(int j) const { return (j + 0.5) * spacing(); }
  /// \oint dn R dphi by the midpoint rule.
  double total_charge(double radius) const { return values.sum() * radius * spacing(); }
};

struct TimedDensity {
  double time;
  SurfaceDensity density;
};

inline constexpr int kDefaultShieldNodes = 256;

/// Closed-form density at angle `phi` measured from the charge's azimuth.
double induced_density(const ChargeState& charge, const CircularShield& shield, double phi);

/// induced_density sampled on the lab-frame node set.
SurfaceDensity sample_induced_density(const ChargeState& charge, const CircularShield& shield,
                                      int n_nodes = kDefaultShieldNodes);

/// E_q(x) + E_s(x) at a point strictly inside the shield, E_s summed over the
/// surface nodes as line charges dn_j R dphi.
Vec2 shielded_field(const ChargeState& charge, const CircularShield& shield,
                    const SurfaceDensity& density, const Vec2& x);

struct ClassicalPhaseOptions {
  int n_nodes = kDefaultShieldNodes;
  int gauss_points = 4;
};

/// Phase \oint Pi . dr of a charge circling a shielded fluxon, with Pi built
/// from the net (charge + induced) field at the fluxon. Passing no shield
/// gives the bare Aharonov-Bohm result.
double classical_abc_phase(const Trajectory& charge_path, double charge,
                           const FluxonState& fluxon, const std::optional<CircularShield>& shield,
                           const ClassicalPhaseOptions& options = {});

/// Surface current K(phi, t) from the ring continuity equation
///   d(dn)/dt + (1/R) dK/dphi = 0,
/// integrated spectrally in phi with the gauge \oint K dphi = 0. Time
/// derivatives use five-point finite-difference stencils.
std::vector<Eigen::VectorXd> surface_current(const std::vector<TimedDensity>& series,
                                             const CircularShield& shield);

struct Config1Terms {
  double charge_term;   ///< q rdot . A(r)
  double surface_term;  ///< \oint dn v_c . A R dphi
};

/// The two parts of the Configuration I interaction Lagrangian for a charge on
/// a circular orbit about the shield centre with the fluxon at the centre.
/// The surface term uses the convective current dn v_c of induced charge
/// co-rotating with the source (v_c = R phidot phi_hat).
Config1Terms config1_lagrangian_terms(const ChargeState& charge, const FluxonState& fluxon,
                                      const CircularShield& shield,
                                      int n_nodes = kDefaultShieldNodes);

}  // namespace abclab
