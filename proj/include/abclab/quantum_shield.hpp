#pragma once

// Superconducting shield with charge quantized in Cooper pairs. The shield is
// a superposition |eta> = sum_m b_m |psi_m> of states with m excess pairs;
// each number state screens the charge imperfectly and contributes its own
// phase phi_m = 2 pi (q + 2m) Phi to the one-loop phase factor
//   u1 = sum_m |b_m|^2 exp(i phi_m).

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "abclab/model.hpp"

namespace abclab {

class ShieldState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit ShieldState(std::map<int, std::complex<double>> amplitudes);

  /// Rescales the amplitudes to unit norm.
  static ShieldState normalized(std::map<int, std::complex<double>> amplitudes);
  /// Amplitudes sqrt(p_m) with zero phases.
  static ShieldState from_probabilities(const std::map<int, double>& probabilities);

  const std::map<int, std::complex<double>>& amplitudes() const { return amplitudes_; }
  double norm_squared() const;
  bool is_normalized() const;
  /// sum_m m |b_m|^2
  double mean_pair_number() const;
  /// Same state with every amplitude multiplied by exp(i angle).
  ShieldState rotated(double angle) const;

 private:
  std::map<int, std::complex<double>> amplitudes_;
};

struct ShieldingReport {
  double mean_excess_charge;  ///< 2 sum_m m |b_m|^2, units of e
  bool satisfies_ideal_shielding;
};

/// Tolerance on |sum_m m |b_m|^2 + q/2|.
inline constexpr double kShieldingTolerance = 1e-9;

ShieldingReport check_shielding(const ShieldState& state, double charge);

/// Field momentum of number state m at a fluxon a distance R from the charge,
/// as (radial, azimuthal) components: magnitude (q + 2m) Phi / R along
/// -phi_hat.
Vec2 pi_m(double charge, int m, double radius, double flux);

/// phi_m = 2 pi (q + 2m) Phi.
double phase_m(double charge, int m, double flux);

/// Receives warnings such as an unsatisfied shielding constraint. Defaults to
/// writing to stderr; pass an empty function to silence.
void set_warning_handler(std::function<void(std::string_view)> handler);

std::complex<double> phase_factor_u1(const ShieldState& state, double charge, double flux);

/// u1 at flux n/2 (n superconducting flux quanta); equals exp(i pi q n) for
/// every state.
std::complex<double> config3_phase_factor(const ShieldState& state, double charge, int n);

/// Geometry of the Configuration I check: charge orbit radius, shield radius
/// and orbital angular velocity.
struct Config1Geometry {
  double orbit_radius = 2.0;
  double shield_radius = 1.0;
  double angular_velocity = 0.02;
};

/// One-loop phase for Configuration I with m excess Cooper pairs. The
/// m-dependent part of the surface charge is the uniform background
/// (q + 2m)/(2 pi R), which is static and carries no current.
double config1_phase(double charge, double flux, int m, const Config1Geometry& geometry = {});

struct VisibilityRow {
  double flux;
  std::complex<double> u1;
  double visibility() const { return std::abs(u1); }
};

std::vector<VisibilityRow> visibility_scan(const ShieldState& state, double charge,
                                           std::span<const double> flux_grid);

/// A random normalized state on pair numbers within `spread` of -q/2 that
/// satisfies the ideal shielding constraint, with random phases.
ShieldState random_shielding_state(double charge, std::mt19937_64& rng, int spread = 3);

}  // namespace abclab
