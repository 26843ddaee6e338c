#include "abclab/phases.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "abclab/fields2d.hpp"
#include "abclab/interaction.hpp"
#include "abclab/quadrature.hpp"

namespace abclab {

namespace {

std::vector<Vec2> positions(const Trajectory& traj) {
  std::vector<Vec2> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) out.push_back(s.position);
  return out;
}

void require_clearance(const Trajectory& traj, const Vec2& center, double core_radius) {
  if (!(traj.min_distance_to(center) > 2.0 * core_radius)) {
    throw Error(Errc::CoreApproach, "path comes within two core radii of the fluxon");
  }
}

// A on an open path; the potential is only singular at the core.
double vector_potential_integral(const Trajectory& path, double charge, const FluxonState& fluxon,
                                 int gauss_points) {
  const auto pts = positions(path);
  return charge * polyline_integral(
                      pts, [&](const Vec2& x) { return vector_potential_fluxon(fluxon, x); },
                      gauss_points);
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

}  // namespace

PhaseResult phase_vector_potential(const Trajectory& charge_path, double charge,
                                   const FluxonState& fluxon, int gauss_points) {
  if (!charge_path.closed()) throw Error(Errc::NonClosedTrajectory, "loop phase needs a closed path");
  require_clearance(charge_path, fluxon.position(), fluxon.core_radius());
  return {vector_potential_integral(charge_path, charge, fluxon, gauss_points),
          winding_number(charge_path, fluxon.position()), PhaseMethod::vector_potential};
}

PhaseResult phase_dual_electric(const Trajectory& fluxon_path, const FluxonState& fluxon,
                                const ChargeState& charge, int gauss_points) {
  if (!fluxon_path.closed()) throw Error(Errc::NonClosedTrajectory, "loop phase needs a closed path");
  require_clearance(fluxon_path, charge.position(), fluxon.core_radius());
  const auto pts = positions(fluxon_path);
  const double integral = polyline_integral(
      pts, [&](const Vec2& xbar) -> Vec2 { return z_cross(e_field_charge(charge, xbar)); },
      gauss_points);
  return {0.5 * fluxon.flux() * integral, winding_number(fluxon_path, charge.position()),
          PhaseMethod::dual_electric};
}

PhaseResult phase_field_momentum(const Trajectory& charge_path, const Trajectory& fluxon_path,
                                 double charge, double flux, double core_radius,
                                 int gauss_points) {
  if (charge_path.size() != fluxon_path.size()) {
    throw Error(Errc::DesynchronizedTrajectories, "paths have different sample counts");
  }
  std::vector<Vec2> relative;
  std::vector<TrajectorySample> rel_samples;
  relative.reserve(charge_path.size());
  rel_samples.reserve(charge_path.size());
  for (std::size_t i = 0; i < charge_path.size(); ++i) {
    const double t = charge_path.time(i);
    if (std::abs(t - fluxon_path.time(i)) > 1e-12 * std::max(1.0, std::abs(t))) {
      throw Error(Errc::DesynchronizedTrajectories, "paths are sampled at different times");
    }
    relative.push_back(charge_path.position(i) - fluxon_path.position(i));
    rel_samples.push_back({t, relative.back()});
  }
  if ((relative.front() - relative.back()).norm() > Trajectory::kClosureTolerance) {
    throw Error(Errc::NonClosedTrajectory, "relative path r - R is not closed");
  }
  rel_samples.back().position = rel_samples.front().position;
  relative.back() = relative.front();
  const Trajectory rel_path(std::move(rel_samples), true);
  require_clearance(rel_path, Vec2::Zero(), core_radius);

  // Pi depends on r - R only; place the fluxon at the origin.
  const FluxonState fluxon(Vec2::Zero(), Vec2::Zero(), flux, core_radius);
  const double phase = polyline_integral(
      relative,
      [&](const Vec2& x) {
        return field_momentum_closed(ChargeState(x, Vec2::Zero(), charge), fluxon);
      },
      gauss_points);
  return {phase, winding_number(rel_path, Vec2::Zero()), PhaseMethod::field_momentum};
}

FringeResult two_path_fringe(const Trajectory& path_a, const Trajectory& path_b, double charge,
                             const FluxonState& fluxon,
                             std::optional<std::complex<double>> shield_factor,
                             int gauss_points) {
  const double tol = Trajectory::kClosureTolerance;
  if ((path_a.position(0) - path_b.position(0)).norm() > tol ||
      (path_a.position(path_a.size() - 1) - path_b.position(path_b.size() - 1)).norm() > tol) {
    throw Error(Errc::EndpointMismatch, "interfering paths must share both endpoints");
  }
  require_clearance(path_a, fluxon.position(), fluxon.core_radius());
  require_clearance(path_b, fluxon.position(), fluxon.core_radius());

  const double phi_a = vector_potential_integral(path_a, charge, fluxon, gauss_points);
  const double phi_b = vector_potential_integral(path_b, charge, fluxon, gauss_points);
  const std::complex<double> u1 = shield_factor.value_or(1.0);
  return {wrap_phase(phi_a - phi_b), std::abs(u1),
          0.5 * (std::polar(1.0, phi_a) + u1 * std::polar(1.0, phi_b))};
}

}  // namespace abclab
