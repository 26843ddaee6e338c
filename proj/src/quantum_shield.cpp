#include "abclab/quantum_shield.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <string>

#include "abclab/classical_shield.hpp"

namespace abclab {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

std::function<void(std::string_view)>& warning_handler() {
  static std::function<void(std::string_view)> handler = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return handler;
}

void warn(std::string_view msg) {
  std::lock_guard lock(handler_mutex());
  if (warning_handler()) warning_handler()(msg);
}

void require_normalized(const ShieldState& state) {
  if (!state.is_normalized()) {
    throw Error(Errc::NotNormalized, "shield state amplitudes must have unit norm");
  }
}

}  // namespace

ShieldState::ShieldState(std::map<int, std::complex<double>> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw Error(Errc::InvalidState, "shield state has empty support");
  for (const auto& [m, b] : amplitudes_) {
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw Error(Errc::InvalidState, "non-finite amplitude for m = " + std::to_string(m));
    }
  }
}

ShieldState ShieldState::normalized(std::map<int, std::complex<double>> amplitudes) {
  ShieldState raw(std::move(amplitudes));
  const double n = std::sqrt(raw.norm_squared());
  if (!(n > 0.0)) throw Error(Errc::NotNormalized, "cannot normalize a zero state");
  for (auto& [m, b] : raw.amplitudes_) b /= n;
  return raw;
}

ShieldState ShieldState::from_probabilities(const std::map<int, double>& probabilities) {
  std::map<int, std::complex<double>> amps;
  for (const auto& [m, p] : probabilities) {
    if (p < 0.0) throw Error(Errc::InvalidState, "negative probability");
    amps.emplace(m, std::sqrt(p));
  }
  return ShieldState(std::move(amps));
}

double ShieldState::norm_squared() const {
  double s = 0.0;
  for (const auto& [m, b] : amplitudes_) s += std::norm(b);
  return s;
}

bool ShieldState::is_normalized() const { return std::abs(norm_squared() - 1.0) <= kNormTolerance; }

double ShieldState::mean_pair_number() const {
  double s = 0.0;
  for (const auto& [m, b] : amplitudes_) s += m * std::norm(b);
  return s;
}

ShieldState ShieldState::rotated(double angle) const {
  auto out = amplitudes_;
  const std::complex<double> phase = std::polar(1.0, angle);
  for (auto& [m, b] : out) b *= phase;
  return ShieldState(std::move(out));
}

ShieldingReport check_shielding(const ShieldState& state, double charge) {
  require_normalized(state);
  const double mean = state.mean_pair_number();
  return {2.0 * mean, std::abs(mean + 0.5 * charge) <= kShieldingTolerance};
}

Vec2 pi_m(double charge, int m, double radius, double flux) {
  if (!(radius > 0.0)) throw Error(Errc::InvalidState, "radius must be positive");
  return Vec2(0.0, -(charge + 2.0 * m) * flux / radius);
}

double phase_m(double charge, int m, double flux) { return kTwoPi * (charge + 2.0 * m) * flux; }

void set_warning_handler(std::function<void(std::string_view)> handler) {
  std::lock_guard lock(handler_mutex());
  warning_handler() = std::move(handler);
}

std::complex<double> phase_factor_u1(const ShieldState& state, double charge, double flux) {
  require_normalized(state);
  if (!check_shielding(state, charge).satisfies_ideal_shielding) {
    warn("shield state does not satisfy the ideal shielding constraint");
  }
  std::complex<double> u1 = 0.0;
  for (const auto& [m, b] : state.amplitudes()) {
    u1 += std::norm(b) * std::polar(1.0, phase_m(charge, m, flux));
  }
  return u1;
}

std::complex<double> config3_phase_factor(const ShieldState& state, double charge, int n) {
  return phase_factor_u1(state, charge, n * kSuperconductingFluxQuantum);
}

double config1_phase(double charge, double flux, int m, const Config1Geometry& geometry) {
  const CircularShield shield(Vec2::Zero(), geometry.shield_radius);
  const double r = geometry.orbit_radius;
  const double w = geometry.angular_velocity;
  const FluxonState fluxon(Vec2::Zero(), Vec2::Zero(), flux,
                           std::min(1e-3, 0.5 * geometry.shield_radius));
  const ChargeState q(Vec2(r, 0.0), Vec2(0.0, r * w), charge);
  const auto terms = config1_lagrangian_terms(q, fluxon, shield);

  // The background (q + 2m)/(2 pi R) is uniform and static: its continuity
  // current, and hence its coupling Phi \oint K dphi to the fluxon, vanishes.
  const double background_density = (charge + 2.0 * m) / (kTwoPi * geometry.shield_radius);
  std::vector<TimedDensity> background;
  for (int k = 0; k < 5; ++k) {
    SurfaceDensity d;
    d.values = Eigen::VectorXd::Constant(kDefaultShieldNodes, background_density);
    background.push_back({k * 0.1 / std::abs(w), std::move(d)});
  }
  const Eigen::VectorXd current = surface_current(background, shield)[2];
  const double background_term = flux * current.sum() * kTwoPi / kDefaultShieldNodes;

  // L_int is constant along the circular orbit; one loop lasts 2 pi / |w|.
  const double lagrangian = terms.charge_term + terms.surface_term + background_term;
  return lagrangian * kTwoPi / std::abs(w);
}

std::vector<VisibilityRow> visibility_scan(const ShieldState& state, double charge,
                                           std::span<const double> flux_grid) {
  if (flux_grid.empty()) throw Error(Errc::EmptyGrid, "flux grid is empty");
  std::vector<VisibilityRow> rows;
  rows.reserve(flux_grid.size());
  for (double flux : flux_grid) rows.push_back({flux, phase_factor_u1(state, charge, flux)});
  return rows;
}

ShieldState random_shielding_state(double charge, std::mt19937_64& rng, int spread) {
  const double target = -0.5 * charge;
  const int lo = static_cast<int>(std::floor(target)) - spread + 1;
  const int hi = static_cast<int>(std::ceil(target)) + spread - 1;
  if (spread < 1) throw Error(Errc::InvalidState, "spread must be >= 1");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<int, double> p;
  double total = 0.0;
  for (int m = lo; m <= hi; ++m) {
    const double w = -std::log(1.0 - unit(rng));  // Dirichlet(1, ..., 1)
    p[m] = w;
    total += w;
  }
  double mean = 0.0;
  for (auto& [m, w] : p) {
    w /= total;
    mean += m * w;
  }
  // Mix with a point mass on the far side of the target to hit it exactly.
  if (std::abs(mean - target) > 0.0) {
    const int anchor = mean > target ? lo - 1 : hi + 1;
    const double lambda = (target - anchor) / (mean - anchor);
    for (auto& [m, w] : p) w *= lambda;
    p[anchor] += 1.0 - lambda;
  }

  std::map<int, std::complex<double>> amps;
  for (const auto& [m, w] : p) amps.emplace(m, std::polar(std::sqrt(w), kTwoPi * unit(rng)));
  return ShieldState::normalized(std::move(amps));
}

}  // namespace abclab
