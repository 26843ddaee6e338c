#include "abclab/classical_shield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "abclab/fields2d.hpp"
#include "abclab/quadrature.hpp"

namespace abclab {

namespace {

double azimuth(const Vec2& v) { return std::atan2(v.y(), v.x()); }

void require_exterior_charge(const ChargeState& charge, const CircularShield& shield) {
  const double r = (charge.position() - shield.center()).norm();
  if (!(r > shield.radius() + CircularShield::kMinGap)) {
    throw Error(Errc::SourceInsideShield, "the charge must lie outside the shield");
  }
}

// Smallest node count for which the aliasing error of the Poisson kernel,
// ~ (R/r)^N, is below double roundoff.
int resolving_node_count(double r, double radius, int requested) {
  const double n = 40.0 / std::log(r / radius);
  return static_cast<int>(std::clamp(std::ceil(n), static_cast<double>(requested), 65536.0));
}

// Fornberg's algorithm: first-derivative weights at x0 for stencil points xs.
std::vector<double> derivative_weights(double x0, const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

CircularShield::CircularShield(const Vec2& center, double radius)
    : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::InvalidState, "shield radius must be positive");
  }
}

double induced_density(const ChargeState& charge, const CircularShield& shield, double phi) {
  require_exterior_charge(charge, shield);
  const double r = (charge.position() - shield.center()).norm();
  const double R = shield.radius();
  const double kernel = (r * r - R * R) / (r * r + R * R - 2.0 * r * R * std::cos(phi));
  return -charge.charge() / (kTwoPi * R) * kernel;
}

SurfaceDensity sample_induced_density(const ChargeState& charge, const CircularShield& shield,
                                      int n_nodes) {
  if (n_nodes < 8) throw Error(Errc::BadDiscretization, "need at least 8 surface nodes");
  const double source_azimuth = azimuth(charge.position() - shield.center());
  SurfaceDensity out;
  out.values.resize(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double theta = (j + 0.5) * kTwoPi / n_nodes;
    out.values[j] = induced_density(charge, shield, theta - source_azimuth);
  }
  return out;
}

Vec2 shielded_field(const ChargeState& charge, const CircularShield& shield,
                    const SurfaceDensity& density, const Vec2& x) {
  require_exterior_charge(charge, shield);
  const double R = shield.radius();
  if (!((x - shield.center()).norm() < R - CircularShield::kMinGap)) {
    throw Error(Errc::EvaluationOnSurface, "shielded field is evaluated strictly inside");
  }
  Vec2 field = e_field_charge(charge, x);
  const double dl = R * density.spacing();
  for (int j = 0; j < density.size(); ++j) {
    const double theta = density.angle(j);
    const Vec2 node = shield.center() + R * Vec2(std::cos(theta), std::sin(theta));
    const Vec2 d = x - node;
    field += (2.0 * density.values[j] * dl / d.squaredNorm()) * d;
  }
  return field;
}

double classical_abc_phase(const Trajectory& charge_path, double charge,
                           const FluxonState& fluxon, const std::optional<CircularShield>& shield,
                           const ClassicalPhaseOptions& options) {
  if (!charge_path.closed()) {
    throw Error(Errc::NonClosedTrajectory, "the ABC loop phase needs a closed path");
  }
  const Vec2 core = fluxon.position();
  if (shield) {
    const double R = shield->radius();
    if (!((core - shield->center()).norm() + fluxon.core_radius() < R)) {
      throw Error(Errc::GeometryViolation, "the fluxon core must lie inside the shield");
    }
    if (!(charge_path.min_distance_to(shield->center()) > R + CircularShield::kMinGap)) {
      throw Error(Errc::GeometryViolation, "the charge path must stay outside the shield");
    }
  } else if (!(charge_path.min_distance_to(core) > fluxon.core_radius())) {
    throw Error(Errc::GeometryViolation, "the charge path crosses the fluxon core");
  }

  std::vector<Vec2> points;
  points.reserve(charge_path.size());
  for (const auto& s : charge_path.samples()) points.push_back(s.position);

  // For a fluxon of negligible size, Pi = (Phi/2) E_net(R) x z_hat. The net
  // field is harmonic inside the shield, so this also equals the core average.
  auto pi_at = [&](const Vec2& x) -> Vec2 {
    const ChargeState q(x, Vec2::Zero(), charge);
    Vec2 e_net;
    if (shield) {
      const double r = (x - shield->center()).norm();
      const int n = resolving_node_count(r, shield->radius(), options.n_nodes);
      e_net = shielded_field(q, *shield, sample_induced_density(q, *shield, n), core);
    } else {
      e_net = e_field_charge(q, core);
    }
    return 0.5 * fluxon.flux() * cross_z(e_net);
  };
  return polyline_integral(points, pi_at, options.gauss_points);
}

std::vector<Eigen::VectorXd> surface_current(const std::vector<TimedDensity>& series,
                                             const CircularShield& shield) {
  if (series.size() < 2) throw Error(Errc::BadDiscretization, "need at least two time samples");
  const int n = series.front().density.size();
  if (n < 8) throw Error(Errc::BadDiscretization, "need at least 8 surface nodes");
  const double R = shield.radius();
  const double q0 = series.front().density.total_charge(R);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].density.size() != n) {
      throw Error(Errc::BadDiscretization, "all densities must share one node set");
    }
    if (i > 0 && !(series[i].time > series[i - 1].time)) {
      throw Error(Errc::BadDiscretization, "density times must be strictly increasing");
    }
    const double qi = series[i].density.total_charge(R);
    if (std::abs(qi - q0) > 1e-8 * std::max(1.0, std::abs(q0))) {
      throw Error(Errc::ChargeNotConserved, "total induced charge changes in time");
    }
  }

  const std::size_t m = series.size();
  const std::size_t width = std::min<std::size_t>(5, m);
  Eigen::FFT<double> fft;
  std::vector<Eigen::VectorXd> currents;
  currents.reserve(m);

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t first =
        std::min(i >= width / 2 ? i - width / 2 : std::size_t{0}, m - width);
    std::vector<double> times(width);
    for (std::size_t k = 0; k < width; ++k) times[k] = series[first + k].time;
    const auto w = derivative_weights(series[i].time, times);
    Eigen::VectorXd rate = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < width; ++k) rate += w[k] * series[first + k].density.values;

    // dK/dphi = -R d(dn)/dt  =>  K_k = -R rate_k / (i k), K_0 = 0.
    std::vector<std::complex<double>> spectrum;
    std::vector<double> rate_vec(rate.data(), rate.data() + n);
    fft.fwd(spectrum, rate_vec);
    for (int k = 0; k < n; ++k) {
      const int wavenumber = k <= n / 2 ? k : k - n;
      if (wavenumber == 0 || (n % 2 == 0 && k == n / 2)) {
        spectrum[k] = 0.0;
      } else {
        spectrum[k] = -R * spectrum[k] / std::complex<double>(0.0, wavenumber);
      }
    }
    std::vector<double> current;
    fft.inv(current, spectrum);
    currents.emplace_back(Eigen::Map<Eigen::VectorXd>(current.data(), n));
  }
  return currents;
}

Config1Terms config1_lagrangian_terms(const ChargeState& charge, const FluxonState& fluxon,
                                      const CircularShield& shield, int n_nodes) {
  const double R = shield.radius();
  if ((fluxon.position() - shield.center()).norm() > 1e-9) {
    throw Error(Errc::GeometryViolation, "the fluxon must sit at the shield centre");
  }
  if (!(fluxon.core_radius() < R)) {
    throw Error(Errc::GeometryViolation, "the fluxon core must fit inside the shield");
  }
  const Vec2 rel = charge.position() - shield.center();
  const double r = rel.norm();
  if (!(r > R + CircularShield::kMinGap)) {
    throw Error(Errc::GeometryViolation, "the charge must orbit outside the shield");
  }
  const Vec2& v = charge.velocity();
  if (std::abs(rel.dot(v)) > 1e-9 * std::max(1.0, r * v.norm())) {
    throw Error(Errc::GeometryViolation, "the charge velocity must be tangential");
  }
  const double phidot = cross(rel, v) / (r * r);

  const double charge_term = charge.charge() * v.dot(vector_potential_fluxon(fluxon, charge.position()));

  const int n = resolving_node_count(r, R, n_nodes);
  const SurfaceDensity density = sample_induced_density(charge, shield, n);
  double surface_term = 0.0;
  for (int j = 0; j < n; ++j) {
    const double theta = density.angle(j);
    const Vec2 dir(std::cos(theta), std::sin(theta));
    const Vec2 node = shield.center() + R * dir;
    const Vec2 v_c = R * phidot * z_cross(dir);
    surface_term += density.values[j] * v_c.dot(vector_potential_fluxon(fluxon, node));
  }
  surface_term *= R * density.spacing();
  return {charge_term, surface_term};
}

}  // namespace abclab
