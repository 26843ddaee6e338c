#include "abclab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "abclab/classical_shield.hpp"
#include "abclab/dynamics.hpp"
#include "abclab/error.hpp"
#include "abclab/interaction.hpp"
#include "abclab/model.hpp"
#include "abclab/phases.hpp"
#include "abclab/quantum_shield.hpp"

namespace abclab {

namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::duality, "duality"},
    {Scenario::scatter, "scatter"},
    {Scenario::shield_classical, "shield-classical"},
    {Scenario::config1, "config1"},
    {Scenario::config2, "config2"},
    {Scenario::config3, "config3"},
    {Scenario::fringe_scan, "fringe-scan"},
};

// ---------------------------------------------------------------------------
// Parsing

std::string where(const toml::source_region& src) {
  std::ostringstream os;
  if (src.path) os << *src.path << ':';
  os << src.begin.line << ':' << src.begin.column;
  return os.str();
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"physics",
       {"charge", "flux", "core_radius", "loop_radius", "shield_radius", "orbit_radius",
        "angular_velocity", "impact_parameter", "speed", "charge_mass", "fluxon_mass",
        "flux_quanta"}},
      {"shield", {"amplitudes", "probabilities"}},
      {"scan", {"flux_grid", "flux_start", "flux_stop", "flux_step"}},
      {"numerics",
       {"n_samples", "rel_tol", "abs_tol", "max_depth", "shield_nodes", "gauss_points",
        "half_length", "n_steps"}},
      {"run", {"seed", "trials", "out"}},
  };
  return s;
}

void reject_unknown_keys(const toml::table& root) {
  for (auto&& [key, node] : root) {
    const std::string k(key.str());
    if (k == "scenario") continue;
    const auto it = schema().find(k);
    if (it == schema().end()) {
      throw Error(Errc::ParseError, where(key.source()) + ": unknown key '" + k + "'");
    }
    const auto* table = node.as_table();
    if (!table) {
      throw Error(Errc::ParseError, where(key.source()) + ": '" + k + "' must be a table");
    }
    for (auto&& [sub, _] : *table) {
      const std::string s(sub.str());
      if (!it->second.contains(s)) {
        throw Error(Errc::ParseError,
                    where(sub.source()) + ": unknown key '" + k + "." + s + "'");
      }
    }
  }
}

template <typename T>
void read(const toml::table& root, std::string_view table, std::string_view key, T& out) {
  const toml::node* node = root.at_path(std::string(table) + "." + std::string(key)).node();
  if (!node) return;
  std::optional<T> v;
  if constexpr (std::is_same_v<T, double>) {
    v = node->value<double>();
    if (!v) {
      if (auto i = node->value<std::int64_t>()) v = static_cast<double>(*i);
    }
  } else {
    if (auto i = node->value<std::int64_t>()) v = static_cast<T>(*i);
  }
  if (!v) {
    throw Error(Errc::ValidationError, std::string(table) + "." + std::string(key) +
                                           " has the wrong type (" + where(node->source()) + ")");
  }
  out = *v;
}

std::map<int, std::complex<double>> read_amplitudes(const toml::array& arr, bool probabilities) {
  const char* what = probabilities ? "shield.probabilities" : "shield.amplitudes";
  std::map<int, std::complex<double>> out;
  for (const auto& entry : arr) {
    const auto* t = entry.as_table();
    if (!t) throw Error(Errc::ValidationError, std::string(what) + " entries must be tables");
    const auto m = (*t)["m"].value<std::int64_t>();
    if (!m) throw Error(Errc::ValidationError, std::string(what) + " entry needs integer 'm'");
    for (auto&& [k, _] : *t) {
      const auto s = k.str();
      const bool ok = s == "m" || (probabilities ? s == "p" : (s == "re" || s == "im"));
      if (!ok) {
        throw Error(Errc::ParseError, where(k.source()) + ": unknown key '" + std::string(s) +
                                          "' in " + what);
      }
    }
    std::complex<double> b;
    if (probabilities) {
      const auto p = (*t)["p"].value<double>();
      if (!p || *p < 0.0) throw Error(Errc::ValidationError, "shield.probabilities needs p >= 0");
      b = std::sqrt(*p);
    } else {
      b = {(*t)["re"].value_or(0.0), (*t)["im"].value_or(0.0)};
    }
    if (!out.emplace(static_cast<int>(*m), b).second) {
      throw Error(Errc::ValidationError, std::string(what) + " repeats m = " + std::to_string(*m));
    }
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::ValidationError, message);
}

void validate(ScenarioConfig& c) {
  require(std::isfinite(c.charge), "physics.charge must be finite");
  require(std::isfinite(c.flux), "physics.flux must be finite");
  require(c.core_radius > 0.0, "physics.core_radius must be > 0");
  require(c.loop_radius > 2.0 * c.core_radius, "physics.loop_radius must exceed 2 core radii");
  require(c.shield_radius > c.core_radius, "physics.shield_radius must exceed the core radius");
  require(c.orbit_radius > c.shield_radius, "physics.orbit_radius must exceed shield_radius");
  require(c.angular_velocity != 0.0 && std::abs(c.angular_velocity * c.orbit_radius) < kVelocityCap,
          "physics.angular_velocity must be nonzero with orbit speed < 0.1");
  require(c.speed > 0.0 && c.speed < kVelocityCap, "physics.speed must be in (0, 0.1)");
  require(c.impact_parameter > c.core_radius, "physics.impact_parameter must exceed core_radius");
  require(c.charge_mass > 0.0 && c.fluxon_mass > 0.0, "physics masses must be > 0");
  require(c.n_samples >= 16, "numerics.n_samples must be >= 16");
  require(c.rel_tol > 0.0 && c.abs_tol > 0.0, "numerics tolerances must be > 0");
  require(c.max_depth >= 1, "numerics.max_depth must be >= 1");
  require(c.shield_nodes >= 8, "numerics.shield_nodes must be >= 8");
  require(c.gauss_points >= 1 && c.gauss_points <= 32, "numerics.gauss_points must be in [1, 32]");
  require(c.half_length > c.impact_parameter, "numerics.half_length must exceed impact_parameter");
  require(c.n_steps >= 1, "numerics.n_steps must be >= 1");
  require(c.trials >= 1, "run.trials must be >= 1");

  const bool needs_state =
      c.scenario == Scenario::config2 || c.scenario == Scenario::fringe_scan;
  require(!needs_state || c.amplitudes.has_value(),
          std::string(scenario_name(c.scenario)) +
              " requires shield.amplitudes or shield.probabilities");
  if (c.amplitudes) {
    double norm = 0.0;
    for (const auto& [m, b] : *c.amplitudes) norm += std::norm(b);
    require(norm > 0.0, "shield amplitudes must not all vanish");
    for (auto& [m, b] : *c.amplitudes) b /= std::sqrt(norm);
  }
  if (c.scenario == Scenario::fringe_scan) require(!c.flux_grid.empty(), "scan grid is empty");
}

// ---------------------------------------------------------------------------
// Scenarios

struct Runner {
  const ScenarioConfig& cfg;
  RunSummary summary;

  void check(std::string name, int criterion, double value, double threshold) {
    summary.checks.push_back({std::move(name), criterion, value < threshold, value, threshold});
  }
  void scalar(std::string name, double value) { summary.scalars.emplace_back(std::move(name), value); }
};

std::vector<Vec2> sample_points(const Trajectory& t) {
  std::vector<Vec2> out;
  for (const auto& s : t.samples()) out.push_back(s.position);
  return out;
}

void run_duality(Runner& run) {
  const auto& c = run.cfg;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  run.summary.table.header = {"trial",           "winding",          "phase_vector_potential",
                              "phase_dual_electric", "phase_field_momentum", "expected"};
  double worst_pair = 0.0;
  double worst_expected = 0.0;

  for (int trial = 0; trial < c.trials; ++trial) {
    // Trial 0 is the configured unit loop; the rest are random star loops.
    double q = c.charge;
    double flux = c.flux;
    Vec2 fluxon_at = Vec2::Zero();
    Vec2 center = Vec2::Zero();
    double radius = c.loop_radius;
    std::vector<double> amps(3, 0.0);
    std::vector<double> phases(3, 0.0);
    int turns = 1;
    int direction = 1;
    if (trial > 0) {
      q = uniform(-2.0, 2.0);
      flux = uniform(-1.5, 1.5);
      fluxon_at = Vec2(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
      radius = uniform(0.5, 2.0);
      const double angle = uniform(0.0, kTwoPi);
      const double offset = unit(rng) < 0.75 ? uniform(0.0, 0.3) : uniform(2.5, 4.0);
      center = fluxon_at + offset * radius * Vec2(std::cos(angle), std::sin(angle));
      for (int h = 0; h < 3; ++h) {
        amps[h] = uniform(0.0, 0.1);
        phases[h] = uniform(0.0, kTwoPi);
      }
      turns = unit(rng) < 0.8 ? 1 : 2;
      direction = unit(rng) < 0.5 ? 1 : -1;
    }
    const FluxonState fluxon(fluxon_at, Vec2::Zero(), flux, c.core_radius);
    const Trajectory loop =
        make_star_trajectory(center, radius, amps, phases, c.n_samples, turns, direction);
    const auto vp = phase_vector_potential(loop, q, fluxon, c.gauss_points);

    // Charge frame: the fluxon traces the point-reflected relative path.
    const Vec2 charge_at(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    std::vector<Vec2> fluxon_pts;
    for (const Vec2& x : sample_points(loop)) fluxon_pts.push_back(charge_at + (fluxon_at - x));
    const auto dual = phase_dual_electric(Trajectory::from_points(fluxon_pts, 1.0, true), fluxon,
                                          ChargeState(charge_at, Vec2::Zero(), q), c.gauss_points);

    // Third frame: both particles share a drift on top of the relative motion.
    const Vec2 drift(uniform(-0.05, 0.05), uniform(-0.05, 0.05));
    std::vector<Vec2> q_pts;
    std::vector<Vec2> f_pts;
    const auto loop_pts = sample_points(loop);
    for (std::size_t k = 0; k < loop_pts.size(); ++k) {
      const Vec2 shift = static_cast<double>(k) * drift;
      q_pts.push_back(loop_pts[k] + shift);
      f_pts.push_back(fluxon_at + shift);
    }
    const auto fm = phase_field_momentum(Trajectory::from_points(q_pts, 1.0, false),
                                         Trajectory::from_points(f_pts, 1.0, false), q, flux,
                                         c.core_radius, c.gauss_points);

    const double expected = kTwoPi * vp.winding * q * flux;
    worst_pair = std::max({worst_pair, std::abs(vp.phase - dual.phase),
                           std::abs(vp.phase - fm.phase), std::abs(dual.phase - fm.phase)});
    worst_expected = std::max({worst_expected, std::abs(vp.phase - expected),
                               std::abs(dual.phase - expected), std::abs(fm.phase - expected)});
    run.summary.table.rows.push_back({static_cast<long long>(trial),
                                      static_cast<long long>(vp.winding), vp.phase, dual.phase,
                                      fm.phase, expected});
    if (trial == 0) run.scalar("phase", vp.phase);
  }
  run.scalar("max_pairwise_difference", worst_pair);
  run.scalar("max_deviation_from_2pi_w_q_flux", worst_expected);
  run.check("methods_agree_pairwise", 1, worst_pair, 1e-6);
  run.check("phase_equals_2pi_winding_q_flux", 1, worst_expected, 1e-6);
}

void run_scatter(Runner& run) {
  const auto& c = run.cfg;
  const FluxonState fluxon(Vec2::Zero(), Vec2::Zero(), c.flux, c.core_radius, c.fluxon_mass);
  const ChargeState charge(Vec2(-c.half_length, c.impact_parameter), Vec2(c.speed, 0.0), c.charge,
                           c.charge_mass);
  const SystemState initial{charge, fluxon, 0.0};
  const double dt = 2.0 * c.half_length / c.speed / c.n_steps;
  const auto coarse = integrate(initial, dt, c.n_steps);
  const auto fine = integrate(initial, 0.5 * dt, 2 * c.n_steps);
  const auto order = step_halving_gyration(1.0, 1.0, Vec2(0.05, 0.0), 64);

  auto& table = run.summary.table;
  table.header = {"time", "charge_x", "charge_y", "charge_vx", "charge_vy",
                  "fluxon_x", "fluxon_y", "energy", "re_total_momentum", "im_total_momentum"};
  for (const auto& s : coarse.states) {
    const auto [p, P] = canonical_momenta(s.charge, s.fluxon);
    table.rows.push_back({s.time, s.charge.position().x(), s.charge.position().y(),
                          s.charge.velocity().x(), s.charge.velocity().y(),
                          s.fluxon.position().x(), s.fluxon.position().y(),
                          hamiltonian(s.charge, s.fluxon, p, P), (p + P).x(), (p + P).y()});
  }
  run.scalar("deflection", coarse.deflection_angle);
  run.scalar("max_energy_drift", std::max(coarse.energy_drift, fine.energy_drift));
  run.scalar("max_momentum_drift", std::max(coarse.momentum_drift, fine.momentum_drift));
  run.scalar("impact_parameter_over_core", c.impact_parameter / c.core_radius);
  run.scalar("stepper_observed_order", order.observed_order);
  run.check("deflection_below_1e-6", 4, coarse.deflection_angle, 1e-6);
  run.check("energy_drift_below_1e-10", 4, std::max(coarse.energy_drift, fine.energy_drift), 1e-10);
  run.check("momentum_drift_below_1e-10", 4,
            std::max(coarse.momentum_drift, fine.momentum_drift), 1e-10);
  // Passes when the observed order is at least 3.8.
  run.check("stepper_fourth_order", 4, 4.0 - order.observed_order, 0.2);
}

void run_shield_classical(Runner& run) {
  const auto& c = run.cfg;
  const CircularShield shield(Vec2::Zero(), c.shield_radius);
  const FluxonState fluxon(Vec2::Zero(), Vec2::Zero(), c.flux, c.core_radius);
  const ChargeState charge(Vec2(c.orbit_radius, 0.0), Vec2::Zero(), c.charge);
  const double bare = e_field_charge(charge, fluxon.position()).norm();

  auto& table = run.summary.table;
  table.header = {"n_nodes", "field_ratio_center", "field_ratio_near_surface"};
  double ratio_configured = 0.0;
  std::set<int> counts = {64, 128, 256, 512, c.shield_nodes};
  const Vec2 probe(0.95 * c.shield_radius, 0.0);
  const double bare_probe = e_field_charge(charge, probe).norm();
  for (int n : counts) {
    const auto density = sample_induced_density(charge, shield, n);
    const double center_ratio = shielded_field(charge, shield, density, fluxon.position()).norm() / bare;
    const double probe_ratio = shielded_field(charge, shield, density, probe).norm() / bare_probe;
    if (n == c.shield_nodes) ratio_configured = center_ratio;
    table.rows.push_back({static_cast<long long>(n), center_ratio, probe_ratio});
  }

  const Trajectory orbit = make_circular_trajectory(Vec2::Zero(), c.orbit_radius,
                                                    c.angular_velocity, c.n_samples, 1.0);
  const ClassicalPhaseOptions options{c.shield_nodes, c.gauss_points};
  const double shielded = classical_abc_phase(orbit, c.charge, fluxon, shield, options);
  const double unshielded = classical_abc_phase(orbit, c.charge, fluxon, std::nullopt, options);
  const double expected = kTwoPi * winding_number(orbit, fluxon.position()) * c.charge * c.flux;

  run.scalar("interior_field_ratio", ratio_configured);
  run.scalar("phase", shielded);
  run.scalar("unshielded_phase", unshielded);
  run.check("interior_field_ratio_below_1e-8", 5, ratio_configured, 1e-8);
  run.check("shielded_phase_below_1e-6", 5, std::abs(shielded), 1e-6);
  run.check("unshielded_phase_matches", 5, std::abs(unshielded - expected), 1e-6);
}

void run_config1(Runner& run) {
  const auto& c = run.cfg;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  auto& table = run.summary.table;
  table.header = {"m", "charge", "flux", "angular_velocity", "orbit_radius", "shield_radius",
                  "term1", "term2", "sum", "phase"};
  double worst_sum = 0.0;
  double worst_phase = 0.0;

  auto evaluate = [&](int m, double q, double flux, double w, double r, double R) {
    const CircularShield shield(Vec2::Zero(), R);
    const FluxonState fluxon(Vec2::Zero(), Vec2::Zero(), flux, std::min(c.core_radius, 0.5 * R));
    const ChargeState charge(Vec2(r, 0.0), Vec2(0.0, r * w), q);
    const auto terms = config1_lagrangian_terms(charge, fluxon, shield, c.shield_nodes);
    const double sum = terms.charge_term + terms.surface_term;
    const double phase = config1_phase(q, flux, m, {r, R, w});
    worst_sum = std::max(worst_sum, std::abs(sum));
    worst_phase = std::max(worst_phase, std::abs(phase));
    table.rows.push_back({static_cast<long long>(m), q, flux, w, r, R, terms.charge_term,
                          terms.surface_term, sum, phase});
  };

  for (int m = -3; m <= 3; ++m) {
    evaluate(m, c.charge, c.flux, c.angular_velocity, c.orbit_radius, c.shield_radius);
  }
  for (int trial = 0; trial < c.trials; ++trial) {
    const double R = uniform(0.2, 3.0);
    const double r = R * uniform(1.05, 5.0);
    const double w = uniform(-1.0, 1.0) * 0.09 / r;
    evaluate(trial % 7 - 3, uniform(-3.0, 3.0), uniform(-2.0, 2.0), w, r, R);
  }
  const auto& base = table.rows.front();
  run.scalar("term1", std::get<double>(base[6]));
  run.scalar("term2", std::get<double>(base[7]));
  run.scalar("max_abs_term_sum", worst_sum);
  run.scalar("max_abs_phase", worst_phase);
  run.check("terms_cancel", 6, worst_sum, 1e-8);
  run.check("phase_vanishes_for_all_m", 6, worst_phase, 1e-8);
}

void run_config2(Runner& run) {
  const auto& c = run.cfg;
  const ShieldState state(*c.amplitudes);
  const auto report = check_shielding(state, c.charge);
  const auto u1 = phase_factor_u1(state, c.charge, c.flux);

  auto& table = run.summary.table;
  table.header = {"m", "re_b", "im_b", "probability", "phase_m"};
  for (const auto& [m, b] : state.amplitudes()) {
    table.rows.push_back({static_cast<long long>(m), b.real(), b.imag(), std::norm(b),
                          phase_m(c.charge, m, c.flux)});
  }
  const double offset = std::abs(state.mean_pair_number() + 0.5 * c.charge);
  run.scalar("re_u1", u1.real());
  run.scalar("im_u1", u1.imag());
  run.scalar("visibility", std::abs(u1));
  run.scalar("mean_excess_charge", report.mean_excess_charge);
  run.scalar("ideal_shielding", report.satisfies_ideal_shielding ? 1.0 : 0.0);
  // Passes when sum_m m |b_m|^2 = -q/2 within the shielding tolerance.
  run.check("shielding_constraint", 9, offset, kShieldingTolerance * (1.0 + 1e-12));
}

void run_config3(Runner& run) {
  const auto& c = run.cfg;
  std::mt19937_64 rng(c.seed);
  const std::complex<double> expected = std::polar(1.0, std::numbers::pi * c.charge * c.flux_quanta);

  auto& table = run.summary.table;
  table.header = {"trial", "re_u1", "im_u1", "deviation"};
  const int trials = c.amplitudes ? 1 : c.trials;
  double worst = 0.0;
  std::complex<double> first;
  for (int trial = 0; trial < trials; ++trial) {
    const ShieldState state =
        c.amplitudes ? ShieldState(*c.amplitudes) : random_shielding_state(c.charge, rng);
    const auto u1 = config3_phase_factor(state, c.charge, c.flux_quanta);
    const double dev = std::abs(u1 - expected);
    worst = std::max(worst, dev);
    if (trial == 0) first = u1;
    table.rows.push_back({static_cast<long long>(trial), u1.real(), u1.imag(), dev});
  }
  run.scalar("re_u1", first.real());
  run.scalar("im_u1", first.imag());
  run.scalar("max_deviation", worst);
  run.check("flux_quantized_phase_factor", 8, worst, 1e-12);
}

void run_fringe_scan(Runner& run) {
  const auto& c = run.cfg;
  const ShieldState state(*c.amplitudes);
  const auto rows = visibility_scan(state, c.charge, c.flux_grid);
  auto& table = run.summary.table;
  table.header = {"flux", "re_u1", "im_u1", "visibility"};
  double vmin = 1.0;
  double vmax = 0.0;
  for (const auto& r : rows) {
    vmin = std::min(vmin, r.visibility());
    vmax = std::max(vmax, r.visibility());
    table.rows.push_back({r.flux, r.u1.real(), r.u1.imag(), r.visibility()});
  }
  run.scalar("min_visibility", vmin);
  run.scalar("max_visibility", vmax);
  run.check("visibility_at_most_one", 7, vmax - 1.0, 1e-12);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& [k, name] : kScenarioNames) {
    if (k == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  for (const auto& [k, n] : kScenarioNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides,
                            std::string_view source_name) {
  toml::table root;
  try {
    root = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    throw Error(Errc::ParseError, where(e.source()) + ": " + std::string(e.description()));
  }
  reject_unknown_keys(root);

  ScenarioConfig c;
  if (overrides.scenario) {
    c.scenario = *overrides.scenario;
  } else if (const auto name = root["scenario"].value<std::string>()) {
    const auto s = scenario_from_name(*name);
    if (!s) throw Error(Errc::ValidationError, "unknown scenario '" + *name + "'");
    c.scenario = *s;
  } else {
    throw Error(Errc::ValidationError, "no scenario given (set 'scenario' or --scenario)");
  }

  read(root, "physics", "charge", c.charge);
  read(root, "physics", "flux", c.flux);
  read(root, "physics", "core_radius", c.core_radius);
  read(root, "physics", "loop_radius", c.loop_radius);
  read(root, "physics", "shield_radius", c.shield_radius);
  read(root, "physics", "orbit_radius", c.orbit_radius);
  read(root, "physics", "angular_velocity", c.angular_velocity);
  read(root, "physics", "impact_parameter", c.impact_parameter);
  read(root, "physics", "speed", c.speed);
  read(root, "physics", "charge_mass", c.charge_mass);
  read(root, "physics", "fluxon_mass", c.fluxon_mass);
  read(root, "physics", "flux_quanta", c.flux_quanta);

  if (const auto* amps = root.at_path("shield.amplitudes").as_array()) {
    c.amplitudes = read_amplitudes(*amps, false);
  } else if (const auto* probs = root.at_path("shield.probabilities").as_array()) {
    c.amplitudes = read_amplitudes(*probs, true);
  } else if (root.at_path("shield.amplitudes") || root.at_path("shield.probabilities")) {
    throw Error(Errc::ValidationError, "shield amplitudes must be an array of tables");
  }

  if (const auto* grid = root.at_path("scan.flux_grid").as_array()) {
    for (const auto& v : *grid) {
      const auto x = v.value<double>();
      if (!x) throw Error(Errc::ValidationError, "scan.flux_grid must hold numbers");
      c.flux_grid.push_back(*x);
    }
  } else if (c.scenario == Scenario::fringe_scan) {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.05;
    read(root, "scan", "flux_start", start);
    read(root, "scan", "flux_stop", stop);
    read(root, "scan", "flux_step", step);
    require(step > 0.0 && stop >= start, "scan needs flux_step > 0 and flux_stop >= flux_start");
    const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long k = 0; k <= n; ++k) c.flux_grid.push_back(start + static_cast<double>(k) * step);
  }

  read(root, "numerics", "n_samples", c.n_samples);
  read(root, "numerics", "rel_tol", c.rel_tol);
  read(root, "numerics", "abs_tol", c.abs_tol);
  read(root, "numerics", "max_depth", c.max_depth);
  read(root, "numerics", "shield_nodes", c.shield_nodes);
  read(root, "numerics", "gauss_points", c.gauss_points);
  read(root, "numerics", "half_length", c.half_length);
  read(root, "numerics", "n_steps", c.n_steps);

  read(root, "run", "seed", c.seed);
  read(root, "run", "trials", c.trials);
  if (const auto out = root.at_path("run.out").value<std::string>()) c.out_dir = *out;

  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.trials) c.trials = *overrides.trials;
  if (overrides.out_dir) c.out_dir = *overrides.out_dir;

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides, path.string());
}

bool RunSummary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunSummary run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Runner run{config, {}};
  run.summary.scenario = std::string(scenario_name(config.scenario));
  try {
    switch (config.scenario) {
      case Scenario::duality: run_duality(run); break;
      case Scenario::scatter: run_scatter(run); break;
      case Scenario::shield_classical: run_shield_classical(run); break;
      case Scenario::config1: run_config1(run); break;
      case Scenario::config2: run_config2(run); break;
      case Scenario::config3: run_config3(run); break;
      case Scenario::fringe_scan: run_fringe_scan(run); break;
    }
  } catch (const Error& e) {
    throw Error(e.code(), "scenario " + run.summary.scenario + ": " + e.detail());
  }
  run.summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return std::move(run.summary);
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              out += std::to_string(v);
            } else {
              out += v;
            }
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_summary_json(const RunSummary& summary, const ScenarioConfig& config,
                                bool include_wall_time) {
  nlohmann::ordered_json j;
  j["scenario"] = summary.scenario;
  j["seed"] = config.seed;
  j["trials"] = config.trials;
  j["passed"] = summary.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : summary.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"criterion", c.criterion},
                           {"passed", c.passed},
                           {"value", c.value},
                           {"threshold", c.threshold}});
  }
  j["scalars"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : summary.scalars) j["scalars"][name] = value;
  if (include_wall_time) j["wall_time_seconds"] = summary.wall_time_seconds;
  return j.dump(2) + "\n";
}

void write_outputs(const RunSummary& summary, const ScenarioConfig& config,
                   bool include_wall_time) {
  std::filesystem::create_directories(config.out_dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::ValidationError, "cannot write " + path.string());
    out << text;
  };
  write(config.out_dir / (summary.scenario + ".csv"), format_csv(summary.table));
  write(config.out_dir / "summary.json",
        format_summary_json(summary, config, include_wall_time));
}

}  // namespace abclab
