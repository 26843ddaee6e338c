#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "abclab/error.hpp"
#include "abclab/quantum_shield.hpp"

using namespace abclab;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

ShieldState two_state() { return ShieldState::from_probabilities({{0, 0.5}, {1, 0.5}}); }

// Silence the constraint warning for tests that use violating states on purpose,
// and count how often it fires.
struct WarningCounter {
  int count = 0;
  WarningCounter() {
    set_warning_handler([this](std::string_view) { ++count; });
  }
  ~WarningCounter() { set_warning_handler(nullptr); }
};

}  // namespace

TEST_CASE("shield state construction and normalization") {
  CHECK_THROWS_AS(ShieldState({}), Error);
  CHECK_THROWS_AS(ShieldState({{0, cd(NAN, 0)}}), Error);
  const auto s = ShieldState::normalized({{0, cd(3, 0)}, {2, cd(0, 4)}});
  CHECK(s.is_normalized());
  CHECK(s.norm_squared() == Approx(1.0));
  CHECK(s.mean_pair_number() == Approx(2.0 * 16.0 / 25.0));
  CHECK_THROWS_AS(ShieldState::normalized({{0, cd(0, 0)}}), Error);
  CHECK_THROWS_AS(ShieldState::from_probabilities({{0, -0.1}, {1, 1.1}}), Error);
}

TEST_CASE("shielding constraint examples") {
  const auto a = check_shielding(two_state(), -1.0);
  CHECK(a.satisfies_ideal_shielding);
  CHECK(a.mean_excess_charge == Approx(1.0));

  CHECK(check_shielding(ShieldState({{1, 1.0}}), -2.0).satisfies_ideal_shielding);
  CHECK_FALSE(check_shielding(ShieldState({{0, 1.0}}), -1.0).satisfies_ideal_shielding);

  try {
    check_shielding(ShieldState({{0, 0.5}}), -1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotNormalized);
  }
}

TEST_CASE("shielding check accepts within 1e-9 and rejects 1e-6 offsets") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const double q = std::uniform_real_distribution<double>(-3, 3)(rng);
    const auto s = random_shielding_state(q, rng);
    CHECK(check_shielding(s, q).satisfies_ideal_shielding);
    CHECK(check_shielding(s, q + 1e-10).satisfies_ideal_shielding);
    CHECK_FALSE(check_shielding(s, q + 2e-6).satisfies_ideal_shielding);
    CHECK_FALSE(check_shielding(s, q - 2e-6).satisfies_ideal_shielding);
  }
}

TEST_CASE("per-branch field momentum and phase") {
  CHECK(pi_m(-2.0, 1, 1.0, 1.0).norm() == 0.0);
  CHECK(pi_m(1.0, 0, 2.0, 1.0).norm() == Approx(0.5));
  const double step = pi_m(1.0, 4, 2.0, 0.3).norm() - pi_m(1.0, 3, 2.0, 0.3).norm();
  CHECK(step == Approx(2.0 * 0.3 / 2.0));
  CHECK_THROWS_AS(pi_m(1.0, 0, 0.0, 1.0), Error);

  CHECK(phase_m(1.0, 0, 1.0) == Approx(kTwoPi));
  CHECK(phase_m(-1.0, 1, 0.5) == Approx(kPi));
  for (int m = -3; m <= 3; ++m) CHECK(phase_m(0.7, m, 0.0) == 0.0);
}

TEST_CASE("branch phase is the loop integral of the branch momentum") {
  // Pi_m is azimuthal about the charge and the orbiting fluxon couples through
  // -Rdot . Pi, so one CCW loop of radius R gives -2 pi R Pi_phi.
  for (int m = -2; m <= 2; ++m) {
    const double R = 1.7;
    const Vec2 p = pi_m(0.6, m, R, 0.45);
    CHECK(-kTwoPi * R * p.y() == Approx(phase_m(0.6, m, 0.45)));
  }
}

TEST_CASE("u1 examples for the two-state shield") {
  const auto s = two_state();
  CHECK(std::abs(phase_factor_u1(s, -1.0, 0.25)) < 1e-15);
  CHECK(std::abs(phase_factor_u1(s, -1.0, 0.5) - cd(-1.0, 0.0)) < 1e-15);
  for (double flux = 0.0; flux <= 1.0; flux += 0.01) {
    CHECK(std::abs(phase_factor_u1(s, -1.0, flux) - std::cos(kTwoPi * flux)) < 1e-12);
  }
}

TEST_CASE("a single number state is a pure phase") {
  WarningCounter quiet;
  const ShieldState s({{3, cd(0.6, 0.8)}});
  for (double flux : {0.0, 0.1, 0.37, 1.2}) CHECK(std::abs(phase_factor_u1(s, 0.4, flux)) == Approx(1.0));
}

TEST_CASE("u1 warns when the constraint fails but still returns a value") {
  WarningCounter counter;
  const auto u = phase_factor_u1(ShieldState({{0, 1.0}}), -1.0, 0.25);
  CHECK(counter.count == 1);
  CHECK(std::abs(u - std::polar(1.0, -kPi / 2)) < 1e-15);
  phase_factor_u1(two_state(), -1.0, 0.25);
  CHECK(counter.count == 1);
}

TEST_CASE("u1 properties over random states") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const double q = u(rng);
    const double flux = u(rng);
    const auto s = random_shielding_state(q, rng);
    REQUIRE(s.is_normalized());
    const cd a = phase_factor_u1(s, q, flux);
    CHECK(std::abs(a) <= 1.0 + 1e-12);
    // Global phase rotations change nothing.
    CHECK(std::abs(phase_factor_u1(s.rotated(u(rng)), q, flux) - a) < 1e-14);
    CHECK(check_shielding(s.rotated(1.0), q).satisfies_ideal_shielding);
    // u1 exp(-i 2 pi q Phi) has period 1/2 in Phi.
    const cd b = phase_factor_u1(s, q, flux + 0.5);
    CHECK(std::abs(a * std::polar(1.0, -kTwoPi * q * flux) -
                   b * std::polar(1.0, -kTwoPi * q * (flux + 0.5))) < 1e-12);
  }
}

TEST_CASE("flux quantization fixes u1 for every constraint-satisfying state") {
  std::mt19937_64 rng(42);
  for (int n = 0; n <= 3; ++n) {
    for (int i = 0; i < 100; ++i) {
      const double q = std::uniform_real_distribution<double>(-3, 3)(rng);
      const auto s = random_shielding_state(q, rng);
      CHECK(std::abs(config3_phase_factor(s, q, n) - std::polar(1.0, kPi * q * n)) < 1e-12);
    }
  }
  CHECK(std::abs(config3_phase_factor(two_state(), 1.0, 1) - cd(-1, 0)) < 1e-15);
  CHECK(std::abs(config3_phase_factor(two_state(), -1.0, 0) - cd(1, 0)) < 1e-15);
}

TEST_CASE("even charge with its compensating number state has no phase") {
  for (int k : {-2, -1, 1, 3}) {
    const double q = 2.0 * k;
    const ShieldState s({{-k, 1.0}});
    for (double flux : {0.1, 0.33, 0.9}) CHECK(std::abs(phase_factor_u1(s, q, flux) - 1.0) < 1e-14);
  }
}

TEST_CASE("random shielding states hit the target mean and vary with the seed") {
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  std::mt19937_64 c(6);
  const auto sa = random_shielding_state(0.7, a);
  const auto sb = random_shielding_state(0.7, b);
  const auto sc = random_shielding_state(0.7, c);
  CHECK(sa.amplitudes() == sb.amplitudes());
  CHECK(sa.amplitudes() != sc.amplitudes());
  CHECK(sa.mean_pair_number() == Approx(-0.35).epsilon(1e-14));
  CHECK(sa.amplitudes().size() >= 2);
}

TEST_CASE("Config I phase vanishes for any number of excess pairs") {
  CHECK(std::abs(config1_phase(1.0, 0.5, 0)) < 1e-8);
  CHECK(std::abs(config1_phase(1.0, 0.5, 7)) < 1e-8);
  CHECK(config1_phase(1.0, 0.0, 0) == 0.0);
  for (int m = -3; m <= 3; ++m) CHECK(std::abs(config1_phase(-1.3, 0.8, m, {3.0, 1.2, -0.02})) < 1e-8);
}

TEST_CASE("visibility scan") {
  const std::vector<double> grid = {0.0, 0.25, 0.5};
  const auto rows = visibility_scan(two_state(), -1.0, grid);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].visibility() == Approx(1.0));
  CHECK(rows[1].visibility() < 1e-15);
  CHECK(rows[2].visibility() == Approx(1.0));

  WarningCounter quiet;
  const ShieldState single({{2, 1.0}});
  for (const auto& r : visibility_scan(single, 0.3, grid)) CHECK(r.visibility() == Approx(1.0));

  const std::vector<double> origin = {0.0};
  CHECK(std::abs(visibility_scan(two_state(), -1.0, origin)[0].u1 - 1.0) < 1e-15);

  try {
    visibility_scan(two_state(), -1.0, std::vector<double>{});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyGrid);
  }
}
