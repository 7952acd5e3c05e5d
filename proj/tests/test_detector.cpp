#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "gpical/detector.hpp"
#include "gpical/rng.hpp"
#include "oracle.hpp"

using gpical::CMatrix;
using gpical::Complex;
using gpical::CVector;
using gpical::GainPhase;
using gpical::GridSpec;
using gpical::ScenarioConfig;

namespace {

GridSpec test_grid(const ScenarioConfig& c, double lo = -0.4, double hi = 0.3) {
  return GridSpec::uniform(lo, hi, c.n_theta_grid, c.tau_min(), c.tau_max(),
                           c.n_tau_grid);
}

}  // namespace

TEST_SUITE("detector") {
  TEST_CASE("grid axes are uniform with exact endpoints") {
    const gpical::RVector v = gpical::linspace(-0.3, 0.7, 11);
    CHECK(v[0] == -0.3);
    CHECK(v[10] == 0.7);
    for (int k = 1; k < 11; ++k) CHECK(v[k] - v[k - 1] == doctest::Approx(0.1));
    CHECK_THROWS_AS(GridSpec::uniform(0.1, 0.1, 4, 0.0, 1.0, 4), gpical::Error);
    CHECK_THROWS_AS(GridSpec::uniform(0.0, 0.1, 4, 1.0, 0.0, 4), gpical::Error);
    CHECK_THROWS_AS(GridSpec::uniform(0.0, 0.1, 0, 0.0, 1.0, 4), gpical::Error);
  }

  TEST_CASE("dictionaries: single-point axes and column norms") {
    ScenarioConfig c = fixtures::small_config(6, 10, 4);
    GridSpec one;
    one.theta_axis = gpical::RVector::Zero(1);
    one.tau_axis = gpical::RVector::Zero(1);
    const auto d1 = gpical::build_dictionaries(GainPhase::ones(6), one, c);
    CHECK(d1.phi_theta.rows() == 6);
    CHECK(d1.phi_theta.cols() == 1);
    CHECK((d1.phi_theta - CMatrix::Ones(6, 1)).norm() == 0.0);
    CHECK((d1.phi_tau - CMatrix::Ones(10, 1)).norm() == 0.0);

    std::mt19937_64 g(3);
    const auto k = fixtures::random_kappa(g, 6);
    const GridSpec grid = test_grid(c);
    const auto d = gpical::build_dictionaries(k, grid, c);
    for (int i = 0; i < c.n_theta_grid; ++i) {
      CHECK(d.phi_theta.col(i).squaredNorm() == doctest::Approx(6.0).epsilon(1e-12));
      CHECK((d.phi_theta.col(i) - oracle::steering(grid.theta_axis[i], k.kappa, c))
                .norm() < 1e-12);
    }
    for (int j = 0; j < c.n_tau_grid; ++j) {
      CHECK(d.phi_tau.col(j).squaredNorm() == doctest::Approx(10.0).epsilon(1e-12));
    }
  }

  TEST_CASE("map of a noiseless on-grid target, N=4, S=2") {
    ScenarioConfig c = fixtures::small_config(4, 2, 9);
    std::mt19937_64 g(1);
    const auto k = fixtures::random_kappa(g, 4);
    const auto s = fixtures::on_grid_target(c, k, 1.0, 3, 5, -0.4, 0.3, g);
    const auto m = gpical::angle_delay_map(s.obs, k, s.grid, c);
    CHECK(m.values(3, 5) == doctest::Approx(64.0).epsilon(1e-12));
    const auto peak = gpical::map_argmax(m.values);
    CHECK(peak.theta_index == 3);
    CHECK(peak.tau_index == 5);
    const auto ref = oracle::map(s.obs.y, s.obs.truth.x, k.kappa,
                                 s.grid.theta_axis, s.grid.tau_axis, c);
    CHECK((m.values - ref).norm() <= 1e-10 * ref.norm());
  }

  TEST_CASE("map matches the brute-force oracle on noisy data") {
    std::mt19937_64 g(2);
    for (int trial = 0; trial < 10; ++trial) {
      ScenarioConfig c = fixtures::small_config(3 + trial % 4, 2 + trial % 5, 7);
      const CMatrix y = fixtures::random_matrix(g, c.n_antennas, c.n_subcarriers);
      const CVector x = fixtures::random_qpsk(g, c.n_subcarriers);
      const auto k = fixtures::random_kappa(g, c.n_antennas);
      const GridSpec grid = test_grid(c, -1.0, 0.9);
      const auto m = gpical::angle_delay_map(y, x, k, grid, c);
      const auto ref = oracle::map(y, x, k.kappa, grid.theta_axis, grid.tau_axis, c);
      REQUIRE((m.values - ref).norm() <= 1e-10 * ref.norm());
      REQUIRE(m.values.minCoeff() >= 0.0);
    }
  }

  TEST_CASE("absent target without noise gives the zero map") {
    ScenarioConfig c = fixtures::small_config(4, 3, 5);
    const auto m = gpical::angle_delay_map(CMatrix::Zero(4, 3), CVector::Ones(3),
                                           GainPhase::ones(4), test_grid(c), c);
    CHECK(m.values.maxCoeff() == 0.0);
    const auto det = gpical::maprt(CMatrix::Zero(4, 3), CVector::Ones(3),
                                   GainPhase::ones(4), test_grid(c), 0.5, c);
    CHECK_FALSE(det.detected);
    CHECK(det.statistic == 0.0);
  }

  TEST_CASE("mismatched kappa lowers the peak by Cauchy-Schwarz") {
    ScenarioConfig c = fixtures::small_config(6, 4, 9);
    std::mt19937_64 g(5);
    const auto k = fixtures::random_kappa(g, 6);
    const auto s = fixtures::on_grid_target(c, k, 1.0, 4, 2, -0.4, 0.3, g);
    const double full = 36.0 * 16.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto kh = fixtures::random_kappa(g, 6);
      const auto m = gpical::angle_delay_map(s.obs, kh, s.grid, c);
      const double expected = 16.0 * std::norm(kh.kappa.dot(k.kappa));
      REQUIRE(m.values(4, 2) == doctest::Approx(expected).epsilon(1e-10));
      REQUIRE(m.values(4, 2) < full * (1 - 1e-9));
    }
    const auto rotated = GainPhase{std::polar(1.0, 0.8) * k.kappa};
    CHECK(gpical::angle_delay_map(s.obs, rotated, s.grid, c).values(4, 2) ==
          doctest::Approx(full).epsilon(1e-12));
  }

  TEST_CASE("maprt on a noiseless on-grid target recovers the grid point") {
    ScenarioConfig c = fixtures::small_config(5, 6, 11);
    std::mt19937_64 g(6);
    for (int trial = 0; trial < 20; ++trial) {
      const auto k = fixtures::random_kappa(g, 5);
      const int i = static_cast<int>(g() % 11), j = static_cast<int>(g() % 11);
      const Complex gamma = fixtures::random_complex(g);
      const auto s = fixtures::on_grid_target(c, k, gamma, i, j, -0.9, -0.5, g);
      const auto det = gpical::maprt(s.obs, k, s.grid, 0.0, c);
      REQUIRE(det.theta_index == i);
      REQUIRE(det.tau_index == j);
      REQUIRE(det.theta_hat == s.grid.theta_axis[i]);
      REQUIRE(det.tau_hat == s.grid.tau_axis[j]);
      REQUIRE(det.detected);
      REQUIRE(det.statistic ==
              doctest::Approx(std::norm(gamma) * 25 * 36).epsilon(1e-9));
      const double rho = c.n0_over_sigma2();
      REQUIRE(std::abs(det.gamma_hat - gamma * 30.0 / (30.0 + rho)) <=
              1e-12 * std::abs(gamma));
    }
  }

  TEST_CASE("argmax ties go to the first entry in row-major order") {
    gpical::RMatrix flat = gpical::RMatrix::Constant(4, 5, 2.0);
    auto p = gpical::map_argmax(flat);
    CHECK(p.theta_index == 0);
    CHECK(p.tau_index == 0);
    flat(2, 3) = 7.0;
    flat(2, 1) = 7.0;
    flat(3, 0) = 7.0;
    p = gpical::map_argmax(flat);
    CHECK(p.theta_index == 2);
    CHECK(p.tau_index == 1);
    CHECK(p.value == 7.0);

    ScenarioConfig c = fixtures::small_config(3, 2, 4);
    const auto det = gpical::maprt(CMatrix::Zero(3, 2), CVector::Ones(2),
                                   GainPhase::ones(3), test_grid(c), 0.0, c);
    CHECK(det.theta_index == 0);
    CHECK(det.tau_index == 0);
  }

  TEST_CASE("maprt thresholding is strict and eta must be nonnegative") {
    ScenarioConfig c = fixtures::small_config(4, 4, 5);
    std::mt19937_64 g(9);
    const auto s = fixtures::on_grid_target(c, GainPhase::ones(4), 1.0, 1, 1,
                                            -0.2, 0.2, g);
    const auto det = gpical::maprt(s.obs, GainPhase::ones(4), s.grid, 0.0, c);
    const auto at = gpical::maprt(s.obs, GainPhase::ones(4), s.grid,
                                  det.statistic, c);
    CHECK_FALSE(at.detected);
    CHECK_THROWS_AS(gpical::maprt(s.obs, GainPhase::ones(4), s.grid, -1.0, c),
                    gpical::Error);
  }

  TEST_CASE("gain estimate closed forms") {
    ScenarioConfig c = fixtures::small_config(4, 8, 4);
    std::mt19937_64 g(10);
    const auto k = fixtures::random_kappa(g, 4);
    const CVector x = fixtures::random_qpsk(g, 8);
    const double th = 0.21, tau = 1.3e-7;
    const CMatrix m = oracle::outer(th, tau, x, k.kappa, c);
    CHECK(std::abs(gpical::estimate_gain(m, x, th, tau, k, 0.0, c) - 1.0) < 1e-12);
    const Complex gamma(0.3, -1.1);
    const double rho = 4.5;
    CHECK(std::abs(gpical::estimate_gain(gamma * m, x, th, tau, k, rho, c) -
                   gamma * 32.0 / (32.0 + rho)) < 1e-12);
    CHECK_THROWS_AS(gpical::estimate_gain(m, x, th, tau, k, -1.0, c),
                    gpical::Error);
  }

  TEST_CASE("gain estimate matches the materialized ridge solution, N=3, S=2") {
    ScenarioConfig c = fixtures::small_config(3, 2, 4);
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 100; ++trial) {
      const CMatrix y = fixtures::random_matrix(g, 3, 2);
      const CVector x = fixtures::random_qpsk(g, 2);
      const auto k = fixtures::random_kappa(g, 3);
      const double th = -1.0 + 2.0 * (g() % 1000) / 1000.0;
      const double tau = 1e-7 * (g() % 1000) / 1000.0;
      const double rho = (g() % 7) * 0.37;
      const Complex got = gpical::estimate_gain(y, x, th, tau, k, rho, c);
      const Complex ref = oracle::gain(y, x, th, tau, k.kappa, rho, c);
      REQUIRE(std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }

  TEST_CASE("Frobenius and inner-product identities, 100 random instances") {
    std::mt19937_64 g(12);
    for (int trial = 0; trial < 100; ++trial) {
      ScenarioConfig c = fixtures::small_config(2 + trial % 9, 1 + trial % 13, 4);
      const int n = c.n_antennas, s = c.n_subcarriers;
      const auto k = fixtures::random_kappa(g, n);
      // x need not be unit modulus for the identities.
      const CVector x = fixtures::random_vector(g, s);
      const double th = -1.2 + 2.4 * (g() % 10000) / 10000.0;
      const double tau = 2e-7 * (g() % 10000) / 10000.0;
      const CMatrix m = oracle::outer(th, tau, x, k.kappa, c);
      REQUIRE(std::abs(oracle::frob2(m) / (n * x.squaredNorm()) - 1.0) <= 1e-10);

      const CMatrix y = fixtures::random_matrix(g, n, s);
      const Complex direct = oracle::vec_inner(m, y);
      const CVector a = gpical::steering_vector(th, k, c);
      const CVector bx = gpical::delay_vector(tau, c).cwiseProduct(x);
      const Complex compact = a.dot(y * bx.conjugate());
      REQUIRE(std::abs(direct - compact) <= 1e-10 * std::abs(direct));
      // Same thing through the library's ridge estimate with rho = 0.
      const Complex gh = gpical::estimate_gain(y, x, th, tau, k, 0.0, c);
      REQUIRE(std::abs(gh - direct / (n * x.squaredNorm())) <=
              1e-10 * std::abs(gh));
    }
  }

  TEST_CASE("reconstruction") {
    ScenarioConfig c = fixtures::small_config(4, 6, 8);
    std::mt19937_64 g(13);
    const auto k = fixtures::random_kappa(g, 4);
    const CVector x = fixtures::random_qpsk(g, 6);
    CHECK(gpical::reconstruct(0.1, 1e-7, 0.0, x, k, c).norm() == 0.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Complex gh = fixtures::random_complex(g);
      const CMatrix r = gpical::reconstruct(0.3, 9e-8, gh, x, k, c);
      REQUIRE(r.squaredNorm() == doctest::Approx(std::norm(gh) * 24).epsilon(1e-12));
    }
    const Complex gamma(0.7, 0.2);
    const auto s = fixtures::on_grid_target(c, k, gamma, 2, 6, 0.1, 0.5, g);
    const auto det = gpical::maprt(s.obs, k, s.grid, 0.0, c);
    const Complex gh = gpical::estimate_gain(s.obs.y, s.obs.truth.x, det.theta_hat,
                                             det.tau_hat, k, 0.0, c);
    const CMatrix rec = gpical::reconstruct(det.theta_hat, det.tau_hat, gh,
                                            s.obs.truth.x, k, c);
    CHECK((rec - s.obs.y).norm() <= 1e-9);
  }

  TEST_CASE("global phase of kappa_hat leaves map, statistic and |gamma_hat| unchanged") {
    ScenarioConfig c = fixtures::small_config(8, 8, 16);
    std::mt19937_64 g(14);
    for (int trial = 0; trial < 20; ++trial) {
      gpical::Stream rng(trial, gpical::Purpose::kMapDemo);
      auto d = gpical::draw_scenario(c, rng);
      d.t = 1;
      const auto k = fixtures::random_kappa(g, 8);
      const auto obs = gpical::synthesize(d, k, c.noise_power(), c, rng);
      const GridSpec grid = GridSpec::for_draw(d, c);
      const auto kh = fixtures::random_kappa(g, 8);
      const double phi = 6.0 * (g() % 1000) / 1000.0 - 3.0;
      const GainPhase rot{std::polar(1.0, phi) * kh.kappa};
      const auto m1 = gpical::angle_delay_map(obs, kh, grid, c);
      const auto m2 = gpical::angle_delay_map(obs, rot, grid, c);
      REQUIRE((m1.values - m2.values).norm() <= 1e-9 * m1.values.norm());
      const auto d1 = gpical::maprt(obs, kh, grid, 0.0, c);
      const auto d2 = gpical::maprt(obs, rot, grid, 0.0, c);
      REQUIRE(d1.theta_index == d2.theta_index);
      REQUIRE(d1.tau_index == d2.tau_index);
      REQUIRE(fixtures::rel_diff(d1.statistic, d2.statistic) <= 1e-9);
      REQUIRE(std::abs(d2.gamma_hat - std::polar(1.0, -phi) * d1.gamma_hat) <=
              1e-9 * std::abs(d1.gamma_hat));
    }
  }

  TEST_CASE("statistic never exceeds the Cauchy-Schwarz ceiling") {
    ScenarioConfig c = fixtures::small_config(6, 12, 16);
    std::mt19937_64 g(15);
    for (int trial = 0; trial < 30; ++trial) {
      gpical::Stream rng(trial, gpical::Purpose::kMapDemo, 3);
      const auto d = gpical::draw_scenario(c, rng);
      const auto k = fixtures::random_kappa(g, 6);
      const auto obs = gpical::synthesize(d, k, c.noise_power(), c, rng);
      const auto kh = fixtures::random_kappa(g, 6);
      const auto det = gpical::maprt(obs, kh, GridSpec::for_draw(d, c), 0.0, c);
      const double ceiling = std::pow(
          kh.kappa.norm() * obs.y.norm() * d.x.cwiseAbs().maxCoeff() *
              std::sqrt(12.0),
          2);
      REQUIRE(det.statistic <= ceiling);
      REQUIRE(det.statistic == gpical::angle_delay_map(obs, kh, GridSpec::for_draw(d, c), c)
                                   .values.maxCoeff());
    }
  }

  TEST_CASE("off-grid targets land on a bracketing grid point") {
    ScenarioConfig c = fixtures::small_config(8, 16, 60);
    std::mt19937_64 g(16);
    for (int trial = 0; trial < 40; ++trial) {
      gpical::Stream rng(trial, gpical::Purpose::kMapDemo, 9);
      auto d = gpical::draw_scenario(c, rng);
      d.t = 1;
      d.gamma = 1.0;
      const auto k = fixtures::random_kappa(g, 8);
      gpical::Observation obs{gpical::noiseless_response(d, k, c), d, k, 0.0};
      const GridSpec grid = GridSpec::for_draw(d, c);
      const auto det = gpical::maprt(obs, k, grid, 0.0, c);
      const double dth = grid.theta_axis[1] - grid.theta_axis[0];
      const double dtau = grid.tau_axis[1] - grid.tau_axis[0];
      REQUIRE(std::abs(det.theta_hat - d.theta) <= dth * (1 + 1e-9));
      REQUIRE(std::abs(det.tau_hat - d.tau) <= dtau * (1 + 1e-9));
    }
  }
}
