#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "gpical/rng.hpp"
#include "gpical/signal.hpp"
#include "oracle.hpp"

using gpical::Complex;
using gpical::CVector;
using gpical::GainPhase;
using gpical::ScenarioConfig;

TEST_SUITE("signal") {
  TEST_CASE("steering vector closed forms") {
    const ScenarioConfig c = fixtures::small_config(8, 4, 4);
    const CVector a0 = gpical::steering_vector(0.0, GainPhase::ones(8), c);
    for (int n = 0; n < 8; ++n) CHECK(a0[n] == Complex(1.0, 0.0));

    const CVector a30 =
        gpical::steering_vector(gpical::deg_to_rad(30.0), GainPhase::ones(8), c);
    const Complex expected[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int n = 0; n < 8; ++n) {
      CHECK(std::abs(a30[n] - expected[n % 4]) < 1e-12);
    }
  }

  TEST_CASE("steering vector matches the oracle and has norm N") {
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> th(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
      ScenarioConfig c = fixtures::small_config(1 + trial % 20, 4, 4);
      if (trial % 3 == 0) c.element_spacing = 3.1e-3;
      const GainPhase k = fixtures::random_kappa(g, c.n_antennas);
      const double theta = th(g);
      const CVector a = gpical::steering_vector(theta, k, c);
      const CVector ref = oracle::steering(theta, k.kappa, c);
      REQUIRE((a - ref).norm() <= 1e-12 * ref.norm());
      REQUIRE(std::abs(a.squaredNorm() / c.n_antennas - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("steering vector rejects a kappa of the wrong length") {
    const ScenarioConfig c = fixtures::small_config(4, 4, 4);
    CHECK_THROWS_AS(gpical::steering_vector(0.1, GainPhase::ones(3), c),
                    gpical::Error);
  }

  TEST_CASE("delay vector closed forms") {
    const ScenarioConfig c = fixtures::small_config(2, 16, 4);
    const CVector b0 = gpical::delay_vector(0.0, c);
    for (int s = 0; s < 16; ++s) CHECK(b0[s] == Complex(1.0, 0.0));

    const double tau = 1.0 / (16 * c.subcarrier_spacing);
    const CVector b = gpical::delay_vector(tau, c);
    for (int s = 0; s < 16; ++s) {
      CHECK(std::abs(b[s] - std::polar(1.0, -2.0 * oracle::kPi * s / 16)) <
            1e-12);
    }
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> u(0.0, 1e-6);
    for (int trial = 0; trial < 50; ++trial) {
      const double t = u(g);
      const CVector v = gpical::delay_vector(t, c);
      REQUIRE((v - oracle::delay(t, c)).norm() < 1e-11);
      for (int s = 0; s < 16; ++s) REQUIRE(std::abs(std::abs(v[s]) - 1.0) < 1e-14);
    }
  }

  TEST_CASE("synthesize: absent target without noise is the zero matrix") {
    const ScenarioConfig c = fixtures::small_config(3, 5, 4);
    gpical::Stream rng(1, gpical::Purpose::kMapDemo);
    auto d = gpical::draw_scenario(c, rng);
    d.t = 0;
    const auto obs = gpical::synthesize(d, GainPhase::ones(3), 0.0, c, rng);
    CHECK(obs.y.rows() == 3);
    CHECK(obs.y.cols() == 5);
    CHECK(obs.y.norm() == 0.0);
  }

  TEST_CASE("synthesize: two-antenna single-subcarrier unity case") {
    const ScenarioConfig c = fixtures::small_config(2, 1, 4);
    gpical::ScenarioDraw d;
    d.t = 1;
    d.gamma = 1.0;
    d.theta = 0.0;
    d.tau = 0.0;
    d.x = CVector::Ones(1);
    gpical::Stream rng(1, gpical::Purpose::kMapDemo);
    const auto obs = gpical::synthesize(d, GainPhase::ones(2), 0.0, c, rng);
    CHECK(obs.y(0, 0) == Complex(1.0, 0.0));
    CHECK(obs.y(1, 0) == Complex(1.0, 0.0));
  }

  TEST_CASE("synthesize: noiseless target is rank one with |gamma|^2 N S energy") {
    std::mt19937_64 g(12);
    for (int trial = 0; trial < 20; ++trial) {
      const ScenarioConfig c = fixtures::small_config(6, 9, 4);
      gpical::Stream rng(trial, gpical::Purpose::kMapDemo);
      auto d = gpical::draw_scenario(c, rng);
      d.t = 1;
      const GainPhase k = fixtures::random_kappa(g, 6);
      const auto obs = gpical::synthesize(d, k, 0.0, c, rng);
      REQUIRE(std::abs(obs.y.squaredNorm() / (std::norm(d.gamma) * 54) - 1.0) <=
              1e-9);
      Eigen::JacobiSVD<gpical::CMatrix> svd(obs.y);
      const auto sv = svd.singularValues();
      REQUIRE(sv[1] <= 1e-10 * sv[0]);
      const auto ref = d.gamma * oracle::outer(d.theta, d.tau, d.x, k.kappa, c);
      REQUIRE((obs.y - ref).norm() <= 1e-11 * ref.norm());
    }
  }

  TEST_CASE("noise has per-entry variance N0 split evenly") {
    const ScenarioConfig c = fixtures::small_config(16, 64, 4);
    const double n0 = 2.5;
    double re2 = 0, im2 = 0, cross = 0, mean_re = 0;
    int count = 0;
    for (int trial = 0; trial < 40; ++trial) {
      gpical::Stream rng(trial, gpical::Purpose::kEvalNull);
      auto d = gpical::draw_scenario(c, rng);
      d.t = 0;
      const auto obs = gpical::synthesize(d, GainPhase::ones(16), n0, c, rng);
      for (int n = 0; n < 16; ++n) {
        for (int s = 0; s < 64; ++s) {
          const Complex w = obs.y(n, s);
          re2 += w.real() * w.real();
          im2 += w.imag() * w.imag();
          cross += w.real() * w.imag();
          mean_re += w.real();
          ++count;
        }
      }
    }
    CHECK(re2 / count == doctest::Approx(n0 / 2).epsilon(0.03));
    CHECK(im2 / count == doctest::Approx(n0 / 2).epsilon(0.03));
    CHECK(std::abs(cross / count) < 0.03);
    CHECK(std::abs(mean_re / count) < 0.03);
  }

  TEST_CASE("SNR identity over target draws") {
    const ScenarioConfig c = fixtures::small_config(8, 16, 4);
    double energy = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      gpical::Stream rng(21, gpical::Purpose::kEvalTarget, i);
      auto d = gpical::draw_scenario(c, rng);
      d.t = 1;
      energy += gpical::noiseless_response(d, GainPhase::ones(8), c).squaredNorm();
    }
    const double snr = energy / n / c.noise_power();
    CHECK(10.0 * std::log10(snr) == doctest::Approx(c.snr_db).epsilon(0.03));
    CHECK(snr == doctest::Approx(std::pow(10.0, c.snr_db / 10)).epsilon(0.03));
  }

  TEST_CASE("linearity in gamma with shared noise") {
    const ScenarioConfig c = fixtures::small_config(5, 7, 4);
    std::mt19937_64 g(30);
    const GainPhase k = fixtures::random_kappa(g, 5);
    gpical::Stream r0(4, gpical::Purpose::kMapDemo);
    auto d = gpical::draw_scenario(c, r0);
    d.t = 1;
    const Complex scale(-1.7, 0.4);
    auto d2 = d;
    d2.gamma *= scale;
    gpical::Stream r1(4, gpical::Purpose::kMapDemo, 1);
    gpical::Stream r2(4, gpical::Purpose::kMapDemo, 1);
    const auto y1 = gpical::synthesize(d, k, 0.3, c, r1).y;
    const auto y2 = gpical::synthesize(d2, k, 0.3, c, r2).y;
    const auto clean = gpical::noiseless_response(d, k, c);
    CHECK((y2 - y1 - (scale - 1.0) * clean).norm() <= 1e-12 * clean.norm());
  }

  TEST_CASE("observations are not conjugate symmetric") {
    const ScenarioConfig c = fixtures::small_config(8, 16, 4);
    gpical::Stream rng(2, gpical::Purpose::kMapDemo);
    auto d = gpical::draw_scenario(c, rng);
    d.t = 1;
    const auto y = gpical::synthesize(d, GainPhase::ones(8), c.noise_power(), c,
                                      rng).y;
    const gpical::CMatrix mirrored = y.conjugate().rowwise().reverse();
    CHECK((y - mirrored).norm() > 0.1 * y.norm());
    CHECK(y.imag().norm() > 0.1 * y.norm());
  }
}
