#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "twprobe/fock_pulse.hpp"
#include "twprobe/single_photon.hpp"

using namespace twprobe;

TEST_CASE("jc_evolve: half Rabi cycle and the sqrt(n) speedup") {
    const JCManifoldState one = jc_evolve(1, 1.0, std::numbers::pi / 2);
    CHECK(one.p_e() == doctest::Approx(1.0).epsilon(1e-14));

    // n = 4 doubles the oscillation frequency: same P_e at a quarter cycle.
    const JCManifoldState four = jc_evolve(4, 1.0, std::numbers::pi / 4);
    CHECK(four.p_e() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(jc_evolve(0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("jc_evolve: norm is a trig identity") {
    auto g = std::mt19937(7);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<long> ns(1, 1000);
    for (int i = 0; i < 200; ++i) {
        const JCManifoldState st = jc_evolve(ns(g), u(g), u(g));
        CHECK(std::abs(st.norm_sq() - 1.0) <= 1e-12);
    }
}

TEST_CASE("jc_evolve: small-t amplitude matches the single-photon closed form") {
    const double kappa = 0.02, gamma = 1.0, tau = 2.5;
    const double g_eff = std::sqrt(kappa / tau);
    for (double t : {1e-4, 5e-4, 1e-3}) {
        const JCManifoldState st = jc_evolve(1, g_eff, t);
        const PhotonAmplitude cf = closed_form_a_e(t, kappa, gamma, tau, ClosedFormVariant::full);
        // Both equal -i g_eff t up to O(gamma t) corrections.
        CHECK(std::abs(st.c_e - PhotonAmplitude{0.0, -g_eff * t}) <= 0.3 * g_eff * t * t * g_eff);
        CHECK(std::abs(cf - st.c_e) <= 0.3 * (gamma * t) * (g_eff * t));
    }
}

TEST_CASE("oscillation_regime_check: margin examples") {
    const OscillationRegime low = oscillation_regime_check(100, 1.0, 0.01, 50.0);
    CHECK(low.margin == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(!low.satisfied);
    CHECK(low.single_mode_valid); // gamma tau = 0.01 << 1

    const OscillationRegime high = oscillation_regime_check(10000, 1.0, 0.01, 50.0);
    CHECK(high.margin == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(high.satisfied);
}

TEST_CASE("oscillation_regime_check: Markov caveat at gamma tau >= 0.1") {
    const OscillationRegime bad = oscillation_regime_check(100000, 1.0, 0.25, 50.0);
    CHECK(!bad.single_mode_valid);
    const OscillationRegime tuned = oscillation_regime_check(100000, 1.0, 0.25, 50.0, 0.5);
    CHECK(tuned.single_mode_valid);
}

TEST_CASE("oscillation_regime_check: both inequality forms agree") {
    // g_eff sqrt(n) >= 1/tau and n gamma tau >= A/sigma_eff are the same
    // condition because g_eff^2 tau = kappa and kappa/gamma = sigma_eff/A.
    auto g = std::mt19937(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::uniform_int_distribution<long> ns(1, 100000);
    for (int i = 0; i < 100; ++i) {
        const double gamma = u(g);
        const double tau = u(g);
        const double area_ratio = u(g) * 10.0; // A / sigma_eff
        const long n = ns(g);
        const double kappa = gamma / area_ratio;
        const double g_eff = std::sqrt(kappa / tau);

        const OscillationRegime reg = oscillation_regime_check(n, gamma, tau, area_ratio);
        const double margin_geff = std::pow(g_eff * std::sqrt(static_cast<double>(n)) * tau, 2);
        CHECK(std::abs(margin_geff - reg.margin) <= 1e-12 * reg.margin);
        CHECK((g_eff * std::sqrt(static_cast<double>(n)) >= 1.0 / tau) == reg.satisfied);
    }
}
