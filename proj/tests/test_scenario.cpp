#include <doctest.h>

#include <cmath>
#include <sstream>

#include "twprobe/scenario.hpp"
#include "twprobe/single_photon.hpp"

using namespace twprobe;

namespace {

const char* kFig2Config =
    "# single-photon excitation curve\n"
    "[fig2]\n"
    "scenario = single-photon\n"
    "kappa_over_gamma = 0.02\n"
    "gamma_tau = 2.5\n"
    "n_slices = 10000\n";

} // namespace

TEST_CASE("parse_config: minimal single-photon section gets defaults") {
    const auto configs = parse_config(kFig2Config);
    REQUIRE(configs.size() == 1);
    const ScenarioConfig& cfg = configs[0];
    CHECK(cfg.name == "fig2");
    CHECK(cfg.scenario == ScenarioKind::single_photon);
    CHECK(cfg.params.at("gamma") == 1.0);
    CHECK(cfg.params.at("t_final") == 2.5);
    CHECK(cfg.output == "fig2.csv");
    CHECK(cfg.format == OutputFormat::csv);
}

TEST_CASE("parse_config: missing required key names the key and scenario") {
    const char* text =
        "[fig2]\n"
        "scenario = single-photon\n"
        "gamma_tau = 2.5\n"
        "n_slices = 10000\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("kappa_over_gamma") != std::string::npos);
        CHECK(msg.find("single-photon") != std::string::npos);
    }
}

TEST_CASE("parse_config: rejections") {
    CHECK_THROWS_AS(parse_config("[a]\nscenario = oracle-compare\nkappa = 1\ndt = -1\n"
                                 "alpha_sq = 0.05\nn_slices = 10\n"),
                    ConfigError); // negative dt
    CHECK_THROWS_AS(parse_config("[a]\nscenario = single-photon\nkappa_over_gamma = 0.02\n"
                                 "gamma_tau = 2.5\nn_slices = 10\nbogus_key = 1\n"),
                    ConfigError); // unknown key
    CHECK_THROWS_AS(parse_config("[a]\nscenario = single-photon\nkappa_over_gamma = fast\n"
                                 "gamma_tau = 2.5\nn_slices = 10\n"),
                    ConfigError); // type mismatch
    CHECK_THROWS_AS(parse_config("[a]\nscenario = warp-drive\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("key = 1\n"), ConfigError);   // key outside section
    CHECK_THROWS_AS(parse_config("[a]\nscenario = faraday\nt_final = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[a]\nscenario = single-photon\nkappa_over_gamma = 0.02\n"
                                 "gamma_tau = 2.5\nn_slices = 10\n[a]\nscenario = faraday\n"),
                    ConfigError); // duplicate section
    CHECK_THROWS_AS(parse_config("[a]\nscenario = single-photon\nkappa_over_gamma = 1.5\n"
                                 "gamma_tau = 2.5\nn_slices = 10\n"),
                    ConfigError); // kappa beyond gamma
}

TEST_CASE("run_scenario: fig2 curve matches the closed form and carries provenance") {
    const auto configs = parse_config(kFig2Config);
    const TimeSeries ts = run_scenario(configs[0]);

    const double closed = closed_form_p_e(2.5, 0.02, 1.0, 2.5);
    const double peak = ts.column("P_e").back();
    CHECK(std::abs(peak - closed) / closed < 1e-3);

    // Cavity-JC comparison column for the dashed curve.
    const auto& jc = ts.column("P_e_jc");
    const double g_eff = std::sqrt(0.02 / 2.5);
    const double t_back = ts.column("t").back();
    CHECK(jc.back() == doctest::Approx(std::pow(std::sin(g_eff * t_back), 2)).epsilon(1e-12));

    for (const char* key : {"kappa", "kappa_formula", "tau", "tau_formula", "dt", "dt_formula",
                            "g_eff", "g_eff_formula", "gamma", "scenario"})
        CHECK(ts.metadata.count(key) == 1);
    CHECK(ts.metadata.at("kappa_formula") == "kappa = kappa_over_gamma * gamma");
}

TEST_CASE("run_scenario: faraday dephasing endpoint") {
    const auto configs = parse_config(
        "[deph]\nscenario = faraday\nkappa = 1\nt_final = 0.5\n");
    const TimeSeries ts = run_scenario(configs[0]);
    CHECK(ts.column("abs_rho_01").back() == doctest::Approx(0.18393972058572117).epsilon(1e-8));
    CHECK(ts.column("sigma_z").back() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("run_scenario: faraday kappa derived from chi, alpha_sq, dt") {
    const auto configs = parse_config(
        "[deph]\nscenario = faraday\nchi = 0.3\nalpha_sq = 0.1\ndt = 0.01\nt_final = 0.5\n");
    const TimeSeries ts = run_scenario(configs[0]);
    const double s = std::sin(0.3);
    const double kappa = 0.1 * s * s / 0.01;
    CHECK(ts.metadata.at("kappa_formula") == "kappa = alpha_sq * sin(chi)^2 / dt");
    CHECK(ts.column("abs_rho_01").back() ==
          doctest::Approx(0.5 * std::exp(-2.0 * kappa * 0.5)).epsilon(1e-7));
}

TEST_CASE("run_scenario: oracle-compare reports the gap to the master equation") {
    const auto configs = parse_config(
        "[cmp]\nscenario = oracle-compare\nkappa = 1\ndt = 0.001\nalpha_sq = 0.05\n"
        "n_slices = 300\n");
    const TimeSeries ts = run_scenario(configs[0]);
    const double max_dist = std::stod(ts.metadata.at("max_trace_distance"));
    CHECK(max_dist < 5e-3);
    CHECK(ts.column("trace_distance").size() == 301);
    CHECK(ts.metadata.count("rabi_formula") == 1);
}

TEST_CASE("run_scenario: fock pulse with regime metadata") {
    const auto configs = parse_config(
        "[jc]\nscenario = fock-pulse\nn_photons = 4\nkappa_over_gamma = 0.02\n"
        "gamma_tau = 0.01\narea_over_sigma_eff = 50\nt_final = 2\n");
    const TimeSeries ts = run_scenario(configs[0]);
    CHECK(ts.metadata.at("oscillation_regime_satisfied") == "false");
    CHECK(ts.metadata.count("oscillation_margin") == 1);
    const double g_eff = std::sqrt(0.02 / 0.01);
    const double expect = std::pow(std::sin(g_eff * 2.0 * 2.0), 2); // sqrt(n) = 2
    CHECK(ts.column("P_e").back() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("run_scenario: coherent drive columns") {
    const auto configs = parse_config(
        "[drv]\nscenario = coherent-drive\nrabi = 1\nkappa = 1\nt_final = 8\nstep = 0.001\n"
        "sample_every = 10\n");
    const TimeSeries ts = run_scenario(configs[0]);
    // Long-time limit approaches the optical-Bloch steady state 1/3.
    CHECK(ts.column("P_e").back() == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(ts.column("norm").back() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("timeseries: CSV shape and determinism") {
    TimeSeries ts;
    ts.names = {"t", "P_e"};
    ts.cols = {{0.0, 1.0}, {0.0, 0.5}};
    std::ostringstream a, b;
    write_csv(ts, a);
    write_csv(ts, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 6) == "t,P_e\n");
}

TEST_CASE("timeseries: values round-trip through CSV formatting") {
    const double v = 0.016290412956912595;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("timeseries: JSON round-trip is exact") {
    const auto configs = parse_config(
        "[deph]\nscenario = faraday\nkappa = 1\nt_final = 0.05\nsample_every = 10\n");
    const TimeSeries ts = run_scenario(configs[0]);
    std::ostringstream out;
    write_json(ts, out);
    std::istringstream in(out.str());
    const TimeSeries back = read_json(in);
    CHECK(back == ts);
}

TEST_CASE("timeseries: validation catches malformed series") {
    TimeSeries ts;
    ts.names = {"t", "x"};
    ts.cols = {{0.0, 1.0}, {0.0}};
    CHECK_THROWS_AS(ts.validate(), NumericError);
    ts.cols = {{0.0, 0.0}, {0.0, 1.0}}; // t not strictly increasing
    CHECK_THROWS_AS(ts.validate(), NumericError);
}

TEST_CASE("emit_timeseries: unwritable path raises IoError") {
    TimeSeries ts;
    ts.names = {"t", "P_e"};
    ts.cols = {{0.0, 1.0}, {0.0, 0.5}};
    CHECK_THROWS_AS(emit_timeseries(ts, OutputFormat::csv, "/nonexistent_dir_zz/out.csv"), IoError);
}

TEST_CASE("run_scenario: determinism, identical configs give identical bytes") {
    const auto configs = parse_config(kFig2Config);
    std::ostringstream a, b;
    write_csv(run_scenario(configs[0]), a);
    write_csv(run_scenario(configs[0]), b);
    CHECK(a.str() == b.str());
}
