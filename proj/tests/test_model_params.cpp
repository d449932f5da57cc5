#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twprobe/model_params.hpp"

using namespace twprobe;

namespace {

AtomParams atom_gamma(double gamma) {
    AtomParams a;
    a.gamma_total = gamma;
    return a;
}

} // namespace

TEST_CASE("derive_resonant: ratio path gives kappa = gamma * sigma_eff/A") {
    BeamParams beam;
    beam.sigma_eff_over_area = 1.0 / 50.0;
    const DerivedCouplings c = derive_resonant(atom_gamma(1.0), beam, {1e-3, 1000});
    CHECK(*c.kappa_resonant == 0.02);
}

TEST_CASE("derive_resonant: sigma_eff from k0") {
    AtomParams atom = atom_gamma(1.0);
    atom.k0 = 1.0;
    BeamParams beam;
    beam.area = 1.0;
    const DerivedCouplings c = derive_resonant(atom, beam, {1e-3, 1000});
    CHECK(*c.sigma_eff == 3.0 * std::numbers::pi / 2.0);
    CHECK(*c.sigma_eff == doctest::Approx(4.71238898038469).epsilon(1e-14));
    CHECK(*c.kappa_resonant == *c.sigma_eff); // area = 1, gamma = 1
}

TEST_CASE("derive_resonant: kappa is independent of dt, bitwise") {
    BeamParams beam;
    beam.sigma_eff_over_area = 0.02;
    const DerivedCouplings a = derive_resonant(atom_gamma(1.0), beam, {1e-3, 1000});
    const DerivedCouplings b = derive_resonant(atom_gamma(1.0), beam, {0.5e-3, 2000});
    const DerivedCouplings c = derive_resonant(atom_gamma(1.0), beam, {1e-3 / 7.0, 7000});
    CHECK(*a.kappa_resonant == *b.kappa_resonant);
    CHECK(*a.kappa_resonant == *c.kappa_resonant);
}

TEST_CASE("derive_resonant: Rabi frequency survives dt refinement") {
    // alpha^2 per slice scales with dt, so Omega = 2 g alpha must not move.
    auto omega_for = [](double dt, double alpha_sq) {
        BeamParams beam;
        beam.sigma_eff_over_area = 0.02;
        beam.alpha_sq_per_slice = alpha_sq;
        return *derive_resonant(atom_gamma(1.0), beam, {dt, 100}).rabi;
    };
    const double base = omega_for(1e-3, 0.05);
    for (int m : {2, 4, 5, 8}) {
        const double refined = omega_for(1e-3 / m, 0.05 / m);
        CHECK(std::abs(refined - base) <= 1e-15 * base);
    }
}

TEST_CASE("derive_resonant: slice-coupling identities") {
    BeamParams beam;
    beam.sigma_eff_over_area = 0.02;
    beam.alpha_sq_per_slice = 0.05;
    const CoarseGraining grid{1e-3, 2000};
    const DerivedCouplings c = derive_resonant(atom_gamma(1.0), beam, grid);
    // g sqrt(dt) = sqrt(kappa) and g_eff^2 tau = kappa, both by construction.
    CHECK(*c.g * std::sqrt(grid.dt) == doctest::Approx(std::sqrt(*c.kappa_resonant)).epsilon(1e-15));
    CHECK(*c.g_eff * *c.g_eff * grid.tau() == doctest::Approx(*c.kappa_resonant).epsilon(1e-15));
}

TEST_CASE("derive_resonant: full-cgs dipole route agrees when inputs are consistent") {
    // Construct d from gamma via the cgs emission rate gamma = 4 d^2 k0^3 / (3 hbar);
    // then 2 pi d^2 k0 / (hbar A) must equal gamma sigma_eff / A identically.
    const double k0 = 1e5, gamma = 1.0;
    AtomParams atom;
    atom.gamma_total = gamma;
    atom.k0 = k0;
    atom.dipole = std::sqrt(3.0 * kHbarCgs * gamma / (4.0 * k0 * k0 * k0));
    BeamParams beam;
    const double sigma_eff = 3.0 * std::numbers::pi / (2.0 * k0 * k0);
    beam.area = 50.0 * sigma_eff;
    const DerivedCouplings c = derive_resonant(atom, beam, {1e-3, 1000});
    REQUIRE(c.kappa_dipole.has_value());
    CHECK(*c.kappa_dipole == doctest::Approx(*c.kappa_resonant).epsilon(1e-12));
    CHECK(*c.kappa_resonant == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(!validate_regime(c, atom, beam).has_code("dipole-kappa-mismatch"));

    // A dipole inconsistent with gamma is flagged.
    AtomParams off = atom;
    off.dipole = *atom.dipole * 2.0;
    const RegimeReport rep = validate_regime(derive_resonant(off, beam, {1e-3, 1000}), off, beam);
    CHECK(rep.has_code("dipole-kappa-mismatch"));
}

TEST_CASE("validate_regime: warns when the mode area is below sigma_eff") {
    AtomParams atom;
    atom.gamma_total = 1.0;
    atom.k0 = 1.0; // sigma_eff = 3 pi / 2
    BeamParams beam;
    beam.area = 1.0;
    const DerivedCouplings c = derive_resonant(atom, beam, {1e-3, 10});
    CHECK(validate_regime(c, atom, beam).has_code("area-below-sigma-eff"));
}

TEST_CASE("derive_resonant: insufficient parameters") {
    BeamParams beam; // no ratio, no k0
    CHECK_THROWS_AS(derive_resonant(atom_gamma(1.0), beam, {1e-3, 10}), ConfigError);
    AtomParams bad = atom_gamma(-1.0);
    BeamParams with_ratio;
    with_ratio.sigma_eff_over_area = 0.02;
    CHECK_THROWS_AS(derive_resonant(bad, with_ratio, {1e-3, 10}), ConfigError);
}

TEST_CASE("CoarseGraining: slice indicator functions tile the pulse") {
    const CoarseGraining grid{0.5, 4};
    CHECK(grid.tau() == 2.0);
    CHECK(grid.theta(1, 0.25) == 1.0);
    CHECK(grid.theta(1, 0.5) == 1.0);  // right-closed
    CHECK(grid.theta(2, 0.5) == 0.0);  // left-open
    CHECK(grid.theta(2, 0.75) == 1.0);
    for (double t : {0.1, 0.49, 0.51, 1.2, 1.99}) {
        double total = 0.0;
        for (long i = 1; i <= grid.n_slices; ++i) total += grid.theta(i, t);
        CHECK(total == 1.0); // exactly one slice active at any time in (0, tau]
    }
}

TEST_CASE("derive_faraday: chi and kappa from ratios") {
    AtomParams atom = atom_gamma(1.0);
    atom.sigma0 = 0.01;
    BeamParams beam;
    beam.area = 1.0;
    beam.detuning = -1000.0; // gamma/(-2 detuning) = 1/2000
    beam.alpha_sq_per_slice = 10.0;
    const CoarseGraining grid{1e-9, 10}; // flux = 1e10
    const DerivedCouplings c = derive_faraday(atom, beam, grid);
    CHECK(*c.chi == doctest::Approx(5e-6).epsilon(1e-14));
    CHECK(*c.kappa_faraday == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("derive_faraday: kappa invariant under slicing refinement") {
    AtomParams atom = atom_gamma(1.0);
    atom.sigma0 = 0.01;
    BeamParams beam;
    beam.detuning = -1000.0;
    beam.alpha_sq_per_slice = 10.0;
    const DerivedCouplings a = derive_faraday(atom, beam, {1e-9, 10});
    beam.alpha_sq_per_slice = 5.0;
    const DerivedCouplings b = derive_faraday(atom, beam, {0.5e-9, 20});
    CHECK(*a.kappa_faraday == *b.kappa_faraday);
    CHECK(*a.chi == *b.chi);
}

TEST_CASE("derive_faraday: errors") {
    AtomParams atom = atom_gamma(1.0);
    atom.sigma0 = 0.01;
    BeamParams beam;
    beam.detuning = 0.0;
    beam.alpha_sq_per_slice = 1.0;
    CHECK_THROWS_AS(derive_faraday(atom, beam, {1e-3, 10}), ConfigError);
    beam.detuning = -1000.0;
    beam.alpha_sq_per_slice.reset(); // no flux
    CHECK_THROWS_AS(derive_faraday(atom, beam, {1e-3, 10}), ConfigError);
}

TEST_CASE("validate_regime: kappa bound") {
    BeamParams beam;
    beam.sigma_eff_over_area = 0.02;
    const AtomParams atom = atom_gamma(1.0);
    const CoarseGraining grid{1e-3, 1000};
    const RegimeReport ok = validate_regime(derive_resonant(atom, beam, grid), atom, beam);
    CHECK(!ok.has_warnings());

    beam.sigma_eff_over_area = 2.0;
    const RegimeReport warned = validate_regime(derive_resonant(atom, beam, grid), atom, beam);
    CHECK(warned.has_warnings());
    CHECK(warned.has_code("kappa-above-gamma"));
}

TEST_CASE("validate_regime: Fock oscillation figure") {
    BeamParams beam;
    beam.sigma_eff_over_area = 1.0 / 50.0; // kappa/gamma, so margin = n*gamma*tau/50
    const AtomParams atom = atom_gamma(1.0);
    const CoarseGraining grid{1e-6, 10000}; // gamma tau = 0.01
    const DerivedCouplings c = derive_resonant(atom, beam, grid);

    const RegimeReport low = validate_regime(c, atom, beam, grid, 100L); // margin 0.02
    CHECK(low.has_code("fock-oscillation-regime"));
    CHECK(low.has_warnings());

    const RegimeReport high = validate_regime(c, atom, beam, grid, 10000L); // margin 2
    CHECK(high.has_code("fock-oscillation-regime"));
    CHECK(!high.has_warnings());
}

TEST_CASE("validate_regime: perturbative Faraday threshold") {
    AtomParams atom = atom_gamma(1.0);
    atom.sigma0 = 0.01;
    BeamParams beam;
    beam.detuning = -0.01; // chi = 0.5, deliberately huge
    beam.alpha_sq_per_slice = 0.1;
    const DerivedCouplings c = derive_faraday(atom, beam, {1e-3, 10});
    const RegimeReport rep = validate_regime(c, atom, beam);
    CHECK(rep.has_code("faraday-perturbative"));
    CHECK(rep.has_warnings());
}
