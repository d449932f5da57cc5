// Physical parameters of the atom/beam/coarse-graining and the derived
// coupling constants: resonant measurement strength kappa = Gamma sigma_eff/A,
// slice coupling g = sqrt(kappa/dt), Rabi frequency Omega = 2 g alpha,
// Faraday rotation chi and its measurement strength kappa = (P/hbar w0) chi^2,
// and the pulse-mode coupling g_eff = sqrt(kappa/tau).
//
// Two input paths are supported: full cgs parameters (d, w0, k0, A, P) or
// direct dimensionless ratios (sigma_eff/A given explicitly). The physics
// depends only on ratios, so desk-scale runs need no cgs bookkeeping.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twprobe/errors.hpp"

namespace twprobe {

// cgs constants, used only on the full-cgs input path.
inline constexpr double kHbarCgs = 1.054571817e-27;       // erg s
inline constexpr double kSpeedOfLightCgs = 2.99792458e10; // cm/s

struct AtomParams {
    double gamma_total = 1.0;          // Gamma, total spontaneous emission rate
    std::optional<double> dipole;      // d (cgs)
    std::optional<double> omega0;      // carrier angular frequency
    std::optional<double> k0;          // carrier wavenumber
    std::optional<double> sigma0;      // on-resonance absorption cross-section

    void validate() const;
};

struct BeamParams {
    double area = 1.0;                            // effective mode area A
    std::optional<double> power;                  // beam power P
    std::optional<double> detuning;               // Delta (far detuning, != 0 for Faraday)
    std::optional<double> alpha_sq_per_slice;     // |alpha|^2 = P dt / (hbar w0)
    std::optional<double> sigma_eff_over_area;    // direct dimensionless input path

    void validate() const;
};

struct CoarseGraining {
    double dt = 1.0;     // slice duration
    long n_slices = 1;   // N

    double tau() const { return static_cast<double>(n_slices) * dt; }
    // Slice indicator: 1 on ((i-1) dt, i dt], 0 elsewhere; i is 1-based.
    double theta(long i, double t) const;
    void validate() const;
};

// Derived constants; each field is populated only when the inputs allow it.
// provenance carries one {name, formula} pair per populated field.
struct DerivedCouplings {
    std::optional<double> kappa_resonant;   // Gamma sigma_eff / A
    std::optional<double> g;                // sqrt(kappa / dt)
    std::optional<double> rabi;             // 2 g alpha = 2 sqrt(kappa * photon flux)
    std::optional<double> sigma_eff;        // 3 pi / (2 k0^2)
    std::optional<double> chi;              // (sigma0/A) * Gamma/(-2 Delta)
    std::optional<double> kappa_faraday;    // photon flux * chi^2
    std::optional<double> g_eff;            // sqrt(kappa / tau)
    std::optional<double> kappa_dipole;     // 2 pi d^2 k0 / (hbar A), cgs cross-check

    std::vector<std::pair<std::string, std::string>> provenance;

    double require(const std::optional<double>& v, const std::string& name) const;
};

DerivedCouplings derive_resonant(const AtomParams& atom, const BeamParams& beam,
                                 const CoarseGraining& grid);

DerivedCouplings derive_faraday(const AtomParams& atom, const BeamParams& beam,
                                const CoarseGraining& grid);

struct RegimeNote {
    enum class Level { info, warning };
    Level level;
    std::string code;
    std::string message;
};

struct RegimeReport {
    std::vector<RegimeNote> notes;
    bool has_warnings() const;
    bool has_code(const std::string& code) const;
};

// Diagnostics only; never throws. Flags kappa above the diffraction-limited
// bound (kappa ~ Gamma at best), reports the Fock-oscillation figure
// n Gamma tau vs A/sigma_eff when a photon number is supplied, and checks the
// perturbative-Faraday validity threshold chi^2 |alpha|^2 <= 1e-3 per slice.
RegimeReport validate_regime(const DerivedCouplings& couplings, const AtomParams& atom,
                             const BeamParams& beam,
                             std::optional<CoarseGraining> grid = std::nullopt,
                             std::optional<long> fock_n = std::nullopt);

} // namespace twprobe
