#include "twprobe/model_params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twprobe {

namespace {

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0) {
        std::ostringstream os;
        os << name << " must be finite and positive, got " << v;
        throw ConfigError(os.str());
    }
}

void require_finite_nonnegative(double v, const char* name) {
    if (!std::isfinite(v) || v < 0) {
        std::ostringstream os;
        os << name << " must be finite and non-negative, got " << v;
        throw ConfigError(os.str());
    }
}

// Photon flux P/(hbar w0) in photons per unit time, from whichever inputs
// are present. The |alpha|^2 path divides out dt, so refining the slicing
// leaves the flux (and everything derived from it) unchanged.
std::optional<double> photon_flux(const BeamParams& beam, const AtomParams& atom,
                                  const CoarseGraining& grid) {
    if (beam.power && atom.omega0) return *beam.power / (kHbarCgs * *atom.omega0);
    if (beam.alpha_sq_per_slice) return *beam.alpha_sq_per_slice / grid.dt;
    return std::nullopt;
}

} // namespace

void AtomParams::validate() const {
    require_finite_positive(gamma_total, "gamma_total");
    if (k0) require_finite_positive(*k0, "k0");
    if (dipole) require_finite_positive(*dipole, "dipole");
    if (omega0) require_finite_positive(*omega0, "omega0");
    if (sigma0) require_finite_positive(*sigma0, "sigma0");
}

void BeamParams::validate() const {
    require_finite_positive(area, "area");
    if (power) require_finite_nonnegative(*power, "power");
    if (alpha_sq_per_slice) require_finite_nonnegative(*alpha_sq_per_slice, "alpha_sq_per_slice");
    if (sigma_eff_over_area) require_finite_positive(*sigma_eff_over_area, "sigma_eff_over_area");
}

double CoarseGraining::theta(long i, double t) const {
    return (static_cast<double>(i - 1) * dt < t && t <= static_cast<double>(i) * dt) ? 1.0 : 0.0;
}

void CoarseGraining::validate() const {
    require_finite_positive(dt, "dt");
    if (n_slices < 1) throw ConfigError("n_slices must be >= 1");
}

double DerivedCouplings::require(const std::optional<double>& v, const std::string& name) const {
    if (!v) throw ConfigError("insufficient parameters to derive " + name);
    return *v;
}

DerivedCouplings derive_resonant(const AtomParams& atom, const BeamParams& beam,
                                 const CoarseGraining& grid) {
    atom.validate();
    beam.validate();
    grid.validate();

    DerivedCouplings out;

    std::optional<double> k0 = atom.k0;
    if (!k0 && atom.omega0) k0 = *atom.omega0 / kSpeedOfLightCgs;

    if (k0) {
        out.sigma_eff = 3.0 * std::numbers::pi / (2.0 * *k0 * *k0);
        out.provenance.emplace_back("sigma_eff", "sigma_eff = 3*pi / (2*k0^2)");
    }

    std::optional<double> ratio;
    if (beam.sigma_eff_over_area) {
        ratio = *beam.sigma_eff_over_area;
    } else if (out.sigma_eff) {
        ratio = *out.sigma_eff / beam.area;
    }
    if (!ratio)
        throw ConfigError(
            "insufficient parameters to derive kappa_resonant: need sigma_eff_over_area or k0+area");

    // Full-cgs route, kept as a cross-check against the gamma-based value.
    if (atom.dipole && k0) {
        out.kappa_dipole =
            2.0 * std::numbers::pi * *atom.dipole * *atom.dipole * *k0 / (kHbarCgs * beam.area);
        out.provenance.emplace_back("kappa_dipole", "kappa_dipole = 2*pi*d^2*k0/(hbar*A)");
    }

    out.kappa_resonant = atom.gamma_total * *ratio;
    out.provenance.emplace_back("kappa_resonant", "kappa = gamma * sigma_eff / A");

    // kappa is independent of dt; only the per-slice coupling g carries it.
    out.g = std::sqrt(*out.kappa_resonant / grid.dt);
    out.provenance.emplace_back("g", "g = sqrt(kappa / dt)");

    out.g_eff = std::sqrt(*out.kappa_resonant / grid.tau());
    out.provenance.emplace_back("g_eff", "g_eff = sqrt(kappa / tau)");

    if (auto flux = photon_flux(beam, atom, grid)) {
        // Omega = 2 g alpha with |alpha|^2 = flux * dt; dt cancels exactly.
        out.rabi = 2.0 * std::sqrt(*out.kappa_resonant * *flux);
        out.provenance.emplace_back("rabi", "Omega = 2*sqrt(kappa * P/(hbar*omega0))");
    }

    return out;
}

DerivedCouplings derive_faraday(const AtomParams& atom, const BeamParams& beam,
                                const CoarseGraining& grid) {
    atom.validate();
    beam.validate();
    grid.validate();

    DerivedCouplings out;

    if (!atom.sigma0) throw ConfigError("insufficient parameters to derive chi: need sigma0");
    if (!beam.detuning) throw ConfigError("insufficient parameters to derive chi: need detuning");
    if (*beam.detuning == 0.0)
        throw ConfigError("chi is undefined on resonance (detuning = 0)");

    out.chi = (*atom.sigma0 / beam.area) * (atom.gamma_total / (-2.0 * *beam.detuning));
    out.provenance.emplace_back("chi", "chi = (sigma0/A) * gamma/(-2*detuning)");

    auto flux = photon_flux(beam, atom, grid);
    if (!flux)
        throw ConfigError(
            "insufficient parameters to derive kappa_faraday: need power+omega0 or alpha_sq_per_slice");

    out.kappa_faraday = *flux * *out.chi * *out.chi;
    out.provenance.emplace_back("kappa_faraday", "kappa = (P/(hbar*omega0)) * chi^2");

    return out;
}

bool RegimeReport::has_warnings() const {
    for (const auto& n : notes)
        if (n.level == RegimeNote::Level::warning) return true;
    return false;
}

bool RegimeReport::has_code(const std::string& code) const {
    for (const auto& n : notes)
        if (n.code == code) return true;
    return false;
}

RegimeReport validate_regime(const DerivedCouplings& couplings, const AtomParams& atom,
                             const BeamParams& beam, std::optional<CoarseGraining> grid,
                             std::optional<long> fock_n) {
    RegimeReport report;

    if (couplings.kappa_resonant && *couplings.kappa_resonant > atom.gamma_total) {
        std::ostringstream os;
        os << "kappa/gamma = " << *couplings.kappa_resonant / atom.gamma_total
           << " exceeds the diffraction-limited bound (at most kappa ~ gamma)";
        report.notes.push_back({RegimeNote::Level::warning, "kappa-above-gamma", os.str()});
    }

    // The mode area cannot beat the diffraction limit; a < sigma_eff request
    // is outside the scalar paraxial treatment.
    if (couplings.sigma_eff && beam.area < *couplings.sigma_eff) {
        std::ostringstream os;
        os << "mode area " << beam.area << " is below sigma_eff " << *couplings.sigma_eff;
        report.notes.push_back({RegimeNote::Level::warning, "area-below-sigma-eff", os.str()});
    }

    if (couplings.kappa_dipole && couplings.kappa_resonant) {
        const double rel =
            std::abs(*couplings.kappa_dipole - *couplings.kappa_resonant) / *couplings.kappa_resonant;
        if (rel > 0.05) {
            std::ostringstream os;
            os << "dipole-route kappa " << *couplings.kappa_dipole << " disagrees with gamma-route "
               << *couplings.kappa_resonant << " (relative " << rel
               << "); gamma and dipole inputs are inconsistent";
            report.notes.push_back({RegimeNote::Level::warning, "dipole-kappa-mismatch", os.str()});
        }
    }

    if (fock_n && grid && couplings.kappa_resonant) {
        // n Gamma tau >= A/sigma_eff, equivalently n kappa tau >= 1: stimulated
        // emission into the pulse must beat paraxial spontaneous emission.
        const double margin = static_cast<double>(*fock_n) * *couplings.kappa_resonant * grid->tau();
        std::ostringstream os;
        os << "Fock oscillation margin n*gamma*tau/(A/sigma_eff) = " << margin
           << (margin >= 1.0 ? " (oscillation regime satisfied)" : " (oscillation regime NOT satisfied)");
        report.notes.push_back({margin >= 1.0 ? RegimeNote::Level::info : RegimeNote::Level::warning,
                                "fock-oscillation-regime", os.str()});
    }

    if (couplings.chi && beam.alpha_sq_per_slice) {
        const double per_slice = *couplings.chi * *couplings.chi * *beam.alpha_sq_per_slice;
        if (per_slice > 1e-3) {
            std::ostringstream os;
            os << "chi^2 |alpha|^2 = " << per_slice
               << " per slice exceeds 1e-3; the perturbative Faraday map is invalid, use the exact map";
            report.notes.push_back({RegimeNote::Level::warning, "faraday-perturbative", os.str()});
        } else {
            std::ostringstream os;
            os << "chi^2 |alpha|^2 = " << per_slice << " per slice (perturbative Faraday map valid)";
            report.notes.push_back({RegimeNote::Level::info, "faraday-perturbative", os.str()});
        }
    }

    return report;
}

} // namespace twprobe
