// QND measurement of sigma_z via Faraday rotation of an off-resonant linearly
// polarized probe. Each slice rotates the polarization by chi sigma_z; tracing
// the field dephases the atomic coherence while leaving sigma_z populations
// untouched.
//
// The exact slice map multiplies the coherence by the coherent-state overlap
// e^{-2 |alpha|^2 sin^2 chi}, obtained by tracing the rotated field modes
// analytically; the perturbative map is the lowest order in |alpha|^2. With
// kappa defined as |alpha|^2 sin^2(chi) / dt, composing exact slices equals
// the continuum dephasing e^{-2 kappa t} to machine precision.
#pragma once

#include <string>
#include <vector>

#include "twprobe/quantum_core.hpp"

namespace twprobe {

struct FaradayConfig {
    double chi = 0.0;       // polarization rotation per slice (dimensionless)
    double alpha_sq = 0.0;  // mean photons per slice
    double dt = 1.0;        // slice duration
    double kappa = 0.0;     // |alpha|^2 sin^2(chi) / dt

    static FaradayConfig make(double chi, double alpha_sq, double dt);
    void validate() const;

    // Non-fatal regime notes: perturbative validity (chi^2 |alpha|^2 per
    // slice above 1e-3) and the |alpha|^2 << 1 expansion assumption.
    std::vector<std::string> regime_notes() const;
};

// Coherence multiplied by e^{-2 |alpha|^2 sin^2 chi}; populations unchanged
// exactly. Qubit only.
DensityMatrix exact_slice_map(const DensityMatrix& rho, const FaradayConfig& cfg);

// rho' = rho + |alpha|^2 [ -rho + sin(chi sz) rho sin(chi sz)
//                          + cos(chi sz) rho cos(chi sz) ].
DensityMatrix perturbative_slice_map(const DensityMatrix& rho, const FaradayConfig& cfg);

// Kraus pair {sqrt((1+f)/2) I, sqrt((1-f)/2) sigma_z} realizing the exact
// slice map as a channel, f = e^{-2 |alpha|^2 sin^2 chi}.
std::vector<Matrix> slice_kraus_ops(const FaradayConfig& cfg);

// H = 0, single jump sqrt(kappa) sigma_z; evolves coherences as e^{-2 kappa t}
// and leaves every sigma_z-diagonal state fixed.
LindbladGenerator build_dephasing_generator(double kappa);

} // namespace twprobe
