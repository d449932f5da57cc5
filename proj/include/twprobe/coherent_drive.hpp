// Coherent-state beam driving a two-level atom. In the displaced picture the
// probe splits into a classical Rabi drive Omega = 2 g alpha plus vacuum
// coupling of the traveling modes, giving a driven-decaying-atom master
// equation with decay rate kappa.
//
// simulate_slicewise_coherent is the first-principles oracle: no displacement
// and no Markov expansion, just the exact unitary for each slice mode in a
// truncated Fock space followed by a partial trace.
#pragma once

#include <string>
#include <vector>

#include "twprobe/quantum_core.hpp"

namespace twprobe {

struct DrivenAtomConfig {
    double rabi = 0.0;         // Omega
    double kappa = 0.0;        // measurement strength
    double extra_decay = 0.0;  // optional gamma' = Gamma - kappa for full physical decay

    void validate() const;
};

// H/hbar = (Omega/2)(sigma+ + sigma-), jumps sqrt(kappa) sigma- and, when
// extra_decay > 0, sqrt(gamma') sigma-.
LindbladGenerator build_driven_generator(const DrivenAtomConfig& cfg);

struct SliceOracleConfig {
    Complex alpha{0.0, 0.0};  // per-slice coherent amplitude
    double g_dt = 0.0;        // dimensionless slice coupling angle sqrt(kappa*dt)
    long n_slices = 1;
    int fock_cutoff = 0;      // highest retained Fock level n_max
    double dt = 1.0;          // slice duration, used only for the time axis

    // Smallest cutoff the |alpha|^2 + 5 sigma rule allows.
    static int cutoff_rule(Complex alpha);
    void validate() const;
};

struct SliceOracleRun {
    Trajectory traj;                     // reduced atom state after each slice
    double max_truncation_deficit = 0.0; // coherent-state tail weight dropped
    std::vector<std::string> warnings;
};

// Per slice: atom (x) mode space with the mode in a truncated |alpha>, exact
// unitary exp(-i g_dt (sigma+ a + sigma- a^dag)), partial trace over the
// mode. Throws NumericError if the truncation deficit exceeds 1e-8.
SliceOracleRun simulate_slicewise_coherent(const SliceOracleConfig& cfg, const DensityMatrix& rho0);

} // namespace twprobe
