// Large-n Fock pulse treated as a single effective mode: Jaynes-Cummings
// dynamics in the n-excitation manifold at g_eff sqrt(n), plus the regime
// check for when ignoring all initially unoccupied modes is consistent.
//
// No Markov measurement strength is exposed here: the Fock pulse is entangled
// across slices, so it belongs to the system side, not the environment.
#pragma once

#include <complex>

#include "twprobe/errors.hpp"

namespace twprobe {

struct JCManifoldState {
    long n = 1;                       // photon number of the manifold
    std::complex<double> c_g{1, 0};   // amplitude of |g, n>
    std::complex<double> c_e{0, 0};   // amplitude of |e, n-1>

    double p_e() const { return std::norm(c_e); }
    double norm_sq() const { return std::norm(c_g) + std::norm(c_e); }
};

// c_g = cos(g_eff sqrt(n) t), c_e = -i sin(g_eff sqrt(n) t).
JCManifoldState jc_evolve(long n, double g_eff, double t);

struct OscillationRegime {
    bool satisfied = false;   // margin >= 1
    double margin = 0.0;      // n gamma tau / (A / sigma_eff) = n kappa tau
    bool single_mode_valid = false;  // gamma tau below the Markov caveat threshold
    double gamma_tau = 0.0;
};

// Checks n Gamma tau >= A/sigma_eff (equivalently g_eff sqrt(n) >= 1/tau) and
// flags the single-mode treatment invalid once gamma*tau reaches the
// threshold (default 0.1, the working cutoff for "gamma tau << 1").
OscillationRegime oscillation_regime_check(long n, double gamma_total, double tau,
                                           double area_over_sigma_eff,
                                           double markov_threshold = 0.1);

} // namespace twprobe
