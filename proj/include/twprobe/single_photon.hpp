// Single-photon square pulse driving a ground-state atom: exact discrete
// recursion in the one-excitation sector of the coarse-grained mode ladder,
// continuum closed forms for the excited amplitude, and the optimal pulse
// length solving d P_e(tau) / d tau = 0.
//
// Emitted-field amplitudes (modes already passed) are retained so the norm
// audit is exact; modes not yet arrived keep their initial amplitudes, which
// doubles as the causality check.
#pragma once

#include <complex>
#include <vector>

#include "twprobe/errors.hpp"

namespace twprobe {

using PhotonAmplitude = std::complex<double>;

struct SinglePhotonState {
    std::vector<PhotonAmplitude> a_modes;  // A_j, one amplitude per slice mode
    PhotonAmplitude a_e{0.0, 0.0};         // excited-state amplitude A_e
    long k = 0;                            // slices consumed so far
    double dt = 0.0;
    double kappa = 0.0;
    double gamma_np = 0.0;  // spontaneous emission into non-paraxial modes

    // Cached per-run slice constants: sin/cos of sqrt(kappa*dt) and the
    // non-paraxial damping factor exp(-gamma_np*dt/2).
    double slice_sin = 0.0;
    double slice_cos = 1.0;
    double slice_damp = 1.0;

    long n_slices() const { return static_cast<long>(a_modes.size()); }
    double tau() const { return static_cast<double>(n_slices()) * dt; }
    double gamma_total() const { return kappa + gamma_np; }
    double norm_sq() const;
    double p_e() const { return std::norm(a_e); }
};

// Square pulse: A_j = 1/sqrt(N) for every mode, atom in the ground state.
SinglePhotonState init_square_pulse(long n_slices, double dt, double kappa, double gamma_np);

// Custom amplitude hook (e.g. vacuum field with the atom excited). The
// amplitudes are taken as given; only finiteness is checked.
SinglePhotonState init_custom_pulse(std::vector<PhotonAmplitude> a_modes, PhotonAmplitude a_e,
                                    double dt, double kappa, double gamma_np);

// One slice of the recursion:
//   A_k'  = A_k c - i A_e s
//   A_e'  = A_e c e^{-gamma_np dt/2} - i A_k s
// with s = sin(sqrt(kappa dt)), c = cos(sqrt(kappa dt)); all other modes
// untouched. Throws when stepping past the pulse end.
SinglePhotonState step_recursion(const SinglePhotonState& state);

// After the pulse the excitation can only decay: A_e picks up
// e^{-(kappa+gamma_np) t_elapsed / 2}, mode amplitudes frozen.
SinglePhotonState post_pulse_decay(const SinglePhotonState& state, double t_elapsed);

struct PhotonTrajectory {
    std::vector<double> t;
    std::vector<PhotonAmplitude> a_e;
    std::vector<double> p_e;
    std::vector<double> norm_sq;
};

// Exact discrete trajectory sampled on the slice grid, continued past the
// pulse end by pure decay up to t_final.
PhotonTrajectory run_recursion(long n_slices, double dt, double kappa, double gamma_np,
                               double t_final);

enum class ClosedFormVariant {
    no_spont,  // paraxial modes only: A_e = -(2i/sqrt(kappa tau)) (1 - e^{-kappa t/2})
    full       // with spontaneous emission: A_e = -(2i/Gamma) sqrt(kappa/tau) (1 - e^{-Gamma t/2})
};

// Continuum-limit excited amplitude during the pulse (0 <= t <= tau).
PhotonAmplitude closed_form_a_e(double t, double kappa, double gamma_total, double tau,
                                ClosedFormVariant variant);

// Continuum excitation probability P_e(t) = 4 kappa/(Gamma^2 tau) (1-e^{-Gamma t/2})^2.
double closed_form_p_e(double t, double kappa, double gamma_total, double tau);

struct PulseOptimum {
    double tau_star;  // maximizing pulse duration, Gamma tau ~ 2.5
    double p_e_star;  // P_e(tau_star)
};

// Solves 2 x e^{-x} = 1 - e^{-x} (x = Gamma tau / 2) by bracketing bisection
// to 1e-10 and evaluates the closed-form probability there.
PulseOptimum optimize_pulse_length(double kappa, double gamma_total);

} // namespace twprobe
