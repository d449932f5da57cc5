#include "twprobe/fock_pulse.hpp"

#include <cmath>

namespace twprobe {

JCManifoldState jc_evolve(long n, double g_eff, double t) {
    if (n < 1) throw std::invalid_argument("jc_evolve: n = 0 has no dynamics");
    if (!(g_eff >= 0)) throw std::invalid_argument("jc_evolve: g_eff must be >= 0");
    if (t < 0) throw std::invalid_argument("jc_evolve: t must be >= 0");
    const double phase = g_eff * std::sqrt(static_cast<double>(n)) * t;
    JCManifoldState st;
    st.n = n;
    st.c_g = {std::cos(phase), 0.0};
    st.c_e = {0.0, -std::sin(phase)};
    return st;
}

OscillationRegime oscillation_regime_check(long n, double gamma_total, double tau,
                                           double area_over_sigma_eff, double markov_threshold) {
    if (n < 1 || !(gamma_total > 0) || !(tau > 0) || !(area_over_sigma_eff > 0))
        throw std::invalid_argument("oscillation_regime_check: all inputs must be positive");
    OscillationRegime r;
    r.gamma_tau = gamma_total * tau;
    r.margin = static_cast<double>(n) * r.gamma_tau / area_over_sigma_eff;
    r.satisfied = r.margin >= 1.0;
    r.single_mode_valid = r.gamma_tau < markov_threshold;
    return r;
}

} // namespace twprobe
