#include "twprobe/single_photon.hpp"

#include <cmath>
#include <sstream>

namespace twprobe {

namespace {

const PhotonAmplitude kImag{0.0, 1.0};

void fill_slice_constants(SinglePhotonState& st) {
    const double angle = std::sqrt(st.kappa * st.dt);
    st.slice_sin = std::sin(angle);
    st.slice_cos = std::cos(angle);
    st.slice_damp = std::exp(-0.5 * st.gamma_np * st.dt);
}

void advance_in_place(SinglePhotonState& st) {
    if (st.k >= st.n_slices())
        throw std::logic_error(
            "step_recursion: pulse already consumed; use post_pulse_decay for t > tau");
    const PhotonAmplitude a_k = st.a_modes[static_cast<size_t>(st.k)];
    const PhotonAmplitude a_e = st.a_e;
    st.a_modes[static_cast<size_t>(st.k)] = a_k * st.slice_cos - kImag * a_e * st.slice_sin;
    st.a_e = a_e * st.slice_cos * st.slice_damp - kImag * a_k * st.slice_sin;
    ++st.k;
}

} // namespace

double SinglePhotonState::norm_sq() const {
    double s = std::norm(a_e);
    for (const auto& a : a_modes) s += std::norm(a);
    return s;
}

SinglePhotonState init_square_pulse(long n_slices, double dt, double kappa, double gamma_np) {
    if (n_slices < 1) throw ConfigError("init_square_pulse: n_slices must be >= 1");
    if (!(dt > 0)) throw ConfigError("init_square_pulse: dt must be > 0");
    if (!(kappa >= 0) || !(gamma_np >= 0))
        throw ConfigError("init_square_pulse: rates must be >= 0");
    SinglePhotonState st;
    st.a_modes.assign(static_cast<size_t>(n_slices),
                      PhotonAmplitude{1.0 / std::sqrt(static_cast<double>(n_slices)), 0.0});
    st.dt = dt;
    st.kappa = kappa;
    st.gamma_np = gamma_np;
    fill_slice_constants(st);
    return st;
}

SinglePhotonState init_custom_pulse(std::vector<PhotonAmplitude> a_modes, PhotonAmplitude a_e,
                                    double dt, double kappa, double gamma_np) {
    if (a_modes.empty()) throw ConfigError("init_custom_pulse: need at least one mode");
    if (!(dt > 0)) throw ConfigError("init_custom_pulse: dt must be > 0");
    if (!(kappa >= 0) || !(gamma_np >= 0))
        throw ConfigError("init_custom_pulse: rates must be >= 0");
    for (const auto& a : a_modes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw ConfigError("init_custom_pulse: non-finite amplitude");
    SinglePhotonState st;
    st.a_modes = std::move(a_modes);
    st.a_e = a_e;
    st.dt = dt;
    st.kappa = kappa;
    st.gamma_np = gamma_np;
    fill_slice_constants(st);
    return st;
}

SinglePhotonState step_recursion(const SinglePhotonState& state) {
    SinglePhotonState next = state;
    advance_in_place(next);
    return next;
}

SinglePhotonState post_pulse_decay(const SinglePhotonState& state, double t_elapsed) {
    if (t_elapsed < 0) throw std::invalid_argument("post_pulse_decay: negative time");
    SinglePhotonState next = state;
    next.a_e *= std::exp(-0.5 * state.gamma_total() * t_elapsed);
    return next;
}

PhotonTrajectory run_recursion(long n_slices, double dt, double kappa, double gamma_np,
                               double t_final) {
    if (t_final < 0) throw ConfigError("run_recursion: t_final must be >= 0");
    SinglePhotonState st = init_square_pulse(n_slices, dt, kappa, gamma_np);

    PhotonTrajectory out;
    auto record = [&out](double t, const SinglePhotonState& s) {
        out.t.push_back(t);
        out.a_e.push_back(s.a_e);
        out.p_e.push_back(s.p_e());
        out.norm_sq.push_back(s.norm_sq());
    };
    record(0.0, st);

    // Samples stay on the slice grid t_k = k dt throughout.
    const long n_total = static_cast<long>(std::floor(t_final / dt + 1e-9));
    const long n_pulse = std::min(n_total, n_slices);
    for (long k = 1; k <= n_pulse; ++k) {
        advance_in_place(st);
        record(static_cast<double>(k) * dt, st);
    }

    if (n_total > n_slices) {
        const double decay = std::exp(-0.5 * st.gamma_total() * dt);
        SinglePhotonState tail = st;
        for (long k = n_slices + 1; k <= n_total; ++k) {
            tail.a_e *= decay;
            record(static_cast<double>(k) * dt, tail);
        }
    }
    return out;
}

PhotonAmplitude closed_form_a_e(double t, double kappa, double gamma_total, double tau,
                                ClosedFormVariant variant) {
    if (!(tau > 0)) throw std::invalid_argument("closed_form_a_e: tau must be > 0");
    if (t < 0 || t > tau)
        throw std::invalid_argument("closed_form_a_e: closed forms hold only for 0 <= t <= tau");
    if (!(kappa >= 0)) throw std::invalid_argument("closed_form_a_e: kappa must be >= 0");

    double rate = 0.0;
    switch (variant) {
        case ClosedFormVariant::no_spont:
            rate = kappa;
            break;
        case ClosedFormVariant::full:
            if (gamma_total < kappa)
                throw std::invalid_argument("closed_form_a_e: full variant requires gamma_total >= kappa");
            rate = gamma_total;
            break;
    }
    if (rate == 0.0) return {0.0, 0.0};
    const double mag = (2.0 / rate) * std::sqrt(kappa / tau) * (1.0 - std::exp(-0.5 * rate * t));
    return {0.0, -mag};
}

double closed_form_p_e(double t, double kappa, double gamma_total, double tau) {
    return std::norm(closed_form_a_e(t, kappa, gamma_total, tau, ClosedFormVariant::full));
}

PulseOptimum optimize_pulse_length(double kappa, double gamma_total) {
    if (!(gamma_total > 0)) throw std::invalid_argument("optimize_pulse_length: gamma_total must be > 0");
    if (!(kappa >= 0)) throw std::invalid_argument("optimize_pulse_length: kappa must be >= 0");

    // Stationarity of P_e(tau) in x = gamma tau / 2: 2 x e^{-x} = 1 - e^{-x}.
    auto f = [](double x) { return 2.0 * x * std::exp(-x) - 1.0 + std::exp(-x); };
    double lo = 1.0, hi = 2.0;
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0))
        throw NumericError("optimize_pulse_length: bisection bracket invalid");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x_star = 0.5 * (lo + hi);

    PulseOptimum opt;
    opt.tau_star = 2.0 * x_star / gamma_total;
    opt.p_e_star = closed_form_p_e(opt.tau_star, kappa, gamma_total, opt.tau_star);
    return opt;
}

} // namespace twprobe
