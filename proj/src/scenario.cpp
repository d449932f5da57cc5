#include "twprobe/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "twprobe/coherent_drive.hpp"
#include "twprobe/faraday_qnd.hpp"
#include "twprobe/fock_pulse.hpp"
#include "twprobe/model_params.hpp"
#include "twprobe/quantum_core.hpp"
#include "twprobe/single_photon.hpp"

namespace twprobe {

namespace {

struct KeyRule {
    const char* key;
    bool required;
};

// Per-scenario key tables. "gamma" (base rate unit, default 1), "output",
// "format" and "seed" are accepted everywhere.
const std::vector<KeyRule>& rules_for(ScenarioKind kind) {
    static const std::vector<KeyRule> single_photon = {
        {"kappa_over_gamma", true}, {"gamma_tau", true}, {"n_slices", true}, {"t_final", false},
    };
    static const std::vector<KeyRule> coherent = {
        {"rabi", true},    {"kappa", true}, {"extra_decay", false},
        {"t_final", false}, {"step", false}, {"sample_every", false},
    };
    static const std::vector<KeyRule> fock = {
        {"n_photons", true}, {"kappa_over_gamma", true},      {"gamma_tau", true},
        {"t_final", false},  {"area_over_sigma_eff", false},  {"n_samples", false},
    };
    static const std::vector<KeyRule> faraday = {
        {"t_final", true},   {"kappa", false}, {"chi", false}, {"alpha_sq", false},
        {"dt", false},       {"step", false},  {"sample_every", false},
    };
    static const std::vector<KeyRule> oracle = {
        {"kappa", true}, {"dt", true}, {"alpha_sq", true}, {"n_slices", true},
        {"fock_cutoff", false},
    };
    switch (kind) {
        case ScenarioKind::single_photon: return single_photon;
        case ScenarioKind::coherent_drive: return coherent;
        case ScenarioKind::fock_pulse: return fock;
        case ScenarioKind::faraday: return faraday;
        case ScenarioKind::oracle_compare: return oracle;
    }
    throw std::logic_error("rules_for: unreachable");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& section, const std::string& key, const std::string& value) {
    const char* begin = value.data();
    const char* end = begin + value.size();
    double out = 0;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        std::ostringstream os;
        os << "section [" << section << "]: key '" << key << "' expects a finite number, got '"
           << value << "'";
        throw ConfigError(os.str());
    }
    return out;
}

long as_count(const std::string& section, const std::string& key, double v, long min_value) {
    if (std::floor(v) != v || v < static_cast<double>(min_value) || v > 1e12) {
        std::ostringstream os;
        os << "section [" << section << "]: key '" << key << "' expects an integer >= " << min_value
           << ", got " << v;
        throw ConfigError(os.str());
    }
    return static_cast<long>(v);
}

void require_range(const std::string& section, const std::string& key, double v, bool positive) {
    if (positive ? !(v > 0) : !(v >= 0)) {
        std::ostringstream os;
        os << "section [" << section << "]: key '" << key << "' must be "
           << (positive ? "> 0" : ">= 0") << ", got " << v;
        throw ConfigError(os.str());
    }
}

void validate_values(ScenarioConfig& cfg) {
    const std::string& sec = cfg.name;
    auto has = [&](const char* k) { return cfg.params.count(k) != 0; };
    auto get = [&](const char* k) { return cfg.params.at(k); };

    require_range(sec, "gamma", get("gamma"), true);

    for (const char* k : {"kappa", "kappa_over_gamma", "rabi", "extra_decay", "alpha_sq", "t_final"})
        if (has(k)) require_range(sec, k, get(k), false);
    for (const char* k : {"gamma_tau", "dt", "step", "area_over_sigma_eff"})
        if (has(k)) require_range(sec, k, get(k), true);

    for (const char* k : {"n_slices", "n_photons"})
        if (has(k)) cfg.params[k] = static_cast<double>(as_count(sec, k, get(k), 1));
    for (const char* k : {"n_samples", "sample_every"})
        if (has(k)) cfg.params[k] = static_cast<double>(as_count(sec, k, get(k), 1));
    if (has("fock_cutoff"))
        cfg.params["fock_cutoff"] =
            static_cast<double>(as_count(sec, "fock_cutoff", get("fock_cutoff"), 0));

    switch (cfg.scenario) {
        case ScenarioKind::single_photon:
            if (get("kappa_over_gamma") > 1.0)
                throw ConfigError("section [" + sec +
                                  "]: kappa_over_gamma must be <= 1 (kappa cannot exceed gamma)");
            break;
        case ScenarioKind::fock_pulse:
            if (has("t_final")) require_range(sec, "t_final", get("t_final"), true);
            break;
        case ScenarioKind::faraday:
            if (!has("kappa") && !(has("chi") && has("alpha_sq") && has("dt")))
                throw ConfigError("section [" + sec +
                                  "]: missing required key 'kappa' (or the chi + alpha_sq + dt "
                                  "trio) for scenario 'faraday'");
            break;
        default:
            break;
    }
}

void apply_defaults(ScenarioConfig& cfg) {
    auto def = [&](const char* k, double v) { cfg.params.emplace(k, v); };
    def("gamma", 1.0);
    const double gamma = cfg.params.at("gamma");

    switch (cfg.scenario) {
        case ScenarioKind::single_photon:
            if (cfg.params.count("gamma_tau")) def("t_final", cfg.params.at("gamma_tau") / gamma);
            break;
        case ScenarioKind::coherent_drive:
            def("extra_decay", 0.0);
            def("t_final", 10.0 / gamma);
            def("step", 1e-3 / gamma);
            def("sample_every", 1.0);
            break;
        case ScenarioKind::fock_pulse:
            if (cfg.params.count("gamma_tau")) def("t_final", cfg.params.at("gamma_tau") / gamma);
            def("n_samples", 400.0);
            break;
        case ScenarioKind::faraday: {
            double step = 1e-3 / gamma;
            if (cfg.params.count("dt")) step = std::min(step, cfg.params.at("dt"));
            def("step", step);
            def("sample_every", 1.0);
            break;
        }
        case ScenarioKind::oracle_compare:
            if (cfg.params.count("alpha_sq"))
                def("fock_cutoff", static_cast<double>(SliceOracleConfig::cutoff_rule(
                                       std::sqrt(std::max(0.0, cfg.params.at("alpha_sq"))))));
            break;
    }
}

void put_num(TimeSeries& ts, const std::string& key, double v) {
    ts.metadata[key] = format_double(v);
}

void put_derived(TimeSeries& ts, const std::string& key, double v, const std::string& formula) {
    put_num(ts, key, v);
    ts.metadata[key + "_formula"] = formula;
}

void put_inputs(TimeSeries& ts, const ScenarioConfig& cfg) {
    ts.metadata["scenario"] = scenario_name(cfg.scenario);
    ts.metadata["run"] = cfg.name;
    ts.metadata["seed"] = std::to_string(cfg.seed);
    for (const auto& [k, v] : cfg.params) put_num(ts, k, v);
}

// kappa/gamma is the same ratio as sigma_eff/A, so the scenario keys feed the
// coupling derivations directly.
DerivedCouplings couplings_from_ratio(double gamma, double kappa_over_gamma,
                                      const CoarseGraining& grid) {
    AtomParams atom;
    atom.gamma_total = gamma;
    BeamParams beam;
    beam.sigma_eff_over_area = kappa_over_gamma;
    return derive_resonant(atom, beam, grid);
}

TimeSeries run_single_photon(const ScenarioConfig& cfg) {
    const double gamma = cfg.params.at("gamma");
    const double kog = cfg.params.at("kappa_over_gamma");
    const long n_slices = static_cast<long>(cfg.params.at("n_slices"));
    const double tau = cfg.params.at("gamma_tau") / gamma;
    const double dt = tau / static_cast<double>(n_slices);
    const DerivedCouplings c = couplings_from_ratio(gamma, kog, {dt, n_slices});
    const double kappa = *c.kappa_resonant;
    const double gamma_np = gamma - kappa;
    const double g_eff = *c.g_eff;
    const double t_final = cfg.params.at("t_final");

    PhotonTrajectory traj = run_recursion(n_slices, dt, kappa, gamma_np, t_final);

    TimeSeries ts;
    ts.names = {"t", "P_e", "Re_A_e", "Im_A_e", "P_e_jc", "norm"};
    ts.cols.assign(6, {});
    for (size_t i = 0; i < traj.t.size(); ++i) {
        const double t = traj.t[i];
        ts.cols[0].push_back(t);
        ts.cols[1].push_back(traj.p_e[i]);
        ts.cols[2].push_back(traj.a_e[i].real());
        ts.cols[3].push_back(traj.a_e[i].imag());
        // Single-mode cavity comparison: quantum Rabi flopping of one photon.
        const double s = std::sin(g_eff * t);
        ts.cols[4].push_back(s * s);
        ts.cols[5].push_back(traj.norm_sq[i]);
    }
    put_inputs(ts, cfg);
    put_derived(ts, "kappa", kappa, "kappa = kappa_over_gamma * gamma");
    put_derived(ts, "tau", tau, "tau = gamma_tau / gamma");
    put_derived(ts, "dt", dt, "dt = tau / n_slices");
    put_derived(ts, "gamma_np", gamma_np, "gamma_np = gamma - kappa");
    put_derived(ts, "g_eff", g_eff, "g_eff = sqrt(kappa / tau)");
    return ts;
}

TimeSeries run_coherent_drive(const ScenarioConfig& cfg) {
    DrivenAtomConfig dc;
    dc.rabi = cfg.params.at("rabi");
    dc.kappa = cfg.params.at("kappa");
    dc.extra_decay = cfg.params.at("extra_decay");
    const LindbladGenerator gen = build_driven_generator(dc);

    const Trajectory traj =
        evolve_lindblad(DensityMatrix::pure(ket_g()), gen, cfg.params.at("t_final"),
                        cfg.params.at("step"), static_cast<long>(cfg.params.at("sample_every")));

    const Matrix sz = sigma_z();
    TimeSeries ts;
    ts.names = {"t", "P_e", "Re_rho_01", "Im_rho_01", "sigma_z", "norm"};
    ts.cols.assign(6, {});
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix& rho = traj.states[i];
        ts.cols[0].push_back(traj.times[i]);
        ts.cols[1].push_back(rho.population(0));
        ts.cols[2].push_back(rho.coherence(0, 1).real());
        ts.cols[3].push_back(rho.coherence(0, 1).imag());
        ts.cols[4].push_back(rho.expectation(sz));
        ts.cols[5].push_back(rho.m().trace().real());
    }
    put_inputs(ts, cfg);
    put_derived(ts, "total_decay", dc.kappa + dc.extra_decay, "total_decay = kappa + extra_decay");
    return ts;
}

TimeSeries run_fock_pulse(const ScenarioConfig& cfg) {
    const double gamma = cfg.params.at("gamma");
    const long n_photons = static_cast<long>(cfg.params.at("n_photons"));
    const double tau = cfg.params.at("gamma_tau") / gamma;
    const DerivedCouplings c = couplings_from_ratio(gamma, cfg.params.at("kappa_over_gamma"),
                                                    {tau, 1});
    const double kappa = *c.kappa_resonant;
    const double g_eff = *c.g_eff;
    const double t_final = cfg.params.at("t_final");
    const long n_samples = static_cast<long>(cfg.params.at("n_samples"));

    TimeSeries ts;
    ts.names = {"t", "P_e", "Re_c_g", "norm"};
    ts.cols.assign(4, {});
    for (long k = 0; k <= n_samples; ++k) {
        const double t = t_final * static_cast<double>(k) / static_cast<double>(n_samples);
        const JCManifoldState st = jc_evolve(n_photons, g_eff, t);
        ts.cols[0].push_back(t);
        ts.cols[1].push_back(st.p_e());
        ts.cols[2].push_back(st.c_g.real());
        ts.cols[3].push_back(st.norm_sq());
    }
    put_inputs(ts, cfg);
    put_derived(ts, "kappa", kappa, "kappa = kappa_over_gamma * gamma");
    put_derived(ts, "tau", tau, "tau = gamma_tau / gamma");
    put_derived(ts, "g_eff", g_eff, "g_eff = sqrt(kappa / tau)");
    put_derived(ts, "rabi_frequency", g_eff * std::sqrt(static_cast<double>(n_photons)),
                "rabi_frequency = g_eff * sqrt(n_photons)");
    if (cfg.params.count("area_over_sigma_eff")) {
        const OscillationRegime reg = oscillation_regime_check(
            n_photons, gamma, tau, cfg.params.at("area_over_sigma_eff"));
        put_derived(ts, "oscillation_margin", reg.margin,
                    "oscillation_margin = n_photons * gamma * tau / area_over_sigma_eff");
        ts.metadata["oscillation_regime_satisfied"] = reg.satisfied ? "true" : "false";
        ts.metadata["single_mode_valid"] = reg.single_mode_valid ? "true" : "false";
    }
    return ts;
}

TimeSeries run_faraday(const ScenarioConfig& cfg) {
    double kappa = 0.0;
    const bool derived_kappa = cfg.params.count("kappa") == 0;
    if (derived_kappa) {
        const FaradayConfig fc = FaradayConfig::make(cfg.params.at("chi"), cfg.params.at("alpha_sq"),
                                                     cfg.params.at("dt"));
        kappa = fc.kappa;
    } else {
        kappa = cfg.params.at("kappa");
    }

    const LindbladGenerator gen = build_dephasing_generator(kappa);
    const Trajectory traj =
        evolve_lindblad(DensityMatrix::pure(ket_plus()), gen, cfg.params.at("t_final"),
                        cfg.params.at("step"), static_cast<long>(cfg.params.at("sample_every")));

    const Matrix sz = sigma_z();
    TimeSeries ts;
    ts.names = {"t", "Re_rho_01", "Im_rho_01", "abs_rho_01", "sigma_z", "norm"};
    ts.cols.assign(6, {});
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix& rho = traj.states[i];
        ts.cols[0].push_back(traj.times[i]);
        ts.cols[1].push_back(rho.coherence(0, 1).real());
        ts.cols[2].push_back(rho.coherence(0, 1).imag());
        ts.cols[3].push_back(std::abs(rho.coherence(0, 1)));
        ts.cols[4].push_back(rho.expectation(sz));
        ts.cols[5].push_back(rho.m().trace().real());
    }
    put_inputs(ts, cfg);
    if (derived_kappa)
        put_derived(ts, "kappa", kappa, "kappa = alpha_sq * sin(chi)^2 / dt");
    else
        put_num(ts, "kappa", kappa);
    return ts;
}

TimeSeries run_oracle_compare(const ScenarioConfig& cfg) {
    const double kappa = cfg.params.at("kappa");
    const double dt = cfg.params.at("dt");
    const double alpha_sq = cfg.params.at("alpha_sq");
    const long n_slices = static_cast<long>(cfg.params.at("n_slices"));

    SliceOracleConfig sc;
    sc.alpha = Complex{std::sqrt(alpha_sq), 0.0};
    sc.g_dt = std::sqrt(kappa * dt);
    sc.n_slices = n_slices;
    sc.fock_cutoff = static_cast<int>(cfg.params.at("fock_cutoff"));
    sc.dt = dt;

    const DensityMatrix rho0 = DensityMatrix::pure(ket_g());
    const SliceOracleRun oracle = simulate_slicewise_coherent(sc, rho0);

    DrivenAtomConfig dc;
    dc.rabi = 2.0 * std::sqrt(kappa * alpha_sq / dt);
    dc.kappa = kappa;
    const LindbladGenerator gen = build_driven_generator(dc);
    const long refine = 20;
    const Trajectory ref = evolve_lindblad(rho0, gen, static_cast<double>(n_slices) * dt,
                                           dt / static_cast<double>(refine), refine);
    if (ref.states.size() != oracle.traj.states.size())
        throw NumericError("oracle-compare: sample grids diverged");

    TimeSeries ts;
    ts.names = {"t", "P_e_slicewise", "P_e_lindblad", "trace_distance"};
    ts.cols.assign(4, {});
    double max_dist = 0.0;
    for (size_t i = 0; i < oracle.traj.times.size(); ++i) {
        const double d = trace_distance(oracle.traj.states[i], ref.states[i]);
        max_dist = std::max(max_dist, d);
        ts.cols[0].push_back(oracle.traj.times[i]);
        ts.cols[1].push_back(oracle.traj.states[i].population(0));
        ts.cols[2].push_back(ref.states[i].population(0));
        ts.cols[3].push_back(d);
    }
    put_inputs(ts, cfg);
    put_derived(ts, "g_dt", sc.g_dt, "g_dt = sqrt(kappa * dt)");
    put_derived(ts, "rabi", dc.rabi, "rabi = 2 * sqrt(kappa * alpha_sq / dt)");
    put_derived(ts, "max_trace_distance", max_dist,
                "max_trace_distance = max_t T(rho_slicewise, rho_lindblad)");
    put_num(ts, "truncation_deficit", oracle.max_truncation_deficit);
    if (!oracle.warnings.empty()) {
        std::string joined;
        for (const auto& w : oracle.warnings) {
            if (!joined.empty()) joined += "; ";
            joined += w;
        }
        ts.metadata["warnings"] = joined;
    }
    return ts;
}

} // namespace

ScenarioKind scenario_from_name(const std::string& name) {
    if (name == "coherent-drive") return ScenarioKind::coherent_drive;
    if (name == "single-photon") return ScenarioKind::single_photon;
    if (name == "fock-pulse") return ScenarioKind::fock_pulse;
    if (name == "faraday") return ScenarioKind::faraday;
    if (name == "oracle-compare") return ScenarioKind::oracle_compare;
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::coherent_drive: return "coherent-drive";
        case ScenarioKind::single_photon: return "single-photon";
        case ScenarioKind::fock_pulse: return "fock-pulse";
        case ScenarioKind::faraday: return "faraday";
        case ScenarioKind::oracle_compare: return "oracle-compare";
    }
    throw std::logic_error("scenario_name: unreachable");
}

std::vector<ScenarioConfig> parse_config(const std::string& text) {
    struct RawSection {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;
    };
    std::vector<RawSection> sections;
    std::set<std::string> seen_names;

    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (name.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
            if (!seen_names.insert(name).second)
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate section [" + name + "]");
            sections.push_back({name, {}});
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        if (sections.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": key outside of any [section]");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        sections.back().entries.emplace_back(key, value);
    }
    if (sections.empty()) throw ConfigError("config contains no [section]");

    std::vector<ScenarioConfig> out;
    for (const RawSection& raw : sections) {
        ScenarioConfig cfg;
        cfg.name = raw.name;

        std::string scenario_str;
        for (const auto& [key, value] : raw.entries) {
            if (key == "scenario") {
                scenario_str = value;
            }
        }
        if (scenario_str.empty())
            throw ConfigError("section [" + raw.name + "]: missing required key 'scenario'");
        cfg.scenario = scenario_from_name(scenario_str);

        const std::vector<KeyRule>& rules = rules_for(cfg.scenario);
        auto find_rule = [&rules](const std::string& k) -> const KeyRule* {
            for (const auto& r : rules)
                if (k == r.key) return &r;
            return nullptr;
        };

        for (const auto& [key, value] : raw.entries) {
            if (key == "scenario") continue;
            if (key == "output") {
                cfg.output = value;
                continue;
            }
            if (key == "format") {
                cfg.format = parse_format(value);
                continue;
            }
            if (key == "seed") {
                cfg.seed = as_count(raw.name, key, parse_number(raw.name, key, value), 0);
                continue;
            }
            if (key == "gamma") {
                cfg.params["gamma"] = parse_number(raw.name, key, value);
                continue;
            }
            const KeyRule* rule = find_rule(key);
            if (!rule) {
                throw ConfigError("section [" + raw.name + "]: unknown key '" + key +
                                  "' for scenario '" + scenario_name(cfg.scenario) + "'");
            }
            if (cfg.params.count(key))
                throw ConfigError("section [" + raw.name + "]: duplicate key '" + key + "'");
            cfg.params[key] = parse_number(raw.name, key, value);
        }

        for (const KeyRule& r : rules) {
            if (r.required && cfg.params.count(r.key) == 0)
                throw ConfigError("section [" + raw.name + "]: missing required key '" +
                                  std::string(r.key) + "' for scenario '" +
                                  scenario_name(cfg.scenario) + "'");
        }

        apply_defaults(cfg);
        validate_values(cfg);
        if (cfg.output.empty())
            cfg.output = cfg.name + (cfg.format == OutputFormat::csv ? ".csv" : ".json");
        out.push_back(std::move(cfg));
    }
    return out;
}

std::vector<ScenarioHelp> scenario_help() {
    std::vector<ScenarioHelp> help;
    const std::pair<ScenarioKind, const char*> summaries[] = {
        {ScenarioKind::coherent_drive,
         "driven decaying atom: H = (rabi/2)(s+ + s-), jumps sqrt(kappa) s-"},
        {ScenarioKind::single_photon,
         "square single-photon pulse exciting a ground-state atom (exact recursion)"},
        {ScenarioKind::fock_pulse, "n-photon Fock pulse as a single mode: JC flopping at g_eff sqrt(n)"},
        {ScenarioKind::faraday, "QND dephasing of sigma_z coherence at rate 2*kappa"},
        {ScenarioKind::oracle_compare,
         "slicewise coherent-beam simulation vs the driven-atom master equation"},
    };
    for (const auto& [kind, summary] : summaries) {
        ScenarioHelp h;
        h.name = scenario_name(kind);
        h.summary = summary;
        for (const KeyRule& r : rules_for(kind))
            (r.required ? h.required_keys : h.optional_keys).push_back(r.key);
        for (const char* k : {"gamma", "output", "format", "seed"}) h.optional_keys.push_back(k);
        help.push_back(std::move(h));
    }
    return help;
}

TimeSeries run_scenario(const ScenarioConfig& cfg) {
    TimeSeries ts;
    try {
        switch (cfg.scenario) {
            case ScenarioKind::single_photon: ts = run_single_photon(cfg); break;
            case ScenarioKind::coherent_drive: ts = run_coherent_drive(cfg); break;
            case ScenarioKind::fock_pulse: ts = run_fock_pulse(cfg); break;
            case ScenarioKind::faraday: ts = run_faraday(cfg); break;
            case ScenarioKind::oracle_compare: ts = run_oracle_compare(cfg); break;
        }
    } catch (const NumericError& e) {
        throw NumericError("scenario [" + cfg.name + "]: " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError("scenario [" + cfg.name + "]: " + e.what());
    }
    ts.validate();
    return ts;
}

} // namespace twprobe
