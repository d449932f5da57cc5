// twprobe command line: runs scenario configs and emits plot-ready CSV/JSON.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "twprobe/scenario.hpp"
#include "twprobe/single_photon.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw twprobe::IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::optional<std::string>& format_override) {
    const std::string text = read_file(config_path);
    std::vector<twprobe::ScenarioConfig> configs = twprobe::parse_config(text);

    if (format_override) {
        const twprobe::OutputFormat fmt = twprobe::parse_format(*format_override);
        for (auto& cfg : configs) {
            if (cfg.format != fmt) {
                cfg.format = fmt;
                cfg.output = cfg.name + (fmt == twprobe::OutputFormat::csv ? ".csv" : ".json");
            }
        }
    }

    // Batch summaries are ordered by scenario name so reports are stable
    // regardless of section order in the file.
    std::sort(configs.begin(), configs.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw twprobe::IoError("cannot create output directory '" + out_dir + "'");

    for (const auto& cfg : configs) {
        const twprobe::TimeSeries ts = twprobe::run_scenario(cfg);
        const fs::path path = fs::path(out_dir) / cfg.output;
        twprobe::emit_timeseries(ts, cfg.format, path);
        std::cout << cfg.name << ": wrote " << path.string() << " (" << ts.n_samples()
                  << " samples)\n";
        if (auto it = ts.metadata.find("warnings"); it != ts.metadata.end())
            std::cerr << cfg.name << ": warning: " << it->second << "\n";
    }
    return 0;
}

int cmd_optimize(double kappa_over_gamma, double gamma) {
    const double kappa = kappa_over_gamma * gamma;
    const twprobe::PulseOptimum opt = twprobe::optimize_pulse_length(kappa, gamma);
    std::cout << "tau_star = " << twprobe::format_double(opt.tau_star) << "\n"
              << "gamma_tau_star = " << twprobe::format_double(gamma * opt.tau_star) << "\n"
              << "p_e_star = " << twprobe::format_double(opt.p_e_star) << "\n"
              << "p_e_star_over_kappa_ratio = "
              << twprobe::format_double(kappa > 0 ? opt.p_e_star / kappa_over_gamma : 0.0) << "\n";
    return 0;
}

int cmd_list_scenarios() {
    for (const auto& h : twprobe::scenario_help()) {
        std::cout << h.name << "\n  " << h.summary << "\n  required:";
        for (const auto& k : h.required_keys) std::cout << ' ' << k;
        std::cout << "\n  optional:";
        for (const auto& k : h.optional_keys) std::cout << ' ' << k;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"traveling-wave continuous-measurement scenarios"};
    app.set_version_flag("--version", std::string("twprobe ") + TWPROBE_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::string> format_override;
    CLI::App* run = app.add_subcommand("run", "run every scenario section of a config file");
    run->add_option("config", config_path, "path to the sectioned key-value config")->required();
    run->add_option("--out", out_dir, "output directory (created if missing)");
    run->add_option("--format", format_override, "override output format: csv or json");

    double kappa_over_gamma = 0.0;
    double gamma = 1.0;
    CLI::App* opt = app.add_subcommand(
        "optimize-pulse", "optimal square-pulse duration for single-photon excitation");
    opt->add_option("--kappa-over-gamma", kappa_over_gamma, "paraxial fraction kappa/gamma")
        ->required();
    opt->add_option("--gamma", gamma, "total decay rate (base unit, default 1)");

    CLI::App* list = app.add_subcommand("list-scenarios", "list scenarios and their config keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, format_override);
        if (opt->parsed()) return cmd_optimize(kappa_over_gamma, gamma);
        if (list->parsed()) return cmd_list_scenarios();
    } catch (const twprobe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const twprobe::NumericError& e) {
        std::cerr << "numerical-validity error: " << e.what() << "\n";
        return 3;
    } catch (const twprobe::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
