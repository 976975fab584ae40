#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilfb/cli.hpp"

namespace {

using ilfb::cli::ConfigError;
using ilfb::cli::ExperimentConfig;

struct FlagSpec {
    const char* key;
    const char* help;
};

// Long flag name == configuration key.
const std::vector<FlagSpec> kExperimentFlags{
    {"scheme", "comma list of F, G, A, B, Bu, C, D, Bp"},
    {"t", "transmit antennas"},
    {"alpha", "outage SNR threshold"},
    {"power", "short-term power constraint P"},
    {"epsilon", "per-stage latency fraction (Bp)"},
    {"group-size", "antennas per stage K (Bp)"},
    {"delta", "rate-allocation step"},
    {"trials", "Monte Carlo trials per point"},
    {"seed", "master seed"},
    {"quantizer", "fixed | variable (scheme D)"},
    {"axis", "sweep axis: t, K, alpha, P, epsilon"},
    {"values", "axis values: a:b, a:b:step or a comma list"},
    {"out", "output path (default: standard output)"},
    {"format", "csv | json"},
};

std::string default_of(const std::string& key) {
    const ExperimentConfig d;
    if (key == "scheme") return "B";
    if (key == "t") return std::to_string(d.params.t);
    if (key == "alpha") return ilfb::cli::format_number(d.params.alpha);
    if (key == "power") return ilfb::cli::format_number(d.params.power);
    if (key == "epsilon") return ilfb::cli::format_number(d.params.epsilon);
    if (key == "group-size") return std::to_string(d.params.group_size);
    if (key == "delta") return std::to_string(d.params.delta);
    if (key == "trials") return std::to_string(d.params.trials);
    if (key == "seed") return std::to_string(d.params.seed);
    if (key == "quantizer") return "fixed";
    if (key == "format") return "csv";
    return "";
}

struct FlagSet {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
    CLI::Option* config_option = nullptr;

    void attach(CLI::App* app, const std::vector<std::string>& keys) {
        config_option = app->add_option("--config", config_path, "flat key = value file; flags override it");
        for (const auto& f : kExperimentFlags) {
            if (std::find(keys.begin(), keys.end(), f.key) == keys.end()) continue;
            auto* opt = app->add_option(std::string("--") + f.key, values[f.key], f.help);
            if (const auto d = default_of(f.key); !d.empty()) opt->default_str(d);
            options[f.key] = opt;
        }
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c;
        if (config_option && config_option->count() > 0) ilfb::cli::apply_config_file(c, config_path);
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) ilfb::cli::apply_setting(c, key, values.at(key));
        }
        return c;
    }
};

std::vector<std::string> all_keys() {
    std::vector<std::string> keys;
    for (const auto& f : kExperimentFlags) keys.emplace_back(f.key);
    return keys;
}

void emit(const ilfb::cli::Table& table, const ExperimentConfig& c) {
    if (c.out.empty()) {
        table.write(std::cout, c.format);
        return;
    }
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + c.out + "'");
    table.write(out, c.format);
}

void print_warnings(const ilfb::cli::Table& table) {
    for (const auto& line : table.comments) {
        if (line.rfind("warning: ", 0) == 0) std::cerr << line << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interleaved training and limited-feedback beamforming simulator"};
    app.require_subcommand(1);

    FlagSet analytic_flags, simulate_flags, sweep_flags, figure_flags;
    auto* analytic = app.add_subcommand("analytic", "closed-form outage, training length and feedback rate");
    analytic_flags.attach(analytic, all_keys());
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with analytic companions");
    simulate_flags.attach(simulate, all_keys());
    auto* sweep = app.add_subcommand("sweep", "simulate along an axis (requires --axis and --values)");
    sweep_flags.attach(sweep, all_keys());

    auto* figure = app.add_subcommand("figure", "figure presets");
    std::string figure_name;
    figure->add_option("name", figure_name, "fig2 | fig5 .. fig12")->required();
    figure_flags.attach(figure, {"trials", "seed", "delta", "out", "format"});

    auto* selftest = app.add_subcommand("selftest", "invariant suite at reduced trial counts");
    ilfb::cli::SelftestOptions st;
    std::string fault;
    selftest->add_option("--trials", st.trials, "trials per check")->default_str(std::to_string(st.trials));
    selftest->add_option("--seed", st.seed, "seed")->default_str(std::to_string(st.seed));
    selftest->add_option("--inject-fault", fault, "fault to inject: bit-flip")
        ->check(CLI::IsMember({"bit-flip"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ilfb::cli::kExitOk : ilfb::cli::kExitConfigError;
    }

    try {
        if (analytic->parsed()) {
            const ExperimentConfig c = analytic_flags.resolve();
            const auto table = ilfb::cli::cmd_analytic(c);
            print_warnings(table);
            emit(table, c);
        } else if (simulate->parsed() || sweep->parsed()) {
            const ExperimentConfig c = (simulate->parsed() ? simulate_flags : sweep_flags).resolve();
            if (sweep->parsed() && !c.axis) throw ConfigError("sweep requires --axis and --values");
            const auto table = ilfb::cli::cmd_simulate(c);
            print_warnings(table);
            emit(table, c);
        } else if (figure->parsed()) {
            const ExperimentConfig c = figure_flags.resolve();
            emit(ilfb::cli::cmd_figure(figure_name, c), c);
        } else if (selftest->parsed()) {
            st.inject_bit_flip = fault == "bit-flip";
            bool ok = true;
            for (const auto& r : ilfb::cli::cmd_selftest(st)) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? ilfb::cli::kExitOk : ilfb::cli::kExitSelftestFailure;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ilfb::cli::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ilfb::cli::kExitRuntimeError;
    }
    return ilfb::cli::kExitOk;
}
