#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "geodtn/analysis.h"
#include "geodtn/config.h"
#include "geodtn/engine.h"
#include "geodtn/errors.h"
#include "geodtn/events.h"
#include "geodtn/sweep.h"

namespace {

using namespace geodtn;

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SimError("cannot write " + path.string());
    f << text;
}

// "k=101,l=10,emt=1000,lambda=0.5" (any subset; defaults apply)
AnalyticParams parse_analytic(const std::string& s) {
    AnalyticParams p;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("expected name=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            if (key == "k") {
                p.k = std::stoi(val);
            } else if (key == "l") {
                p.l = std::stoi(val);
            } else if (key == "emt") {
                p.emt = std::stod(val);
            } else if (key == "lambda") {
                p.lambda = std::stod(val);
            } else {
                throw ParseError("unknown parameter '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad value for '" + key + "': '" + val + "'");
        }
    }
    return p;
}

int cmd_run(const std::string& config_path, bool seed_set, uint64_t seed,
            const std::string& out_dir) {
    ScenarioConfig config = load_config_file(config_path);
    if (seed_set) config.seed = seed;
    config.validate();
    const RunResult result = geodtn::run(config);
    const std::string csv = metrics_csv_header() + "\n" + metrics_csv_row(result.metrics) + "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "events.log", result.log.serialize());
        write_file(std::filesystem::path(out_dir) / "metrics.csv", csv);
    }
    std::cout << csv;
    return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int jobs) {
    const SweepSpec spec = load_sweep_file(spec_path);
    const SweepOutputs outputs = run_sweep(spec, jobs);
    write_sweep_outputs(outputs, out_dir);
    std::cout << "wrote " << out_dir << "/runs.csv, aggregate.csv, trend_report.txt\n";
    return 0;
}

int cmd_analytic(const std::string& params) {
    const AnalyticParams p = parse_analytic(params);
    const DeliveryProbability dp = delivery_probability(p);
    std::cout << "k=" << p.k << " l=" << p.l << " emt=" << format_double(p.emt)
              << " lambda=" << format_double(p.lambda) << "\n";
    std::cout << "per_copy_relay_probability " << format_double(dp.per_copy) << "\n";
    std::cout << "delivery_probability " << format_double(dp.as_printed) << "\n";
    std::cout << "delivery_probability_alt " << format_double(dp.alternative) << "\n";
    std::cout << "delay_s_saw " << format_double(delay_s_saw(p)) << "\n";
    if (p.lambda > 0.0) {
        std::cout << "delay_s_tbgr " << format_double(delay_s_tbgr(p)) << "\n";
        std::cout << "delay_b_tbgr " << format_double(delay_b_tbgr(p)) << "\n";
    } else {
        std::cout << "delay_s_tbgr undefined\n";
        std::cout << "delay_b_tbgr undefined\n";
    }
    return 0;
}

int cmd_estimate_emt(const std::string& config_path, bool seed_set, uint64_t seed, int samples) {
    ScenarioConfig config = load_config_file(config_path);
    if (seed_set) config.seed = seed;
    const EmtEstimate est = estimate_emt(config, samples);
    std::cout << "emt_mean " << format_double(est.mean) << "\n";
    std::cout << "emt_std_error " << format_double(est.std_error) << "\n";
    std::cout << "samples " << est.samples << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geographic multi-copy DTN routing simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, params;
    uint64_t seed = 0;
    int jobs = 1;
    int samples = 200;

    auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
    run_cmd->add_option("config", config_path, "scenario config file")->required();
    auto* run_seed = run_cmd->add_option("--seed", seed, "override the config seed");
    run_cmd->add_option("--out", out_dir, "directory for events.log and metrics.csv");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("spec", config_path, "sweep spec file")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory")->required();
    sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form delay/delivery table");
    analytic_cmd->add_option("params", params, "k=..,l=..,emt=..,lambda=..")->required();

    auto* emt_cmd = app.add_subcommand("estimate-emt", "Monte-Carlo expected meeting time");
    emt_cmd->add_option("config", config_path, "RWP scenario config file")->required();
    auto* emt_seed = emt_cmd->add_option("--seed", seed, "override the config seed");
    emt_cmd->add_option("--samples", samples, "trial count")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, run_seed->count() > 0, seed, out_dir);
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_dir, jobs);
        if (analytic_cmd->parsed()) return cmd_analytic(params);
        if (emt_cmd->parsed()) {
            return cmd_estimate_emt(config_path, emt_seed->count() > 0, seed, samples);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
