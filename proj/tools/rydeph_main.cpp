#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rydeph/rydeph.hpp"

namespace {

int fail(const char* category, const std::string& message, int code) {
    std::cerr << "error: [" << category << "] " << message << "\n";
    return code;
}

}

int main(int argc, char** argv) {
    CLI::App app{"rydeph: rate-equation toolkit for blackbody-triggered avalanche "
                 "dephasing in Rydberg ensembles"};
    app.set_version_flag("--version", rydeph::version_string);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double tol = 1e-9;
    app.add_option("--config", config_path, "configuration file (json)")->required();
    app.add_option("--out", out_dir, "output directory for artifacts");
    app.add_option("--seed", seed, "random seed override");
    app.add_option("--threads", threads, "worker threads for sweeps (0 = auto)");
    app.add_option("--tol", tol, "relative integration tolerance override");

    app.add_subcommand("simulate", "integrate the rate equations, write trajectory.csv");
    app.add_subcommand("fluorescence", "integrate and write the normalized Rydberg trace");
    app.add_subcommand("spectrum", "sweep the probe detuning, fit a Lorentzian");
    app.add_subcommand("delay-scan", "probe width versus pump-probe pulse delay");
    app.add_subcommand("pulse-scan", "probe width versus pulse length at fixed exposure");
    app.add_subcommand("fit-cross", "fit c3_cross against an observed delay scan");
    app.add_subcommand("budget", "stroboscopic dressing coherence budget");
    app.add_subcommand("tstar", "compensation temperature versus atom number");

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    rydeph::RunOptions opts;
    opts.out_dir = out_dir;
    if (app.count("--seed") > 0) opts.seed = seed;
    if (app.count("--tol") > 0) opts.tol = tol;
    if (app.count("--threads") > 0) opts.threads = threads;

    try {
        auto rc = rydeph::load_config(config_path);
        rydeph::run_command(command, rc, opts);
        return rydeph::exit_ok;
    } catch (const rydeph::ConfigError& e) {
        return fail("CONFIG", e.what(), rydeph::exit_config);
    } catch (const rydeph::IntegrationError& e) {
        return fail("INTEGRATION",
                    std::string(e.what()) + " (t = " + rydeph::format_double(e.failure_time()) +
                        " s)",
                    rydeph::exit_integration);
    } catch (const rydeph::FitError& e) {
        return fail("FIT", e.what(), rydeph::exit_fit);
    } catch (const rydeph::DomainError& e) {
        return fail("DOMAIN", e.what(), rydeph::exit_domain);
    } catch (const std::exception& e) {
        return fail("INTERNAL", e.what(), 1);
    }
}
