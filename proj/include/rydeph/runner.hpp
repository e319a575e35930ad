#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rydeph/config.hpp"
#include "rydeph/csv.hpp"
#include "rydeph/dynamics.hpp"
#include "rydeph/errors.hpp"
#include "rydeph/mitigation.hpp"
#include "rydeph/spectroscopy.hpp"
#include "rydeph/version.hpp"

namespace rydeph {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  // command-line overrides
    std::optional<double> tol;
    std::optional<unsigned> threads;
};

struct RunResult {
    std::vector<std::string> artifacts;  // file names written into out_dir
};

namespace rundetail {

class ArtifactWriter {
public:
    ArtifactWriter(std::filesystem::path dir, RunResult& result)
        : dir_(std::move(dir)), result_(result) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write artifact '" + (dir_ / name).string() + "'");
        f << content;
        result_.artifacts.push_back(name);
    }

private:
    std::filesystem::path dir_;
    RunResult& result_;
};

inline std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    std::vector<std::string> header{"time_s"};
    for (const auto& sp : traj.config.species) {
        header.push_back("ng_" + sp.label);
        header.push_back("n18s_" + sp.label);
        header.push_back("nnp_" + sp.label);
    }
    header.push_back("fluorescence");
    write_csv_header(os, header);
    const auto fluor = fluorescence_trace(traj);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<double> row{traj.times[k]};
        for (std::size_t i = 0; i < traj.states[k].n_species; ++i) {
            row.push_back(traj.states[k].ground(i));
            row.push_back(traj.states[k].rydberg(i));
            row.push_back(traj.states[k].pollutant(i));
        }
        row.push_back(fluor[k]);
        write_csv_row(os, row);
    }
    return os.str();
}

inline std::string fluorescence_csv(const Trajectory& traj) {
    std::ostringstream os;
    write_csv_header(os, {"time_s", "fluorescence"});
    const auto fluor = fluorescence_trace(traj);
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        write_csv_row(os, {traj.times[k], fluor[k]});
    return os.str();
}

inline std::string spectrum_csv(const Spectrum& spec) {
    std::ostringstream os;
    write_csv_header(os, {"delta_hz", "remaining_fraction"});
    for (std::size_t k = 0; k < spec.detunings.size(); ++k)
        write_csv_row(os, {hz_from_angular(spec.detunings[k]), spec.signal[k]});
    return os.str();
}

inline std::string lorentzian_report(const LorentzianFit& fit, double t_end) {
    std::ostringstream os;
    os << "lorentzian fit: signal = offset - amplitude * (w/2)^2 / ((delta-center)^2 + (w/2)^2)\n";
    os << "  converged      " << (fit.converged ? "yes" : "no") << "\n";
    os << "  center_hz      " << format_double(hz_from_angular(fit.center)) << " +- "
       << format_double(hz_from_angular(fit.center_err)) << "\n";
    os << "  fwhm_hz        " << format_double(hz_from_angular(fit.fwhm)) << " +- "
       << format_double(hz_from_angular(fit.fwhm_err)) << "\n";
    os << "  amplitude      " << format_double(fit.amplitude) << " +- "
       << format_double(fit.amplitude_err) << "\n";
    os << "  offset         " << format_double(fit.offset) << " +- "
       << format_double(fit.offset_err) << "\n";
    os << "  residual_norm  " << format_double(fit.residual_norm) << "\n";
    os << "  iterations     " << fit.iterations << "\n";
    // amplitude / exposure; meaningful while depletion is unsaturated
    os << "  resonant_rate_per_s  "
       << format_double(resonant_rate_from_amplitude(fit, t_end)) << "\n";
    return os.str();
}

inline std::string delay_scan_csv(const DelayScanResult& scan) {
    std::ostringstream os;
    write_csv_header(os, {"delay_s", "width_hz", "width_err_hz"});
    for (std::size_t k = 0; k < scan.delays.size(); ++k)
        write_csv_row(os, {scan.delays[k], hz_from_angular(scan.widths[k]),
                           hz_from_angular(scan.width_errs[k])});
    return os.str();
}

inline std::string pulse_scan_csv(const std::vector<PulseWidthPoint>& points) {
    std::ostringstream os;
    write_csv_header(os, {"t_pulse_s", "width_hz", "width_err_hz", "fourier_floor_hz"});
    for (const auto& p : points)
        write_csv_row(os, {p.t_pulse, hz_from_angular(p.width), hz_from_angular(p.width_err),
                           hz_from_angular(p.fourier_floor)});
    return os.str();
}

inline std::vector<double> make_grid(const GridSpec& grid) {
    return linspace(grid.center - grid.half_span, grid.center + grid.half_span, grid.points);
}

inline DelayScanResult read_observed_scan(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    const std::size_t cd = csv.column("delay_s");
    const std::size_t cw = csv.column("width_hz");
    const std::size_t ce = csv.column("width_err_hz");
    DelayScanResult scan;
    for (const auto& row : csv.rows) {
        scan.delays.push_back(row[cd]);
        scan.widths.push_back(angular_from_hz(row[cw]));
        scan.width_errs.push_back(angular_from_hz(row[ce]));
        scan.converged.push_back(true);
    }
    return scan;
}

inline const ModelConfig& require_model(const RunConfig& rc, const std::string& command) {
    if (!rc.model)
        throw ConfigError("command '" + command + "' needs a 'model' block in the config");
    return *rc.model;
}

}  // namespace rundetail

// Executes one CLI command against a loaded configuration, writing all CSV
// and report artifacts plus a run manifest into opts.out_dir. Throws the
// category-specific errors from errors.hpp; the CLI maps them to exit codes.
inline RunResult run_command(const std::string& command, RunConfig& rc,
                             const RunOptions& opts = {}) {
    using namespace rundetail;
    const auto t_start = std::chrono::steady_clock::now();

    if (opts.seed) rc.seed = *opts.seed;
    if (opts.tol) rc.tol = *opts.tol;
    if (opts.threads) rc.threads = *opts.threads;
    rc.effective["seed"] = rc.seed;
    rc.effective["tol"] = rc.tol;
    rc.effective["threads"] = rc.threads;
    if (!(rc.tol > 0.0)) throw ConfigError("tol must be > 0");

    RunResult result;
    ArtifactWriter out(opts.out_dir, result);
    SweepOptions sweep;
    sweep.rtol = rc.tol;
    sweep.threads = rc.threads;
    std::vector<std::string> warnings;

    if (command == "simulate") {
        if (!rc.simulate) throw ConfigError("command 'simulate' needs a 'simulate' block");
        IntegrateOptions iopt;
        iopt.rtol = rc.tol;
        const auto traj = integrate(require_model(rc, command), rc.simulate->t_end, iopt);
        out.write("trajectory.csv", trajectory_csv(traj));
    } else if (command == "fluorescence") {
        if (!rc.fluorescence)
            throw ConfigError("command 'fluorescence' needs a 'fluorescence' block");
        IntegrateOptions iopt;
        iopt.rtol = rc.tol;
        const auto traj = integrate(require_model(rc, command), rc.fluorescence->t_end, iopt);
        out.write("fluorescence.csv", fluorescence_csv(traj));
    } else if (command == "spectrum") {
        if (!rc.spectrum) throw ConfigError("command 'spectrum' needs a 'spectrum' block");
        const auto spec = sweep_spectrum(require_model(rc, command),
                                         make_grid(rc.spectrum->grid), rc.spectrum->t_end, sweep);
        out.write("spectrum.csv", spectrum_csv(spec));
        out.write("spectrum_fit.txt",
                  lorentzian_report(fit_lorentzian(spec), rc.spectrum->t_end));
    } else if (command == "delay-scan") {
        if (!rc.delay_scan) throw ConfigError("command 'delay-scan' needs a 'delay_scan' block");
        const auto scan = delay_scan(require_model(rc, command), rc.delay_scan->delays,
                                     make_grid(rc.delay_scan->grid), rc.delay_scan->t_end, sweep);
        for (std::size_t k = 0; k < scan.delays.size(); ++k)
            if (!scan.converged[k])
                warnings.push_back("width fit did not converge at delay " +
                                   format_double(scan.delays[k]) + " s");
        out.write("delay_scan.csv", delay_scan_csv(scan));
    } else if (command == "pulse-scan") {
        if (!rc.pulse_scan) throw ConfigError("command 'pulse-scan' needs a 'pulse_scan' block");
        const auto points =
            pulse_width_scan(require_model(rc, command), rc.pulse_scan->t_pulses,
                             rc.pulse_scan->total_exposure, rc.pulse_scan->grid_points, sweep);
        for (const auto& p : points)
            if (!p.converged)
                warnings.push_back("width fit did not converge at t_pulse " +
                                   format_double(p.t_pulse) + " s");
        out.write("pulse_scan.csv", pulse_scan_csv(points));
    } else if (command == "fit-cross") {
        if (!rc.fit_cross) throw ConfigError("command 'fit-cross' needs a 'fit_cross' block");
        const auto observed = read_observed_scan(rc.resolve_path(rc.fit_cross->observed_path));
        const auto fit = estimate_c3_cross(observed, require_model(rc, command),
                                           make_grid(rc.fit_cross->grid), rc.fit_cross->t_end,
                                           rc.fit_cross->lower, rc.fit_cross->upper, sweep);
        std::ostringstream os;
        os << "c3_cross fit (scalar outer fit, all other parameters frozen)\n";
        os << "  c3_cross_hz_um3      " << format_double(hz_from_angular(fit.c3_cross)) << " +- "
           << format_double(hz_from_angular(fit.uncertainty)) << "\n";
        os << "  objective_chi2       " << format_double(fit.objective) << "\n";
        os << "  evaluations          " << fit.evaluations << "\n";
        os << "  at_bound             " << (fit.at_bound ? "yes" : "no") << "\n";
        out.write("cross_fit.txt", os.str());
    } else if (command == "budget") {
        if (!rc.budget) throw ConfigError("command 'budget' needs a 'budget' block");
        const auto& b = *rc.budget;
        DressingScenario s;
        s.omega = b.omega;
        s.delta = b.delta;
        s.b_nl = b.b_nl;
        s.tau0 = b.tau0;
        s.n_atoms = b.n_atoms;
        s.a_factor = b.a_factor;
        s.gamma0 = b.gamma0;
        std::optional<TemperatureTable> table;
        if (b.table_path) table = read_temperature_table_file(rc.resolve_path(*b.table_path));
        const auto budget = make_budget(s, table, b.tau0_room);
        out.write("budget.txt", format_budget_report(budget, s));
        if (b.draws > 0) {
            const auto sample = sample_first_contaminant(s, b.draws, rc.seed);
            std::ostringstream os;
            write_csv_header(os, {"bin_lo_s", "bin_hi_s", "count"});
            for (std::size_t k = 0; k < sample.counts.size(); ++k)
                write_csv_row(os, {sample.bin_edges[k], sample.bin_edges[k + 1],
                                   static_cast<double>(sample.counts[k])});
            out.write("first_contaminant.csv", os.str());
        }
    } else if (command == "tstar") {
        if (!rc.tstar) throw ConfigError("command 'tstar' needs a 'tstar' block");
        const auto& b = *rc.tstar;
        const auto table = read_temperature_table_file(rc.resolve_path(b.table_path));
        std::ostringstream os;
        os << "n_atoms,t_star_K,status\n";
        for (double n : b.n_atoms) {
            const auto r = t_star_n(table, b.omega, b.delta, n, b.tau0_room);
            os << format_double(n) << ',';
            switch (r.status) {
                case TStarStatus::found:
                    os << format_double(r.temperature) << ",found\n";
                    break;
                case TStarStatus::at_hot_bound:
                    os << format_double(r.temperature) << ",at_hot_bound\n";
                    break;
                case TStarStatus::none:
                    os << "nan,none\n";
                    break;
            }
        }
        out.write("tstar.csv", os.str());
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }

    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json manifest;
    manifest["command"] = command;
    manifest["version"] = version_string;
    manifest["seed"] = rc.seed;
    manifest["tol"] = rc.tol;
    manifest["threads"] = rc.threads;
    manifest["wall_time_s"] = elapsed;
    manifest["artifacts"] = result.artifacts;
    manifest["effective_config"] = rc.effective;
    json defaults = json::array();
    for (const auto& note : rc.notes)
        defaults.push_back(json{{"path", note.path}, {"origin", note.origin}});
    manifest["defaults_applied"] = defaults;
    manifest["warnings"] = warnings;
    out.write("run_manifest.json", manifest.dump(2) + "\n");
    return result;
}

}
