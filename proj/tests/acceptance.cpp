// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses the library exactly the
// way the CLI does.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rydeph/rydeph.hpp"

using namespace rydeph;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

unsigned g_threads = 0;

double hz(double angular) { return hz_from_angular(angular); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- shared model builders (values from the measured system) -------------

ModelConfig pump_probe(double omega_pump_hz, double omega_probe_hz, double f = 0.25) {
    ModelConfig cfg;
    cfg.species = {SpeciesParams{}, SpeciesParams{}};
    cfg.species[1].label = "probe";
    cfg.drives = {DriveConfig{}, DriveConfig{}};
    cfg.drives[0].omega = angular_from_hz(omega_pump_hz);
    cfg.drives[1].omega = angular_from_hz(omega_probe_hz);
    cfg.initial_fractions = {1.0 - f, f};
    return cfg;
}

ModelConfig single(double omega_hz, double delta_hz = 0.0) {
    ModelConfig cfg;
    cfg.species = {SpeciesParams{}};
    cfg.drives = {DriveConfig{}};
    cfg.drives[0].omega = angular_from_hz(omega_hz);
    cfg.drives[0].delta = angular_from_hz(delta_hz);
    cfg.initial_fractions = {1.0};
    return cfg;
}

void pulse_both(ModelConfig& cfg, double t_pulse, double t_dark) {
    for (auto& dr : cfg.drives) {
        dr.envelope.always_on = false;
        dr.envelope.t_pulse = t_pulse;
        dr.envelope.t_dark = t_dark;
        dr.envelope.delay = 0.0;
        dr.envelope.n_pulses = 0;
    }
}

// worst-case integrator hygiene over every run this suite produces
struct HygieneAudit {
    double min_component = 0.0;
    double max_total_rise = 0.0;
    std::size_t runs = 0;

    void absorb(const Trajectory& traj) {
        ++runs;
        min_component = std::min(min_component, traj.min_component);
        max_total_rise = std::max(max_total_rise, traj.max_total_increase);
    }
    void absorb(const Spectrum& spec) {
        runs += spec.detunings.size();
        min_component = std::min(min_component, spec.min_component);
        max_total_rise = std::max(max_total_rise, spec.max_total_increase);
    }
    void absorb_scan(double min_comp, double max_rise, std::size_t n) {
        runs += n;
        min_component = std::min(min_component, min_comp);
        max_total_rise = std::max(max_total_rise, max_rise);
    }

    bool ok() const { return min_component >= -1e-9 && max_total_rise <= 1e-8; }
};

HygieneAudit g_audit;

double audited_depletion(const ModelConfig& cfg, double delta, double t_end, double rtol) {
    const auto r = simulate_depletion_detailed(cfg, delta, t_end, rtol);
    g_audit.absorb_scan(r.min_component, r.max_total_increase, 1);
    return r.remaining;
}

Spectrum audited_sweep(const ModelConfig& cfg, const std::vector<double>& grid, double t_end) {
    SweepOptions opt;
    opt.threads = g_threads;
    const auto spec = sweep_spectrum(cfg, grid, t_end, opt);
    g_audit.absorb(spec);
    return spec;
}

double fitted_width(const ModelConfig& cfg, const std::vector<double>& grid, double t_end) {
    const auto fit = fit_lorentzian(audited_sweep(cfg, grid, t_end));
    if (!fit.converged) throw FitError("width fit did not converge");
    return fit.fwhm;
}

// Exposure that leaves roughly half the resonant ground population, found by
// doubling/halving from a steady-state estimate. Keeps every point of an
// Omega scan at comparable saturation.
double pick_exposure(const ModelConfig& cfg, double rtol = 1e-8) {
    const double gamma_ss = estimate_steady_gamma(cfg)[cfg.probe_index()];
    const double r_ss =
        excitation_rate(gamma_ss, cfg.drives[cfg.probe_index()].omega, 0.0);
    double t = 1.0 / (0.4 * r_ss);
    for (int k = 0; k < 12; ++k) {
        const double remaining = audited_depletion(cfg, 0.0, t, rtol);
        if (remaining < 0.35)
            t *= 0.6;
        else if (remaining > 0.65)
            t *= 1.7;
        else
            break;
    }
    return t;
}

// ---- criteria -------------------------------------------------------------

Outcome c1_cross_broadening_doubling() {
    auto cfg = pump_probe(20e3, 14e3);
    // both sweeps share the stock grid sized by the pumped configuration
    const auto grid = default_detuning_grid(cfg);
    const double with_pump = fitted_width(cfg, grid, 300e-6);
    cfg.drives[0].omega = 0.0;
    const double no_pump = fitted_width(cfg, grid, 300e-6);
    const double ratio = with_pump / no_pump;
    Outcome o;
    o.pass = ratio >= 1.5 && ratio <= 2.5;
    o.detail = "width ratio pump-on/off = " + fmt(ratio) + " (required [1.5, 2.5]); widths " +
               fmt(hz(with_pump)) + " / " + fmt(hz(no_pump)) + " Hz";
    if (!o.pass)
        o.detail += "; at these parameters the homogeneous mean-field steady state caps the "
                    "cross addon at (c3_cross/c3)(omega_pump/omega_probe)sqrt(f_pump/f_probe) "
                    "~ 0.25 of the pump-off width, so the simulated ratio stays near 1.3 for "
                    "any scan window";
    return o;
}

Outcome c2_delay_scan_relaxation() {
    auto cfg = pump_probe(20e3, 15e3);
    pulse_both(cfg, 30e-6, 90e-6);
    const auto grid = linspace(-angular_from_hz(3e6), angular_from_hz(3e6), 41);
    const double t_end = 10.0 * 120e-6;

    const std::vector<double> delays{-60e-6, -40e-6, 0.0, 40e-6, 60e-6};
    std::vector<double> widths(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) {
        ModelConfig run = cfg;
        run.drives[1].envelope.delay = delays[i];
        widths[i] = fitted_width(run, grid, t_end);
    }

    ModelConfig off = cfg;
    off.drives[0].omega = 0.0;
    const double pump_off = fitted_width(off, grid, t_end);

    const double w0 = widths[2];
    const double w40 = widths[3];
    bool relaxed = true;
    std::ostringstream rel;
    for (std::size_t i = 0; i < delays.size(); ++i) {
        if (std::abs(delays[i]) < 40e-6) continue;
        const double dev = std::abs(widths[i] - pump_off) / pump_off;
        relaxed = relaxed && dev <= 0.15;
        rel << " dev(" << fmt(delays[i] * 1e6) << "us)=" << fmt(dev);
    }

    Outcome o;
    o.pass = (w0 > w40) && relaxed;
    o.detail = "width(0) = " + fmt(hz(w0)) + " Hz > width(40us) = " + fmt(hz(w40)) +
               " Hz: " + (w0 > w40 ? "yes" : "no") + "; pump-off width " + fmt(hz(pump_off)) +
               " Hz," + rel.str() + " (required <= 0.15)";
    return o;
}

Outcome c3_dmf3_asymmetry() {
    auto cfg = pump_probe(20e3, 15e3);
    pulse_both(cfg, 20e-6, 60e-6);  // T = 80 us
    const double period = 80e-6;
    const auto grid = linspace(-angular_from_hz(3e6), angular_from_hz(3e6), 41);
    const double t_end = 10.0 * period;

    std::vector<double> delays;
    for (int k = 0; k < 16; ++k) delays.push_back(period * k / 16.0);
    std::vector<double> widths(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) {
        ModelConfig run = cfg;
        run.drives[1].envelope.delay = delays[i];
        widths[i] = fitted_width(run, grid, t_end);
    }

    // mirror asymmetry: compare w(dt) against w(T - dt)
    double max_asym = 0.0;
    for (std::size_t i = 1; i < delays.size(); ++i) {
        const std::size_t j = delays.size() - i;  // delay T - dt_i
        if (j == i || j >= delays.size()) continue;
        max_asym = std::max(max_asym,
                            std::abs(widths[i] - widths[j]) / (0.5 * (widths[i] + widths[j])));
    }

    const std::size_t k_max = static_cast<std::size_t>(
        std::max_element(widths.begin(), widths.end()) - widths.begin());
    const double cyc = std::min(delays[k_max], period - delays[k_max]);
    const bool in_overlap = cyc <= 20e-6 + 1e-12;

    Outcome o;
    o.pass = (max_asym > 0.05) && in_overlap;
    o.detail = "max mirror asymmetry = " + fmt(max_asym) + " (required > 0.05), argmax at " +
               fmt(delays[k_max] * 1e6) + " us (overlap window: |dt| <= 20 us cyclically: " +
               (in_overlap ? "yes" : "no") + ")";
    return o;
}

Outcome c4_pulse_width_narrowing() {
    auto cfg = single(66e3);
    const double exposure = pick_exposure(cfg);

    // continuous steady-state reference at the same exposure
    const double span = 5.0 * estimate_steady_gamma(cfg)[0];
    const double cont = fitted_width(cfg, linspace(-span, span, 41), exposure);

    SweepOptions opt;
    opt.threads = g_threads;
    const auto points = pulse_width_scan(cfg, {2e-6, 5e-6, 12e-6, 30e-6}, exposure, 41, opt);
    for (const auto& p : points)
        g_audit.absorb_scan(p.min_component, p.max_total_increase, 41);

    const double shortest = points.front().width;
    bool monotone = true;
    bool all_converged = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        all_converged = all_converged && points[i].converged;
        if (i > 0) monotone = monotone && points[i].width >= points[i - 1].width * 0.99;
    }

    Outcome o;
    o.pass = shortest <= 0.5 * cont && monotone && all_converged;
    o.detail = "width(t_p = 2 us) = " + fmt(hz(shortest)) + " Hz vs continuous " +
               fmt(hz(cont)) + " Hz, ratio " + fmt(shortest / cont) +
               " (required <= 0.5); widths monotone in t_p: " + (monotone ? "yes" : "no");
    return o;
}

Outcome c5_fluorescence_overshoot() {
    IntegrateOptions opt;
    const double t_end = 30e-6;

    const auto resonant = integrate(single(140e3, 0.0), t_end, opt);
    g_audit.absorb(resonant);
    const auto plus = integrate(single(140e3, 2.1e6), t_end, opt);
    const auto minus = integrate(single(140e3, -2.1e6), t_end, opt);
    g_audit.absorb(plus);
    g_audit.absorb(minus);

    const auto trace = fluorescence_trace(resonant);
    const auto peak_it = std::max_element(trace.begin(), trace.end());
    const auto k = static_cast<std::size_t>(peak_it - trace.begin());
    const bool early = k > 0 && resonant.times[k] < 0.5 * t_end;
    const bool exceeds = *peak_it >= 1.1 * trace.back();

    // a unique maximum: no other local maximum within 10% of the peak
    std::size_t rivals = 0;
    for (std::size_t i = 1; i + 1 < trace.size(); ++i)
        if (trace[i] >= trace[i - 1] && trace[i] >= trace[i + 1] && trace[i] >= 0.9 * *peak_it &&
            std::abs(resonant.times[i] - resonant.times[k]) > 1e-6)
            ++rivals;

    // detuned traces: delta-sign symmetry and slower rise
    const auto tp = fluorescence_trace(plus);
    const auto tm = fluorescence_trace(minus);
    double sym = 0.0;
    for (std::size_t i = 0; i < tp.size(); ++i) sym = std::max(sym, std::abs(tp[i] - tm[i]));

    auto rise_time = [](const Trajectory& traj, const std::vector<double>& tr) {
        const double peak = *std::max_element(tr.begin(), tr.end());
        for (std::size_t i = 0; i < tr.size(); ++i)
            if (tr[i] >= 0.5 * peak) return traj.times[i];
        return traj.times.back();
    };
    const double rise_res = rise_time(resonant, trace);
    const double rise_det = rise_time(plus, tp);

    Outcome o;
    o.pass = early && exceeds && rivals == 0 && sym <= 1e-6 && rise_det > rise_res;
    o.detail = "peak/end = " + fmt(*peak_it / trace.back()) + " (required >= 1.1) at t = " +
               fmt(resonant.times[k] * 1e6) + " us; rival maxima " + std::to_string(rivals) +
               "; detuned sign asymmetry " + fmt(sym) + " (required <= 1e-6); rise " +
               fmt(rise_det * 1e6) + " us vs resonant " + fmt(rise_res * 1e6) + " us";
    return o;
}

Outcome c6_omega_scaling() {
    const std::vector<double> omegas_hz{20e3, 35e3, 66e3, 120e3, 200e3};
    std::vector<double> log_w, log_o;
    std::ostringstream widths;
    for (double ohz : omegas_hz) {
        auto cfg = single(ohz);
        const double exposure = pick_exposure(cfg);
        const double span = 5.0 * estimate_steady_gamma(cfg)[0];
        const double w = fitted_width(cfg, linspace(-span, span, 41), exposure);
        log_w.push_back(std::log(w));
        log_o.push_back(std::log(angular_from_hz(ohz)));
        widths << ' ' << fmt(hz(w));
    }
    // least-squares slope of log w vs log Omega
    const auto n = static_cast<double>(log_w.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        sx += log_o[i];
        sy += log_w[i];
        sxx += log_o[i] * log_o[i];
        sxy += log_o[i] * log_w[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    Outcome o;
    o.pass = slope >= 0.8 && slope <= 1.2;
    o.detail = "power-law exponent = " + fmt(slope) +
               " (required [0.8, 1.2]); widths_hz:" + widths.str();
    return o;
}

Outcome c7_n_critical() {
    const double omega = angular_from_hz(100e3);
    const double value = n_critical(omega, 10.0 * omega, 0.2);
    Outcome o;
    o.pass = value == 2000.0;
    o.detail = "n_critical(omega, 10 omega, 0.2) = " + fmt(value) + " (required exactly 2000)";
    return o;
}

Outcome c8_tau_c_monte_carlo() {
    DressingScenario s;
    s.omega = angular_from_hz(100e3);
    s.delta = 10.0 * s.omega;
    s.b_nl = 0.2;
    s.tau0 = 3.54e-6;
    s.a_factor = 100.0;
    s.gamma0 = angular_from_hz(45e3);
    const double nc = n_critical(s.omega, s.delta, s.b_nl);

    Outcome o;
    o.pass = true;
    std::ostringstream detail;
    std::uint64_t seed = 20240521;
    for (double frac : {0.1, 1.0, 10.0}) {
        s.n_atoms = frac * nc;
        const auto sample = sample_first_contaminant(s, 100000, seed++);
        const double err = std::abs(sample.mean - tau_c(s)) / tau_c(s);
        o.pass = o.pass && err <= 0.01;
        detail << " N/Nc=" << fmt(frac) << ": rel err " << fmt(err);
    }
    o.detail = "sample mean vs tau_c over 1e5 draws:" + detail.str() + " (required <= 0.01)";
    return o;
}

Outcome c9_numerical_hygiene() {
    std::ostringstream detail;
    bool pass = true;

    // integrator invariants observed across every run of this suite
    detail << "audited " << g_audit.runs << " trajectories: min component "
           << fmt(g_audit.min_component) << " (>= -1e-9), max total rise "
           << fmt(g_audit.max_total_rise) << " (<= 1e-8)";
    pass = pass && g_audit.ok();

    // fixed-step RK4 halving
    auto cfg = single(66e3, 20e3);
    IntegrateOptions ref_opt;
    ref_opt.rtol = 1e-12;
    ref_opt.atol = 1e-15;
    const auto ref = integrate(cfg, 20e-6, ref_opt).states.back();
    auto err_at = [&](std::size_t steps) {
        const auto run = integrate_fixed_rk4(cfg, 20e-6, steps).states.back();
        double e = 0.0;
        for (std::size_t i = 0; i < 3; ++i) e = std::max(e, std::abs(run.v[i] - ref.v[i]));
        return e;
    };
    const double factor = err_at(400) / err_at(800);
    pass = pass && factor >= 8.0 && factor <= 32.0;
    detail << "; rk4 halving factor " << fmt(factor) << " (required [8, 32])";

    // frozen-gamma analytic steady state
    auto frozen = single(30e3);
    frozen.species[0].b1 = 0.82;
    frozen.species[0].b3 = 1.0;
    frozen.interactions.c3_self = 0.0;
    frozen.interactions.c3_cross = 0.0;
    const double g0 = frozen.species[0].gamma0;
    const double gnp = frozen.species[0].gamma_np;
    const double r = frozen.drives[0].omega * frozen.drives[0].omega / g0;
    const double ns = 1.0 / (2.0 + g0 / r + frozen.species[0].b2 * g0 / gnp);
    const auto last = integrate(frozen, 500e-6).states.back();
    const double steady_err = std::max(
        {std::abs(last.rydberg(0) - ns), std::abs(last.ground(0) - ns * (1.0 + g0 / r)),
         std::abs(last.pollutant(0) - frozen.species[0].b2 * g0 * ns / gnp)});
    pass = pass && steady_err < 1e-6;
    detail << "; frozen-gamma steady-state error " << fmt(steady_err) << " (required < 1e-6)";

    // Lorentzian fitter round trip
    const double w = angular_from_hz(450e3);
    const auto grid = linspace(-5.0 * w, 5.0 * w, 61);
    std::vector<double> y(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double q = 0.25 * w * w;
        y[k] = 1.0 - 0.6 * q / (grid[k] * grid[k] + q);
    }
    const auto fit = fit_lorentzian(grid, y);
    const double fit_err = std::abs(fit.fwhm - w) / w;
    pass = pass && fit.converged && fit_err < 1e-3;
    detail << "; lorentzian round-trip error " << fmt(fit_err) << " (required < 1e-3)";

    Outcome o;
    o.pass = pass;
    o.detail = detail.str();
    return o;
}

Outcome c10_c3_cross_round_trip() {
    const double planted = angular_from_hz(3.5e6);
    auto cfg = pump_probe(20e3, 15e3);
    cfg.interactions.c3_cross = planted;
    pulse_both(cfg, 30e-6, 90e-6);
    const auto grid = linspace(-angular_from_hz(3e6), angular_from_hz(3e6), 21);
    const double t_end = 10.0 * 120e-6;
    const std::vector<double> delays{-40e-6, -20e-6, 0.0, 20e-6, 40e-6};

    SweepOptions opt;
    opt.threads = g_threads;
    auto observed = delay_scan(cfg, delays, grid, t_end, opt);
    g_audit.absorb_scan(observed.min_component, observed.max_total_increase,
                        delays.size() * grid.size());

    const double lower = angular_from_hz(0.5e6);
    const double upper = angular_from_hz(10e6);
    const auto fit = estimate_c3_cross(observed, cfg, grid, t_end, lower, upper, opt);
    const double rel = std::abs(fit.c3_cross - planted) / planted;

    // unimodality of the objective on a coarse grid (each evaluation already
    // parallelizes its sweeps internally)
    std::vector<double> coarse(20);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double c = lower + (upper - lower) * static_cast<double>(i) / 19.0;
        coarse[i] = c3_cross_objective(c, observed, cfg, grid, t_end, opt);
    }
    std::size_t local_minima = 0;
    for (std::size_t i = 1; i + 1 < coarse.size(); ++i)
        if (coarse[i] < coarse[i - 1] && coarse[i] < coarse[i + 1]) ++local_minima;
    const bool unimodal = local_minima <= 1;

    Outcome o;
    o.pass = rel <= 0.05 && !fit.at_bound && unimodal;
    o.detail = "recovered c3_cross = " + fmt(hz(fit.c3_cross) / 1e6) + " MHz um^3 vs planted " +
               fmt(hz(planted) / 1e6) + ", rel err " + fmt(rel) +
               " (required <= 0.05); coarse-grid local minima " +
               std::to_string(local_minima) + " (required <= 1)";
    return o;
}

Outcome c11_t_star_solver() {
    const double tau0_room = 3.54e-6;
    TemperatureTable table;
    table.label = "synthetic";
    for (int k = 0; k <= 60; ++k) {
        const double temp = 5.0 * k;
        table.temperature.push_back(temp);
        table.b_nl.push_back(0.05 + 0.15 * temp / 300.0);
        table.tau0.push_back(tau0_room * 300.0 / (300.0 + temp));
    }
    const double omega = angular_from_hz(100e3);
    const double delta = 10.0 * omega;

    bool pass = true;
    double max_dev = 0.0;
    for (double n : {4.0, 7.0, 11.0, 16.0}) {
        const auto bisect = t_star_n(table, omega, delta, n, tau0_room);
        if (bisect.status != TStarStatus::found) {
            pass = false;
            continue;
        }
        // brute-force oracle: 1e4-point residual scan with sign-change
        // interpolation
        const auto residual = [&](double t) {
            return table.tau0_at(t) / table.b_nl_at(t) - n * tau0_room;
        };
        double brute = table.t_max();
        double prev_t = table.t_min(), prev_r = residual(prev_t);
        for (int k = 1; k < 10000; ++k) {
            const double t = table.t_min() + (table.t_max() - table.t_min()) * k / 9999.0;
            const double r = residual(t);
            if (prev_r >= 0.0 && r < 0.0) {
                brute = prev_t + (t - prev_t) * prev_r / (prev_r - r);
                break;
            }
            prev_t = t;
            prev_r = r;
        }
        max_dev = std::max(max_dev, std::abs(bisect.temperature - brute));
    }
    pass = pass && max_dev <= 0.01;

    // nonincreasing in N
    double prev = 1e9;
    for (int k = 0; k < 10; ++k) {
        const double n = 3.0 * std::pow(19.0 / 3.0, k / 9.0);
        const auto r = t_star_n(table, omega, delta, n, tau0_room);
        if (r.status != TStarStatus::found || r.temperature > prev + 0.011) pass = false;
        if (r.status == TStarStatus::found) prev = r.temperature;
    }

    // atom numbers beyond the zero-temperature threshold return none
    const bool none_high = t_star_n(table, omega, delta, 1e6, tau0_room).status ==
                           TStarStatus::none &&
                           t_star_n(table, omega, delta, 25.0, tau0_room).status ==
                           TStarStatus::none;
    pass = pass && none_high;

    Outcome o;
    o.pass = pass;
    o.detail = "bisection vs brute-force max deviation = " + fmt(max_dev) +
               " K (required <= 0.01); nonincreasing in N and none above threshold: " +
               (none_high ? "yes" : "no");
    return o;
}

}  // namespace

int main() {
    g_threads = resolve_threads(0);

    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "cross-broadening width doubling", c1_cross_broadening_doubling},
        {2, "delay-scan relaxation", c2_delay_scan_relaxation},
        {3, "delta-mF=3 delay asymmetry", c3_dmf3_asymmetry},
        {4, "pulse-width narrowing", c4_pulse_width_narrowing},
        {5, "fluorescence overshoot", c5_fluorescence_overshoot},
        {6, "steady-state width scaling with omega", c6_omega_scaling},
        {7, "critical atom number benchmark", c7_n_critical},
        {8, "first-contaminant monte-carlo oracle", c8_tau_c_monte_carlo},
        {9, "numerical hygiene", c9_numerical_hygiene},
        {10, "c3_cross round trip", c10_c3_cross_round_trip},
        {11, "t_star solver vs brute force", c11_t_star_solver},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%2d] %s %s: %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name,
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
