#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rydeph/dynamics.hpp"
#include "rydeph/errors.hpp"
#include "rydeph/fitting.hpp"
#include "rydeph/model.hpp"
#include "rydeph/parallel.hpp"
#include "rydeph/units.hpp"

namespace rydeph {

// Depletion spectrum: remaining probe ground fraction per probe detuning.
struct Spectrum {
    std::vector<double> detunings;  // rad/s, strictly increasing
    std::vector<double> signal;     // N_g'(t_end) / N_g'(0), in [0, 1]
    ModelConfig config;             // echo
    double t_end = 0.0;

    // worst-case integrator hygiene over all runs of the sweep
    double min_component = 0.0;
    double max_total_increase = 0.0;
};

struct LorentzianFit {
    double center = 0.0;     // rad/s
    double fwhm = 0.0;       // rad/s
    double amplitude = 0.0;  // dip depth
    double offset = 0.0;     // baseline
    double center_err = 0.0;
    double fwhm_err = 0.0;
    double amplitude_err = 0.0;
    double offset_err = 0.0;
    double residual_norm = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct DelayScanResult {
    std::vector<double> delays;      // s
    std::vector<double> widths;      // fitted FWHM (rad/s)
    std::vector<double> width_errs;  // 1-sigma (rad/s)
    std::vector<bool> converged;

    double min_component = 0.0;      // worst-case hygiene over all sweeps
    double max_total_increase = 0.0;
};

struct SweepOptions {
    double rtol = 1e-9;
    unsigned threads = 0;  // 0 = hardware concurrency
};

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
    if (points < 2) throw DomainError("linspace: need at least 2 points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

// Default sweep grid: `points` detunings spanning +-5x the expected width.
inline std::vector<double> default_detuning_grid(const ModelConfig& cfg,
                                                 std::size_t points = 61) {
    const double width = estimate_steady_gamma(cfg)[cfg.probe_index()];
    const double half_span = 5.0 * width;
    return linspace(-half_span, half_span, points);
}

struct DepletionResult {
    double remaining = 0.0;
    double min_component = 0.0;
    double max_total_increase = 0.0;
};

// Remaining probe ground fraction after driving to t_end with the probe
// detuning overridden to delta_probe. After the drive window, a drive-off
// relaxation tail lets the excited populations decay back before the ground
// state is counted, which is how the depletion is measured: the readout
// happens long after the light is switched off.
inline DepletionResult simulate_depletion_detailed(const ModelConfig& cfg, double delta_probe,
                                                   double t_end, double rtol = 1e-9) {
    ModelConfig run = cfg;
    const std::size_t p = run.probe_index();
    if (!(run.initial_fractions[p] > 0.0))
        throw ConfigError("simulate_depletion: probe initial fraction must be > 0");
    run.drives[p].delta = delta_probe;
    IntegrateOptions opt;
    opt.rtol = rtol;
    const Trajectory driven = integrate(run, t_end, opt);

    DepletionResult out;
    out.min_component = driven.min_component;
    out.max_total_increase = driven.max_total_increase;

    // 15 lifetimes of the slowest decay channel empty the excited states
    double slowest = 0.0;
    for (const auto& sp : run.species)
        for (double rate : {sp.gamma0, sp.gamma_np})
            if (rate > 0.0) slowest = slowest > 0.0 ? std::min(slowest, rate) : rate;
    if (slowest > 0.0) {
        ModelConfig relax = run;
        for (auto& dr : relax.drives) dr.omega = 0.0;
        IntegrateOptions ropt;
        ropt.rtol = rtol;
        ropt.initial_state = driven.states.back();
        const Trajectory tail = integrate(relax, 15.0 / slowest, ropt);
        out.min_component = std::min(out.min_component, tail.min_component);
        out.max_total_increase = std::max(out.max_total_increase, tail.max_total_increase);
        out.remaining = tail.states.back().ground(p) / run.initial_fractions[p];
    } else {
        out.remaining = driven.states.back().ground(p) / run.initial_fractions[p];
    }
    return out;
}

inline double simulate_depletion(const ModelConfig& cfg, double delta_probe, double t_end,
                                 double rtol = 1e-9) {
    return simulate_depletion_detailed(cfg, delta_probe, t_end, rtol).remaining;
}

// One depletion run per grid point. Points are independent; they are
// distributed over a worker pool and written to per-index slots, so the
// result is bit-identical to a serial sweep.
inline Spectrum sweep_spectrum(const ModelConfig& cfg, const std::vector<double>& delta_grid,
                               double t_end, const SweepOptions& opt = {}) {
    if (delta_grid.size() < 7)
        throw DomainError("sweep_spectrum: need at least 7 grid points");
    for (std::size_t i = 1; i < delta_grid.size(); ++i)
        if (!(delta_grid[i] > delta_grid[i - 1]))
            throw DomainError("sweep_spectrum: detunings must be strictly increasing");

    Spectrum spec;
    spec.detunings = delta_grid;
    spec.signal.assign(delta_grid.size(), 0.0);
    spec.config = cfg;
    spec.t_end = t_end;

    std::vector<DepletionResult> results(delta_grid.size());
    parallel_for(delta_grid.size(), opt.threads, [&](std::size_t i) {
        results[i] = simulate_depletion_detailed(cfg, delta_grid[i], t_end, opt.rtol);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
        spec.signal[i] = results[i].remaining;
        spec.min_component = std::min(spec.min_component, results[i].min_component);
        spec.max_total_increase = std::max(spec.max_total_increase, results[i].max_total_increase);
    }
    return spec;
}

namespace detail {

// Half-depth crossing positions around the dip, linearly interpolated.
inline double initial_width_guess(const std::vector<double>& x, const std::vector<double>& y,
                                  std::size_t i_min, double half_level) {
    double left = x.front(), right = x.back();
    bool have_left = false, have_right = false;
    for (std::size_t k = i_min; k-- > 0;) {
        if (y[k] >= half_level) {
            const double f = (half_level - y[k + 1]) / (y[k] - y[k + 1]);
            left = x[k + 1] + f * (x[k] - x[k + 1]);
            have_left = true;
            break;
        }
    }
    for (std::size_t k = i_min + 1; k < y.size(); ++k) {
        if (y[k] >= half_level) {
            const double f = (half_level - y[k - 1]) / (y[k] - y[k - 1]);
            right = x[k - 1] + f * (x[k] - x[k - 1]);
            have_right = true;
            break;
        }
    }
    if (have_left && have_right) return right - left;
    if (have_left) return 2.0 * (x[i_min] - left);
    if (have_right) return 2.0 * (right - x[i_min]);
    return (x.back() - x.front()) / 4.0;
}

}

// Least-squares fit of signal(d) = offset - amplitude (w/2)^2 / ((d-c)^2 + (w/2)^2).
inline LorentzianFit fit_lorentzian(const std::vector<double>& detunings,
                                    const std::vector<double>& signal) {
    if (detunings.size() != signal.size() || detunings.size() < 5)
        throw FitError("fit_lorentzian: need at least 5 points");
    const double y_max = *std::max_element(signal.begin(), signal.end());
    const double y_min = *std::min_element(signal.begin(), signal.end());
    if (y_max == y_min) throw FitError("fit_lorentzian: constant signal");

    const std::size_t i_min = static_cast<std::size_t>(
        std::min_element(signal.begin(), signal.end()) - signal.begin());
    const double c0 = detunings[i_min];
    const double off0 = y_max;
    const double a0 = off0 - y_min;
    const double w0 = detail::initial_width_guess(detunings, signal, i_min, off0 - 0.5 * a0);

    const std::size_t n = detunings.size();
    auto eval = [&](const std::vector<double>& p, std::vector<double>& r,
                    std::vector<double>& jac) {
        const double c = p[0], w = p[1], a = p[2], off = p[3];
        const double q = 0.25 * w * w;  // (w/2)^2
        for (std::size_t k = 0; k < n; ++k) {
            const double u = detunings[k] - c;
            const double den = u * u + q;
            const double lor = q / den;
            r[k] = (off - a * lor) - signal[k];
            jac[k * 4 + 0] = -a * q * 2.0 * u / (den * den);     // d/dc
            jac[k * 4 + 1] = -a * u * u * 0.5 * w / (den * den); // d/dw
            jac[k * 4 + 2] = -lor;                               // d/da
            jac[k * 4 + 3] = 1.0;                                // d/doffset
        }
    };

    const auto lm = fitting::levenberg_marquardt(4, n, eval, {c0, w0, a0, off0});

    LorentzianFit fit;
    fit.center = lm.params[0];
    fit.fwhm = std::abs(lm.params[1]);
    fit.amplitude = lm.params[2];
    fit.offset = lm.params[3];
    fit.center_err = lm.stderrs[0];
    fit.fwhm_err = lm.stderrs[1];
    fit.amplitude_err = lm.stderrs[2];
    fit.offset_err = lm.stderrs[3];
    fit.residual_norm = lm.residual_norm;
    fit.converged = lm.converged;
    fit.iterations = lm.iterations;
    return fit;
}

inline LorentzianFit fit_lorentzian(const Spectrum& spec) {
    return fit_lorentzian(spec.detunings, spec.signal);
}

// Resonant excitation rate implied by the dip amplitude. Valid in the
// unsaturated regime where the depletion is still linear in the exposure;
// saturated data should go through resonant_rate_fit on a time series.
inline double resonant_rate_from_amplitude(const LorentzianFit& fit, double t_end) {
    if (!(t_end > 0.0)) throw DomainError("resonant_rate_from_amplitude: t_end must be > 0");
    return fit.amplitude / t_end;
}

struct RateFit {
    double rate = 0.0;      // 1/s
    double rate_err = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double residual_norm = 0.0;
    bool converged = false;
};

// Fit of a exp(-R t) + c to a resonant depletion curve.
inline RateFit resonant_rate_fit(const std::vector<double>& times,
                                 const std::vector<double>& ground_fractions) {
    if (times.size() != ground_fractions.size() || times.size() < 3)
        throw FitError("resonant_rate_fit: need at least 3 points");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw FitError("resonant_rate_fit: times must be strictly increasing");
    const double y_max = *std::max_element(ground_fractions.begin(), ground_fractions.end());
    const double y_min = *std::min_element(ground_fractions.begin(), ground_fractions.end());
    if (y_max == y_min) throw FitError("resonant_rate_fit: constant data");
    if (ground_fractions.front() <= ground_fractions.back())
        throw FitError("resonant_rate_fit: data do not decay");

    const double c0 = y_min;
    const double a0 = std::max(ground_fractions.front() - c0, 1e-12);
    // crude half-life estimate for the initial rate
    double r0 = 1.0 / (times.back() - times.front());
    const double half_level = c0 + 0.5 * a0;
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (ground_fractions[k] <= half_level) {
            if (times[k] > times.front())
                r0 = std::numbers::ln2 / (times[k] - times.front());
            break;
        }
    }

    const std::size_t n = times.size();
    auto eval = [&](const std::vector<double>& p, std::vector<double>& r,
                    std::vector<double>& jac) {
        const double a = p[0], rate = p[1], c = p[2];
        for (std::size_t k = 0; k < n; ++k) {
            const double e = std::exp(-rate * times[k]);
            r[k] = a * e + c - ground_fractions[k];
            jac[k * 3 + 0] = e;
            jac[k * 3 + 1] = -a * times[k] * e;
            jac[k * 3 + 2] = 1.0;
        }
    };
    const auto lm = fitting::levenberg_marquardt(3, n, eval, {a0, r0, c0});

    RateFit fit;
    fit.amplitude = lm.params[0];
    fit.rate = lm.params[1];
    fit.offset = lm.params[2];
    fit.rate_err = lm.stderrs[1];
    fit.residual_norm = lm.residual_norm;
    fit.converged = lm.converged;
    return fit;
}

// Probe spectrum and Lorentzian width for each probe-train delay.
inline DelayScanResult delay_scan(const ModelConfig& cfg, const std::vector<double>& delays,
                                  const std::vector<double>& delta_grid, double t_end,
                                  const SweepOptions& opt = {}) {
    cfg.validate();
    const std::size_t p = cfg.probe_index();
    for (const auto& dr : cfg.drives)
        if (dr.envelope.always_on)
            throw ConfigError("delay_scan: both species need pulsed envelopes");

    DelayScanResult out;
    out.delays = delays;
    out.widths.assign(delays.size(), 0.0);
    out.width_errs.assign(delays.size(), 0.0);
    out.converged.assign(delays.size(), false);

    for (std::size_t i = 0; i < delays.size(); ++i) {
        ModelConfig run = cfg;
        run.drives[p].envelope.delay = delays[i];
        const auto spec = sweep_spectrum(run, delta_grid, t_end, opt);
        const auto fit = fit_lorentzian(spec);
        out.widths[i] = fit.fwhm;
        out.width_errs[i] = fit.fwhm_err;
        out.converged[i] = fit.converged;
        out.min_component = std::min(out.min_component, spec.min_component);
        out.max_total_increase = std::max(out.max_total_increase, spec.max_total_increase);
    }
    return out;
}

struct PulseWidthPoint {
    double t_pulse = 0.0;        // s
    double width = 0.0;          // fitted FWHM (rad/s)
    double width_err = 0.0;
    double fourier_floor = 0.0;  // 2 pi 0.886 / t_pulse (rad/s), diagnostic only
    bool converged = false;

    double min_component = 0.0;  // hygiene over this point's sweeps
    double max_total_increase = 0.0;
};

// Single-species stroboscopic width scan at constant total on-time. The dark
// time is 20/gamma0 per pulse so all excited population decays in between.
// The Fourier floor column is the FWHM of the sinc^2 power spectrum of one
// rectangular pulse; it is reported next to the model width, never added in.
inline std::vector<PulseWidthPoint> pulse_width_scan(const ModelConfig& cfg,
                                                     const std::vector<double>& t_pulse_list,
                                                     double total_exposure,
                                                     std::size_t grid_points = 61,
                                                     const SweepOptions& opt = {}) {
    cfg.validate();
    if (cfg.n_species() != 1)
        throw ConfigError("pulse_width_scan: expected a single-species configuration");
    if (!(total_exposure > 0.0))
        throw DomainError("pulse_width_scan: total_exposure must be > 0");

    const double gamma0 = cfg.species[0].gamma0;
    if (!(gamma0 > 0.0)) throw ConfigError("pulse_width_scan: gamma0 must be > 0");
    const double t_dark_scale = 20.0 / gamma0;  // 20 tau0

    std::vector<PulseWidthPoint> points;
    points.reserve(t_pulse_list.size());
    for (double tp : t_pulse_list) {
        if (!(tp > 0.0)) throw DomainError("pulse_width_scan: t_pulse must be > 0");
        const auto n_pulses = static_cast<std::uint64_t>(
            std::max(1.0, std::round(total_exposure / tp)));

        ModelConfig run = cfg;
        auto& train = run.drives[0].envelope;
        train.always_on = false;
        train.t_pulse = tp;
        train.t_dark = t_dark_scale;
        train.delay = 0.0;
        train.n_pulses = n_pulses;
        const double t_end =
            static_cast<double>(n_pulses - 1) * train.period() + tp;

        double half_span = 5.0 * estimate_steady_gamma(run)[0];
        auto spec = sweep_spectrum(run, linspace(-half_span, half_span, grid_points), t_end, opt);
        auto fit = fit_lorentzian(spec);
        PulseWidthPoint pt;
        pt.min_component = spec.min_component;
        pt.max_total_increase = spec.max_total_increase;
        // auto-rerange once when the line is much narrower than the first grid
        if (fit.converged && fit.fwhm > 0.0 && fit.fwhm < half_span / 5.0) {
            half_span = 5.0 * fit.fwhm;
            spec = sweep_spectrum(run, linspace(-half_span, half_span, grid_points), t_end, opt);
            fit = fit_lorentzian(spec);
            pt.min_component = std::min(pt.min_component, spec.min_component);
            pt.max_total_increase = std::max(pt.max_total_increase, spec.max_total_increase);
        }

        pt.t_pulse = tp;
        pt.width = fit.fwhm;
        pt.width_err = fit.fwhm_err;
        pt.fourier_floor = two_pi * 0.886 / tp;
        pt.converged = fit.converged;
        points.push_back(pt);
    }
    return points;
}

struct C3CrossFit {
    double c3_cross = 0.0;     // rad/s * um^3
    double uncertainty = 0.0;  // curvature-based 1-sigma
    double objective = 0.0;    // chi^2 at the optimum
    int evaluations = 0;
    bool at_bound = false;
};

// Weighted squared width mismatch of a model delay scan against observed
// widths, as a function of the cross interaction strength.
inline double c3_cross_objective(double c3_cross, const DelayScanResult& observed,
                                 const ModelConfig& cfg, const std::vector<double>& delta_grid,
                                 double t_end, const SweepOptions& opt = {}) {
    ModelConfig run = cfg;
    run.interactions.c3_cross = c3_cross;
    const auto scan = delay_scan(run, observed.delays, delta_grid, t_end, opt);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < scan.widths.size(); ++i) {
        const double sigma = observed.width_errs[i] > 0.0 ? observed.width_errs[i] : 1.0;
        const double d = (scan.widths[i] - observed.widths[i]) / sigma;
        chi2 += d * d;
    }
    if (!std::isfinite(chi2)) throw FitError("c3_cross objective is not finite");
    return chi2;
}

// Scalar outer fit of c3_cross: Brent minimization of the delay-scan width
// mismatch. Every other model parameter stays frozen.
inline C3CrossFit estimate_c3_cross(const DelayScanResult& observed, const ModelConfig& cfg,
                                    const std::vector<double>& delta_grid, double t_end,
                                    double lower, double upper,
                                    const SweepOptions& opt = {}) {
    if (observed.delays.size() < 4)
        throw FitError("estimate_c3_cross: need at least 4 delay points");
    if (!(upper > lower) || lower < 0.0)
        throw DomainError("estimate_c3_cross: bounds must satisfy 0 <= lower < upper");

    int evals = 0;
    auto objective = [&](double c) {
        ++evals;
        return c3_cross_objective(c, observed, cfg, delta_grid, t_end, opt);
    };

    const auto min = fitting::minimize_scalar(objective, lower, upper, 1e-3);

    C3CrossFit fit;
    fit.c3_cross = min.x;
    fit.objective = min.f;
    fit.at_bound = min.at_lower_bound || min.at_upper_bound;

    // curvature of chi^2 at the optimum -> 1-sigma via delta chi^2 = 1
    const double h = std::max(1e-2 * (upper - lower), 1e-6 * std::abs(min.x));
    const double xl = std::max(lower, min.x - h);
    const double xr = std::min(upper, min.x + h);
    if (xr > xl && !fit.at_bound) {
        const double fl = objective(xl);
        const double fr = objective(xr);
        const double hh = 0.5 * (xr - xl);
        const double curvature = (fl + fr - 2.0 * min.f) / (hh * hh);
        if (curvature > 0.0) fit.uncertainty = std::sqrt(2.0 / curvature);
    }
    fit.evaluations = evals;
    return fit;
}

}
