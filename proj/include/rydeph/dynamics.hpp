#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "rydeph/errors.hpp"
#include "rydeph/model.hpp"
#include "rydeph/ode.hpp"
#include "rydeph/pulse_train.hpp"

namespace rydeph {

// Population fractions (of the total atom number) for 1 or 2 species,
// laid out [ground, rydberg, pollutant] per species.
struct PopulationState {
    std::size_t n_species = 1;
    std::array<double, 6> v{};

    std::size_t size() const { return 3 * n_species; }
    double ground(std::size_t i) const { return v[3 * i]; }
    double rydberg(std::size_t i) const { return v[3 * i + 1]; }
    double pollutant(std::size_t i) const { return v[3 * i + 2]; }

    double total() const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) s += v[i];
        return s;
    }
};

struct Trajectory {
    std::vector<double> times;             // strictly increasing (s)
    std::vector<PopulationState> states;   // one per time
    ModelConfig config;                    // echo of the integrated model

    // integrator hygiene, tracked on the raw (unclamped) samples
    double min_component = 0.0;            // most negative component seen
    double max_total_increase = 0.0;       // largest rise of the total above
                                           // its running minimum
};

namespace detail {

// Three-level rate equations of one species with the drive already gated by
// its envelope. Pollutant fractions entering the dephasing law are clamped
// at zero to tolerate integrator noise.
inline void species_rhs(const SpeciesParams& sp, double omega_gated, double delta,
                        const InteractionParams& inter,
                        double ng, double ns, double np, double nnp_other,
                        bool include_gamma_d,
                        double& dng, double& dns, double& dnp) {
    const double gamma = dephasing_rate(sp, inter, std::max(np, 0.0), std::max(nnp_other, 0.0));
    const double rate = omega_gated > 0.0 ? excitation_rate(gamma, omega_gated, delta) : 0.0;
    dng = (ns - ng) * rate + sp.gamma0 * sp.b1 * ns + sp.gamma_np * sp.b3 * np;
    dns = (ng - ns) * rate - sp.gamma0 * ns;
    dnp = sp.b2 * sp.gamma0 * ns - sp.gamma_np * np;
    if (include_gamma_d) dng -= sp.gamma_d * ng;
}

}

// d/dt of the single-species (self-broadening) model. The three-level form
// carries no ground-state scattering loss.
inline std::array<double, 3> rhs_self(const PopulationState& state, double t,
                                      const ModelConfig& cfg) {
    if (cfg.n_species() != 1 || state.n_species != 1)
        throw ConfigError("rhs_self: expected a single-species configuration");
    const auto& dr = cfg.drives[0];
    std::array<double, 3> d{};
    detail::species_rhs(cfg.species[0], dr.omega * envelope_at(dr.envelope, t), dr.delta,
                        cfg.interactions, state.v[0], state.v[1], state.v[2], 0.0, false,
                        d[0], d[1], d[2]);
    return d;
}

// d/dt of the two-species model: each species sees its own pollutants plus
// the other species' through c3_cross, and loses ground atoms at gamma_d.
inline std::array<double, 6> rhs_cross(const PopulationState& state, double t,
                                       const ModelConfig& cfg) {
    if (cfg.n_species() != 2 || state.n_species != 2)
        throw ConfigError("rhs_cross: expected a two-species configuration");
    std::array<double, 6> d{};
    for (std::size_t i = 0; i < 2; ++i) {
        const std::size_t j = 1 - i;
        const auto& dr = cfg.drives[i];
        detail::species_rhs(cfg.species[i], dr.omega * envelope_at(dr.envelope, t), dr.delta,
                            cfg.interactions,
                            state.v[3 * i], state.v[3 * i + 1], state.v[3 * i + 2],
                            state.v[3 * j + 2], true,
                            d[3 * i], d[3 * i + 1], d[3 * i + 2]);
    }
    return d;
}

struct IntegrateOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    // Cap on the step size per envelope segment, so every pulse carries at
    // least this many interior samples.
    std::size_t min_samples_per_segment = 22;
    // Start from this state instead of the configured ground fractions.
    std::optional<PopulationState> initial_state;
};

namespace detail {

inline std::vector<double> segment_boundaries(const ModelConfig& cfg, double t_end) {
    std::vector<double> edges{0.0, t_end};
    for (const auto& dr : cfg.drives) append_pulse_edges(dr.envelope, 0.0, t_end, edges);
    std::sort(edges.begin(), edges.end());
    std::vector<double> merged;
    merged.reserve(edges.size());
    const double eps = 1e-12 * t_end;
    for (double e : edges)
        if (merged.empty() || e - merged.back() > eps) merged.push_back(e);
    merged.back() = t_end;
    return merged;
}

template <std::size_t N>
PopulationState make_state(const std::array<double, N>& y) {
    PopulationState s;
    s.n_species = N / 3;
    for (std::size_t i = 0; i < N; ++i) s.v[i] = std::max(y[i], 0.0);
    return s;
}

template <std::size_t N>
Trajectory run_segments(const ModelConfig& cfg, double t_end, const IntegrateOptions& opt) {
    std::array<double, N> y{};
    if (opt.initial_state) {
        if (opt.initial_state->n_species != cfg.n_species())
            throw ConfigError("integrate: initial state does not match the species count");
        for (std::size_t i = 0; i < N; ++i) {
            if (opt.initial_state->v[i] < 0.0)
                throw ConfigError("integrate: initial state components must be >= 0");
            y[i] = opt.initial_state->v[i];
        }
    } else {
        for (std::size_t i = 0; i < cfg.n_species(); ++i) y[3 * i] = cfg.initial_fractions[i];
    }

    Trajectory traj;
    traj.config = cfg;
    traj.times.push_back(0.0);
    traj.states.push_back(make_state<N>(y));

    double running_min_total = traj.states.front().total();
    const auto check_and_record = [&](double t, const std::array<double, N>& yy) {
        double total = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            if (yy[i] < -1e-6)
                throw IntegrationError("population component went below -1e-6", t);
            traj.min_component = std::min(traj.min_component, yy[i]);
            total += yy[i];
        }
        traj.max_total_increase =
            std::max(traj.max_total_increase, total - running_min_total);
        running_min_total = std::min(running_min_total, total);
        traj.times.push_back(t);
        traj.states.push_back(make_state<N>(yy));
    };

    const auto boundaries = segment_boundaries(cfg, t_end);
    for (std::size_t s = 0; s + 1 < boundaries.size(); ++s) {
        const double a = boundaries[s];
        const double b = boundaries[s + 1];

        // The envelope is constant on (a, b); freeze it at the midpoint so
        // stage evaluations at the segment ends cannot peek across an edge.
        std::array<double, 2> omega_gated{0.0, 0.0};
        for (std::size_t i = 0; i < cfg.n_species(); ++i)
            omega_gated[i] = cfg.drives[i].omega *
                             envelope_at(cfg.drives[i].envelope, 0.5 * (a + b));

        auto rhs = [&cfg, &omega_gated](double, const std::array<double, N>& yy,
                                        std::array<double, N>& dy) {
            for (std::size_t i = 0; i < N / 3; ++i) {
                const std::size_t j = (N / 3) - 1 - i;
                detail::species_rhs(cfg.species[i], omega_gated[i], cfg.drives[i].delta,
                                    cfg.interactions,
                                    yy[3 * i], yy[3 * i + 1], yy[3 * i + 2],
                                    N == 6 ? yy[3 * j + 2] : 0.0, N == 6,
                                    dy[3 * i], dy[3 * i + 1], dy[3 * i + 2]);
            }
        };

        ode::Options oopt;
        oopt.rtol = opt.rtol;
        oopt.atol = opt.atol;
        oopt.h_max = (b - a) / static_cast<double>(opt.min_samples_per_segment);
        ode::integrate_adaptive<N>(rhs, y, a, b, oopt, check_and_record);
    }
    return traj;
}

}

// Integrates the applicable rate-equation model from the configured initial
// ground fractions to t_end. Envelope switching times are hard breakpoints:
// the integrator restarts on every pulse edge.
inline Trajectory integrate(const ModelConfig& cfg, double t_end,
                            const IntegrateOptions& opt = {}) {
    cfg.validate();
    if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be > 0");
    if (!(opt.rtol > 0.0)) throw DomainError("integrate: rtol must be > 0");
    return cfg.n_species() == 1 ? detail::run_segments<3>(cfg, t_end, opt)
                                : detail::run_segments<6>(cfg, t_end, opt);
}

namespace detail {

template <std::size_t N>
Trajectory run_fixed_rk4(const ModelConfig& cfg, double t_end, std::size_t n_steps) {
    std::array<double, N> y{};
    for (std::size_t i = 0; i < cfg.n_species(); ++i) y[3 * i] = cfg.initial_fractions[i];

    Trajectory traj;
    traj.config = cfg;
    traj.times.push_back(0.0);
    traj.states.push_back(make_state<N>(y));

    auto rhs = [&cfg](double t, const std::array<double, N>& yy, std::array<double, N>& dy) {
        for (std::size_t i = 0; i < N / 3; ++i) {
            const std::size_t j = (N / 3) - 1 - i;
            const auto& dr = cfg.drives[i];
            detail::species_rhs(cfg.species[i], dr.omega * envelope_at(dr.envelope, t),
                                dr.delta, cfg.interactions,
                                yy[3 * i], yy[3 * i + 1], yy[3 * i + 2],
                                N == 6 ? yy[3 * j + 2] : 0.0, N == 6,
                                dy[3 * i], dy[3 * i + 1], dy[3 * i + 2]);
        }
    };
    ode::integrate_rk4<N>(rhs, y, 0.0, t_end, n_steps, [&](double t, const auto& yy) {
        traj.times.push_back(t);
        traj.states.push_back(make_state<N>(yy));
    });
    return traj;
}

}

// Fixed-step RK4 reference run. No envelope breakpoint handling, so it is
// only meaningful for continuous-drive configurations.
inline Trajectory integrate_fixed_rk4(const ModelConfig& cfg, double t_end,
                                      std::size_t n_steps) {
    cfg.validate();
    if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be > 0");
    return cfg.n_species() == 1 ? detail::run_fixed_rk4<3>(cfg, t_end, n_steps)
                                : detail::run_fixed_rk4<6>(cfg, t_end, n_steps);
}

// Total Rydberg population versus time, normalized so the global maximum
// is 1 (the detection constant of proportionality is not modeled).
inline std::vector<double> fluorescence_trace(const Trajectory& traj) {
    std::vector<double> trace(traj.states.size(), 0.0);
    double peak = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < traj.states[k].n_species; ++i)
            s += traj.states[k].rydberg(i);
        trace[k] = s;
        peak = std::max(peak, s);
    }
    if (peak > 0.0)
        for (double& x : trace) x /= peak;
    return trace;
}

}
