#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydeph/errors.hpp"
#include "rydeph/pulse_train.hpp"
#include "rydeph/units.hpp"

namespace rydeph {

// Decay rates and branching ratios of one ground/Rydberg/pollutant triple.
// Defaults are the 87Rb 18S values used throughout.
struct SpeciesParams {
    double gamma0 = angular_from_hz(45e3);    // Rydberg linewidth Gamma_0 (rad/s)
    double gamma_np = angular_from_hz(22.5e3);// effective pollutant decay rate (rad/s)
    double b1 = 0.49;                         // branching Rydberg -> own ground
    double b2 = 0.18;                         // branching Rydberg -> effective pollutant
    double b3 = 0.55;                         // branching pollutant -> own ground
    double gamma_d = 0.0;                     // off-resonant 5P scattering loss (rad/s)
    std::string label = "pump";               // "pump" or "probe"

    void validate() const {
        if (gamma0 < 0.0 || gamma_np < 0.0 || gamma_d < 0.0)
            throw ConfigError("species '" + label + "': rates must be >= 0");
        if (b1 < 0.0 || b1 > 1.0) throw ConfigError("species '" + label + "': b1 must lie in [0,1]");
        if (b2 < 0.0 || b2 > 1.0) throw ConfigError("species '" + label + "': b2 must lie in [0,1]");
        if (b3 < 0.0 || b3 > 1.0) throw ConfigError("species '" + label + "': b3 must lie in [0,1]");
        if (b1 + b2 > 1.0 + 1e-12)
            throw ConfigError("species '" + label + "': b1 + b2 must be <= 1");
        if (label != "pump" && label != "probe")
            throw ConfigError("species label must be 'pump' or 'probe', got '" + label + "'");
    }
};

// Mean-field dipole interaction strengths and the total atom density.
struct InteractionParams {
    double c3_self = angular_from_hz(35e6);   // C3 (rad/s * um^3)
    double c3_cross = angular_from_hz(3.5e6); // C3_cross (rad/s * um^3)
    double rho0 = 14.9;                       // total atom density (um^-3)

    void validate() const {
        if (c3_self < 0.0 || c3_cross < 0.0 || rho0 < 0.0)
            throw ConfigError("interaction parameters must be >= 0");
    }
};

// Two-photon drive of one species. omega1/omega2/delta_int are the optional
// single-photon calibration values; when all three are present they must be
// consistent with omega.
struct DriveConfig {
    double omega = 0.0;  // two-photon Rabi frequency (rad/s)
    double delta = 0.0;  // two-photon detuning (rad/s, signed)
    std::optional<double> omega1;     // 5S-5P Rabi (rad/s)
    std::optional<double> omega2;     // 5P-Rydberg Rabi (rad/s)
    std::optional<double> delta_int;  // intermediate detuning (rad/s, signed)
    PulseTrain envelope{};

    void validate() const {
        if (omega < 0.0) throw ConfigError("drive: omega must be >= 0");
        envelope.validate();
        if (omega1 && omega2 && delta_int) {
            if (*delta_int == 0.0) throw ConfigError("drive: delta_int must be nonzero");
            const double derived = *omega1 * *omega2 / (2.0 * std::abs(*delta_int));
            const double scale = std::max(std::abs(omega), std::abs(derived));
            if (scale > 0.0 && std::abs(omega - derived) > 1e-9 * scale)
                throw ConfigError("drive: omega is inconsistent with omega1*omega2/(2|delta_int|)");
        }
    }
};

// Complete model: one species (self-broadening) or two (cross-broadening).
struct ModelConfig {
    std::vector<SpeciesParams> species;
    std::vector<DriveConfig> drives;           // one per species
    InteractionParams interactions{};
    std::vector<double> initial_fractions;     // ground fraction per species

    std::size_t n_species() const { return species.size(); }

    void validate() const {
        if (species.size() != 1 && species.size() != 2)
            throw ConfigError("model: species count must be 1 or 2");
        if (drives.size() != species.size())
            throw ConfigError("model: need exactly one drive per species");
        if (initial_fractions.size() != species.size())
            throw ConfigError("model: need exactly one initial fraction per species");
        double total = 0.0;
        for (double f : initial_fractions) {
            if (f < 0.0) throw ConfigError("model: initial fractions must be >= 0");
            total += f;
        }
        if (total > 1.0 + 1e-12)
            throw ConfigError("model: initial fractions must sum to <= 1");
        for (const auto& sp : species) sp.validate();
        for (const auto& dr : drives) dr.validate();
        interactions.validate();
        if (species.size() == 2 && species[0].label == species[1].label)
            throw ConfigError("model: two species must be labeled 'pump' and 'probe'");
    }

    // Index of the probed species: the one labeled "probe", or the only one.
    std::size_t probe_index() const {
        for (std::size_t i = 0; i < species.size(); ++i)
            if (species[i].label == "probe") return i;
        if (species.size() == 1) return 0;
        throw ConfigError("model: no species labeled 'probe'");
    }
};

// Gamma(t) = Gamma_0 + C3 rho0 N_nP,self + C3_cross rho0 N_nP,other.
// Pollutant fractions are fractions of the total atom number.
inline double dephasing_rate(const SpeciesParams& self, const InteractionParams& inter,
                             double nnp_self, double nnp_other = 0.0) {
    if (nnp_self < 0.0 || nnp_other < 0.0)
        throw DomainError("dephasing_rate: pollutant fractions must be >= 0");
    return self.gamma0 + inter.c3_self * inter.rho0 * nnp_self
                       + inter.c3_cross * inter.rho0 * nnp_other;
}

// Broadened, saturated excitation rate R = Gamma Omega^2 / (4 delta^2 + Gamma^2).
// A Lorentzian in delta with FWHM Gamma, peaking at Omega^2/Gamma on resonance.
inline double excitation_rate(double gamma, double omega, double delta) {
    if (gamma <= 0.0) throw DomainError("excitation_rate: gamma must be > 0");
    return gamma * omega * omega / (4.0 * delta * delta + gamma * gamma);
}

// Two-photon Rabi frequency omega1*omega2/(2|delta_int|).
inline double two_photon_rabi(double omega1, double omega2, double delta_int) {
    if (delta_int == 0.0) throw DomainError("two_photon_rabi: delta_int must be nonzero");
    return omega1 * omega2 / (2.0 * std::abs(delta_int));
}

// Ground-state loss from off-resonant intermediate-state scattering:
// (omega1 / 2 delta_int)^2 * gamma_5p.
inline double off_resonant_scattering(double omega1, double delta_int, double gamma_5p) {
    if (delta_int == 0.0) throw DomainError("off_resonant_scattering: delta_int must be nonzero");
    const double x = omega1 / (2.0 * delta_int);
    return x * x * gamma_5p;
}

struct BetaContribution {
    double c3;        // dipole strength (rad/s * um^3)
    double branching; // branching ratio into this pollutant state
    double gamma_np;  // pollutant decay rate (rad/s)
};

// Effective interaction volume beta = sum |C3| b / Gamma_nP (um^3, with the
// angular factors of C3 and Gamma_nP cancelling). Diagnostic only.
inline double effective_beta(std::span<const BetaContribution> contributions) {
    double beta = 0.0;
    for (const auto& c : contributions) {
        if (c.gamma_np <= 0.0) throw DomainError("effective_beta: gamma_np must be > 0");
        beta += std::abs(c.c3) * c.branching / c.gamma_np;
    }
    return beta;
}

inline double effective_beta(std::initializer_list<BetaContribution> contributions) {
    return effective_beta(std::span<const BetaContribution>(contributions.begin(), contributions.size()));
}

// Self-consistent resonant steady-state dephasing rate per species, assuming
// envelopes on and ground fractions frozen at their initial values. A sizing
// heuristic for detuning grids and exposure times, not a model output.
inline std::vector<double> estimate_steady_gamma(const ModelConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_species();
    std::vector<double> gamma(n), nnp(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = std::max(cfg.species[i].gamma0, 1e-300);

    for (int pass = 0; pass < 200; ++pass) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& sp = cfg.species[i];
            const auto& dr = cfg.drives[i];
            const double r = dr.omega > 0.0 ? excitation_rate(gamma[i], dr.omega, dr.delta) : 0.0;
            const double ns = cfg.initial_fractions[i] * r / (r + std::max(sp.gamma0, 1e-300));
            nnp[i] = sp.gamma_np > 0.0 ? sp.b2 * sp.gamma0 * ns / sp.gamma_np : 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = n == 2 ? 1 - i : i;
            const double target = dephasing_rate(cfg.species[i], cfg.interactions, nnp[i],
                                                 n == 2 ? nnp[j] : 0.0);
            const double next = 0.5 * gamma[i] + 0.5 * target;
            change = std::max(change, std::abs(next - gamma[i]) / next);
            gamma[i] = next;
        }
        if (change < 1e-13) break;
    }
    return gamma;
}

}
