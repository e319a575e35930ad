#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rydeph/csv.hpp"
#include "rydeph/errors.hpp"
#include "rydeph/units.hpp"

namespace rydeph {

// One stroboscopic-dressing operating point.
struct DressingScenario {
    double omega = 0.0;     // dressing Rabi frequency (rad/s)
    double delta = 0.0;     // dressing detuning (rad/s, signed, nonzero)
    double b_nl = 0.0;      // summed branching ratio to contaminant states
    double tau0 = 0.0;      // Rydberg lifetime (s)
    double n_atoms = 0.0;   // atoms participating in the dressing
    double a_factor = 1.0;  // dark time in units of tau0
    double gamma0 = 0.0;    // bare linewidth, for the Fourier constraint (rad/s)

    void validate() const {
        if (delta == 0.0) throw DomainError("scenario: delta must be nonzero");
        if (!(omega > 0.0)) throw DomainError("scenario: omega must be > 0");
        if (!(b_nl > 0.0) || b_nl > 1.0) throw DomainError("scenario: b_nl must lie in (0,1]");
        if (!(tau0 > 0.0)) throw DomainError("scenario: tau0 must be > 0");
        if (!(n_atoms >= 1.0)) throw DomainError("scenario: n_atoms must be >= 1");
        if (!(a_factor >= 1.0)) throw DomainError("scenario: a_factor must be >= 1");
    }

    // The literal first-contaminant estimate ignores saturation of the
    // dressed Rydberg fraction; flag operating points close to resonance.
    bool near_resonance() const { return std::abs(delta) < 2.0 * omega; }
};

// Atom number at which the first-contaminant time equals the Rydberg
// lifetime: N_c = 4 delta^2 / (Omega^2 b_nl).
inline double n_critical(double omega, double delta, double b_nl) {
    if (omega == 0.0 || b_nl == 0.0)
        throw DomainError("n_critical: omega and b_nl must be nonzero");
    return 4.0 * delta * delta / (omega * omega * b_nl);
}

// Mean time until the first contaminant atom appears:
// tau_c = tau0 * 4 delta^2 / (Omega^2 b_nl N) = tau0 * N_c / N.
inline double tau_c(const DressingScenario& s) {
    s.validate();
    return s.tau0 * 4.0 * s.delta * s.delta / (s.omega * s.omega * s.b_nl * s.n_atoms);
}

// Short-distance dressed interaction energy U = Omega^4 / (8 delta^3),
// carrying the sign of delta.
inline double dressed_interaction(double omega, double delta) {
    if (delta == 0.0) throw DomainError("dressed_interaction: delta must be nonzero");
    const double o2 = omega * omega;
    return o2 * o2 / (8.0 * delta * delta * delta);
}

// Duty-cycle-limited stroboscopic interaction U* = U (Nc/N) / (A + Nc/N).
inline double stroboscopic_bound(const DressingScenario& s) {
    s.validate();
    const double ratio = n_critical(s.omega, s.delta, s.b_nl) / s.n_atoms;
    return dressed_interaction(s.omega, s.delta) * ratio / (s.a_factor + ratio);
}

inline double duty_cycle_bound(const DressingScenario& s) {
    const double ratio = n_critical(s.omega, s.delta, s.b_nl) / s.n_atoms;
    return ratio / (s.a_factor + ratio);
}

// Atom-number ceiling below which pulses can stay both Fourier-safe and
// shorter than tau_c: N << N_c delta / Gamma_0.
inline double fourier_atom_bound(double delta, double gamma0, double n_crit) {
    if (gamma0 <= 0.0) throw DomainError("fourier_atom_bound: gamma0 must be > 0");
    return n_crit * delta / gamma0;
}

struct WaitingTimeSample {
    double mean = 0.0;
    double rate = 0.0;  // exponential rate used for the draws (1/s)
    std::uint64_t draws = 0;
    std::vector<double> bin_edges;       // histogram over [0, max sample]
    std::vector<std::uint64_t> counts;
};

// Monte-Carlo draw of first-contaminant waiting times. The waiting time is
// exponential with rate 1/tau_c. Deterministic for a fixed seed: uniforms
// come from mt19937_64 mapped into (0,1] by the fixed 53-bit ladder below,
// so results do not depend on the platform's distribution implementation.
inline WaitingTimeSample sample_first_contaminant(const DressingScenario& s,
                                                  std::uint64_t draws, std::uint64_t seed,
                                                  std::size_t bins = 50) {
    if (draws < 1) throw DomainError("sample_first_contaminant: draws must be >= 1");
    const double rate = 1.0 / tau_c(s);

    std::mt19937_64 rng(seed);
    std::vector<double> samples(draws);
    double sum = 0.0;
    double max_sample = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double u =
            (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // uniform in (0,1]
        const double t = -std::log(u) / rate;
        samples[i] = t;
        sum += t;
        if (t > max_sample) max_sample = t;
    }

    WaitingTimeSample out;
    out.mean = sum / static_cast<double>(draws);
    out.rate = rate;
    out.draws = draws;
    out.bin_edges.resize(bins + 1);
    out.counts.assign(bins, 0);
    for (std::size_t b = 0; b <= bins; ++b)
        out.bin_edges[b] = max_sample * static_cast<double>(b) / static_cast<double>(bins);
    for (double t : samples) {
        auto b = static_cast<std::size_t>(std::floor(t / max_sample * static_cast<double>(bins)));
        if (b >= bins) b = bins - 1;
        ++out.counts[b];
    }
    return out;
}

// Tabulated temperature dependence of the contaminant branching ratio and
// Rydberg lifetime for one nS state.
struct TemperatureTable {
    std::vector<double> temperature;  // K, strictly increasing
    std::vector<double> b_nl;         // nondecreasing in T
    std::vector<double> tau0;         // s, nonincreasing in T
    std::string label;

    void validate() const {
        const std::size_t n = temperature.size();
        if (n < 3 || b_nl.size() != n || tau0.size() != n)
            throw ConfigError("temperature table: need >= 3 complete rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(b_nl[i] > 0.0) || b_nl[i] > 1.0)
                throw ConfigError("temperature table: b_nl must lie in (0,1]");
            if (!(tau0[i] > 0.0)) throw ConfigError("temperature table: tau0 must be > 0");
        }
        for (std::size_t i = 1; i < n; ++i) {
            if (!(temperature[i] > temperature[i - 1]))
                throw ConfigError("temperature table: temperatures must be strictly increasing");
            if (b_nl[i] < b_nl[i - 1])
                throw ConfigError("temperature table: b_nl must be nondecreasing in T");
            if (tau0[i] > tau0[i - 1])
                throw ConfigError("temperature table: tau0 must be nonincreasing in T");
        }
    }

    double t_min() const { return temperature.front(); }
    double t_max() const { return temperature.back(); }

    double b_nl_at(double t) const { return interpolate(b_nl, t); }
    double tau0_at(double t) const { return interpolate(tau0, t); }

private:
    double interpolate(const std::vector<double>& col, double t) const {
        if (t <= temperature.front()) return col.front();
        if (t >= temperature.back()) return col.back();
        std::size_t hi = 1;
        while (temperature[hi] < t) ++hi;
        const std::size_t lo = hi - 1;
        const double f = (t - temperature[lo]) / (temperature[hi] - temperature[lo]);
        return col[lo] + f * (col[hi] - col[lo]);
    }
};

// CSV schema: temperature_K, b_nl, tau0_s (header required, '#' comments ok).
inline TemperatureTable read_temperature_table(std::istream& is, const std::string& origin) {
    const CsvTable csv = read_csv(is, origin);
    const std::size_t ct = csv.column("temperature_K");
    const std::size_t cb = csv.column("b_nl");
    const std::size_t cl = csv.column("tau0_s");
    TemperatureTable table;
    table.label = origin;
    for (const auto& row : csv.rows) {
        table.temperature.push_back(row[ct]);
        table.b_nl.push_back(row[cb]);
        table.tau0.push_back(row[cl]);
    }
    table.validate();
    return table;
}

inline TemperatureTable read_temperature_table_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    return read_temperature_table(f, path);
}

enum class TStarStatus {
    found,         // crossing inside the table range
    none,          // even the coldest table temperature is not enough
    at_hot_bound,  // already satisfied at the hottest table temperature
};

struct TStarResult {
    TStarStatus status = TStarStatus::none;
    double temperature = 0.0;  // K, meaningful for found / at_hot_bound
};

// Temperature at which the first-contaminant time for N atoms equals the
// room-temperature single-particle scattering time:
// tau_c(T) = (4 delta^2/Omega^2) tau0_room, i.e. tau0(T)/b_nl(T) = N tau0_room.
// The left side is nonincreasing in T, so a bisection on the interpolated
// table converges; resolution 0.01 K.
inline TStarResult t_star_n(const TemperatureTable& table, double omega, double delta,
                            double n_atoms, double tau0_room) {
    table.validate();
    if (delta == 0.0) throw DomainError("t_star_n: delta must be nonzero");
    if (!(omega > 0.0)) throw DomainError("t_star_n: omega must be > 0");
    if (!(tau0_room > 0.0)) throw DomainError("t_star_n: tau0_room must be > 0");
    if (!(n_atoms >= 1.0)) throw DomainError("t_star_n: n_atoms must be >= 1");

    const auto residual = [&](double t) {
        return table.tau0_at(t) / table.b_nl_at(t) - n_atoms * tau0_room;
    };

    TStarResult out;
    if (residual(table.t_min()) < 0.0) {
        out.status = TStarStatus::none;  // intrinsic branching wins even when cold
        return out;
    }
    if (residual(table.t_max()) >= 0.0) {
        out.status = TStarStatus::at_hot_bound;
        out.temperature = table.t_max();
        return out;
    }

    double lo = table.t_min();  // residual >= 0 here
    double hi = table.t_max();  // residual < 0 here
    while (hi - lo > 0.01) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) >= 0.0) lo = mid; else hi = mid;
    }
    out.status = TStarStatus::found;
    out.temperature = 0.5 * (lo + hi);
    return out;
}

// Full coherence budget of a dressing scenario.
struct MitigationBudget {
    double tau_c = 0.0;
    double n_crit = 0.0;
    double u = 0.0;
    double u_star = 0.0;
    double duty_cycle = 0.0;
    double fourier_ceiling = 0.0;
    bool near_resonance = false;
    std::optional<TStarResult> t_star;
};

inline MitigationBudget make_budget(const DressingScenario& s,
                                    const std::optional<TemperatureTable>& table = std::nullopt,
                                    double tau0_room = 0.0) {
    s.validate();
    MitigationBudget b;
    b.tau_c = tau_c(s);
    b.n_crit = n_critical(s.omega, s.delta, s.b_nl);
    b.u = dressed_interaction(s.omega, s.delta);
    b.u_star = stroboscopic_bound(s);
    b.duty_cycle = duty_cycle_bound(s);
    b.fourier_ceiling = fourier_atom_bound(std::abs(s.delta), s.gamma0, b.n_crit);
    b.near_resonance = s.near_resonance();
    if (table) b.t_star = t_star_n(*table, s.omega, s.delta, s.n_atoms,
                                   tau0_room > 0.0 ? tau0_room : s.tau0);
    return b;
}

inline std::string format_budget_report(const MitigationBudget& b, const DressingScenario& s) {
    std::ostringstream os;
    os << "stroboscopic dressing budget\n";
    os << "  omega_hz          " << format_double(hz_from_angular(s.omega)) << "\n";
    os << "  delta_hz          " << format_double(hz_from_angular(s.delta)) << "\n";
    os << "  b_nl              " << format_double(s.b_nl) << "\n";
    os << "  tau0_s            " << format_double(s.tau0) << "\n";
    os << "  n_atoms           " << format_double(s.n_atoms) << "\n";
    os << "  a_factor          " << format_double(s.a_factor) << "\n";
    os << "  tau_c_s           " << format_double(b.tau_c) << "\n";
    os << "  n_critical        " << format_double(b.n_crit) << "\n";
    os << "  u_rad_per_s       " << format_double(b.u) << "\n";
    os << "  u_star_rad_per_s  " << format_double(b.u_star) << "\n";
    os << "  u_star_over_u     " << format_double(b.u != 0.0 ? b.u_star / b.u : 0.0) << "\n";
    os << "  duty_cycle_bound  " << format_double(b.duty_cycle) << "\n";
    os << "  fourier_ceiling   " << format_double(b.fourier_ceiling) << "\n";
    os << "  n_over_ceiling    "
       << format_double(b.fourier_ceiling != 0.0 ? s.n_atoms / b.fourier_ceiling : 0.0) << "\n";
    if (b.near_resonance)
        os << "  warning           |delta| < 2 omega: tau_c estimate ignores saturation\n";
    if (b.t_star) {
        switch (b.t_star->status) {
            case TStarStatus::found:
                os << "  t_star_K          " << format_double(b.t_star->temperature) << "\n";
                break;
            case TStarStatus::at_hot_bound:
                os << "  t_star_K          >= " << format_double(b.t_star->temperature)
                   << " (satisfied at table maximum)\n";
                break;
            case TStarStatus::none:
                os << "  t_star_K          none (intrinsic branching dominates)\n";
                break;
        }
    }
    return os.str();
}

}
