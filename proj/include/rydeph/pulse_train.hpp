#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rydeph/errors.hpp"

namespace rydeph {

// Rectangular on/off drive envelope. A train is a sequence of pulses of
// width t_pulse separated by t_dark, the whole pattern shifted by delay.
// Pulse k occupies [delay + k*T, delay + k*T + t_pulse) with T = t_pulse + t_dark;
// the pattern extends periodically to k < 0 so that delay acts as a cyclic
// phase (what a relative delay between two running trains means).
struct PulseTrain {
    double t_pulse = 0.0;        // pulse width (s)
    double t_dark = 0.0;         // dark time between pulses (s)
    double delay = 0.0;          // train offset (s, signed)
    std::uint64_t n_pulses = 0;  // cap on pulse index, 0 = uncapped
    bool always_on = true;       // continuous drive, ignores the fields above

    double period() const { return t_pulse + t_dark; }

    void validate() const {
        if (always_on) return;
        if (!(t_pulse > 0.0)) throw ConfigError("pulse train: t_pulse must be > 0");
        if (t_dark < 0.0) throw ConfigError("pulse train: t_dark must be >= 0");
        if (!std::isfinite(delay)) throw ConfigError("pulse train: delay must be finite");
    }
};

// Envelope value at time t: exactly 0 or 1. Pulse start is inclusive,
// pulse end exclusive.
inline double envelope_at(const PulseTrain& train, double t) {
    if (train.always_on) return 1.0;
    const double period = train.period();
    const double u = t - train.delay;
    double k = std::floor(u / period);
    double phase = u - k * period;
    if (phase < 0.0) {  // floating-point guard near a period boundary
        phase += period;
        k -= 1.0;
    } else if (phase >= period) {
        phase -= period;
        k += 1.0;
    }
    if (train.n_pulses > 0 && k >= static_cast<double>(train.n_pulses)) return 0.0;
    return phase < train.t_pulse ? 1.0 : 0.0;
}

// Appends every envelope switching time strictly inside (t0, t1).
inline void append_pulse_edges(const PulseTrain& train, double t0, double t1,
                               std::vector<double>& edges) {
    if (train.always_on) return;
    const double period = train.period();
    const auto k_first = static_cast<std::int64_t>(std::floor((t0 - train.delay) / period)) - 1;
    auto k_last = static_cast<std::int64_t>(std::floor((t1 - train.delay) / period)) + 1;
    if (train.n_pulses > 0) {
        k_last = std::min(k_last, static_cast<std::int64_t>(train.n_pulses) - 1);
    }
    for (std::int64_t k = k_first; k <= k_last; ++k) {
        const double on = train.delay + static_cast<double>(k) * period;
        const double off = on + train.t_pulse;
        if (on > t0 && on < t1) edges.push_back(on);
        if (off > t0 && off < t1) edges.push_back(off);
    }
}

}
