#pragma once

#include <numbers>

namespace rydeph {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Every rate and frequency inside the library is angular (rad/s).
// Configuration files and CSV outputs use ordinary frequencies (Hz).
constexpr double angular_from_hz(double hz) { return two_pi * hz; }
constexpr double hz_from_angular(double w) { return w / two_pi; }

}
