#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "rydeph/errors.hpp"

namespace rydeph::ode {

struct Options {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_max = std::numeric_limits<double>::infinity();
    double safety = 0.9;
};

// Explicit Dormand-Prince 5(4) with FSAL and a standard step controller.
// Coefficients from Dormand & Prince, J. Comput. Appl. Math. 6 (1980).
// f(t, y, dydt) fills the derivative; sink(t, y) is called after every
// accepted step (not at t0). Throws IntegrationError on step underflow.
template <std::size_t N, class RHS, class Sink>
void integrate_adaptive(RHS&& f, std::array<double, N>& y, double t0, double t1,
                        const Options& opt, Sink&& sink) {
    using Vec = std::array<double, N>;

    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b - bhat, for the embedded 4th-order error estimate
    constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                     e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                     e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
    constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

    if (!(t1 > t0)) return;

    Vec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    f(t0, y, k1);

    double t = t0;
    double h = std::min(opt.h_max, (t1 - t0) / 8.0);
    int rejects_in_a_row = 0;

    while (t < t1) {
        const double h_floor =
            16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(t1));
        // snap onto the endpoint; the remaining sliver is not an error even
        // when it sits below the step-size floor
        const bool final_step = h >= t1 - t - h_floor;
        if (final_step) h = t1 - t;
        if (!final_step && (h < h_floor || rejects_in_a_row > 200))
            throw IntegrationError("adaptive step size underflow", t);

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err_sq += (e / sc) * (e / sc);
        }
        const double err = std::sqrt(err_sq / static_cast<double>(N));

        if (err <= 1.0) {
            t = final_step ? t1 : t + h;
            y = ynew;
            k1 = k7;  // FSAL
            sink(t, y);
            rejects_in_a_row = 0;
            const double grow = err > 0.0 ? opt.safety * std::pow(err, -0.2) : 5.0;
            h = std::min(opt.h_max, h * std::clamp(grow, 0.2, 5.0));
        } else {
            ++rejects_in_a_row;
            h *= std::clamp(opt.safety * std::pow(err, -0.2), 0.2, 0.9);
        }
    }
}

// Fixed-step classical RK4 reference integrator (validation and convergence
// studies on smooth problems; no event handling).
template <std::size_t N, class RHS, class Sink>
void integrate_rk4(RHS&& f, std::array<double, N>& y, double t0, double t1,
                   std::size_t n_steps, Sink&& sink) {
    using Vec = std::array<double, N>;
    if (n_steps == 0) throw DomainError("integrate_rk4: n_steps must be > 0");
    const double h = (t1 - t0) / static_cast<double>(n_steps);
    Vec k1, k2, k3, k4, ytmp;
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t = t0 + static_cast<double>(s) * h;
        f(t, y, k1);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * k3[i];
        f(t + h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        sink(t0 + static_cast<double>(s + 1) * h, y);
    }
}

}
