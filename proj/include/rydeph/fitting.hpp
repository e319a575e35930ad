#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "rydeph/errors.hpp"

namespace rydeph::fitting {

// Gaussian elimination with partial pivoting, solves A x = b in place.
// A is row-major n x n, b length n. Returns false when A is singular.
inline bool solve_linear(std::size_t n, std::vector<double>& a, std::vector<double>& b) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (a[pivot * n + col] == 0.0) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        double s = b[col];
        for (std::size_t c = col + 1; c < n; ++c) s -= a[col * n + c] * b[c];
        b[col] = s / a[col * n + col];
    }
    return true;
}

// Inverse of a symmetric positive matrix by column-wise solves. Returns an
// empty vector on failure.
inline std::vector<double> invert_matrix(std::size_t n, const std::vector<double>& a) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> acopy = a;
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        if (!solve_linear(n, acopy, e)) return {};
        for (std::size_t r = 0; r < n; ++r) inv[r * n + col] = e[r];
    }
    return inv;
}

struct LMOptions {
    int max_iterations = 200;
    double param_tol = 1e-10;   // relative parameter change for convergence
    double lambda_init = 1e-3;
};

struct LMResult {
    std::vector<double> params;
    std::vector<double> stderrs;     // 1-sigma from the covariance at the optimum
    std::vector<double> covariance;  // row-major p x p
    double residual_norm = 0.0;      // sqrt(sum of squared residuals)
    bool converged = false;
    int iterations = 0;
};

// Damped Gauss-Newton (Levenberg-Marquardt). `eval` fills residuals (length
// n_data) and the row-major Jacobian d r_k / d p_j (n_data x n_params).
inline LMResult levenberg_marquardt(
    std::size_t n_params, std::size_t n_data,
    const std::function<void(const std::vector<double>&, std::vector<double>&,
                             std::vector<double>&)>& eval,
    std::vector<double> initial, const LMOptions& opt = {}) {
    if (n_data < n_params) throw FitError("levenberg_marquardt: fewer points than parameters");

    std::vector<double> r(n_data), jac(n_data * n_params);
    std::vector<double> r_trial(n_data), jac_trial(n_data * n_params);

    auto cost_of = [&](const std::vector<double>& res) {
        double c = 0.0;
        for (double v : res) c += v * v;
        return c;
    };

    std::vector<double> p = std::move(initial);
    eval(p, r, jac);
    double cost = cost_of(r);
    if (!std::isfinite(cost))
        throw FitError("levenberg_marquardt: non-finite residuals at the initial guess");
    double lambda = opt.lambda_init;

    LMResult out;
    bool converged = false;
    int iter = 0;
    for (; iter < opt.max_iterations && !converged; ++iter) {
        // normal equations
        std::vector<double> jtj(n_params * n_params, 0.0), jtr(n_params, 0.0);
        for (std::size_t k = 0; k < n_data; ++k) {
            for (std::size_t i = 0; i < n_params; ++i) {
                jtr[i] += jac[k * n_params + i] * r[k];
                for (std::size_t j = i; j < n_params; ++j)
                    jtj[i * n_params + j] += jac[k * n_params + i] * jac[k * n_params + j];
            }
        }
        for (std::size_t i = 0; i < n_params; ++i)
            for (std::size_t j = 0; j < i; ++j) jtj[i * n_params + j] = jtj[j * n_params + i];

        bool stepped = false;
        for (int attempt = 0; attempt < 40 && !stepped; ++attempt) {
            std::vector<double> a = jtj;
            std::vector<double> rhs(n_params);
            for (std::size_t i = 0; i < n_params; ++i) {
                a[i * n_params + i] += lambda * std::max(jtj[i * n_params + i], 1e-300);
                rhs[i] = -jtr[i];
            }
            if (!solve_linear(n_params, a, rhs)) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> p_trial(n_params);
            for (std::size_t i = 0; i < n_params; ++i) p_trial[i] = p[i] + rhs[i];
            eval(p_trial, r_trial, jac_trial);
            const double cost_trial = cost_of(r_trial);
            // strict descent only: accepting cost ties lets the iterate
            // wander along flat directions forever
            if (std::isfinite(cost_trial) && cost_trial < cost) {
                double step_norm = 0.0, p_norm = 0.0;
                for (std::size_t i = 0; i < n_params; ++i) {
                    step_norm += rhs[i] * rhs[i];
                    p_norm += p_trial[i] * p_trial[i];
                }
                const double reduction = cost - cost_trial;
                p = std::move(p_trial);
                r.swap(r_trial);
                jac.swap(jac_trial);
                cost = cost_trial;
                lambda = std::max(lambda * 0.1, 1e-14);
                stepped = true;
                if (std::sqrt(step_norm) <=
                    opt.param_tol * (std::sqrt(p_norm) + opt.param_tol))
                    converged = true;
                if (reduction <= 1e-15 * cost) converged = true;  // roundoff plateau
            } else {
                lambda *= 10.0;
                if (lambda > 1e14) break;
            }
        }
        if (!stepped) {
            // no strictly descending step exists at any damping level: the
            // iterate is stationary to machine precision
            converged = true;
            break;
        }
    }

    out.params = p;
    out.iterations = iter;
    out.converged = converged;
    out.residual_norm = std::sqrt(cost);

    // covariance = s^2 (J^T J)^-1 with s^2 the residual variance
    std::vector<double> jtj(n_params * n_params, 0.0);
    for (std::size_t k = 0; k < n_data; ++k)
        for (std::size_t i = 0; i < n_params; ++i)
            for (std::size_t j = 0; j < n_params; ++j)
                jtj[i * n_params + j] += jac[k * n_params + i] * jac[k * n_params + j];
    const double dof = static_cast<double>(n_data > n_params ? n_data - n_params : 1);
    const double s2 = cost / dof;
    auto inv = invert_matrix(n_params, jtj);
    out.stderrs.assign(n_params, 0.0);
    if (!inv.empty()) {
        out.covariance.resize(n_params * n_params);
        for (std::size_t i = 0; i < n_params * n_params; ++i) out.covariance[i] = s2 * inv[i];
        for (std::size_t i = 0; i < n_params; ++i)
            out.stderrs[i] = std::sqrt(std::max(out.covariance[i * n_params + i], 0.0));
    }
    return out;
}

struct ScalarMinResult {
    double x = 0.0;
    double f = 0.0;
    int evaluations = 0;
    bool at_lower_bound = false;
    bool at_upper_bound = false;
};

// Brent's method (golden section + parabolic interpolation) on [lo, hi].
template <class F>
ScalarMinResult minimize_scalar(F&& f, double lo, double hi, double xtol_rel = 1e-4,
                                int max_iterations = 100) {
    if (!(hi > lo)) throw DomainError("minimize_scalar: requires hi > lo");
    constexpr double golden = 0.3819660112501051;
    int evals = 0;
    auto call = [&](double x) {
        ++evals;
        return f(x);
    };

    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = call(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int it = 0; it < max_iterations; ++it) {
        const double m = 0.5 * (a + b);
        const double tol1 = xtol_rel * std::abs(x) + 1e-18 * (hi - lo) + 1e-300;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;

        bool use_golden = true;
        if (std::abs(e) > tol1) {
            // parabolic fit through x, v, w
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double pnum = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) pnum = -pnum;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(pnum) < std::abs(0.5 * q * e_old) && pnum > q * (a - x) &&
                pnum < q * (b - x)) {
                d = pnum / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = call(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }

    ScalarMinResult out;
    out.x = x;
    out.f = fx;
    out.evaluations = evals;
    const double edge = std::max(xtol_rel * std::max(std::abs(lo), std::abs(hi)),
                                 1e-3 * (hi - lo));
    out.at_lower_bound = (x - lo) <= edge;
    out.at_upper_bound = (hi - x) <= edge;
    return out;
}

}
