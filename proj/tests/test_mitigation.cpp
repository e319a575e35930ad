#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rydeph/mitigation.hpp"
#include "rydeph/units.hpp"

using namespace rydeph;

namespace {

DressingScenario base_scenario() {
    DressingScenario s;
    s.omega = angular_from_hz(100e3);
    s.delta = 10.0 * s.omega;
    s.b_nl = 0.2;
    s.tau0 = 3.54e-6;
    s.n_atoms = 2000.0;
    s.a_factor = 100.0;
    s.gamma0 = angular_from_hz(45e3);
    return s;
}

// synthetic but physically-shaped table: branching grows with T, lifetime
// shrinks with T
TemperatureTable synthetic_table(double tau0_room, std::size_t rows = 61) {
    TemperatureTable t;
    t.label = "synthetic";
    for (std::size_t k = 0; k < rows; ++k) {
        const double temp = 300.0 * static_cast<double>(k) / static_cast<double>(rows - 1);
        t.temperature.push_back(temp);
        t.b_nl.push_back(0.05 + 0.15 * temp / 300.0);
        t.tau0.push_back(tau0_room * 300.0 / (300.0 + temp));
    }
    return t;
}

}

TEST_CASE("n_critical benchmark value") {
    const double omega = angular_from_hz(100e3);
    CHECK(n_critical(omega, 10.0 * omega, 0.2) == doctest::Approx(2000.0).epsilon(1e-12));
    CHECK(n_critical(omega, omega, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    // quadratic in delta
    CHECK(n_critical(omega, 2.0 * omega, 0.2) ==
          doctest::Approx(4.0 * n_critical(omega, omega, 0.2)).epsilon(1e-12));
    CHECK_THROWS_AS(n_critical(0.0, omega, 0.2), DomainError);
    CHECK_THROWS_AS(n_critical(omega, omega, 0.0), DomainError);
}

TEST_CASE("tau_c equals tau0 at the critical atom number") {
    auto s = base_scenario();  // N = N_c = 2000
    CHECK(tau_c(s) == doctest::Approx(s.tau0).epsilon(1e-12));
    auto s2 = s;
    s2.n_atoms *= 2.0;
    CHECK(tau_c(s2) == doctest::Approx(0.5 * tau_c(s)).epsilon(1e-12));
}

TEST_CASE("tau_c N is constant in N (the 1/N law)") {
    auto s = base_scenario();
    const double reference = tau_c(s) * s.n_atoms;
    for (double n : {1.0, 10.0, 137.0, 2e3, 5e4, 1e6}) {
        auto sn = s;
        sn.n_atoms = n;
        CHECK(tau_c(sn) * n == doctest::Approx(reference).epsilon(1e-12));
    }
}

TEST_CASE("dressed_interaction closed form") {
    const double omega = angular_from_hz(0.1e6);
    const double delta = angular_from_hz(1e6);
    // Omega^4 / (8 delta^3) = 2pi * 12.5 Hz for these values
    CHECK(hz_from_angular(dressed_interaction(omega, delta)) ==
          doctest::Approx(12.5).epsilon(1e-12));
    CHECK(dressed_interaction(omega, omega) == doctest::Approx(omega / 8.0).epsilon(1e-12));
    CHECK(dressed_interaction(2.0 * omega, delta) ==
          doctest::Approx(16.0 * dressed_interaction(omega, delta)).epsilon(1e-12));
    CHECK(dressed_interaction(omega, -delta) < 0.0);  // carries the sign of delta
    CHECK_THROWS_AS(dressed_interaction(omega, 0.0), DomainError);
}

TEST_CASE("stroboscopic bound limits") {
    // a far-detuned scenario so every limit below keeps n_atoms >= 1
    auto s = base_scenario();
    s.delta = 1000.0 * s.omega;  // N_c = 2e7
    const double u = dressed_interaction(s.omega, s.delta);
    const double nc = n_critical(s.omega, s.delta, s.b_nl);

    // N_c/N = 1000 A: barely suppressed
    s.n_atoms = nc / (1000.0 * s.a_factor);
    REQUIRE(s.n_atoms >= 1.0);
    const double ratio = stroboscopic_bound(s) / u;
    CHECK(ratio >= 0.999);
    CHECK(ratio <= 1.0);

    // N_c/N = A: exactly half
    s.n_atoms = nc / s.a_factor;
    CHECK(stroboscopic_bound(s) == doctest::Approx(0.5 * u).epsilon(1e-12));

    // N = 10 N_c, A = 100: U*/U = (1/10)/(100 + 1/10) = 1/1001
    s.n_atoms = 10.0 * nc;
    s.a_factor = 100.0;
    CHECK(stroboscopic_bound(s) / u == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
}

TEST_CASE("stroboscopic bound never exceeds the bare interaction") {
    auto s = base_scenario();
    const double u = dressed_interaction(s.omega, s.delta);
    for (double n : {1.0, 10.0, 100.0, 1e3, 1e5, 1e7}) {
        s.n_atoms = n;
        CHECK(stroboscopic_bound(s) <= u);
        CHECK(stroboscopic_bound(s) > 0.0);
    }
}

TEST_CASE("fourier atom-number ceiling") {
    const double gamma0 = angular_from_hz(45e3);
    CHECK(fourier_atom_bound(gamma0, gamma0, 2000.0) == doctest::Approx(2000.0).epsilon(1e-12));
    CHECK(fourier_atom_bound(100.0 * gamma0, gamma0, 2000.0) ==
          doctest::Approx(2e5).epsilon(1e-12));
    CHECK(fourier_atom_bound(2.0 * gamma0, gamma0, 1000.0) ==
          doctest::Approx(2.0 * fourier_atom_bound(gamma0, gamma0, 1000.0)).epsilon(1e-12));
    CHECK_THROWS_AS(fourier_atom_bound(gamma0, 0.0, 2000.0), DomainError);
}

TEST_CASE("first-contaminant sampler is deterministic and matches tau_c") {
    auto s = base_scenario();
    const auto a = sample_first_contaminant(s, 100000, 1234);
    const auto b = sample_first_contaminant(s, 100000, 1234);
    CHECK(a.mean == b.mean);
    REQUIRE(a.counts.size() == b.counts.size());
    for (std::size_t k = 0; k < a.counts.size(); ++k) CHECK(a.counts[k] == b.counts[k]);

    // oracle agreement: the sampler IS the independent check of tau_c
    CHECK(a.mean == doctest::Approx(tau_c(s)).epsilon(0.01));
    CHECK(a.rate == doctest::Approx(1.0 / tau_c(s)).epsilon(1e-12));

    const auto c = sample_first_contaminant(s, 100000, 99);
    CHECK(c.mean != a.mean);  // different seed, different draws

    std::uint64_t total = 0;
    for (auto n : a.counts) total += n;
    CHECK(total == a.draws);
}

TEST_CASE("sampler mean converges at the Monte-Carlo rate") {
    auto s = base_scenario();
    const double mean = tau_c(s);
    int within = 0;
    const int trials = 100;
    for (int seed = 0; seed < trials; ++seed) {
        const auto r = sample_first_contaminant(s, 10000, static_cast<std::uint64_t>(seed));
        if (std::abs(r.mean - mean) <= 3.0 * mean / std::sqrt(10000.0)) ++within;
    }
    CHECK(within >= 99);  // 3 sigma misses at most ~0.3% of trials
}

TEST_CASE("temperature table validation") {
    auto table = synthetic_table(3.54e-6);
    CHECK_NOTHROW(table.validate());

    auto bad = table;
    bad.b_nl[10] = bad.b_nl[9] - 0.01;  // branching must not fall with T
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = table;
    bad.tau0[10] = bad.tau0[9] * 1.1;  // lifetime must not grow with T
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = table;
    bad.temperature[10] = bad.temperature[9];
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    TemperatureTable tiny;
    tiny.temperature = {0.0, 1.0};
    tiny.b_nl = {0.1, 0.1};
    tiny.tau0 = {1.0, 1.0};
    CHECK_THROWS_AS(tiny.validate(), ConfigError);
}

TEST_CASE("temperature table csv round trip") {
    std::ostringstream csv;
    csv << "# synthetic fixture\n";
    csv << "temperature_K,b_nl,tau0_s\n";
    csv << "0,0.05,3.54e-06\n";
    csv << "150,0.125,2.36e-06\n";
    csv << "300,0.2,1.77e-06\n";
    std::istringstream in(csv.str());
    const auto table = read_temperature_table(in, "inline");
    CHECK(table.temperature.size() == 3);
    CHECK(table.b_nl_at(75.0) == doctest::Approx(0.0875).epsilon(1e-12));
    CHECK(table.tau0_at(300.0) == doctest::Approx(1.77e-6).epsilon(1e-12));
    CHECK(table.tau0_at(1000.0) == doctest::Approx(1.77e-6).epsilon(1e-12));  // clamped
}

TEST_CASE("t_star_n bisection agrees with a brute-force residual scan") {
    const double tau0_room = 3.54e-6;
    const auto table = synthetic_table(tau0_room);
    const double omega = angular_from_hz(100e3);
    const double delta = 10.0 * omega;

    for (double n : {3.0, 5.0, 8.0, 12.0, 19.0}) {
        const auto result = t_star_n(table, omega, delta, n, tau0_room);
        REQUIRE(result.status == TStarStatus::found);

        // oracle: scan 1e4 points, then linearly interpolate the residual's
        // sign change
        const auto residual = [&](double t) {
            return table.tau0_at(t) / table.b_nl_at(t) - n * tau0_room;
        };
        double brute = table.t_max();
        const int points = 10000;
        double prev_t = table.t_min();
        double prev_r = residual(prev_t);
        for (int k = 1; k < points; ++k) {
            const double t = table.t_min() +
                             (table.t_max() - table.t_min()) * static_cast<double>(k) /
                                 static_cast<double>(points - 1);
            const double r = residual(t);
            if (prev_r >= 0.0 && r < 0.0) {
                brute = prev_t + (t - prev_t) * prev_r / (prev_r - r);
                break;
            }
            prev_t = t;
            prev_r = r;
        }
        CHECK(std::abs(result.temperature - brute) <= 0.01);
    }
}

TEST_CASE("t_star_n bound behavior") {
    const double tau0_room = 3.54e-6;
    const auto table = synthetic_table(tau0_room);
    const double omega = angular_from_hz(100e3);
    const double delta = 10.0 * omega;

    // beyond the zero-temperature threshold (tau0(0)/b_nl(0) = 20 tau0_room)
    CHECK(t_star_n(table, omega, delta, 1e6, tau0_room).status == TStarStatus::none);
    CHECK(t_star_n(table, omega, delta, 21.0, tau0_room).status == TStarStatus::none);

    // tiny ensembles are fine even at the hottest tabulated temperature
    const auto hot = t_star_n(table, omega, delta, 2.0, tau0_room);
    CHECK(hot.status == TStarStatus::at_hot_bound);
    CHECK(hot.temperature == doctest::Approx(300.0));

    CHECK_THROWS_AS(t_star_n(table, 0.0, delta, 10.0, tau0_room), DomainError);
    CHECK_THROWS_AS(t_star_n(table, omega, delta, 10.0, 0.0), DomainError);
}

TEST_CASE("t_star_n is nonincreasing in the atom number") {
    const double tau0_room = 3.54e-6;
    const auto table = synthetic_table(tau0_room);
    const double omega = angular_from_hz(100e3);
    const double delta = 10.0 * omega;

    double prev = 1e9;
    for (int k = 0; k < 10; ++k) {
        const double n = 3.0 * std::pow(19.0 / 3.0, static_cast<double>(k) / 9.0);
        const auto r = t_star_n(table, omega, delta, n, tau0_room);
        REQUIRE(r.status == TStarStatus::found);
        CHECK(r.temperature <= prev + 0.011);  // allow the bisection resolution
        prev = r.temperature;
    }
}

TEST_CASE("budget report carries every headline number") {
    auto s = base_scenario();
    const auto table = synthetic_table(3.54e-6);
    const auto budget = make_budget(s, table, 3.54e-6);
    CHECK(budget.tau_c == doctest::Approx(tau_c(s)).epsilon(1e-12));
    CHECK(budget.n_crit == doctest::Approx(2000.0).epsilon(1e-12));
    CHECK(budget.u_star <= budget.u);
    CHECK(budget.duty_cycle > 0.0);
    CHECK(budget.duty_cycle < 1.0);
    REQUIRE(budget.t_star.has_value());

    const auto text = format_budget_report(budget, s);
    for (const char* key : {"tau_c_s", "n_critical", "u_rad_per_s", "u_star_rad_per_s",
                            "duty_cycle_bound", "fourier_ceiling", "t_star_K"})
        CHECK(text.find(key) != std::string::npos);

    auto near = s;
    near.delta = 1.5 * near.omega;
    const auto flagged = make_budget(near);
    CHECK(flagged.near_resonance);
    CHECK(format_budget_report(flagged, near).find("warning") != std::string::npos);
}
