#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydeph/csv.hpp"
#include "rydeph/errors.hpp"
#include "rydeph/model.hpp"
#include "rydeph/units.hpp"

namespace rydeph {

using json = nlohmann::json;

// Where an effective value came from: written by the user, filled in as a
// stock default, or derived from other fields.
struct DefaultNote {
    std::string path;
    std::string origin;  // "default" or "derived"
};

struct GridSpec {
    double center = 0.0;       // rad/s
    double half_span = 0.0;    // rad/s, resolved at load time
    std::size_t points = 61;
};

struct SimulateBlock {
    double t_end = 0.0;
};

struct SpectrumBlock {
    double t_end = 0.0;
    GridSpec grid;
};

struct DelayScanBlock {
    double t_end = 0.0;
    std::vector<double> delays;  // s
    GridSpec grid;
};

struct PulseScanBlock {
    double total_exposure = 0.0;
    std::vector<double> t_pulses;  // s
    std::size_t grid_points = 61;
};

struct FitCrossBlock {
    std::string observed_path;
    double t_end = 0.0;
    double lower = 0.0;   // rad/s um^3
    double upper = 0.0;
    GridSpec grid;
};

struct BudgetBlock {
    double omega = 0.0;
    double delta = 0.0;
    double b_nl = 0.0;
    double tau0 = 0.0;
    double n_atoms = 0.0;
    double a_factor = 0.0;
    double gamma0 = 0.0;
    std::uint64_t draws = 0;  // 0 = no Monte-Carlo histogram
    std::optional<std::string> table_path;
    double tau0_room = 0.0;  // 0 = use tau0
};

struct TStarBlock {
    std::string table_path;
    double omega = 0.0;
    double delta = 0.0;
    double tau0_room = 0.0;
    std::vector<double> n_atoms;
};

struct RunConfig {
    std::optional<ModelConfig> model;
    std::optional<SimulateBlock> simulate;
    std::optional<SimulateBlock> fluorescence;
    std::optional<SpectrumBlock> spectrum;
    std::optional<DelayScanBlock> delay_scan;
    std::optional<PulseScanBlock> pulse_scan;
    std::optional<FitCrossBlock> fit_cross;
    std::optional<BudgetBlock> budget;
    std::optional<TStarBlock> tstar;

    std::uint64_t seed = 0;
    double tol = 1e-9;
    unsigned threads = 0;

    json effective;                  // canonical echo of every effective value
    std::vector<DefaultNote> notes;  // injected defaults and derived values
    std::filesystem::path base_dir;  // config file location, anchors relative paths

    std::string resolve_path(const std::string& p) const {
        const std::filesystem::path fp(p);
        if (fp.is_absolute() || base_dir.empty()) return p;
        return (base_dir / fp).string();
    }
};

namespace cfgdetail {

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct Unit {
    const char* suffix;
    double multiplier;
};

inline double parse_with_units(const json& v, const std::string& path,
                               std::initializer_list<Unit> units, bool angular,
                               const char* expected) {
    if (!v.is_string())
        throw ConfigError(path + ": expected a string '<value> <unit>' with unit in {" +
                          expected + "}; unit suffix missing");
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw ConfigError(path + ": cannot parse a number from '" + s + "'");
    std::string suffix = s.substr(static_cast<std::size_t>(end - s.c_str()));
    while (!suffix.empty() && (suffix.front() == ' ' || suffix.front() == '\t'))
        suffix.erase(suffix.begin());
    while (!suffix.empty() && (suffix.back() == ' ' || suffix.back() == '\t')) suffix.pop_back();
    if (suffix.empty())
        throw ConfigError(path + ": unit suffix missing (expected one of {" + expected + "})");
    suffix = lower(suffix);
    for (const auto& u : units)
        if (suffix == u.suffix) return (angular ? two_pi : 1.0) * value * u.multiplier;
    throw ConfigError(path + ": unknown unit '" + suffix + "' (expected one of {" + expected +
                      "})");
}

// frequencies: ordinary Hz-family values, stored angular
inline double parse_frequency(const json& v, const std::string& path) {
    return parse_with_units(v, path, {{"hz", 1.0}, {"khz", 1e3}, {"mhz", 1e6}}, true,
                            "hz, khz, mhz");
}

inline double parse_time(const json& v, const std::string& path) {
    return parse_with_units(v, path, {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}},
                            false, "s, ms, us, ns");
}

inline double parse_c3(const json& v, const std::string& path) {
    return parse_with_units(v, path,
                            {{"hz_um3", 1.0}, {"khz_um3", 1e3}, {"mhz_um3", 1e6}}, true,
                            "hz_um3, khz_um3, mhz_um3");
}

inline double parse_density(const json& v, const std::string& path) {
    return parse_with_units(v, path, {{"per_um3", 1.0}}, false, "per_um3");
}

inline std::string canon_frequency(double angular) {
    return format_double(hz_from_angular(angular)) + " hz";
}
inline std::string canon_time(double seconds) { return format_double(seconds) + " s"; }
inline std::string canon_c3(double angular) {
    return format_double(hz_from_angular(angular)) + " hz_um3";
}
inline std::string canon_density(double d) { return format_double(d) + " per_um3"; }

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key '" + item.key() + "' at " +
                                   (path.empty() ? "/" : path));
    }
}

// Field access with echo and default bookkeeping.
class Fields {
public:
    Fields(const json& obj, std::string path, json& echo, std::vector<DefaultNote>& notes)
        : obj_(obj), path_(std::move(path)), echo_(echo), notes_(notes) {}

    bool has(const char* key) const { return obj_.contains(key); }

    double frequency(const char* key, std::optional<double> def,
                     const char* origin = "default") {
        if (has(key)) {
            const double v = parse_frequency(obj_.at(key), field_path(key));
            echo_[key] = canon_frequency(v);
            return v;
        }
        return defaulted(key, def, canon_frequency(*def), origin);
    }

    double time_value(const char* key, std::optional<double> def,
                      const char* origin = "default") {
        if (has(key)) {
            const double v = parse_time(obj_.at(key), field_path(key));
            echo_[key] = canon_time(v);
            return v;
        }
        return defaulted(key, def, canon_time(*def), origin);
    }

    double c3(const char* key, std::optional<double> def) {
        if (has(key)) {
            const double v = parse_c3(obj_.at(key), field_path(key));
            echo_[key] = canon_c3(v);
            return v;
        }
        return defaulted(key, def, canon_c3(*def), "default");
    }

    double density(const char* key, std::optional<double> def) {
        if (has(key)) {
            const double v = parse_density(obj_.at(key), field_path(key));
            echo_[key] = canon_density(v);
            return v;
        }
        return defaulted(key, def, canon_density(*def), "default");
    }

    double number(const char* key, std::optional<double> def) {
        if (has(key)) {
            const json& v = obj_.at(key);
            if (!v.is_number()) throw ConfigError(field_path(key) + ": expected a number");
            const double x = v.get<double>();
            echo_[key] = x;
            return x;
        }
        if (!def) throw ConfigError(path_ + ": missing required key '" + std::string(key) + "'");
        echo_[key] = *def;
        notes_.push_back({field_path(key), "default"});
        return *def;
    }

    std::uint64_t uinteger(const char* key, std::optional<std::uint64_t> def) {
        if (has(key)) {
            const json& v = obj_.at(key);
            if (!v.is_number_unsigned())
                throw ConfigError(field_path(key) + ": expected a nonnegative integer");
            const auto x = v.get<std::uint64_t>();
            echo_[key] = x;
            return x;
        }
        if (!def) throw ConfigError(path_ + ": missing required key '" + std::string(key) + "'");
        echo_[key] = *def;
        notes_.push_back({field_path(key), "default"});
        return *def;
    }

    bool boolean(const char* key, std::optional<bool> def) {
        if (has(key)) {
            const json& v = obj_.at(key);
            if (!v.is_boolean()) throw ConfigError(field_path(key) + ": expected a boolean");
            const bool x = v.get<bool>();
            echo_[key] = x;
            return x;
        }
        if (!def) throw ConfigError(path_ + ": missing required key '" + std::string(key) + "'");
        echo_[key] = *def;
        notes_.push_back({field_path(key), "default"});
        return *def;
    }

    std::string text(const char* key, std::optional<std::string> def) {
        if (has(key)) {
            const json& v = obj_.at(key);
            if (!v.is_string()) throw ConfigError(field_path(key) + ": expected a string");
            const auto x = v.get<std::string>();
            echo_[key] = x;
            return x;
        }
        if (!def) throw ConfigError(path_ + ": missing required key '" + std::string(key) + "'");
        echo_[key] = *def;
        notes_.push_back({field_path(key), "default"});
        return *def;
    }

    std::string field_path(const char* key) const { return path_ + "/" + key; }
    const std::string& path() const { return path_; }
    const json& raw() const { return obj_; }
    json& echo() { return echo_; }
    std::vector<DefaultNote>& notes() { return notes_; }

    // Record a value that was computed rather than read.
    void record(const char* key, const std::string& canonical, const char* origin) {
        echo_[key] = canonical;
        notes_.push_back({field_path(key), origin});
    }

private:
    double defaulted(const char* key, std::optional<double> def, const std::string& canonical,
                     const char* origin) {
        if (!def) throw ConfigError(path_ + ": missing required key '" + std::string(key) + "'");
        echo_[key] = canonical;
        notes_.push_back({field_path(key), origin});
        return *def;
    }

    const json& obj_;
    std::string path_;
    json& echo_;
    std::vector<DefaultNote>& notes_;
};

inline PulseTrain parse_envelope(const json& parent, const std::string& parent_path,
                                 json& parent_echo, std::vector<DefaultNote>& notes) {
    PulseTrain train;
    if (!parent.contains("envelope")) {
        train.always_on = true;
        parent_echo["envelope"] = json{{"always_on", true}};
        notes.push_back({parent_path + "/envelope", "default"});
        return train;
    }
    const json& obj = parent.at("envelope");
    const std::string path = parent_path + "/envelope";
    check_keys(obj, path, {"always_on", "t_pulse", "t_dark", "delay", "n_pulses"});
    json& echo = parent_echo["envelope"] = json::object();
    Fields f(obj, path, echo, notes);
    train.always_on = f.boolean("always_on", obj.contains("t_pulse") ? false : true);
    if (train.always_on) {
        if (obj.contains("t_pulse") || obj.contains("t_dark") || obj.contains("delay") ||
            obj.contains("n_pulses"))
            throw ConfigError(path + ": always_on envelopes take no pulse fields");
        return train;
    }
    train.t_pulse = f.time_value("t_pulse", std::nullopt);
    train.t_dark = f.time_value("t_dark", std::nullopt);
    train.delay = f.time_value("delay", 0.0);
    train.n_pulses = f.uinteger("n_pulses", std::uint64_t{0});
    return train;
}

inline DriveConfig parse_drive(const json& parent, const std::string& parent_path,
                               json& parent_echo, std::vector<DefaultNote>& notes) {
    DriveConfig drive;
    json& echo = parent_echo["drive"] = json::object();
    if (!parent.contains("drive")) {
        drive.omega = 0.0;
        drive.delta = 0.0;
        echo["omega"] = canon_frequency(0.0);
        echo["delta"] = canon_frequency(0.0);
        echo["envelope"] = json{{"always_on", true}};
        notes.push_back({parent_path + "/drive", "default"});
        return drive;
    }
    const json& obj = parent.at("drive");
    const std::string path = parent_path + "/drive";
    check_keys(obj, path,
               {"omega", "delta", "omega1", "omega2", "delta_int", "envelope"});
    Fields f(obj, path, echo, notes);

    if (obj.contains("omega1")) drive.omega1 = f.frequency("omega1", std::nullopt);
    if (obj.contains("omega2")) drive.omega2 = f.frequency("omega2", std::nullopt);
    if (obj.contains("delta_int")) drive.delta_int = f.frequency("delta_int", std::nullopt);

    const bool trio = drive.omega1 && drive.omega2 && drive.delta_int;
    if (obj.contains("omega")) {
        drive.omega = f.frequency("omega", std::nullopt);
    } else if (trio) {
        drive.omega = two_photon_rabi(*drive.omega1, *drive.omega2, *drive.delta_int);
        f.record("omega", canon_frequency(drive.omega), "derived");
    } else {
        drive.omega = f.frequency("omega", 0.0);
    }
    drive.delta = f.frequency("delta", 0.0);
    drive.envelope = parse_envelope(obj, path, echo, notes);
    return drive;
}

inline SpeciesParams parse_species(const json& obj, const std::string& path, json& echo,
                                   std::vector<DefaultNote>& notes, DriveConfig& drive,
                                   std::optional<double>& initial_fraction) {
    check_keys(obj, path,
               {"label", "gamma0", "gamma_np", "b1", "b2", "b3", "gamma_d", "gamma_5p",
                "initial_fraction", "drive"});
    Fields f(obj, path, echo, notes);
    SpeciesParams sp;
    sp.label = f.text("label", std::nullopt);
    sp.gamma0 = f.frequency("gamma0", angular_from_hz(45e3));

    // Gamma_nP defaults to half the Rydberg linewidth (pollutant lifetime
    // 2 tau0, about 7.07 us for the 18S defaults); derived, overridable.
    if (obj.contains("gamma_np")) {
        sp.gamma_np = f.frequency("gamma_np", std::nullopt);
    } else {
        sp.gamma_np = 0.5 * sp.gamma0;
        f.record("gamma_np", canon_frequency(sp.gamma_np), "derived");
    }

    sp.b1 = f.number("b1", 0.49);
    sp.b2 = f.number("b2", 0.18);
    sp.b3 = f.number("b3", 0.55);

    drive = parse_drive(obj, path, echo, notes);

    const double gamma_5p = f.frequency("gamma_5p", angular_from_hz(6e6));
    if (obj.contains("gamma_d")) {
        sp.gamma_d = f.frequency("gamma_d", std::nullopt);
    } else if (drive.omega1 && drive.delta_int) {
        sp.gamma_d = off_resonant_scattering(*drive.omega1, *drive.delta_int, gamma_5p);
        f.record("gamma_d", canon_frequency(sp.gamma_d), "derived");
    } else {
        sp.gamma_d = 0.0;
        f.record("gamma_d", canon_frequency(0.0), "default");
    }

    if (obj.contains("initial_fraction")) initial_fraction = f.number("initial_fraction", std::nullopt);
    return sp;
}

inline ModelConfig parse_model(const json& obj, const std::string& path, json& echo,
                               std::vector<DefaultNote>& notes) {
    check_keys(obj, path, {"rho0", "c3", "c3_cross", "species"});
    Fields f(obj, path, echo, notes);
    ModelConfig model;
    model.interactions.rho0 = f.density("rho0", 14.9);
    model.interactions.c3_self = f.c3("c3", angular_from_hz(35e6));
    model.interactions.c3_cross = f.c3("c3_cross", angular_from_hz(3.5e6));

    if (!obj.contains("species") || !obj.at("species").is_array())
        throw ConfigError(path + ": 'species' must be an array of 1 or 2 entries");
    const json& arr = obj.at("species");
    if (arr.size() != 1 && arr.size() != 2)
        throw ConfigError(path + "/species: expected 1 or 2 entries");

    echo["species"] = json::array();
    std::vector<std::optional<double>> fractions(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string spath = path + "/species/" + std::to_string(i);
        json sp_echo = json::object();
        DriveConfig drive;
        SpeciesParams sp = parse_species(arr.at(i), spath, sp_echo, notes, drive, fractions[i]);
        model.species.push_back(std::move(sp));
        model.drives.push_back(std::move(drive));
        echo["species"].push_back(std::move(sp_echo));
    }

    // Default ground fractions: everything for one species, 1-f / f with
    // f = 0.25 for the pump/probe split.
    model.initial_fractions.resize(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (fractions[i]) {
            model.initial_fractions[i] = *fractions[i];
        } else {
            const double def =
                arr.size() == 1 ? 1.0 : (model.species[i].label == "probe" ? 0.25 : 0.75);
            model.initial_fractions[i] = def;
            echo["species"][i]["initial_fraction"] = def;
            notes.push_back({path + "/species/" + std::to_string(i) + "/initial_fraction",
                             "default"});
        }
    }

    try {
        model.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return model;
}

inline GridSpec parse_grid(const json& parent, const std::string& parent_path, json& parent_echo,
                           std::vector<DefaultNote>& notes,
                           const std::optional<ModelConfig>& model) {
    GridSpec grid;
    json& echo = parent_echo["grid"] = json::object();
    const json empty = json::object();
    const json& obj = parent.contains("grid") ? parent.at("grid") : empty;
    const std::string path = parent_path + "/grid";
    check_keys(obj, path, {"center", "half_span", "points"});
    Fields f(obj, path, echo, notes);
    grid.center = f.frequency("center", 0.0);
    grid.points = f.uinteger("points", std::uint64_t{61});
    if (grid.points < 7) throw ConfigError(path + "/points: need at least 7 grid points");
    if (obj.contains("half_span")) {
        grid.half_span = f.frequency("half_span", std::nullopt);
    } else {
        if (!model) throw ConfigError(path + ": cannot derive half_span without a model block");
        grid.half_span = 5.0 * estimate_steady_gamma(*model)[model->probe_index()];
        f.record("half_span", canon_frequency(grid.half_span), "derived");
    }
    if (!(grid.half_span > 0.0)) throw ConfigError(path + "/half_span: must be > 0");
    if (!parent.contains("grid")) notes.push_back({path, "default"});
    return grid;
}

}  // namespace cfgdetail

inline RunConfig parse_config(const json& root) {
    using namespace cfgdetail;
    RunConfig rc;
    rc.effective = json::object();
    check_keys(root, "", {"model", "simulate", "fluorescence", "spectrum", "delay_scan",
                          "pulse_scan", "fit_cross", "budget", "tstar", "seed", "tol",
                          "threads"});

    {
        Fields f(root, "", rc.effective, rc.notes);
        rc.seed = f.uinteger("seed", std::uint64_t{0});
        rc.tol = f.number("tol", 1e-9);
        if (!(rc.tol > 0.0)) throw ConfigError("/tol: must be > 0");
        rc.threads = static_cast<unsigned>(f.uinteger("threads", std::uint64_t{0}));
    }

    if (root.contains("model")) {
        json& echo = rc.effective["model"] = json::object();
        rc.model = parse_model(root.at("model"), "/model", echo, rc.notes);
    }

    const auto simple_block = [&](const char* name) -> std::optional<SimulateBlock> {
        if (!root.contains(name)) return std::nullopt;
        const std::string path = std::string("/") + name;
        check_keys(root.at(name), path, {"t_end"});
        json& echo = rc.effective[name] = json::object();
        Fields f(root.at(name), path, echo, rc.notes);
        SimulateBlock b;
        b.t_end = f.time_value("t_end", 300e-6);
        if (!(b.t_end > 0.0)) throw ConfigError(path + "/t_end: must be > 0");
        return b;
    };
    rc.simulate = simple_block("simulate");
    rc.fluorescence = simple_block("fluorescence");

    if (root.contains("spectrum")) {
        const json& obj = root.at("spectrum");
        check_keys(obj, "/spectrum", {"t_end", "grid"});
        json& echo = rc.effective["spectrum"] = json::object();
        Fields f(obj, "/spectrum", echo, rc.notes);
        SpectrumBlock b;
        b.t_end = f.time_value("t_end", 300e-6);
        b.grid = parse_grid(obj, "/spectrum", echo, rc.notes, rc.model);
        rc.spectrum = b;
    }

    if (root.contains("delay_scan")) {
        const json& obj = root.at("delay_scan");
        check_keys(obj, "/delay_scan", {"t_end", "delays", "grid"});
        json& echo = rc.effective["delay_scan"] = json::object();
        Fields f(obj, "/delay_scan", echo, rc.notes);
        DelayScanBlock b;
        b.t_end = f.time_value("t_end", 1.2e-3);
        if (!obj.contains("delays") || !obj.at("delays").is_array() || obj.at("delays").empty())
            throw ConfigError("/delay_scan/delays: expected a nonempty array of times");
        echo["delays"] = json::array();
        for (std::size_t i = 0; i < obj.at("delays").size(); ++i) {
            const double d = parse_time(obj.at("delays").at(i),
                                        "/delay_scan/delays/" + std::to_string(i));
            b.delays.push_back(d);
            echo["delays"].push_back(canon_time(d));
        }
        b.grid = parse_grid(obj, "/delay_scan", echo, rc.notes, rc.model);
        rc.delay_scan = b;
    }

    if (root.contains("pulse_scan")) {
        const json& obj = root.at("pulse_scan");
        check_keys(obj, "/pulse_scan", {"total_exposure", "t_pulses", "points"});
        json& echo = rc.effective["pulse_scan"] = json::object();
        Fields f(obj, "/pulse_scan", echo, rc.notes);
        PulseScanBlock b;
        b.total_exposure = f.time_value("total_exposure", 300e-6);
        b.grid_points = f.uinteger("points", std::uint64_t{61});
        if (!obj.contains("t_pulses") || !obj.at("t_pulses").is_array() ||
            obj.at("t_pulses").empty())
            throw ConfigError("/pulse_scan/t_pulses: expected a nonempty array of times");
        echo["t_pulses"] = json::array();
        for (std::size_t i = 0; i < obj.at("t_pulses").size(); ++i) {
            const double tp = parse_time(obj.at("t_pulses").at(i),
                                         "/pulse_scan/t_pulses/" + std::to_string(i));
            b.t_pulses.push_back(tp);
            echo["t_pulses"].push_back(canon_time(tp));
        }
        rc.pulse_scan = b;
    }

    if (root.contains("fit_cross")) {
        const json& obj = root.at("fit_cross");
        check_keys(obj, "/fit_cross", {"observed", "t_end", "bounds", "grid"});
        json& echo = rc.effective["fit_cross"] = json::object();
        Fields f(obj, "/fit_cross", echo, rc.notes);
        FitCrossBlock b;
        b.observed_path = f.text("observed", std::nullopt);
        b.t_end = f.time_value("t_end", 1.2e-3);
        if (!obj.contains("bounds") || !obj.at("bounds").is_array() ||
            obj.at("bounds").size() != 2)
            throw ConfigError("/fit_cross/bounds: expected [lower, upper]");
        b.lower = parse_c3(obj.at("bounds").at(0), "/fit_cross/bounds/0");
        b.upper = parse_c3(obj.at("bounds").at(1), "/fit_cross/bounds/1");
        echo["bounds"] = json::array({canon_c3(b.lower), canon_c3(b.upper)});
        if (!(b.upper > b.lower) || b.lower < 0.0)
            throw ConfigError("/fit_cross/bounds: need 0 <= lower < upper");
        b.grid = parse_grid(obj, "/fit_cross", echo, rc.notes, rc.model);
        rc.fit_cross = b;
    }

    if (root.contains("budget")) {
        const json& obj = root.at("budget");
        check_keys(obj, "/budget",
                   {"omega", "delta", "b_nl", "tau0", "n_atoms", "a_factor", "gamma0", "draws",
                    "table", "tau0_room"});
        json& echo = rc.effective["budget"] = json::object();
        Fields f(obj, "/budget", echo, rc.notes);
        BudgetBlock b;
        b.omega = f.frequency("omega", std::nullopt);
        b.delta = f.frequency("delta", std::nullopt);
        b.b_nl = f.number("b_nl", std::nullopt);
        b.tau0 = f.time_value("tau0", std::nullopt);
        b.n_atoms = f.number("n_atoms", std::nullopt);
        b.a_factor = f.number("a_factor", 100.0);
        b.gamma0 = f.frequency("gamma0", angular_from_hz(45e3));
        b.draws = f.uinteger("draws", std::uint64_t{0});
        if (obj.contains("table")) b.table_path = f.text("table", std::nullopt);
        if (obj.contains("tau0_room")) {
            b.tau0_room = f.time_value("tau0_room", std::nullopt);
        } else {
            b.tau0_room = b.tau0;  // room-temperature reference defaults to tau0
            f.record("tau0_room", cfgdetail::canon_time(b.tau0), "derived");
        }
        rc.budget = b;
    }

    if (root.contains("tstar")) {
        const json& obj = root.at("tstar");
        check_keys(obj, "/tstar", {"table", "omega", "delta", "tau0_room", "n_atoms"});
        json& echo = rc.effective["tstar"] = json::object();
        Fields f(obj, "/tstar", echo, rc.notes);
        TStarBlock b;
        b.table_path = f.text("table", std::nullopt);
        b.omega = f.frequency("omega", std::nullopt);
        b.delta = f.frequency("delta", std::nullopt);
        b.tau0_room = f.time_value("tau0_room", std::nullopt);
        if (!obj.contains("n_atoms") || !obj.at("n_atoms").is_array() ||
            obj.at("n_atoms").empty())
            throw ConfigError("/tstar/n_atoms: expected a nonempty array of numbers");
        echo["n_atoms"] = json::array();
        for (std::size_t i = 0; i < obj.at("n_atoms").size(); ++i) {
            const json& v = obj.at("n_atoms").at(i);
            if (!v.is_number())
                throw ConfigError("/tstar/n_atoms/" + std::to_string(i) + ": expected a number");
            b.n_atoms.push_back(v.get<double>());
            echo["n_atoms"].push_back(v.get<double>());
        }
        rc.tstar = b;
    }

    return rc;
}

inline RunConfig load_config_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());  // message carries line and column
    }
    return parse_config(root);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    RunConfig rc = load_config_text(ss.str(), path);
    rc.base_dir = std::filesystem::path(path).parent_path();
    return rc;
}

}
