#include "pmfd/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pmfd/errors.hpp"

namespace pmfd {

namespace {

enum class Kind { Real, Integer, Text, RealList };

struct KeySpec {
    const char* section;
    Kind kind;
};

const std::map<std::string, KeySpec, std::less<>>& key_table() {
    static const std::map<std::string, KeySpec, std::less<>> table{
        {"experiment", {"model", Kind::Text}},     {"gamma", {"model", Kind::Real}},
        {"kappa", {"model", Kind::Real}},          {"nutrient", {"model", Kind::Text}},
        {"x_min", {"grid", Kind::Real}},           {"x_max", {"grid", Kind::Real}},
        {"dx", {"grid", Kind::Real}},              {"dt", {"time", Kind::Real}},
        {"t_end", {"time", Kind::Real}},           {"alpha", {"growth", Kind::Real}},
        {"p_h", {"growth", Kind::Real}},           {"c_b", {"growth", Kind::Real}},
        {"g0", {"growth", Kind::Real}},            {"g_low", {"growth", Kind::Real}},
        {"g_high", {"growth", Kind::Real}},        {"c_threshold", {"growth", Kind::Real}},
        {"r0", {"initial", Kind::Real}},           {"t0", {"initial", Kind::Real}},
        {"barenblatt_c", {"initial", Kind::Real}}, {"shell_inner", {"initial", Kind::Real}},
        {"shell_outer", {"initial", Kind::Real}},  {"shell_density", {"initial", Kind::Real}},
        {"newton_tol", {"solver", Kind::Real}},    {"newton_max_iter", {"solver", Kind::Integer}},
        {"monotone_tol", {"solver", Kind::Real}},  {"cadence", {"output", Kind::Integer}},
        {"snapshot_every", {"output", Kind::Integer}}, {"dir", {"output", Kind::Text}},
        {"gammas", {"sweep", Kind::RealList}},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view v, const std::string& key, int line) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw ConfigError("line " + std::to_string(line) + ": '" + std::string(v) +
                              "' is not a number for " + key,
                          key, line);
    return out;
}

long parse_integer(std::string_view v, const std::string& key, int line) {
    long out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": '" + std::string(v) +
                              "' is not an integer for " + key,
                          key, line);
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what, field);
}

void apply_defaults(SimConfig& c, const std::set<std::string, std::less<>>& given) {
    auto unset = [&](const char* key) { return given.find(key) == given.end(); };
    auto domain = [&](double lo, double hi) {
        if (unset("x_min")) c.x_min = lo;
        if (unset("x_max")) c.x_max = hi;
    };
    switch (c.experiment) {
    case Experiment::Barenblatt:
        domain(-5.0, 5.0);
        if (unset("kappa") && c.gamma > 0.0) c.kappa = (c.gamma + 1.0) / c.gamma;
        if (unset("t_end")) c.t_end = 0.1;
        break;
    case Experiment::Vitro:
    case Experiment::Vivo:
        domain(-5.0, 5.0);
        if (unset("t_end")) c.t_end = 1.5;
        break;
    case Experiment::TwoSpecies:
        domain(-6.0, 6.0);
        if (unset("g_low")) c.g_low = 12.0;
        if (unset("g_high")) c.g_high = -15.0;
        if (unset("t_end")) c.t_end = 0.2;
        break;
    case Experiment::Focusing:
        domain(-8.0, 8.0);
        if (unset("t_end")) c.t_end = 0.6;
        break;
    case Experiment::ApSweep:
        domain(-5.0, 5.0);
        if (unset("t_end")) c.t_end = 0.5;
        if (unset("gammas")) c.gammas = {10.0, 20.0, 40.0, 80.0};
        break;
    }
}

}  // namespace

std::string_view experiment_name(Experiment e) {
    switch (e) {
    case Experiment::Barenblatt: return "barenblatt";
    case Experiment::Vitro: return "vitro";
    case Experiment::Vivo: return "vivo";
    case Experiment::TwoSpecies: return "twospecies";
    case Experiment::Focusing: return "focusing";
    case Experiment::ApSweep: return "ap_sweep";
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (auto e : {Experiment::Barenblatt, Experiment::Vitro, Experiment::Vivo,
                   Experiment::TwoSpecies, Experiment::Focusing, Experiment::ApSweep}) {
        if (name == experiment_name(e)) return e;
    }
    if (name == "ap-sweep") return Experiment::ApSweep;
    return std::nullopt;
}

GrowthModel SimConfig::growth() const {
    switch (experiment) {
    case Experiment::Barenblatt: return ConstantGrowth{0.0};
    case Experiment::Vitro:
    case Experiment::Vivo:
    case Experiment::ApSweep: return NutrientLinear{c_b};
    case Experiment::TwoSpecies: return NutrientPiecewise{g_low, g_high, c_threshold};
    case Experiment::Focusing: return LinearPressure{alpha, p_h};
    }
    return ConstantGrowth{0.0};
}

ImplicitStepParams SimConfig::step_params() const {
    ImplicitStepParams p;
    p.dt = dt;
    p.newton_tol = newton_tol;
    p.newton_max_iter = newton_max_iter;
    p.monotone_tol = monotone_tol;
    return p;
}

void validate(const SimConfig& c) {
    const bool sweep = c.experiment == Experiment::ApSweep;
    if (!sweep && !(c.gamma > 1.0)) invalid("gamma", "must be greater than 1");
    if (!(c.kappa > 0.0)) invalid("kappa", "must be positive");
    if (!(c.dx > 0.0)) invalid("dx", "must be positive");
    if (!(c.dt > 0.0)) invalid("dt", "must be positive");
    if (!(c.t_end >= 0.0)) invalid("t_end", "must be non-negative");
    if (!(c.x_max > c.x_min)) invalid("x_max", "must exceed x_min");
    const double cells = (c.x_max - c.x_min) / c.dx;
    const double rounded = 2.0 * std::round(cells / 2.0);
    if (rounded < 2.0 || std::abs(cells - rounded) > 1e-9 * cells)
        invalid("dx", "extent x_max - x_min must be an even multiple of dx");
    if (c.experiment == Experiment::Focusing && std::abs(c.x_min + c.x_max) > 1e-12 * c.x_max)
        invalid("x_min", "the 2D domain must be symmetric about 0");
    if (!(c.c_b > 0.0)) invalid("c_b", "must be positive");
    if (!(c.alpha > 0.0)) invalid("alpha", "must be positive");
    if (!(c.p_h > 0.0)) invalid("p_h", "must be positive");
    if (!(c.r0 > 0.0)) invalid("r0", "must be positive");
    if (!(c.t0 > 0.0)) invalid("t0", "must be positive");
    if (!(c.barenblatt_c > 0.0)) invalid("barenblatt_c", "must be positive");
    if (!(c.shell_inner >= 0.0 && c.shell_outer > c.shell_inner))
        invalid("shell_outer", "must exceed shell_inner >= 0");
    if (!(c.shell_density > 0.0)) invalid("shell_density", "must be positive");
    if (c.nutrient != "vitro" && c.nutrient != "vivo") invalid("nutrient", "must be vitro or vivo");
    if (!(c.newton_tol > 0.0)) invalid("newton_tol", "must be positive");
    if (c.newton_max_iter < 1) invalid("newton_max_iter", "must be at least 1");
    if (!(c.monotone_tol > 0.0)) invalid("monotone_tol", "must be positive");
    if (c.cadence < 1) invalid("cadence", "must be at least 1");
    if (c.snapshot_every < 0) invalid("snapshot_every", "must be non-negative");
    if (sweep) {
        if (c.gammas.size() < 2) invalid("gammas", "an AP sweep needs at least two values");
        for (double g : c.gammas)
            if (!(g > 1.0)) invalid("gammas", "every value must be greater than 1");
    }
    const double g0 = growth_sup(c.growth());
    if (g0 > 0.0 && !(c.dt < 1.0 / g0)) {
        std::ostringstream msg;
        msg << "dt = " << c.dt << " violates the implicit-scheme condition dt < 1/G(0) = "
            << 1.0 / g0;
        invalid("dt", msg.str());
    }
}

SimConfig parse_config(std::string_view text, std::optional<Experiment> expected) {
    SimConfig c;
    std::set<std::string, std::less<>> given;
    std::string section;
    std::optional<Experiment> named;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header", {}, line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected 'key = value'", {}, line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError(where + ": unknown key '" + key + "'", key, line_no);
        if (section != it->second.section)
            throw ConfigError(where + ": key '" + key + "' belongs in [" + it->second.section + "]",
                              key, line_no);
        if (!given.insert(key).second)
            throw ConfigError(where + ": duplicate key '" + key + "'", key, line_no);
        if (value.empty()) throw ConfigError(where + ": empty value for " + key, key, line_no);

        switch (it->second.kind) {
        case Kind::Real: {
            const double v = parse_real(value, key, line_no);
            static const std::map<std::string, double SimConfig::*, std::less<>> reals{
                {"gamma", &SimConfig::gamma},           {"kappa", &SimConfig::kappa},
                {"x_min", &SimConfig::x_min},           {"x_max", &SimConfig::x_max},
                {"dx", &SimConfig::dx},                 {"dt", &SimConfig::dt},
                {"t_end", &SimConfig::t_end},           {"alpha", &SimConfig::alpha},
                {"p_h", &SimConfig::p_h},               {"c_b", &SimConfig::c_b},
                {"g0", &SimConfig::g0},                 {"g_low", &SimConfig::g_low},
                {"g_high", &SimConfig::g_high},         {"c_threshold", &SimConfig::c_threshold},
                {"r0", &SimConfig::r0},                 {"t0", &SimConfig::t0},
                {"barenblatt_c", &SimConfig::barenblatt_c},
                {"shell_inner", &SimConfig::shell_inner},
                {"shell_outer", &SimConfig::shell_outer},
                {"shell_density", &SimConfig::shell_density},
                {"newton_tol", &SimConfig::newton_tol}, {"monotone_tol", &SimConfig::monotone_tol},
            };
            c.*(reals.at(key)) = v;
            break;
        }
        case Kind::Integer: {
            const long v = parse_integer(value, key, line_no);
            if (key == "newton_max_iter")
                c.newton_max_iter = static_cast<int>(v);
            else if (key == "cadence")
                c.cadence = v;
            else
                c.snapshot_every = v;
            break;
        }
        case Kind::Text:
            if (key == "experiment") {
                named = parse_experiment(value);
                if (!named)
                    throw ConfigError(where + ": unknown experiment '" + std::string(value) + "'",
                                      key, line_no);
            } else if (key == "nutrient") {
                c.nutrient = std::string(value);
            } else {
                c.out_dir = std::string(value);
            }
            break;
        case Kind::RealList: {
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto comma = value.find(',', start);
                const auto item = trim(value.substr(
                    start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
                c.gammas.push_back(parse_real(item, key, line_no));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            break;
        }
        }
    }

    if (named && expected && *named != *expected)
        throw ConfigError("experiment: config names '" + std::string(experiment_name(*named)) +
                              "' but the command runs '" + std::string(experiment_name(*expected)) +
                              "'",
                          "experiment");
    if (!named && !expected) throw ConfigError("experiment: missing", "experiment");
    c.experiment = named ? *named : *expected;

    const bool sweep = c.experiment == Experiment::ApSweep;
    for (const char* required : {"gamma", "dx", "dt"}) {
        if (sweep && std::string_view(required) == "gamma") continue;
        if (!given.count(required))
            throw ConfigError(std::string(required) + ": missing required key", required);
    }
    apply_defaults(c, given);
    validate(c);
    return c;
}

SimConfig load_config(const std::string& path, std::optional<Experiment> expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path, "config");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), expected);
}

std::string to_text(const SimConfig& c) {
    std::ostringstream o;
    o << "[model]\nexperiment = " << experiment_name(c.experiment) << '\n';
    if (c.gamma > 0.0) o << "gamma = " << fmt(c.gamma) << '\n';
    o << "kappa = " << fmt(c.kappa) << "\nnutrient = " << c.nutrient << '\n';
    o << "\n[grid]\nx_min = " << fmt(c.x_min) << "\nx_max = " << fmt(c.x_max)
      << "\ndx = " << fmt(c.dx) << '\n';
    o << "\n[time]\ndt = " << fmt(c.dt) << "\nt_end = " << fmt(c.t_end) << '\n';
    o << "\n[growth]\nalpha = " << fmt(c.alpha) << "\np_h = " << fmt(c.p_h) << "\nc_b = " << fmt(c.c_b)
      << "\ng0 = " << fmt(c.g0) << "\ng_low = " << fmt(c.g_low) << "\ng_high = " << fmt(c.g_high)
      << "\nc_threshold = " << fmt(c.c_threshold) << '\n';
    o << "\n[initial]\nr0 = " << fmt(c.r0) << "\nt0 = " << fmt(c.t0)
      << "\nbarenblatt_c = " << fmt(c.barenblatt_c) << "\nshell_inner = " << fmt(c.shell_inner)
      << "\nshell_outer = " << fmt(c.shell_outer) << "\nshell_density = " << fmt(c.shell_density)
      << '\n';
    o << "\n[solver]\nnewton_tol = " << fmt(c.newton_tol)
      << "\nnewton_max_iter = " << c.newton_max_iter << "\nmonotone_tol = " << fmt(c.monotone_tol)
      << '\n';
    o << "\n[output]\ncadence = " << c.cadence << "\nsnapshot_every = " << c.snapshot_every
      << "\ndir = " << c.out_dir << '\n';
    if (!c.gammas.empty()) {
        o << "\n[sweep]\ngammas = ";
        for (std::size_t i = 0; i < c.gammas.size(); ++i) o << (i ? ", " : "") << fmt(c.gammas[i]);
        o << '\n';
    }
    return o.str();
}

}  // namespace pmfd
