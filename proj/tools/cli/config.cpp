#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"

namespace sgspec::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError("invalid value '" + text + "' for key '" + key + "'");
    return value;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
    if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
    return out;
}

struct Field {
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
};

template <class T>
Field number(T ExperimentConfig::*member) {
    if constexpr (std::is_floating_point_v<T>) {
        return {[member](const ExperimentConfig& c) { return fmt17(c.*member); },
                [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                    c.*member = parse_number<T>(k, v);
                }};
    } else {
        return {[member](const ExperimentConfig& c) { return std::to_string(c.*member); },
                [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                    c.*member = parse_number<T>(k, v);
                }};
    }
}

Field text(std::string ExperimentConfig::*member) {
    return {[member](const ExperimentConfig& c) { return c.*member; },
            [member](ExperimentConfig& c, const std::string&, const std::string& v) { c.*member = v; }};
}

Field optional_number(std::optional<double> ExperimentConfig::*member) {
    return {[member](const ExperimentConfig& c) { return (c.*member) ? fmt17(*(c.*member)) : std::string(); },
            [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                if (v.empty() || v == "none") {
                    (c.*member).reset();
                } else {
                    c.*member = parse_number<double>(k, v);
                }
            }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
    using C = ExperimentConfig;
    static const std::vector<std::pair<std::string, Field>> table = {
        {"ensemble", text(&C::ensemble)},
        {"k", number(&C::k)},
        {"p", number(&C::p)},
        {"fstar", text(&C::fstar)},
        {"gstar", text(&C::gstar)},
        {"base", text(&C::base)},
        {"weights", text(&C::weights)},
        {"intensity", number(&C::intensity)},
        {"na", number(&C::na)},
        {"nb", number(&C::nb)},
        {"input", text(&C::input)},
        {"alpha", number(&C::alpha)},
        {"n",
         {[](const C& c) {
              std::string s;
              for (std::size_t i = 0; i < c.n.size(); ++i) s += (i ? "," : "") + std::to_string(c.n[i]);
              return s;
          },
          [](C& c, const std::string& k, const std::string& v) { c.n = parse_list<int>(k, v); }}},
        {"seed", number(&C::seed)},
        {"seed_count", number(&C::seed_count)},
        {"dense_cap", number(&C::dense_cap)},
        {"population_size", number(&C::population_size)},
        {"sweeps", number(&C::sweeps)},
        {"convergence_tol", number(&C::convergence_tol)},
        {"damping", number(&C::damping)},
        {"grid_lo", number(&C::grid_lo)},
        {"grid_hi", number(&C::grid_hi)},
        {"grid_points", number(&C::grid_points)},
        {"eta", number(&C::eta)},
        {"bins", number(&C::bins)},
        {"threshold", number(&C::threshold)},
        {"slack", number(&C::slack)},
        {"radius", number(&C::radius)},
        {"gwt_samples", number(&C::gwt_samples)},
        {"pair_samples", number(&C::pair_samples)},
        {"ball_cap", number(&C::ball_cap)},
        {"tv_threshold", optional_number(&C::tv_threshold)},
        {"pair_threshold", optional_number(&C::pair_threshold)},
        {"out", text(&C::out)},
    };
    return table;
}

const Field& field(const std::string& key) {
    for (const auto& [k, f] : fields())
        if (k == key) return f;
    throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

std::vector<std::uint64_t> ExperimentConfig::seeds() const {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < seed_count; ++i) out.push_back(seed + static_cast<std::uint64_t>(i));
    return out;
}

rde::RdeParams ExperimentConfig::rde_params() const {
    rde::RdeParams r;
    r.population_size = population_size;
    r.sweeps = sweeps;
    r.seed = seed;
    r.damping = damping;
    r.convergence_tol = convergence_tol;
    return r;
}

DegreeDistribution ExperimentConfig::root_law() const {
    const std::string& e = ensemble == "weighted" ? base : ensemble;
    if (e == "regular") return DegreeDistribution::delta(k);
    if (e == "er") return DegreeDistribution::poisson(p);
    if (e == "configuration" || e == "bipartite") return DegreeDistribution::parse(fstar);
    if (e == "uniform_tree" || e == "skeleton") return DegreeDistribution::poisson(intensity);
    throw ConfigError("ensemble '" + ensemble + "' has no root degree law");
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& why) {
        throw ConfigError("config key '" + key + "': " + why);
    };
    static const std::vector<std::string> ensembles = {"regular",   "er",       "configuration", "uniform_tree",
                                                       "bipartite", "weighted", "skeleton",      "file"};
    if (std::find(ensembles.begin(), ensembles.end(), ensemble) == ensembles.end())
        fail("ensemble", "unknown ensemble '" + ensemble + "'");
    if (ensemble == "weighted" && base != "er" && base != "regular" && base != "configuration")
        fail("base", "weighted ensembles support base er, regular or configuration");
    if (ensemble == "file" && input.empty()) fail("input", "file ensemble needs an input path");
    if (k < 0) fail("k", "must be >= 0");
    if (!(p >= 0)) fail("p", "must be >= 0");
    try {
        (void)DegreeDistribution::parse(fstar);
    } catch (const std::exception& e) {
        fail("fstar", e.what());
    }
    try {
        (void)DegreeDistribution::parse(gstar);
    } catch (const std::exception& e) {
        fail("gstar", e.what());
    }
    try {
        (void)WeightSpec::parse(weights);
    } catch (const std::exception& e) {
        fail("weights", e.what());
    }
    if ((ensemble == "skeleton" || ensemble == "uniform_tree") && intensity != 1.0)
        fail("intensity", "the skeleton recursion is defined for Poisson(1) only");
    if (na < 1 || nb < 1) fail("na", "bipartite sides need at least one vertex");
    if (alpha != 0 && alpha != 1) fail("alpha", "must be 0 or 1");
    if (ensemble == "weighted" && alpha != 0) fail("alpha", "weighted recursion supports alpha = 0 only");
    for (int v : n)
        if (v < 1) fail("n", "sizes must be >= 1");
    if (ensemble == "regular" || (ensemble == "weighted" && base == "regular"))
        for (int v : n) {
            if ((static_cast<long long>(v) * k) % 2 != 0) fail("n", "n * k must be even for regular graphs");
            if (k > 0 && k >= v) fail("k", "k must be < n for regular graphs");
        }
    if (seed_count < 1) fail("seed_count", "must be >= 1");
    if (dense_cap < 1) fail("dense_cap", "must be >= 1");
    try {
        rde_params().validate();
    } catch (const std::exception& e) {
        fail("population_size", e.what());
    }
    if (!(grid_hi > grid_lo)) fail("grid_hi", "must exceed grid_lo");
    if (grid_points < 2) fail("grid_points", "must be >= 2");
    if (!(eta > 0)) fail("eta", "must be > 0");
    if (bins < 1) fail("bins", "must be >= 1");
    if (!(threshold >= 0)) fail("threshold", "must be >= 0");
    if (!(slack >= 0)) fail("slack", "must be >= 0");
    if (radius < 0) fail("radius", "must be >= 0");
    if (gwt_samples < 1) fail("gwt_samples", "must be >= 1");
    if (pair_samples < 1) fail("pair_samples", "must be >= 1");
    if (ball_cap < 1) fail("ball_cap", "must be >= 1");
    if (out.empty()) fail("out", "must not be empty");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [key, f] : fields()) k.push_back(key);
        return k;
    }();
    return keys;
}

void set_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
    field(key).set(c, key, value);
}

std::string get_value(const ExperimentConfig& c, const std::string& key) { return field(key).get(c); }

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

std::string emit_config(const ExperimentConfig& c) {
    std::string out;
    for (const auto& [key, f] : fields()) {
        const std::string v = f.get(c);
        if (v.empty()) continue;
        out += key + " = " + v + "\n";
    }
    return out;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace sgspec::cli
