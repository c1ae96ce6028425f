#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgspec/distributions.hpp"
#include "sgspec/rde.hpp"

namespace sgspec::cli {

/// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs, as one flat key = value file.
///
/// Ensembles: regular (k), er (p), configuration (fstar), uniform_tree,
/// bipartite (na, nb, fstar, gstar), weighted (base ensemble er/regular/
/// configuration plus weights), skeleton (intensity), file (input).
struct ExperimentConfig {
    std::string ensemble = "regular";
    int k = 3;
    double p = 2.0;
    std::string fstar = "delta:3";
    std::string gstar = "delta:2";
    std::string base = "er";
    std::string weights = "rademacher";
    double intensity = 1.0;
    int na = 800;
    int nb = 1200;
    std::string input;

    int alpha = 0;
    std::vector<int> n = {1000};
    std::uint64_t seed = 1;
    int seed_count = 10;
    int dense_cap = 6000;

    std::size_t population_size = 100000;
    int sweeps = 200;
    double convergence_tol = 1e-3;
    double damping = 0.0;

    double grid_lo = -4.0;
    double grid_hi = 4.0;
    int grid_points = 81;
    double eta = 0.05;

    int bins = 100;
    double threshold = 0.05;
    double slack = 0.01;

    int radius = 2;
    std::size_t gwt_samples = 20000;
    std::size_t pair_samples = 10000;
    int ball_cap = 64;
    std::optional<double> tv_threshold;
    std::optional<double> pair_threshold;

    std::string out = "out";

    std::vector<std::uint64_t> seeds() const;
    rde::RdeParams rde_params() const;
    /// Root law F* implied by the ensemble (regular -> delta:k, er -> poisson:p, ...).
    DegreeDistribution root_law() const;

    /// Throws ConfigError naming the first offending key.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Keys in emission order; used for parsing, emission and flag overrides.
const std::vector<std::string>& config_keys();

/// Sets one key from its text form. Throws ConfigError on unknown keys or bad values.
void set_value(ExperimentConfig& c, const std::string& key, const std::string& value);
/// Text form of one key; empty for an unset optional.
std::string get_value(const ExperimentConfig& c, const std::string& key);

/// "key = value" lines; '#' starts a comment. Does not validate.
ExperimentConfig parse_config(const std::string& text);
std::string emit_config(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

}  // namespace sgspec::cli
