#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "json.hpp"
#include "sgspec/curves.hpp"
#include "sgspec/graph.hpp"
#include "sgspec/localweak.hpp"
#include "sgspec/rde.hpp"
#include "sgspec/spectral.hpp"

namespace sgspec::cli {

/// Graph for one (n, seed) of the configured ensemble. Bipartite ensembles use
/// na + nb and ignore n; the file ensemble reads `input` and ignores both.
Graph make_graph(const ExperimentConfig& c, int n, std::uint64_t seed);

/// Delta matrix of make_graph, with weights attached for the weighted ensemble.
spectral::DeltaMatrix make_delta(const ExperimentConfig& c, int n, std::uint64_t seed);

/// Equal-weight mixture of the ESDs over c.seeds().
SpectralMeasure seed_averaged_esd(const ExperimentConfig& c, int n);

struct RdeRun {
    StieltjesCurve curve;
    DensityCurve density;
    rde::Traces traces;

    std::size_t flagged() const;
};

/// Stieltjes curve on the configured grid for the ensemble's recursion, then
/// its inversion. Throws ConfigError when the ensemble has no recursion.
RdeRun run_rde(const ExperimentConfig& c);

SpectralMeasure limit_measure(const RdeRun& run);

struct CompareRow {
    int n;
    double levy;
};
std::vector<CompareRow> compare_table(const ExperimentConfig& c, const SpectralMeasure& limit);

/// Empty when the table is nonincreasing up to `slack` per step and its last
/// row is within `threshold`; otherwise the offending row.
std::optional<std::string> check_trend(const std::vector<CompareRow>& rows, double slack, double threshold);

struct LocalWeakReport {
    int n = 0;
    std::uint64_t seed = 0;
    lwc::BallDistribution graph_balls;
    lwc::BallDistribution gwt_balls;
    double tv = 0;
    double pair_stat = 0;
    std::size_t pair_samples = 0;
    std::vector<lwc::TailPoint> profile;
};

/// Uses the first n of the grid and the base seed.
LocalWeakReport localweak_report(const ExperimentConfig& c);

/// {"config": {key: text value}, "seeds": [...]}, the header of every JSON output.
nlohmann::json metadata(const ExperimentConfig& c);

}  // namespace sgspec::cli
