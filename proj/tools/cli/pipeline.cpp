#include "cli/pipeline.hpp"

#include <fstream>
#include <span>

#include "sgspec/closed_form.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"
#include "sgspec/generators.hpp"

namespace sgspec::cli {

namespace {

bool is_tree_ensemble(const std::string& e) { return e == "uniform_tree" || e == "skeleton"; }

Graph base_graph(const ExperimentConfig& c, const std::string& ensemble, int n, std::uint64_t seed) {
    if (ensemble == "regular") return gen::regular(n, c.k, seed);
    if (ensemble == "er") return gen::erdos_renyi(n, c.p, seed);
    if (ensemble == "configuration") return gen::configuration(n, DegreeDistribution::parse(c.fstar), seed);
    if (is_tree_ensemble(ensemble)) return gen::uniform_tree(n, seed);
    if (ensemble == "bipartite")
        return gen::bipartite_configuration(c.na, c.nb, DegreeDistribution::parse(c.fstar),
                                            DegreeDistribution::parse(c.gstar), seed);
    if (ensemble == "file") {
        std::ifstream in(c.input);
        if (!in) throw IoError("cannot read graph file " + c.input);
        return read_edge_list(in);
    }
    throw ConfigError("unknown ensemble '" + ensemble + "'");
}

}  // namespace

Graph make_graph(const ExperimentConfig& c, int n, std::uint64_t seed) {
    return base_graph(c, c.ensemble == "weighted" ? c.base : c.ensemble, n, seed);
}

spectral::DeltaMatrix make_delta(const ExperimentConfig& c, int n, std::uint64_t seed) {
    const Graph g = make_graph(c, n, seed);
    if (c.ensemble == "weighted")
        return spectral::delta_matrix(gen::attach_weights(g, WeightSpec::parse(c.weights), seed), c.alpha, c.dense_cap);
    return spectral::delta_matrix(g, c.alpha, c.dense_cap);
}

SpectralMeasure seed_averaged_esd(const ExperimentConfig& c, int n) {
    std::vector<SpectralMeasure> parts;
    for (const auto s : c.seeds()) parts.push_back(spectral::esd(make_delta(c, n, s)));
    return mixture(parts);
}

std::size_t RdeRun::flagged() const {
    return static_cast<std::size_t>(std::count(curve.converged.begin(), curve.converged.end(), false));
}

RdeRun run_rde(const ExperimentConfig& c) {
    const auto xs = linspace(c.grid_lo, c.grid_hi, c.grid_points);
    const auto params = c.rde_params();
    RdeRun run;
    if (c.ensemble == "regular" || c.ensemble == "er" || c.ensemble == "configuration") {
        run.curve = rde::stieltjes_curve(c.root_law(), c.alpha, xs, c.eta, params, &run.traces);
    } else if (c.ensemble == "weighted") {
        run.curve = rde::weighted_stieltjes_curve(c.root_law(), WeightSpec::parse(c.weights), xs, c.eta, params,
                                                  &run.traces);
    } else if (c.ensemble == "bipartite") {
        const double p = static_cast<double>(c.na) / (c.na + c.nb);
        run.curve = rde::bipartite_stieltjes_curve(DegreeDistribution::parse(c.fstar), DegreeDistribution::parse(c.gstar),
                                                   p, c.alpha, xs, c.eta, params, &run.traces);
    } else if (is_tree_ensemble(c.ensemble)) {
        if (c.alpha != 0) throw ConfigError("config key 'alpha': the skeleton recursion covers the adjacency matrix only");
        run.curve = rde::skeleton_stieltjes_curve(c.intensity, xs, c.eta, params, &run.traces);
    } else {
        throw ConfigError("config key 'ensemble': '" + c.ensemble + "' has no limit recursion");
    }
    run.density = closed::invert_stieltjes(run.curve);
    return run;
}

SpectralMeasure limit_measure(const RdeRun& run) { return closed::measure_from_density(run.density); }

std::vector<CompareRow> compare_table(const ExperimentConfig& c, const SpectralMeasure& limit) {
    std::vector<CompareRow> rows;
    for (const int n : c.n) rows.push_back({n, spectral::levy_distance(seed_averaged_esd(c, n), limit)});
    return rows;
}

std::optional<std::string> check_trend(const std::vector<CompareRow>& rows, double slack, double threshold) {
    auto row = [](const CompareRow& r) { return "n=" + std::to_string(r.n) + " levy=" + fmt17(r.levy); };
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].levy > rows[i - 1].levy + slack)
            return row(rows[i]) + " increases by more than " + fmt17(slack) + " over " + row(rows[i - 1]);
    if (!rows.empty() && rows.back().levy > threshold)
        return row(rows.back()) + " exceeds threshold " + fmt17(threshold);
    return std::nullopt;
}

LocalWeakReport localweak_report(const ExperimentConfig& c) {
    const std::string& e = c.ensemble == "weighted" ? c.base : c.ensemble;
    if (e != "regular" && e != "er" && e != "configuration")
        throw ConfigError("config key 'ensemble': localweak needs a single-type ensemble (regular, er, configuration)");
    LocalWeakReport r;
    r.n = c.n.front();
    r.seed = c.seed;
    const Graph g = make_graph(c, r.n, r.seed);
    r.graph_balls = lwc::ball_distribution(g, c.radius, c.ball_cap);
    r.gwt_balls = lwc::gwt_ball_distribution(c.root_law(), c.radius, c.gwt_samples, c.seed, c.ball_cap);
    r.tv = lwc::tv_distance(r.graph_balls, r.gwt_balls);
    r.pair_samples = c.pair_samples;
    r.pair_stat = lwc::pair_independence_stat(g, c.radius, c.pair_samples, c.seed, c.ball_cap);
    r.profile = lwc::uniform_integrability_profile(g);
    return r;
}

nlohmann::json metadata(const ExperimentConfig& c) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& key : config_keys()) {
        const auto v = get_value(c, key);
        if (!v.empty()) cfg[key] = v;
    }
    return {{"config", cfg}, {"seeds", c.seeds()}};
}

}  // namespace sgspec::cli
