#include "cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "cli/pipeline.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/json17.hpp"

namespace sgspec::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_dir(const ExperimentConfig& c, const std::string& sub) {
    const fs::path dir = fs::path(c.out) / sub;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path.string());
    return os;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto os = open_out(path);
    os << dump17(j) << "\n";
    if (!os) throw IoError("write failed for " + path.string());
}

std::string stem(int n, std::uint64_t seed) {
    return "n" + std::to_string(n) + "_seed" + std::to_string(seed);
}

std::vector<int> sizes(const ExperimentConfig& c) {
    if (c.ensemble == "file") return {0};
    if (c.ensemble == "bipartite") return {c.na + c.nb};
    return c.n;
}

}  // namespace

int cmd_generate(const ExperimentConfig& c, std::ostream& log) {
    c.validate();
    const auto dir = prepare_dir(c, "graphs");
    nlohmann::json manifest = metadata(c);
    manifest["files"] = nlohmann::json::array();
    for (const int n : sizes(c)) {
        for (const auto s : c.seeds()) {
            const Graph g = make_graph(c, n, s);
            const auto path = dir / (c.ensemble + "_" + stem(n, s) + ".edges");
            auto os = open_out(path);
            if (c.ensemble == "weighted") {
                write_edge_list(os, gen::attach_weights(g, WeightSpec::parse(c.weights), s));
            } else {
                write_edge_list(os, g);
            }
            if (!os) throw IoError("write failed for " + path.string());
            manifest["files"].push_back({{"path", path.string()}, {"n", g.n()}, {"m", g.m()}, {"seed", s}});
            log << path.string() << ": n=" << g.n() << " m=" << g.m() << "\n";
        }
    }
    write_json(dir / "manifest.json", manifest);
    return kExitOk;
}

int cmd_spectrum(const ExperimentConfig& c, std::ostream& log) {
    c.validate();
    const auto dir = prepare_dir(c, "spectrum");
    for (const int n : sizes(c)) {
        std::vector<SpectralMeasure> parts;
        for (const auto s : c.seeds()) {
            const auto mu = spectral::esd(make_delta(c, n, s));
            const double lo = mu.atoms().front().location, hi = mu.atoms().back().location;
            auto os = open_out(dir / ("esd_" + stem(n, s) + ".csv"));
            spectral::write_measure_csv(os, mu);
            auto hs = open_out(dir / ("hist_" + stem(n, s) + ".csv"));
            spectral::write_histogram_csv(hs, spectral::histogram(mu, lo, hi > lo ? hi : lo + 1, c.bins));
            parts.push_back(mu);
            log << "spectrum n=" << n << " seed=" << s << ": " << mu.size() << " atoms\n";
        }
        const auto avg = mixture(parts);
        const double lo = avg.atoms().front().location, hi = avg.atoms().back().location;
        auto os = open_out(dir / ("hist_mean_n" + std::to_string(n) + ".csv"));
        spectral::write_histogram_csv(os, spectral::histogram(avg, lo, hi > lo ? hi : lo + 1, c.bins));
    }
    write_json(dir / "metadata.json", metadata(c));
    return kExitOk;
}

int cmd_rde(const ExperimentConfig& c, std::ostream& log) {
    c.validate();
    const auto run = run_rde(c);
    const auto dir = prepare_dir(c, "rde");
    {
        auto os = open_out(dir / "curve.csv");
        write_curve_csv(os, run.curve);
        auto ds = open_out(dir / "density.csv");
        write_density_csv(ds, run.density);
    }
    nlohmann::json meta = metadata(c);
    meta["flagged_points"] = run.flagged();
    meta["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < run.curve.size(); ++i) {
        const auto& trace = run.traces[i];
        meta["points"].push_back({{"x", run.curve.xs[i]},
                                  {"converged", static_cast<bool>(run.curve.converged[i])},
                                  {"sweeps", trace.size()},
                                  {"final_diagnostic", trace.empty() ? 0.0 : trace.back()}});
    }
    write_json(dir / "metadata.json", meta);
    log << "rde: " << run.curve.size() << " points, " << run.flagged() << " not converged\n";
    if (run.flagged() > 0)
        log << "warning: " << run.flagged() << " grid points hit the sweep limit; see converged column\n";
    return kExitOk;
}

int cmd_compare(const ExperimentConfig& c, std::ostream& log) {
    c.validate();
    const auto run = run_rde(c);
    const auto limit = limit_measure(run);
    const auto rows = compare_table(c, limit);
    const auto dir = prepare_dir(c, "compare");
    {
        auto os = open_out(dir / "compare.csv");
        os << "n,levy\n";
        for (const auto& r : rows) os << r.n << "," << fmt17(r.levy) << "\n";
    }
    for (const auto& r : rows) log << "n=" << r.n << " levy=" << fmt17(r.levy) << "\n";
    // A single row has no trend to check, only the threshold.
    const auto problem = check_trend(rows, rows.size() > 1 ? c.slack : 0.0, c.threshold);
    nlohmann::json meta = metadata(c);
    meta["flagged_points"] = run.flagged();
    meta["passed"] = !problem.has_value();
    if (problem) meta["failure"] = *problem;
    write_json(dir / "metadata.json", meta);
    if (problem) {
        log << "compare failed: " << *problem << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_localweak(const ExperimentConfig& c, std::ostream& log) {
    c.validate();
    const auto r = localweak_report(c);
    const auto dir = prepare_dir(c, "localweak");
    {
        auto os = open_out(dir / "balls_graph.json");
        os << lwc::to_json(r.graph_balls) << "\n";
        auto gs = open_out(dir / "balls_gwt.json");
        gs << lwc::to_json(r.gwt_balls) << "\n";
    }
    nlohmann::json report = metadata(c);
    report["tv_distance"] = r.tv;
    report["pair_independence_stat"] = r.pair_stat;
    report["pair_samples"] = r.pair_samples;
    report["graph_ball_types"] = r.graph_balls.counts.size();
    report["gwt_ball_types"] = r.gwt_balls.counts.size();
    report["uniform_integrability"] = nlohmann::json::array();
    for (const auto& t : r.profile) report["uniform_integrability"].push_back({{"ell", t.ell}, {"tail_mass", t.tail_mass}});
    std::string failure;
    if (c.tv_threshold && r.tv > *c.tv_threshold) failure = "tv_distance " + fmt17(r.tv) + " > " + fmt17(*c.tv_threshold);
    if (c.pair_threshold && r.pair_stat > *c.pair_threshold) {
        if (!failure.empty()) failure += "; ";
        failure += "pair_independence_stat " + fmt17(r.pair_stat) + " > " + fmt17(*c.pair_threshold);
    }
    report["passed"] = failure.empty();
    write_json(dir / "report.json", report);
    log << "localweak: tv=" << fmt17(r.tv) << " pair=" << fmt17(r.pair_stat) << "\n";
    if (!failure.empty()) {
        log << "localweak failed: " << failure << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace sgspec::cli
