#include "cli/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>

#include "cli/pipeline.hpp"
#include "sgspec/closed_form.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/random.hpp"

namespace sgspec::cli {

namespace {

using cplx = std::complex<double>;

struct Outcome {
    bool passed;
    std::string detail;
};

// Several criteria share ensembles; results are cached by the emitted config.
struct Cache {
    std::map<std::string, SpectralMeasure> esd;
    std::map<std::string, SpectralMeasure> limit;

    const SpectralMeasure& averaged_esd(const ExperimentConfig& c, int n) {
        const auto key = emit_config(c) + "#" + std::to_string(n);
        auto it = esd.find(key);
        if (it == esd.end()) it = esd.emplace(key, seed_averaged_esd(c, n)).first;
        return it->second;
    }
    const SpectralMeasure& limit_of(const ExperimentConfig& c) {
        const auto key = emit_config(c);
        auto it = limit.find(key);
        if (it == limit.end()) it = limit.emplace(key, limit_measure(run_rde(c))).first;
        return it->second;
    }
};

// Six significant digits; the table is for reading, not for parsing.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string within(const std::string& what, double value, double limit) {
    return what + "=" + num(value) + (value <= limit ? " <= " : " > ") + num(limit);
}

ExperimentConfig regular3() {
    ExperimentConfig c;
    c.ensemble = "regular";
    c.k = 3;
    c.seed = 1;
    c.seed_count = 10;
    c.grid_lo = -4;
    c.grid_hi = 4;
    c.grid_points = 321;
    c.eta = 0.05;
    c.population_size = 50000;
    c.convergence_tol = 1e-4;
    c.sweeps = 500;
    return c;
}

ExperimentConfig er2(int alpha) {
    ExperimentConfig c;
    c.ensemble = "er";
    c.p = 2;
    c.alpha = alpha;
    c.seed = 1;
    c.seed_count = 10;
    c.grid_lo = alpha == 0 ? -5 : -13;
    c.grid_hi = alpha == 0 ? 5 : 1;
    c.grid_points = alpha == 0 ? 401 : 561;
    c.eta = 0.05;
    c.population_size = 50000;
    c.convergence_tol = 1e-4;
    c.sweeps = 500;
    return c;
}

Outcome kesten_mckay_esd(Cache& cache) {
    const auto c = regular3();
    const double edge = closed::kesten_mckay_edge(3);
    std::vector<double> xs;
    for (int i = 0; -edge + 0.01 * i <= edge; ++i) xs.push_back(-edge + 0.01 * i);
    const auto km = closed::measure_from_density(
        closed::tabulate(xs, [](double x) { return closed::kesten_mckay_density(3, x); }));
    const double d = spectral::levy_distance(cache.averaged_esd(c, 2000), km);
    return {d <= 0.05, within("levy", d, 0.05)};
}

Outcome rde_matches_kesten_mckay(Cache&) {
    rde::RdeParams p;
    p.population_size = 100000;
    p.seed = 2;
    p.sweeps = 2000;
    p.convergence_tol = 1e-6;
    const auto xs = linspace(-4, 4, 81);
    const auto curve = rde::stieltjes_curve(DegreeDistribution::delta(3), 0, xs, 0.05, p);
    double worst = 0;
    int failures = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx ref = closed::kesten_mckay_stieltjes(3, {xs[i], 0.05});
        const double tol = std::max(3 * curve.std_error[i], 5e-3);
        const cplx diff = curve.values[i] - ref;
        const double ratio = std::max(std::abs(diff.real()), std::abs(diff.imag())) / tol;
        worst = std::max(worst, ratio);
        if (ratio > 1) ++failures;
    }
    return {failures == 0, std::to_string(failures) + "/81 points outside tolerance, worst |diff|/tol=" + num(worst)};
}

Outcome semicircle_population(Cache&) {
    rde::RdeParams p;
    p.population_size = 100000;
    p.seed = 3;
    p.sweeps = 5000;
    p.convergence_tol = 1e-14;
    bool ok = true;
    std::string detail;
    for (const cplx z : {cplx(0, 2), cplx(1, 1), cplx(-1, 0.5)}) {
        const auto sol = rde::fixed_point(DegreeDistribution::delta(2), 0, z, p);
        const cplx ref = closed::semicircle_stieltjes(std::sqrt(2.0), z);
        const cplx mean = sol.population.mean();
        const double se = sol.population.mean_stderr();
        // The Dirac solution has zero spread up to roundoff, so both bounds
        // get a roundoff floor.
        const double floor = 1e-10;
        const double tol = 3 * se + floor;
        const double err = std::max(std::abs(mean.real() - ref.real()), std::abs(mean.imag() - ref.imag()));
        const double sd = sol.population.stddev();
        const bool here = err <= tol && sd <= 10 * se + floor && sol.herglotz_violations == 0;
        ok = ok && here;
        detail += (detail.empty() ? "" : "; ") + std::string("z=") + num(z.real()) + "+" + num(z.imag()) +
                  "i err=" + num(err) + " std=" + num(sd);
    }
    return {ok, detail};
}

Outcome erdos_renyi_limits(Cache& cache) {
    bool ok = true;
    std::string detail;
    for (const int alpha : {0, 1}) {
        const auto c = er2(alpha);
        const double d = spectral::levy_distance(cache.averaged_esd(c, 2000), cache.limit_of(c));
        ok = ok && d <= 0.06;
        detail += (alpha ? "; " : "") + within("alpha=" + std::to_string(alpha) + " levy", d, 0.06);
    }
    return {ok, detail};
}

Outcome bessel_identity(Cache&) {
    rde::RdeParams p;
    p.population_size = 100000;
    p.seed = 5;
    p.sweeps = 500;
    p.convergence_tol = 1e-8;
    const cplx z(0, 3);
    const auto sol = rde::fixed_point(DegreeDistribution::poisson(1), 0, z, p);
    bool ok = true;
    std::string detail;
    for (const double u : {0.5, 1.0, 2.0}) {
        const double r = rde::bessel_equation_residual(1.0, u, z, sol.population);
        ok = ok && r <= 0.02;
        detail += (detail.empty() ? "" : "; ") + within("u=" + num(u) + " residual", r, 0.02);
    }
    return {ok, detail};
}

Outcome weighted_rademacher(Cache&) {
    rde::RdeParams p;
    p.population_size = 100000;
    p.sweeps = 500;
    p.convergence_tol = 1e-4;
    const auto fstar = DegreeDistribution::poisson(2);
    const auto xs = linspace(-4, 4, 41);
    p.seed = 11;
    const auto plain = rde::stieltjes_curve(fstar, 0, xs, 0.1, p);
    p.seed = 12;
    const auto weighted = rde::weighted_stieltjes_curve(fstar, WeightSpec::parse("rademacher"), xs, 0.1, p);
    double worst = 0;
    int failures = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double sigma = std::hypot(plain.std_error[i], weighted.std_error[i]);
        const double tol = std::max(3 * sigma, 5e-3);
        const cplx diff = plain.values[i] - weighted.values[i];
        const double ratio = std::max(std::abs(diff.real()), std::abs(diff.imag())) / tol;
        worst = std::max(worst, ratio);
        if (ratio > 1) ++failures;
    }
    return {failures == 0, std::to_string(failures) + "/41 points outside tolerance, worst |diff|/tol=" + num(worst)};
}

Outcome bipartite_limit(Cache& cache) {
    ExperimentConfig c;
    c.ensemble = "bipartite";
    c.na = 800;
    c.nb = 1200;
    c.fstar = "delta:3";
    c.gstar = "delta:2";
    c.seed = 1;
    c.seed_count = 10;
    c.grid_lo = -4;
    c.grid_hi = 4;
    c.grid_points = 321;
    c.eta = 0.05;
    c.population_size = 50000;
    c.convergence_tol = 1e-4;
    c.sweeps = 500;
    std::vector<SpectralMeasure> parts;
    double asym = 0;
    for (const auto s : c.seeds()) {
        const auto ev = spectral::eigenvalues(make_delta(c, 0, s));
        for (std::size_t i = 0; i < ev.size(); ++i) asym = std::max(asym, std::abs(ev[i] + ev[ev.size() - 1 - i]));
        parts.push_back(SpectralMeasure::from_values(ev, spectral::kAtomMergeTolerance));
    }
    const double d = spectral::levy_distance(mixture(parts), cache.limit_of(c));
    return {d <= 0.06 && asym <= 1e-8, within("levy", d, 0.06) + "; " + within("asymmetry", asym, 1e-8)};
}

Outcome skeleton_tree(Cache& cache) {
    ExperimentConfig c;
    c.ensemble = "uniform_tree";
    c.seed = 1;
    c.seed_count = 10;
    c.grid_lo = -5;
    c.grid_hi = 5;
    c.grid_points = 401;
    c.eta = 0.05;
    c.population_size = 50000;
    c.convergence_tol = 1e-4;
    c.sweeps = 500;
    const double d = spectral::levy_distance(cache.averaged_esd(c, 2000), cache.limit_of(c));

    rde::RdeParams p;
    p.population_size = 100000;
    p.seed = 8;
    p.sweeps = 500;
    p.convergence_tol = 1e-8;
    bool consistent = true;
    double worst = 0;
    for (const cplx z : {cplx(0, 1), cplx(0.5, 0.2)}) {
        const auto sol = rde::skeleton_fixed_point(1.0, z, p);
        const auto alt = rde::skeleton_closed_form_mean(sol, 100000, 9);
        const double sigma = std::hypot(sol.x.mean_stderr(), alt.std_error);
        const cplx diff = sol.x.mean() - alt.mean;
        const double ratio = std::max(std::abs(diff.real()), std::abs(diff.imag())) / (3 * sigma);
        worst = std::max(worst, ratio);
        consistent = consistent && ratio <= 1;
    }
    return {d <= 0.06 && consistent, within("levy", d, 0.06) + "; forms agree, worst |diff|/3sigma=" + num(worst)};
}

Outcome convergence_trend(Cache& cache) {
    bool ok = true;
    std::string detail;
    const std::vector<int> sizes = {250, 500, 1000, 2000};
    for (auto [c, limit] : {std::pair{regular3(), 0.05}, std::pair{er2(0), 0.06}}) {
        std::vector<CompareRow> rows;
        for (const int n : sizes) rows.push_back({n, spectral::levy_distance(cache.averaged_esd(c, n), cache.limit_of(c))});
        const auto problem = check_trend(rows, 0.01, limit);
        ok = ok && !problem;
        detail += (detail.empty() ? "" : "; ") + c.ensemble + ":";
        for (const auto& r : rows) detail += " " + num(r.levy);
        if (problem) detail += " (" + *problem + ")";
    }
    return {ok, detail};
}

Outcome lemma_suites(Cache&) {
    Philox rng = make_stream(10, "acceptance.lemmas");
    int rank_fail = 0, schur_fail = 0, levy_fail = 0;
    double schur_worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<Vertex>(20 + rng.below(101));
        const double p = 0.5 + 3.5 * rng.uniform();
        const Graph g = gen::erdos_renyi(n, p, 1000 + i);
        const int ell = static_cast<int>(rng.below(6));
        const int alpha = static_cast<int>(rng.below(2));
        const auto rb = spectral::rank_bound_check(g, ell, alpha);
        if (rb.levy > rb.bound + 1e-9) ++rank_fail;
    }
    for (int i = 0; i < 50; ++i) {
        const auto n = static_cast<Vertex>(10 + rng.below(51));
        const Graph g = gen::erdos_renyi(n, 3.0, 2000 + i);
        const double r = spectral::schur_check(spectral::delta_matrix(g, static_cast<int>(rng.below(2))), {0, 1});
        schur_worst = std::max(schur_worst, r);
        if (r > 1e-9) ++schur_fail;
    }
    auto random_measure = [&] {
        const int k = 1 + static_cast<int>(rng.below(20));
        std::vector<SpectralMeasure::Atom> atoms;
        double total = 0;
        for (int j = 0; j < k; ++j) {
            atoms.push_back({rng.normal(), 0.05 + rng.uniform()});
            total += atoms.back().weight;
        }
        double acc = 0;
        for (auto& a : atoms) acc += a.weight /= total;
        atoms.back().weight += 1.0 - acc;
        return SpectralMeasure(std::move(atoms));
    };
    for (int i = 0; i < 100; ++i) {
        const auto a = random_measure(), b = random_measure(), c = random_measure();
        const double ab = spectral::levy_distance(a, b), ba = spectral::levy_distance(b, a);
        const double bc = spectral::levy_distance(b, c), ac = spectral::levy_distance(a, c);
        const bool ok = spectral::levy_distance(a, a) <= 1e-9 && std::abs(ab - ba) <= 1e-9 && ac <= ab + bc + 1e-9 &&
                        ab >= 0 && ab <= 1;
        if (!ok) ++levy_fail;
    }
    return {rank_fail == 0 && schur_fail == 0 && levy_fail == 0,
            "rank bound failures " + std::to_string(rank_fail) + "/100; schur failures " + std::to_string(schur_fail) +
                "/50 (worst " + num(schur_worst) + "); levy axiom failures " + std::to_string(levy_fail) + "/100"};
}

Outcome local_weak(Cache&) {
    ExperimentConfig reg;
    reg.ensemble = "regular";
    reg.k = 3;
    reg.n = {2000};
    reg.seed = 1;
    reg.radius = 2;
    reg.gwt_samples = 1000;
    reg.pair_samples = 10000;
    const auto r = localweak_report(reg);

    ExperimentConfig er = reg;
    er.ensemble = "er";
    er.p = 2;
    er.gwt_samples = 100000;
    const auto e = localweak_report(er);

    const bool ok = r.tv <= 0.05 && e.tv <= 0.08 && e.pair_stat <= 0.05;
    return {ok, within("regular tv", r.tv, 0.05) + "; " + within("er tv", e.tv, 0.08) + "; " +
                    within("er pair stat", e.pair_stat, 0.05)};
}

Outcome contraction(Cache&) {
    rde::RdeParams p;
    p.population_size = 100000;
    p.seed = 12;
    p.sweeps = 60;
    p.convergence_tol = 1e-300;
    const cplx z(0, std::sqrt(2.0) + 1.1);
    const auto sol = rde::fixed_point(DegreeDistribution::poisson(2), 0, z, p);
    const auto& d = sol.diagnostics;
    double worst = 0;
    int ratios = 0;
    // Ratios stop once the diagnostic reaches the roundoff floor.
    for (std::size_t t = 10; t < d.size() && d[t - 1] > 1e-12; ++t) {
        worst = std::max(worst, d[t] / d[t - 1]);
        ++ratios;
    }
    return {ratios > 0 && worst < 0.9, std::to_string(ratios) + " ratios after burn-in, " + within("max ratio", worst, 0.9)};
}

struct Entry {
    CriterionInfo info;
    std::function<Outcome(Cache&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{1, "kesten_mckay_esd"}, kesten_mckay_esd},
        {{2, "rde_vs_kesten_mckay_stieltjes"}, rde_matches_kesten_mckay},
        {{3, "semicircle_dirac_population"}, semicircle_population},
        {{4, "erdos_renyi_adjacency_laplacian"}, erdos_renyi_limits},
        {{5, "poisson_bessel_identity"}, bessel_identity},
        {{6, "rademacher_weights_invariance"}, weighted_rademacher},
        {{7, "bipartite_limit_and_symmetry"}, bipartite_limit},
        {{8, "uniform_tree_skeleton"}, skeleton_tree},
        {{9, "esd_convergence_trend"}, convergence_trend},
        {{10, "rank_schur_levy_lemmas"}, lemma_suites},
        {{11, "local_weak_ball_statistics"}, local_weak},
        {{12, "contraction_diagnostic"}, contraction},
    };
    return list;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> infos = [] {
        std::vector<CriterionInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only) {
    Cache cache;
    std::vector<CriterionResult> results;
    for (const auto& e : entries()) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.info.id) == only.end()) continue;
        CriterionResult r;
        r.id = e.info.id;
        r.name = e.info.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto o = e.run(cache);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.passed = false;
            r.detail = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char time[32];
        std::snprintf(time, sizeof time, "%.1f s", r.seconds);
        out << (r.passed ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": " << r.detail
            << " [" << time << "]" << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace sgspec::cli
