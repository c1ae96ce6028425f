#include "sgspec/rde.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "sgspec/errors.hpp"
#include "sgspec/parallel.hpp"

namespace sgspec::rde {

namespace {

constexpr std::size_t kSumBlock = 4096;

/// -1/d, with |d| >= Im d > 0 guaranteed by the callers.
inline cplx neg_inv(cplx d) noexcept {
    const double s = d.real() * d.real() + d.imag() * d.imag();
    return {-d.real() / s, d.imag() / s};
}

/// Sum in fixed-size blocks so the result does not depend on the thread count.
template <class Fn>
cplx block_sum(std::size_t n, Fn&& term) {
    const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<cplx> partial(blocks);
    parallel_for(blocks, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            cplx acc = 0;
            const std::size_t end = std::min(n, (b + 1) * kSumBlock);
            for (std::size_t i = b * kSumBlock; i < end; ++i) acc += term(i);
            partial[b] = acc;
        }
    });
    cplx total = 0;
    for (const auto& p : partial) total += p;
    return total;
}

void check_upper(cplx z) {
    if (!(z.imag() > 0)) throw InvalidArgument("population dynamics needs Im z > 0");
}

void check_alpha(int alpha) {
    if (alpha != 0 && alpha != 1) throw InvalidArgument("alpha must be 0 or 1");
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) { return mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)); }

/// Frozen per-slot draws: slot j reads source slots target[offset[j] .. offset[j+1])
/// scaled by gain (|w|^2, empty when unweighted) and adds shift[j] to z.
struct Wiring {
    std::vector<std::uint32_t> offset;
    std::vector<std::uint32_t> target;
    std::vector<double> gain;
    std::vector<double> shift;

    std::size_t slots() const noexcept { return shift.size(); }
};

/// Slot j draws N_j ~ f and then N_j uniform source slots (and weights) from
/// its own stream, so the wiring does not depend on the thread count.
Wiring make_wiring(const DegreeDistribution& f, std::size_t slots, std::size_t source, std::uint64_t seed,
                   std::string_view tag, double alpha, const WeightSpec* weights) {
    Wiring w;
    w.offset.assign(slots + 1, 0);
    w.shift.assign(slots, 0.0);
    std::vector<int> count(slots);
    parallel_for(slots, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            auto rng = make_stream(seed, tag, j);
            count[j] = f.sample(rng);
        }
    });
    for (std::size_t j = 0; j < slots; ++j) {
        w.offset[j + 1] = w.offset[j] + static_cast<std::uint32_t>(count[j]);
        w.shift[j] = alpha * (count[j] + 1);
    }
    w.target.resize(w.offset.back());
    if (weights) w.gain.resize(w.offset.back());
    parallel_for(slots, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            auto rng = make_stream(seed, tag, j);
            (void)f.sample(rng);
            for (auto t = w.offset[j]; t < w.offset[j + 1]; ++t) {
                w.target[t] = static_cast<std::uint32_t>(rng.below(source));
                if (weights) {
                    const double x = weights->sample(rng);
                    w.gain[t] = x * x;
                }
            }
        }
    });
    return w;
}

/// dst[j] = -(z + shift_j + sum gain_t src[target_t])^{-1}, then damped toward prev[j].
void sweep(const Wiring& w, cplx z, std::span<const cplx> src, std::span<const cplx> prev, std::span<cplx> dst,
           double damping) {
    parallel_for(w.slots(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            cplx acc = z + w.shift[j];
            if (w.gain.empty()) {
                for (auto t = w.offset[j]; t < w.offset[j + 1]; ++t) acc += src[w.target[t]];
            } else {
                for (auto t = w.offset[j]; t < w.offset[j + 1]; ++t) acc += w.gain[t] * src[w.target[t]];
            }
            const cplx v = neg_inv(acc);
            dst[j] = damping > 0 ? (1 - damping) * v + damping * prev[j] : v;
        }
    });
}

/// Sorted real and imaginary parts, the only statistic the diagnostic needs.
struct Marginals {
    std::vector<double> re;
    std::vector<double> im;

    explicit Marginals(std::span<const cplx> v) : re(v.size()), im(v.size()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            re[i] = v[i].real();
            im[i] = v[i].imag();
        }
        std::sort(re.begin(), re.end());
        std::sort(im.begin(), im.end());
    }
};

double marginal_distance(const Marginals& a, const Marginals& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.re.size(); ++i) d += std::abs(a.re[i] - b.re[i]) + std::abs(a.im[i] - b.im[i]);
    return d / static_cast<double>(a.re.size());
}

std::size_t count_violations(std::span<const cplx> v, cplx z) {
    const double bound = (1.0 / z.imag()) * (1 + 1e-12);
    return static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [bound](cplx x) { return !(x.imag() > 0) || std::abs(x) > bound; }));
}

std::vector<cplx> initial_values(std::size_t m, cplx z) { return std::vector<cplx>(m, neg_inv(z)); }

/// Iterates `step` (which advances the state and returns its new marginals)
/// until the diagnostic drops below tol or the sweep budget runs out.
template <class Step>
void iterate(const RdeParams& params, Marginals current, Step&& step, bool& converged, int& sweeps_run,
             std::vector<double>& trace) {
    converged = false;
    for (int t = 0; t < params.sweeps; ++t) {
        Marginals next = step();
        const double d = marginal_distance(current, next);
        trace.push_back(d);
        sweeps_run = t + 1;
        current = std::move(next);
        if (d < params.convergence_tol) {
            converged = true;
            return;
        }
    }
}

Estimate estimate_from(std::span<const cplx> draws) {
    const auto n = draws.size();
    const cplx mean = block_sum(n, [&](std::size_t i) { return draws[i]; }) / static_cast<double>(n);
    const cplx var = block_sum(n, [&](std::size_t i) { return cplx(std::norm(draws[i] - mean), 0.0); });
    const double sd = n > 1 ? std::sqrt(var.real() / static_cast<double>(n - 1)) : 0.0;
    return {mean, sd / std::sqrt(static_cast<double>(n))};
}

void check_warm(const Population* warm, std::size_t m) {
    if (warm && warm->size() != m) throw InvalidArgument("warm start population has the wrong size");
}

}  // namespace

cplx Population::mean() const {
    if (values_.empty()) return 0;
    return block_sum(values_.size(), [&](std::size_t i) { return values_[i]; }) / static_cast<double>(values_.size());
}

double Population::stddev() const {
    if (values_.empty()) return 0;
    const cplx m = mean();
    const cplx var = block_sum(values_.size(), [&](std::size_t i) { return cplx(std::norm(values_[i] - m), 0.0); });
    return std::sqrt(var.real() / static_cast<double>(values_.size()));
}

double Population::mean_stderr() const {
    return values_.empty() ? 0.0 : stddev() / std::sqrt(static_cast<double>(values_.size()));
}

std::size_t Population::herglotz_violations() const { return count_violations(values_, z_); }

void RdeParams::validate() const {
    if (population_size < 1000) throw InvalidArgument("population size must be >= 1000");
    if (sweeps < 1) throw InvalidArgument("sweeps must be >= 1");
    if (!(damping >= 0 && damping < 1)) throw InvalidArgument("damping must lie in [0, 1)");
    if (!(convergence_tol > 0)) throw InvalidArgument("convergence tolerance must be > 0");
}

double convergence_diagnostic(const Population& prev, const Population& curr) {
    if (prev.z() != curr.z()) throw InvalidArgument("diagnostic between populations at different z");
    if (prev.size() != curr.size()) throw InvalidArgument("diagnostic between populations of different size");
    if (prev.size() == 0) return 0;
    return marginal_distance(Marginals(prev.values()), Marginals(curr.values()));
}

Solution fixed_point(const DegreeDistribution& f, int alpha, cplx z, const RdeParams& params,
                     const Population* warm_start) {
    check_upper(z);
    check_alpha(alpha);
    params.validate();
    const auto m = params.population_size;
    check_warm(warm_start, m);
    const auto wiring = make_wiring(f, m, m, params.seed, "rde.wiring", alpha, nullptr);

    Solution s;
    std::vector<cplx> cur = warm_start ? warm_start->values() : initial_values(m, z);
    std::vector<cplx> nxt(m);
    iterate(
        params, Marginals(cur),
        [&] {
            sweep(wiring, z, cur, cur, nxt, params.damping);
            std::swap(cur, nxt);
            s.herglotz_violations += count_violations(cur, z);
            return Marginals(cur);
        },
        s.converged, s.sweeps_run, s.diagnostics);
    s.population = Population(z, std::move(cur));
    return s;
}

Estimate root_expectation(const DegreeDistribution& fstar, const Population& pop, int alpha, std::size_t samples,
                          std::uint64_t seed) {
    check_alpha(alpha);
    const cplx z = pop.z();
    check_upper(z);
    if (samples == 0) throw InvalidArgument("root expectation needs at least one sample");
    if (fstar.mean() == 0.0) return {neg_inv(z), 0.0};
    if (pop.size() == 0) throw InvalidArgument("root expectation from an empty population");
    std::vector<cplx> draws(samples);
    const auto& y = pop.values();
    parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            auto rng = make_stream(seed, "rde.root", s);
            const int n = fstar.sample(rng);
            cplx acc = z + static_cast<double>(alpha * n);
            for (int i = 0; i < n; ++i) acc += y[rng.below(y.size())];
            draws[s] = neg_inv(acc);
        }
    });
    return estimate_from(draws);
}

StieltjesCurve stieltjes_curve(const DegreeDistribution& fstar, int alpha, const std::vector<double>& xs, double eta,
                               const RdeParams& params, Traces* traces) {
    if (!(eta > 0)) throw InvalidArgument("eta must be > 0");
    check_alpha(alpha);
    params.validate();
    StieltjesCurve c;
    c.eta = eta;
    c.xs = xs;
    if (traces) traces->clear();
    if (fstar.mean() == 0.0) {
        for (const double x : xs) {
            c.values.push_back(neg_inv({x, eta}));
            c.std_error.push_back(0.0);
            c.converged.push_back(true);
            if (traces) traces->emplace_back();
        }
        return c;
    }
    const auto offspring = size_biased_offspring(fstar);
    Population warm;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx z(xs[i], eta);
        auto sol = fixed_point(offspring, alpha, z, params, i > 0 ? &warm : nullptr);
        const auto est = root_expectation(fstar, sol.population, alpha, params.population_size, point_seed(params.seed, i));
        c.values.push_back(est.mean);
        c.std_error.push_back(est.std_error);
        c.converged.push_back(sol.converged);
        if (traces) traces->push_back(std::move(sol.diagnostics));
        warm = std::move(sol.population);
    }
    return c;
}

Solution weighted_fixed_point(const DegreeDistribution& f, const WeightSpec& wdist, int alpha, cplx z,
                              const RdeParams& params, const Population* warm_start) {
    if (alpha != 0) {
        throw InvalidArgument("weighted recursion is only defined for alpha = 0: the diagonal weight term breaks the tree recursion");
    }
    check_upper(z);
    params.validate();
    const auto m = params.population_size;
    check_warm(warm_start, m);
    const auto wiring = make_wiring(f, m, m, params.seed, "rde.wiring.weighted", 0.0, &wdist);

    Solution s;
    std::vector<cplx> cur = warm_start ? warm_start->values() : initial_values(m, z);
    std::vector<cplx> nxt(m);
    iterate(
        params, Marginals(cur),
        [&] {
            sweep(wiring, z, cur, cur, nxt, params.damping);
            std::swap(cur, nxt);
            s.herglotz_violations += count_violations(cur, z);
            return Marginals(cur);
        },
        s.converged, s.sweeps_run, s.diagnostics);
    s.population = Population(z, std::move(cur));
    return s;
}

Estimate root_expectation_weighted(const DegreeDistribution& fstar, const WeightSpec& wdist, const Population& pop,
                                   std::size_t samples, std::uint64_t seed) {
    const cplx z = pop.z();
    check_upper(z);
    if (samples == 0) throw InvalidArgument("root expectation needs at least one sample");
    if (fstar.mean() == 0.0) return {neg_inv(z), 0.0};
    std::vector<cplx> draws(samples);
    const auto& y = pop.values();
    parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            auto rng = make_stream(seed, "rde.root.weighted", s);
            const int n = fstar.sample(rng);
            cplx acc = z;
            for (int i = 0; i < n; ++i) {
                const auto idx = rng.below(y.size());
                const double w = wdist.sample(rng);
                acc += w * w * y[idx];
            }
            draws[s] = neg_inv(acc);
        }
    });
    return estimate_from(draws);
}

StieltjesCurve weighted_stieltjes_curve(const DegreeDistribution& fstar, const WeightSpec& wdist,
                                        const std::vector<double>& xs, double eta, const RdeParams& params,
                                        Traces* traces) {
    if (!(eta > 0)) throw InvalidArgument("eta must be > 0");
    params.validate();
    StieltjesCurve c;
    c.eta = eta;
    c.xs = xs;
    if (traces) traces->clear();
    const bool leaf = fstar.mean() == 0.0;
    const auto offspring = leaf ? fstar : size_biased_offspring(fstar);
    Population warm;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx z(xs[i], eta);
        if (leaf) {
            c.values.push_back(neg_inv(z));
            c.std_error.push_back(0.0);
            c.converged.push_back(true);
            if (traces) traces->emplace_back();
            continue;
        }
        auto sol = weighted_fixed_point(offspring, wdist, 0, z, params, i > 0 ? &warm : nullptr);
        const auto est = root_expectation_weighted(fstar, wdist, sol.population, params.population_size, point_seed(params.seed, i));
        c.values.push_back(est.mean);
        c.std_error.push_back(est.std_error);
        c.converged.push_back(sol.converged);
        if (traces) traces->push_back(std::move(sol.diagnostics));
        warm = std::move(sol.population);
    }
    return c;
}

BipartiteSolution bipartite_fixed_point(const DegreeDistribution& f, const DegreeDistribution& g, int alpha, cplx z,
                                        const RdeParams& params, const BipartiteSolution* warm_start) {
    check_upper(z);
    check_alpha(alpha);
    params.validate();
    const auto m = params.population_size;
    if (warm_start) {
        check_warm(&warm_start->a, m);
        check_warm(&warm_start->b, m);
    }
    const auto wa = make_wiring(f, m, m, params.seed, "rde.wiring.a", alpha, nullptr);
    const auto wb = make_wiring(g, m, m, params.seed, "rde.wiring.b", alpha, nullptr);

    BipartiteSolution s;
    std::vector<cplx> a = warm_start ? warm_start->a.values() : initial_values(m, z);
    std::vector<cplx> b = warm_start ? warm_start->b.values() : initial_values(m, z);
    std::vector<cplx> na(m), nb(m);
    // Both sides share one trace: the diagnostic is the sum over the two laws.
    Marginals ma(a), mb(b);
    s.converged = false;
    for (int t = 0; t < params.sweeps; ++t) {
        sweep(wa, z, b, a, na, params.damping);
        sweep(wb, z, a, b, nb, params.damping);
        std::swap(a, na);
        std::swap(b, nb);
        s.herglotz_violations += count_violations(a, z) + count_violations(b, z);
        Marginals ma2(a), mb2(b);
        const double d = marginal_distance(ma, ma2) + marginal_distance(mb, mb2);
        ma = std::move(ma2);
        mb = std::move(mb2);
        s.diagnostics.push_back(d);
        s.sweeps_run = t + 1;
        if (d < params.convergence_tol) {
            s.converged = true;
            break;
        }
    }
    s.a = Population(z, std::move(a));
    s.b = Population(z, std::move(b));
    return s;
}

Estimate root_expectation_bipartite(const DegreeDistribution& fstar, const DegreeDistribution& gstar, double p,
                                    const BipartiteSolution& pops, int alpha, std::size_t samples, std::uint64_t seed) {
    if (!(p > 0 && p < 1)) throw InvalidArgument("bipartite scale p must lie in (0, 1)");
    // Side-a roots see side-b children and vice versa.
    const auto xa = root_expectation(fstar, pops.b, alpha, samples, mix64(seed ^ 0xA));
    const auto xb = root_expectation(gstar, pops.a, alpha, samples, mix64(seed ^ 0xB));
    return {p * xa.mean + (1 - p) * xb.mean,
            std::sqrt(p * p * xa.std_error * xa.std_error + (1 - p) * (1 - p) * xb.std_error * xb.std_error)};
}

StieltjesCurve bipartite_stieltjes_curve(const DegreeDistribution& fstar, const DegreeDistribution& gstar, double p,
                                         int alpha, const std::vector<double>& xs, double eta, const RdeParams& params,
                                         Traces* traces) {
    if (!(eta > 0)) throw InvalidArgument("eta must be > 0");
    if (!(p > 0 && p < 1)) throw InvalidArgument("bipartite scale p must lie in (0, 1)");
    params.validate();
    // A side whose root law has mean 0 never has children; any offspring law works there.
    const auto f = fstar.mean() > 0 ? size_biased_offspring(fstar) : DegreeDistribution::delta(0);
    const auto g = gstar.mean() > 0 ? size_biased_offspring(gstar) : DegreeDistribution::delta(0);
    StieltjesCurve c;
    c.eta = eta;
    c.xs = xs;
    if (traces) traces->clear();
    BipartiteSolution warm;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx z(xs[i], eta);
        auto sol = bipartite_fixed_point(f, g, alpha, z, params, i > 0 ? &warm : nullptr);
        const auto est = root_expectation_bipartite(fstar, gstar, p, sol, alpha, params.population_size, point_seed(params.seed, i));
        c.values.push_back(est.mean);
        c.std_error.push_back(est.std_error);
        c.converged.push_back(sol.converged);
        if (traces) traces->push_back(sol.diagnostics);
        warm = std::move(sol);
    }
    return c;
}

SkeletonSolution skeleton_fixed_point(double intensity, cplx z, const RdeParams& params,
                                      const SkeletonSolution* warm_start) {
    if (intensity != 1.0) throw InvalidArgument("skeleton tree is defined for Poisson intensity 1 only");
    check_upper(z);
    params.validate();
    const auto m = params.population_size;
    const auto poi = DegreeDistribution::poisson(1.0);

    SkeletonSolution s;
    auto w = fixed_point(poi, 0, z, params, warm_start ? &warm_start->w : nullptr);
    s.w = std::move(w.population);
    s.herglotz_violations = w.herglotz_violations;

    // Spine wiring: one X parent per slot plus N_j ~ Poi(1) hanging W roots.
    std::vector<std::uint32_t> spine(m);
    const auto hang = make_wiring(poi, m, m, params.seed, "rde.wiring.skeleton", 0.0, nullptr);
    parallel_for(m, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) spine[j] = static_cast<std::uint32_t>(make_stream(params.seed, "rde.spine", j).below(m));
    });
    std::vector<cplx> hanging(m);
    // The W part of each slot is fixed once W is solved.
    {
        const std::vector<cplx>& wv = s.w.values();
        parallel_for(m, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t j = lo; j < hi; ++j) {
                cplx acc = z;
                for (auto t = hang.offset[j]; t < hang.offset[j + 1]; ++t) acc += wv[hang.target[t]];
                hanging[j] = acc;
            }
        });
    }

    std::vector<cplx> cur = warm_start && warm_start->x.size() == m ? warm_start->x.values() : initial_values(m, z);
    std::vector<cplx> nxt(m);
    iterate(
        params, Marginals(cur),
        [&] {
            parallel_for(m, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t j = lo; j < hi; ++j) {
                    const cplx v = neg_inv(hanging[j] + cur[spine[j]]);
                    nxt[j] = params.damping > 0 ? (1 - params.damping) * v + params.damping * cur[j] : v;
                }
            });
            std::swap(cur, nxt);
            s.herglotz_violations += count_violations(cur, z);
            return Marginals(cur);
        },
        s.converged, s.sweeps_run, s.diagnostics);
    s.converged = s.converged && w.converged;
    s.sweeps_run += w.sweeps_run;
    s.x = Population(z, std::move(cur));
    return s;
}

Estimate skeleton_closed_form_mean(const SkeletonSolution& s, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidArgument("need at least one sample");
    const auto& w = s.w.values();
    const auto& x = s.x.values();
    std::vector<cplx> draws(samples);
    parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto rng = make_stream(seed, "rde.skeleton.check", i);
            const cplx wi = w[rng.below(w.size())];
            const cplx x1 = x[rng.below(x.size())];
            draws[i] = 1.0 / (1.0 / wi - x1);
        }
    });
    return estimate_from(draws);
}

StieltjesCurve skeleton_stieltjes_curve(double intensity, const std::vector<double>& xs, double eta,
                                        const RdeParams& params, Traces* traces) {
    if (!(eta > 0)) throw InvalidArgument("eta must be > 0");
    StieltjesCurve c;
    c.eta = eta;
    c.xs = xs;
    if (traces) traces->clear();
    SkeletonSolution warm;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto sol = skeleton_fixed_point(intensity, {xs[i], eta}, params, i > 0 ? &warm : nullptr);
        // X is the law at a spine vertex, which is where a uniform root sits.
        c.values.push_back(sol.x.mean());
        c.std_error.push_back(sol.x.mean_stderr());
        c.converged.push_back(sol.converged);
        if (traces) traces->push_back(sol.diagnostics);
        warm = std::move(sol);
    }
    return c;
}

}  // namespace sgspec::rde
