#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgspec/curves.hpp"
#include "sgspec/distributions.hpp"

namespace sgspec::rde {

using cplx = std::complex<double>;

/// Empirical representation of the law of Y(z): M samples in the upper half
/// plane, each with |v| <= 1 / Im z.
class Population {
public:
    Population() = default;
    Population(cplx z, std::vector<cplx> values) : z_(z), values_(std::move(values)) {}

    cplx z() const noexcept { return z_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    std::vector<cplx>& values() noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    cplx mean() const;
    /// sqrt(E|v - mean|^2), the complex standard deviation.
    double stddev() const;
    /// stddev / sqrt(M).
    double mean_stderr() const;
    /// Number of values outside {Im v > 0, |v| <= 1/Im z} (relative slack 1e-12).
    std::size_t herglotz_violations() const;

private:
    cplx z_{0, 1};
    std::vector<cplx> values_;
};

struct RdeParams {
    std::size_t population_size = 100000;
    int sweeps = 200;
    std::uint64_t seed = 0;
    double damping = 0.0;
    double convergence_tol = 1e-3;

    /// Throws InvalidArgument unless M >= 1000, sweeps >= 1, damping in [0, 1), tol > 0.
    void validate() const;
};

/// Outcome of a population-dynamics solve.
struct Solution {
    Population population;
    bool converged = false;
    int sweeps_run = 0;
    std::vector<double> diagnostics;  ///< convergence_diagnostic after each sweep
    std::size_t herglotz_violations = 0;
};

struct Estimate {
    cplx mean;
    double std_error;
};

/// Sorted-marginal 1-Wasserstein distance: W1 of the real parts plus W1 of the
/// imaginary parts. Zero iff both marginals coincide. Throws InvalidArgument on
/// differing z or size.
double convergence_diagnostic(const Population& prev, const Population& curr);

/// Population dynamics for Y = -(z + alpha (N + 1) + sum_{i<=N} Y_i)^{-1}, N ~ f.
///
/// Starts from -1/z (or from `warm_start`, which must have size M) and applies
/// synchronous sweeps. Slot j keeps its draw of N_j and of the N_j parent slots
/// for the whole run, so each sweep is the same deterministic map and the
/// sweep-to-sweep diagnostic contracts to zero at a fixed point instead of
/// stalling on resampling noise. Stops after params.sweeps sweeps or once the
/// diagnostic drops below params.convergence_tol.
Solution fixed_point(const DegreeDistribution& f, int alpha, cplx z, const RdeParams& params,
                     const Population* warm_start = nullptr);

/// Monte Carlo mean of -(z + alpha N* + sum_{i<=N*} Y_i)^{-1}, N* ~ fstar,
/// with Y_i drawn from pop.
Estimate root_expectation(const DegreeDistribution& fstar, const Population& pop, int alpha, std::size_t samples,
                          std::uint64_t seed);

using Traces = std::vector<std::vector<double>>;

/// E X(x + i eta) over xs. Each point warm-starts from its left neighbour.
/// `traces`, when given, receives the per-point diagnostic trace.
StieltjesCurve stieltjes_curve(const DegreeDistribution& fstar, int alpha, const std::vector<double>& xs, double eta,
                               const RdeParams& params, Traces* traces = nullptr);

/// Weighted recursion Y = -(z + sum |w_i|^2 Y_i)^{-1} (alpha = 0 only). The
/// per-edge weights are drawn once per slot, like the parent indices.
Solution weighted_fixed_point(const DegreeDistribution& f, const WeightSpec& wdist, int alpha, cplx z,
                              const RdeParams& params, const Population* warm_start = nullptr);
Estimate root_expectation_weighted(const DegreeDistribution& fstar, const WeightSpec& wdist, const Population& pop,
                                   std::size_t samples, std::uint64_t seed);
StieltjesCurve weighted_stieltjes_curve(const DegreeDistribution& fstar, const WeightSpec& wdist,
                                        const std::vector<double>& xs, double eta, const RdeParams& params,
                                        Traces* traces = nullptr);

/// Coupled bipartite recursion: side a (N ~ f) reads side b, side b (N ~ g)
/// reads side a; both updated from the previous sweep.
struct BipartiteSolution {
    Population a;
    Population b;
    bool converged = false;
    int sweeps_run = 0;
    std::vector<double> diagnostics;
    std::size_t herglotz_violations = 0;
};
BipartiteSolution bipartite_fixed_point(const DegreeDistribution& f, const DegreeDistribution& g, int alpha, cplx z,
                                        const RdeParams& params, const BipartiteSolution* warm_start = nullptr);
/// p E X^a + (1 - p) E X^b, p in (0, 1).
Estimate root_expectation_bipartite(const DegreeDistribution& fstar, const DegreeDistribution& gstar, double p,
                                    const BipartiteSolution& pops, int alpha, std::size_t samples, std::uint64_t seed);
StieltjesCurve bipartite_stieltjes_curve(const DegreeDistribution& fstar, const DegreeDistribution& gstar, double p,
                                         int alpha, const std::vector<double>& xs, double eta, const RdeParams& params,
                                         Traces* traces = nullptr);

/// Skeleton-tree recursion X = -(z + X_1 + sum_{i<=N} W_i)^{-1}, N ~ Poi(1),
/// where W is the Poisson(1) Galton-Watson root resolvent (solved first).
struct SkeletonSolution {
    Population w;
    Population x;
    bool converged = false;
    int sweeps_run = 0;
    std::vector<double> diagnostics;
    std::size_t herglotz_violations = 0;
};
/// Only intensity 1 is defined; any other value throws InvalidArgument.
SkeletonSolution skeleton_fixed_point(double intensity, cplx z, const RdeParams& params,
                                      const SkeletonSolution* warm_start = nullptr);
/// Mean of (W^{-1} - X_1)^{-1} with W and X_1 drawn independently from the pools.
Estimate skeleton_closed_form_mean(const SkeletonSolution& s, std::size_t samples, std::uint64_t seed);
StieltjesCurve skeleton_stieltjes_curve(double intensity, const std::vector<double>& xs, double eta,
                                        const RdeParams& params, Traces* traces = nullptr);

/// Bessel function of the first kind of order one: power series for |x| <= 12,
/// Hankel asymptotic expansion beyond.
double bessel_j1(double x);

/// |f(u,z) - RHS| for the Poisson(p) characteristic-function identity
///   f(u,z) = 1 - sqrt(u) int_0^inf J1(2 sqrt(ut)) / sqrt(t) e^{itz} phi(f(t,z)) dt,
/// phi(s) = exp(p (s - 1)), f(t,z) = mean of exp(i t Y) over pop. Throws on u < 0.
double bessel_equation_residual(double p, double u, cplx z, const Population& pop);

}  // namespace sgspec::rde
