#include "doctest.h"

#include <cmath>

#include "sgspec/closed_form.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/rde.hpp"
#include "sgspec/spectral.hpp"

using namespace sgspec;
using cplx = std::complex<double>;

namespace {

rde::RdeParams params(std::size_t m = 20000, double tol = 1e-6, int sweeps = 500, std::uint64_t seed = 1) {
    rde::RdeParams p;
    p.population_size = m;
    p.convergence_tol = tol;
    p.sweeps = sweeps;
    p.seed = seed;
    return p;
}

// |a - b| in both coordinates within k standard errors plus a roundoff floor.
bool close(cplx a, cplx b, double se, double k = 3) {
    const double tol = k * se + 1e-10;
    return std::abs(a.real() - b.real()) <= tol && std::abs(a.imag() - b.imag()) <= tol;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params(999).validate(), InvalidArgument);
    CHECK_THROWS_AS(params(1000, 1e-3, 0).validate(), InvalidArgument);
    auto p = params();
    p.damping = 1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    CHECK_THROWS_AS(rde::fixed_point(DegreeDistribution::delta(2), 0, {0, 0}, params()), InvalidArgument);
    CHECK_THROWS_AS(rde::fixed_point(DegreeDistribution::delta(2), 2, {0, 1}, params()), InvalidArgument);
}

TEST_CASE("leaf recursion gives -1/z after one sweep") {
    const auto s = rde::fixed_point(DegreeDistribution::delta(0), 0, {0, 1}, params(1000, 1e-3, 1));
    for (auto v : s.population.values()) CHECK(v == cplx(0, 1));
}

TEST_CASE("delta 2 population collapses onto the semicircle root") {
    const cplx z(0, 2);
    const auto s = rde::fixed_point(DegreeDistribution::delta(2), 0, z, params(10000, 1e-14, 2000));
    CHECK(s.converged);
    CHECK(close(s.population.mean(), cplx(0, (std::sqrt(3.0) - 1) / 2), s.population.mean_stderr()));
    CHECK(s.population.stddev() <= 1e-12);
    CHECK(s.herglotz_violations == 0);
    for (int k : {2, 3, 5}) {
        const auto y = rde::fixed_point(DegreeDistribution::delta(k - 1), 0, {0.7, 0.4}, params(2000, 1e-14, 5000));
        CHECK(close(y.population.mean(), closed::semicircle_stieltjes(std::sqrt(k - 1.0), {0.7, 0.4}), 0));
    }
}

TEST_CASE("root expectation examples") {
    const cplx z(0, 2);
    const auto leaf = rde::Population(z, std::vector<cplx>(1000, cplx(0, 1)));
    const auto e0 = rde::root_expectation(DegreeDistribution::delta(0), leaf, 0, 100, 1);
    CHECK(e0.mean == -1.0 / z);
    CHECK(e0.std_error == 0.0);

    const auto y2 = rde::fixed_point(DegreeDistribution::delta(2), 0, z, params(5000, 1e-14, 2000));
    const auto e3 = rde::root_expectation(DegreeDistribution::delta(3), y2.population, 0, 5000, 2);
    CHECK(close(e3.mean, cplx(0, 2 / (1 + 3 * std::sqrt(3.0))), e3.std_error));

    const auto y1 = rde::fixed_point(DegreeDistribution::delta(1), 0, z, params(5000, 1e-14, 2000));
    const auto e2 = rde::root_expectation(DegreeDistribution::delta(2), y1.population, 0, 5000, 3);
    CHECK(close(e2.mean, cplx(0, 1 / (2 * std::sqrt(2.0))), e2.std_error));
}

TEST_CASE("stieltjes curve examples") {
    const auto xs = linspace(-2, 2, 9);
    const auto leaf = rde::stieltjes_curve(DegreeDistribution::delta(0), 0, xs, 0.1, params());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(leaf.values[i] + 1.0 / cplx(xs[i], 0.1)) <= 1e-12);

    rde::Traces traces;
    const auto c = rde::stieltjes_curve(DegreeDistribution::poisson(2), 1, xs, 0.1, params(5000, 1e-4), &traces);
    CHECK(traces.size() == xs.size());
    for (const auto& v : c.values) {
        CHECK(v.imag() > 0);
        CHECK(std::abs(v) <= 10.0 * (1 + 1e-12));
    }
    CHECK_THROWS_AS(rde::stieltjes_curve(DegreeDistribution::delta(3), 0, xs, 0, params()), InvalidArgument);
}

TEST_CASE("adjacency curves are symmetric about zero") {
    const auto xs = linspace(-2, 2, 9);
    const auto c = rde::stieltjes_curve(DegreeDistribution::parse("1:0.5,3:0.5"), 0, xs, 0.2, params(20000, 1e-5));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto mirror = -std::conj(c.values[xs.size() - 1 - i]);
        CHECK(close(c.values[i], mirror, std::hypot(c.std_error[i], c.std_error[xs.size() - 1 - i]), 4));
    }
}

TEST_CASE("convergence diagnostic examples") {
    const rde::Population a({0, 1}, {cplx(0, 1)});
    const rde::Population b({0, 1}, {cplx(0, 2)});
    CHECK(rde::convergence_diagnostic(a, a) == 0.0);
    CHECK(rde::convergence_diagnostic(a, b) == 1.0);
    CHECK_THROWS_AS(rde::convergence_diagnostic(a, rde::Population({0, 2}, {cplx(0, 1)})), InvalidArgument);
}

TEST_CASE("contraction region: geometric decay and a stable fixed point") {
    const auto f = DegreeDistribution::poisson(3);
    const cplx z(0.5, std::sqrt(3.0) + 1);
    const auto s = rde::fixed_point(f, 0, z, params(20000, 1e-10, 200));
    CHECK(s.converged);
    for (std::size_t t = 5; t < s.diagnostics.size() && s.diagnostics[t - 1] > 1e-12; ++t)
        CHECK(s.diagnostics[t] < s.diagnostics[t - 1]);

    const double tol = 1e-4;
    const auto first = rde::fixed_point(f, 0, z, params(20000, tol, 200));
    const auto extra = rde::fixed_point(f, 0, z, params(20000, tol, 1), &first.population);
    CHECK(extra.diagnostics.front() < 2 * tol);
}

TEST_CASE("results do not depend on the thread count") {
    const auto f = DegreeDistribution::poisson(2);
    set_thread_count(1);
    const auto one = rde::fixed_point(f, 1, {0.3, 0.5}, params(30000, 1e-6, 50));
    set_thread_count(4);
    const auto four = rde::fixed_point(f, 1, {0.3, 0.5}, params(30000, 1e-6, 50));
    set_thread_count(1);
    CHECK(one.population.values() == four.population.values());
    CHECK(one.diagnostics == four.diagnostics);
}

TEST_CASE("weighted recursion") {
    const cplx z(0.4, 0.5);
    const auto f = DegreeDistribution::poisson(2);
    const auto plain = rde::fixed_point(f, 0, z, params(20000, 1e-6, 500, 4));
    for (const char* w : {"constant:1", "rademacher"}) {
        const auto weighted = rde::weighted_fixed_point(f, WeightSpec::parse(w), 0, z, params(20000, 1e-6, 500, 5));
        CHECK(close(weighted.population.mean(), plain.population.mean(),
                    std::hypot(weighted.population.mean_stderr(), plain.population.mean_stderr())));
        const auto ew = rde::root_expectation_weighted(f, WeightSpec::parse(w), weighted.population, 20000, 6);
        const auto ep = rde::root_expectation(f, plain.population, 0, 20000, 7);
        CHECK(close(ew.mean, ep.mean, std::hypot(ew.std_error, ep.std_error)));
    }
    const auto leaf = rde::weighted_fixed_point(DegreeDistribution::delta(0), WeightSpec::parse("gaussian:0,1"), 0, z,
                                                params(1000, 1e-3, 3));
    for (auto v : leaf.population.values()) CHECK(v == -1.0 / z);
    CHECK(rde::root_expectation_weighted(DegreeDistribution::delta(0), WeightSpec::parse("rademacher"), leaf.population,
                                         10, 1)
              .mean == -1.0 / z);
    CHECK_THROWS_AS(rde::weighted_fixed_point(f, WeightSpec::parse("rademacher"), 1, z, params()), InvalidArgument);
}

TEST_CASE("weighted cycles: recursion matches the dense spectrum") {
    const auto w = WeightSpec::parse("constant:1.5");
    const auto xs = linspace(-5, 5, 201);
    const auto c = rde::weighted_stieltjes_curve(DegreeDistribution::delta(2), w, xs, 0.05, params(5000, 1e-6, 2000));
    const auto limit = closed::measure_from_density(closed::invert_stieltjes(c));
    std::vector<SpectralMeasure> parts;
    for (std::uint64_t s = 0; s < 3; ++s)
        parts.push_back(spectral::esd(spectral::delta_matrix(gen::attach_weights(gen::regular(1000, 2, s), w, s), 0)));
    CHECK(spectral::levy_distance(mixture(parts), limit) <= 0.05);
}

TEST_CASE("bipartite recursion") {
    const cplx z(0.3, 0.6);
    const auto f = DegreeDistribution::poisson(2);
    const auto both = rde::bipartite_fixed_point(f, f, 0, z, params(20000, 1e-6, 500, 8));
    const auto single = rde::fixed_point(f, 0, z, params(20000, 1e-6, 500, 9));
    const double se = std::hypot(both.a.mean_stderr(), both.b.mean_stderr());
    CHECK(close(both.a.mean(), both.b.mean(), se));
    CHECK(close(both.a.mean(), single.population.mean(), std::hypot(both.a.mean_stderr(), single.population.mean_stderr())));

    const auto est = rde::root_expectation_bipartite(f, f, 0.5, both, 0, 20000, 10);
    const auto ref = rde::root_expectation(f, single.population, 0, 20000, 11);
    CHECK(close(est.mean, ref.mean, std::hypot(est.std_error, ref.std_error)));

    const auto d0 = DegreeDistribution::delta(0);
    for (int alpha : {0, 1}) {
        const auto leaves = rde::bipartite_fixed_point(d0, d0, alpha, z, params(1000, 1e-3, 2));
        for (auto v : leaves.a.values()) CHECK(std::abs(v + 1.0 / (z + static_cast<double>(alpha))) <= 1e-15);
        CHECK(rde::root_expectation_bipartite(d0, d0, 0.3, leaves, alpha, 10, 1).mean == -1.0 / z);
    }
    CHECK_THROWS_AS(rde::root_expectation_bipartite(f, f, 1.0, both, 0, 10, 1), InvalidArgument);
}

TEST_CASE("bipartite 1-2 recursion matches its scalar fixed point") {
    const cplx z(0.5, 0.3);
    cplx a = -1.0 / z, b = -1.0 / z;
    for (int i = 0; i < 20000; ++i) {
        const cplx na = -1.0 / (z + b), nb = -1.0 / (z + 2.0 * a);
        a = 0.5 * a + 0.5 * na;
        b = 0.5 * b + 0.5 * nb;
    }
    const auto s = rde::bipartite_fixed_point(DegreeDistribution::delta(1), DegreeDistribution::delta(2), 0, z,
                                              params(2000, 1e-14, 20000));
    CHECK(close(s.a.mean(), a, s.a.mean_stderr()));
    CHECK(close(s.b.mean(), b, s.b.mean_stderr()));
}

TEST_CASE("skeleton recursion") {
    const cplx z(0.5, 0.2);
    const auto s = rde::skeleton_fixed_point(1.0, z, params(20000, 1e-8, 500));
    CHECK(s.herglotz_violations == 0);
    for (auto v : s.x.values()) {
        CHECK(v.imag() > 0);
        CHECK(std::abs(v) <= 1 / z.imag() * (1 + 1e-12));
    }
    const auto alt = rde::skeleton_closed_form_mean(s, 20000, 3);
    CHECK(close(s.x.mean(), alt.mean, std::hypot(s.x.mean_stderr(), alt.std_error)));
    CHECK_THROWS_AS(rde::skeleton_fixed_point(2.0, z, params()), InvalidArgument);
}

TEST_CASE("populations are reproducible bit for bit") {
    const auto f = DegreeDistribution::parse("0:0.2,2:0.5,5:0.3");
    const auto a = rde::fixed_point(f, 0, {1, 0.3}, params(5000, 1e-5));
    const auto b = rde::fixed_point(f, 0, {1, 0.3}, params(5000, 1e-5));
    CHECK(a.population.values() == b.population.values());
    const auto c = rde::fixed_point(f, 0, {1, 0.3}, params(5000, 1e-5, 500, 2));
    CHECK(a.population.values() != c.population.values());
}

TEST_CASE("bessel J1 matches the standard library") {
    for (double x = 0; x <= 60; x += 0.173) CHECK(std::abs(rde::bessel_j1(x) - std::cyl_bessel_j(1.0, x)) <= 1e-12);
    CHECK(rde::bessel_j1(-2.0) == -rde::bessel_j1(2.0));
}

TEST_CASE("bessel identity residual") {
    const cplx z(0, 3);
    const rde::Population constant(z, std::vector<cplx>(1000, -1.0 / z));
    CHECK(rde::bessel_equation_residual(0.0, 0.0, z, constant) == 0.0);
    for (double u : {0.5, 1.0, 2.0}) CHECK(rde::bessel_equation_residual(0.0, u, z, constant) <= 1e-3);
    CHECK_THROWS_AS(rde::bessel_equation_residual(1.0, -1.0, z, constant), InvalidArgument);

    const auto s = rde::fixed_point(DegreeDistribution::poisson(1), 0, z, params(20000, 1e-8));
    CHECK(rde::bessel_equation_residual(1.0, 1.0, z, s.population) <= 0.02);
}
