#include "doctest.h"

#include <cmath>
#include <sstream>

#include "sgspec/errors.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/spectral.hpp"

using namespace sgspec;
using cplx = std::complex<double>;

namespace {

Graph complete(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph(n, e);
}

Graph star(int leaves) {
    std::vector<Edge> e;
    for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
    return Graph(leaves + 1, e);
}

void check_atoms(const SpectralMeasure& mu, const std::vector<SpectralMeasure::Atom>& expected, double tol = 1e-9) {
    REQUIRE(mu.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(mu.atoms()[i].location - expected[i].location) <= tol);
        CHECK(std::abs(mu.atoms()[i].weight - expected[i].weight) <= 1e-12);
    }
}

}  // namespace

TEST_CASE("delta matrix structure") {
    const auto a = spectral::delta_matrix(complete(4), 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(a.entries(i, j) == (i == j ? 0.0 : 1.0));
    const auto l = spectral::delta_matrix(complete(4), 1);
    for (int i = 0; i < 4; ++i) CHECK(l.entries.row(i).sum() == 0.0);
    CHECK_THROWS_AS(spectral::delta_matrix(complete(4), 2), InvalidArgument);
    CHECK_THROWS_AS(spectral::delta_matrix(Graph(10), 0, 5), CapacityError);
}

TEST_CASE("weighted single edge Laplacian has eigenvalues 0 and -4") {
    const WeightedGraph w(Graph(2, {{0, 1}}), {2.0});
    const auto ev = spectral::eigenvalues(spectral::delta_matrix(w, 1));
    CHECK(ev[0] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(std::abs(ev[1]) <= 1e-12);
}

TEST_CASE("esd examples") {
    check_atoms(spectral::esd(spectral::delta_matrix(complete(4), 0)), {{-1, 0.75}, {3, 0.25}});
    check_atoms(spectral::esd(spectral::delta_matrix(complete(4), 1)), {{-4, 0.75}, {0, 0.25}});
    check_atoms(spectral::esd(spectral::delta_matrix(Graph(6), 0)), {{0, 1.0}});
}

TEST_CASE("trace identity and Laplacian sign") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const Graph g = gen::erdos_renyi(150, 3.0, s);
        for (int alpha : {0, 1}) {
            const auto ev = spectral::eigenvalues(spectral::delta_matrix(g, alpha));
            double trace = 0;
            for (double x : ev) trace += x;
            CHECK(std::abs(trace + alpha * 2.0 * static_cast<double>(g.m())) <= 1e-8 * 150);
            if (alpha == 1) CHECK(ev.back() <= 1e-9);
        }
    }
}

TEST_CASE("bipartite spectra are symmetric") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto ev = spectral::eigenvalues(spectral::delta_matrix(gen::uniform_tree(120, s), 0));
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] + ev[ev.size() - 1 - i]) <= 1e-8);
    }
}

TEST_CASE("stieltjes transform examples") {
    CHECK(std::abs(spectral::stieltjes_empirical(SpectralMeasure::dirac(0), {0, 1}) - cplx(0, 1)) <= 1e-15);
    CHECK(std::abs(spectral::stieltjes_empirical(SpectralMeasure::dirac(0), {0, 2}) - cplx(0, 0.5)) <= 1e-15);
    CHECK_THROWS_AS(spectral::stieltjes_empirical(SpectralMeasure::dirac(0), {1, 0}), InvalidArgument);

    const cplx z(0, 1);
    const auto m = spectral::delta_matrix(complete(4), 0);
    const cplx direct = 0.75 / (-1.0 - z) + 0.25 / (3.0 - z);
    CHECK(std::abs(spectral::stieltjes_empirical(spectral::esd(m), z) - direct) <= 1e-10);
    const auto diag = spectral::resolvent_diag(m, z);
    cplx mean = 0;
    for (auto d : diag) mean += d;
    CHECK(std::abs(mean / 4.0 - direct) <= 1e-10);
}

TEST_CASE("resolvent diagonal examples") {
    const cplx z(0.3, 0.7);
    for (auto d : spectral::resolvent_diag(spectral::delta_matrix(Graph(3), 0), z)) CHECK(std::abs(d + 1.0 / z) <= 1e-15);
    for (auto d : spectral::resolvent_diag(spectral::delta_matrix(Graph(2, {{0, 1}}), 0), {0, 1}))
        CHECK(std::abs(d - cplx(0, 0.5)) <= 1e-15);
}

TEST_CASE("resolvent obeys Herglotz bounds and the trace identity") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto m = spectral::delta_matrix(gen::erdos_renyi(80, 2.5, s), static_cast<int>(s % 2));
        const cplx z(-1.0 + 0.2 * static_cast<double>(s), 0.1 + 0.05 * static_cast<double>(s));
        const auto diag = spectral::resolvent_diag(m, z);
        cplx mean = 0;
        for (auto d : diag) {
            CHECK(d.imag() > 0);
            CHECK(std::abs(d) <= 1 / z.imag() * (1 + 1e-12));
            mean += d;
        }
        CHECK(std::abs(mean / 80.0 - spectral::stieltjes_empirical(spectral::esd(m), z)) <= 1e-9);
    }
}

TEST_CASE("levy distance examples and axioms") {
    const auto d0 = SpectralMeasure::dirac(0);
    CHECK(spectral::levy_distance(d0, d0) == 0.0);
    CHECK(spectral::levy_distance(d0, SpectralMeasure::dirac(0.5)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(spectral::levy_distance(d0, SpectralMeasure::dirac(5)) == doctest::Approx(1.0).epsilon(1e-9));

    auto rng = make_stream(5, "test.levy");
    auto random_measure = [&] {
        std::vector<double> values(1 + rng.below(15));
        for (auto& v : values) v = rng.normal();
        return SpectralMeasure::from_values(values);
    };
    for (int i = 0; i < 100; ++i) {
        const auto a = random_measure(), b = random_measure(), c = random_measure();
        const double ab = spectral::levy_distance(a, b);
        CHECK(ab == spectral::levy_distance(b, a));
        CHECK(spectral::levy_distance(a, c) <= ab + spectral::levy_distance(b, c) + 1e-9);
        CHECK(ab <= spectral::kolmogorov_distance(a, b) + 1e-9);
    }
}

TEST_CASE("kolmogorov distance examples") {
    const auto d0 = SpectralMeasure::dirac(0);
    CHECK(spectral::kolmogorov_distance(d0, d0) == 0.0);
    CHECK(spectral::kolmogorov_distance(d0, SpectralMeasure::dirac(1)) == 1.0);
    CHECK(spectral::kolmogorov_distance(SpectralMeasure({{0, 0.5}, {1, 0.5}}), d0) == 0.5);
}

TEST_CASE("truncation examples") {
    const Graph g = gen::erdos_renyi(100, 3.0, 7);
    const auto deg = g.degrees();
    const int dmax = *std::max_element(deg.begin(), deg.end());
    CHECK(spectral::truncate_high_degree(g, dmax) == g);
    CHECK(spectral::truncate_high_degree(g, 0) == Graph(100));
    CHECK(spectral::truncate_high_degree(star(5), 4) == Graph(6));
    CHECK(spectral::truncate_high_degree(star(5), 5) == star(5));
}

TEST_CASE("rank bound examples") {
    const auto none = spectral::rank_bound_check(star(5), 5, 0);
    CHECK(none.levy == 0.0);
    CHECK(none.bound == 0.0);
    // The star adjacency has rank 2, so the bound is 2/6.
    const auto cut = spectral::rank_bound_check(star(5), 4, 0);
    CHECK(cut.bound == doctest::Approx(1.0 / 3));
    CHECK(cut.levy <= cut.bound + 1e-9);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto r = spectral::rank_bound_check(gen::erdos_renyi(60, 3.0, s), static_cast<int>(s % 6), static_cast<int>(s % 2));
        CHECK(r.levy <= r.bound + 1e-9);
    }
}

TEST_CASE("schur complement examples") {
    CHECK(spectral::schur_check(spectral::delta_matrix(Graph(5), 0), {0, 1}) == 0.0);
    CHECK(spectral::schur_check(spectral::delta_matrix(Graph(1), 0), {0, 1}) == 0.0);
    CHECK(spectral::schur_check(spectral::delta_matrix(gen::erdos_renyi(20, 3.0, 1), 0), {0, 1}) <= 1e-9);
}

TEST_CASE("measure construction and queries") {
    const SpectralMeasure mu({{1, 0.25}, {0, 0.5}, {1, 0.25}});
    CHECK(mu.size() == 2);
    CHECK(mu.cdf(0.5) == 0.5);
    CHECK(mu.cdf(-1) == 0.0);
    CHECK(mu.mean() == 0.5);
    CHECK(mu.quantile(0.5) == 0.0);
    CHECK(mu.quantile(0.75) == 1.0);
    CHECK_THROWS_AS(SpectralMeasure({{0, 0.5}}), InvalidArgument);
    CHECK_THROWS_AS(SpectralMeasure({{0, 1.5}, {1, -0.5}}), InvalidArgument);

    const auto merged = SpectralMeasure::from_values({1.0, 1.0 + 1e-12, 2.0}, 1e-9);
    CHECK(merged.size() == 2);
    CHECK(merged.atoms()[0].weight == doctest::Approx(2.0 / 3));

    const std::vector<SpectralMeasure> parts = {SpectralMeasure::dirac(0), SpectralMeasure::dirac(1)};
    CHECK(mixture(parts) == SpectralMeasure({{0, 0.5}, {1, 0.5}}));
}

TEST_CASE("csv output") {
    std::ostringstream os;
    spectral::write_measure_csv(os, SpectralMeasure({{-1, 0.75}, {3, 0.25}}));
    CHECK(os.str() == "location,weight\n-1,0.75\n3,0.25\n");
    std::istringstream in(os.str());
    CHECK(spectral::read_measure_csv(in) == SpectralMeasure({{-1, 0.75}, {3, 0.25}}));

    std::ostringstream hs;
    spectral::write_histogram_csv(hs, spectral::histogram(SpectralMeasure({{-1, 0.75}, {3, 0.25}}), -1, 3, 2));
    CHECK(hs.str() == "bin_left,bin_right,mass\n-1,1,0.75\n1,3,0.25\n");
}

TEST_CASE("determinism of the spectrum pipeline") {
    const auto a = spectral::esd(spectral::delta_matrix(gen::regular(300, 3, 9), 0));
    const auto b = spectral::esd(spectral::delta_matrix(gen::regular(300, 3, 9), 0));
    std::ostringstream sa, sb;
    spectral::write_measure_csv(sa, a);
    spectral::write_measure_csv(sb, b);
    CHECK(sa.str() == sb.str());
}
