#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "sgspec/errors.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/localweak.hpp"
#include "sgspec/random.hpp"

using namespace sgspec;

namespace {

Graph path(Vertex n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, e);
}

Graph complete(Vertex n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph(n, e);
}

Graph star(Vertex leaves) {
    std::vector<Edge> e;
    for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
    return Graph(leaves + 1, e);
}

Graph disjoint_copies(const Graph& g, int copies) {
    std::vector<Edge> e;
    for (int c = 0; c < copies; ++c)
        for (auto [u, v] : g.edges()) e.push_back({u + c * g.n(), v + c * g.n()});
    return Graph(g.n() * copies, e);
}

Graph petersen() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.push_back({i, (i + 1) % 5});
        e.push_back({i, i + 5});
        e.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return Graph(10, e);
}

// Rooted isomorphism by trying every relabelling that fixes vertex 0.
bool rooted_isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    const auto da = a.degrees(), db = b.degrees();
    if (da[0] != db[0]) return false;
    std::vector<Vertex> perm(a.n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (Vertex v = 0; v < a.n() && ok; ++v) ok = da[v] == db[perm[v]];
        for (std::size_t i = 0; i < a.edges().size() && ok; ++i)
            ok = b.has_edge(perm[a.edges()[i].u], perm[a.edges()[i].v]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

bool connected(const Graph& g) {
    const auto adj = g.adjacency();
    std::vector<char> seen(g.n(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
    }
    return count == g.n();
}

Graph random_connected(Vertex n, int extra, Philox& rng) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.push_back({static_cast<Vertex>(rng.below(v)), v});
    for (int i = 0; i < extra; ++i) {
        const auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
        if (u != v) e.push_back({std::min(u, v), std::max(u, v)});
    }
    return Graph::erased(n, e);
}

Graph relabel_fixing_root(const Graph& g, Philox& rng) {
    std::vector<Vertex> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    for (Vertex i = g.n() - 1; i > 1; --i) std::swap(perm[i], perm[1 + rng.below(i)]);
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) e.push_back({std::min(perm[u], perm[v]), std::max(perm[u], perm[v])});
    return Graph(g.n(), e);
}

// Degree-preserving double edge swap; returns g unchanged if the swap is invalid.
Graph swap_edges(const Graph& g, Philox& rng) {
    auto e = g.edges();
    if (e.size() < 2) return g;
    const auto i = rng.below(e.size()), j = rng.below(e.size());
    auto [a, b] = e[i];
    auto [c, d] = e[j];
    if (i == j || a == c || a == d || b == c || b == d || g.has_edge(a, d) || g.has_edge(c, b)) return g;
    e[i] = {std::min(a, d), std::max(a, d)};
    e[j] = {std::min(c, b), std::max(c, b)};
    return Graph(g.n(), e);
}

}  // namespace

TEST_CASE("radius zero gives one code everywhere") {
    const auto g = gen::erdos_renyi(50, 2, 1);
    const auto d = lwc::ball_distribution(g, 0);
    CHECK(d.counts.size() == 1);
    CHECK(d.counts.begin()->second == 50);
    CHECK(lwc::extract_ball(g, 3, 0) == lwc::extract_ball(g, 17, 0));
}

TEST_CASE("small graph examples") {
    const auto k4 = complete(4);
    for (Vertex v = 1; v < 4; ++v) CHECK(lwc::extract_ball(k4, v, 1).code == lwc::extract_ball(k4, 0, 1).code);
    const auto p3 = path(3);
    CHECK(lwc::extract_ball(p3, 1, 1).code != lwc::extract_ball(p3, 0, 1).code);
    CHECK(lwc::extract_ball(p3, 0, 1).code == lwc::extract_ball(p3, 2, 1).code);
    CHECK(lwc::extract_ball(p3, 0, 1).vertices == 2);
    CHECK(lwc::extract_ball(p3, 0, 1).code != lwc::extract_ball(p3, 0, 2).code);

    const auto d = lwc::ball_distribution(star(3), 1);
    CHECK(d.counts.size() == 2);
    CHECK(d.freq(lwc::extract_ball(star(3), 0, 1).code) == 0.25);
    CHECK(d.freq(lwc::extract_ball(star(3), 1, 1).code) == 0.75);
    CHECK(d.freq("missing") == 0.0);
}

TEST_CASE("vertex-transitive graphs have a single code") {
    for (int r = 0; r <= 3; ++r) {
        CHECK(lwc::ball_distribution(complete(5), r).counts.size() == 1);
        CHECK(lwc::ball_distribution(petersen(), r).counts.size() == 1);
    }
}

TEST_CASE("regular graph with large girth matches the regular tree") {
    // Girth 5: radius-1 balls are trees, radius-2 balls close the 5-cycles.
    const auto g = lwc::ball_distribution(petersen(), 1);
    const auto t = lwc::gwt_ball_distribution(DegreeDistribution::delta(3), 1, 100, 1);
    CHECK(t.counts.size() == 1);
    CHECK(lwc::tv_distance(g, t) == 0.0);
    const auto g2 = lwc::ball_distribution(petersen(), 2);
    const auto t2 = lwc::gwt_ball_distribution(DegreeDistribution::delta(3), 2, 100, 1);
    CHECK(lwc::tv_distance(g2, t2) == 1.0);
    // A random 3-regular graph on many vertices is locally tree-like.
    const auto big = lwc::ball_distribution(gen::regular(4000, 3, 2), 2);
    CHECK(lwc::tv_distance(big, t2) <= 0.01);
}

TEST_CASE("GWT ball laws") {
    const auto leaf = lwc::gwt_ball_distribution(DegreeDistribution::delta(0), 3, 50, 1);
    CHECK(leaf.counts.size() == 1);
    CHECK(leaf.counts.begin()->first == lwc::extract_ball(Graph(1), 0, 3).code);

    const std::size_t samples = 20000;
    const auto d = lwc::gwt_ball_distribution(DegreeDistribution::poisson(1), 1, samples, 7);
    const auto pmf = DegreeDistribution::poisson(1);
    for (Vertex k = 0; k <= 4; ++k) {
        const double p = pmf[k];
        const double se = std::sqrt(p * (1 - p) / samples);
        CHECK(std::abs(d.freq(lwc::extract_ball(star(k), 0, 1).code) - p) <= 3 * se);
    }
    double total = 0;
    for (const auto& [code, c] : d.counts) total += d.freq(code);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(lwc::gwt_ball_distribution(DegreeDistribution::delta(9), 3, 10, 1, 64), CapacityError);
}

TEST_CASE("total variation") {
    const auto a = lwc::ball_distribution(star(3), 1);
    const auto b = lwc::ball_distribution(complete(4), 1);
    CHECK(lwc::tv_distance(a, b) == 1.0);
    CHECK(lwc::tv_distance(a, a) == 0.0);
    CHECK_THROWS_AS(lwc::tv_distance(a, lwc::ball_distribution(star(3), 2)), InvalidArgument);
}

TEST_CASE("pair independence statistic") {
    CHECK(lwc::pair_independence_stat(path(2), 1, 1000, 1) == 0.0);
    CHECK(lwc::pair_independence_stat(disjoint_copies(complete(3), 30), 2, 1000, 1) == 0.0);
    const double s = lwc::pair_independence_stat(disjoint_copies(star(3), 500), 1, 40000, 2);
    CHECK(s >= 0.0);
    CHECK(s <= 0.02);
    CHECK(lwc::pair_independence_stat(disjoint_copies(star(3), 50), 1, 5000, 3) ==
          lwc::pair_independence_stat(disjoint_copies(star(3), 50), 1, 5000, 3));
}

TEST_CASE("tail mass") {
    const auto g = gen::regular(100, 4, 3);
    CHECK(lwc::tail_mass(g, 3) == 5.0);
    CHECK(lwc::tail_mass(g, 4) == 0.0);
    CHECK(lwc::tail_mass(star(4), 0) == doctest::Approx((5.0 + 4 * 2.0) / 5));
    const auto profile = lwc::uniform_integrability_profile(star(9));
    std::vector<int> ells;
    for (const auto& p : profile) ells.push_back(p.ell);
    CHECK(ells == std::vector<int>{0, 1, 2, 4, 8, 16});
    CHECK(profile.back().tail_mass == 0.0);
}

TEST_CASE("ball cap") {
    CHECK_THROWS_WITH_AS(lwc::extract_ball(star(70), 0, 1), doctest::Contains("vertex 0"), CapacityError);
    CHECK_NOTHROW(lwc::extract_ball(star(70), 0, 1, 100));
    CHECK_NOTHROW(lwc::extract_ball(star(70), 5, 0));
}

TEST_CASE("serialization round trips") {
    const std::string bytes("r2:G\0\x01\xff|x", 9);
    CHECK(lwc::from_hex(lwc::to_hex(bytes)) == bytes);
    CHECK(lwc::to_hex("\x01\xab") == "01ab");
    CHECK_THROWS_AS(lwc::from_hex("abc"), InvalidArgument);

    const auto d = lwc::ball_distribution(gen::erdos_renyi(300, 2.5, 4), 2);
    const auto back = lwc::ball_distribution_from_json(lwc::to_json(d));
    CHECK(back.radius == d.radius);
    CHECK(back.sample_count == d.sample_count);
    CHECK(back.counts == d.counts);
}

TEST_CASE("codes are monotone in the radius") {
    const auto g = gen::erdos_renyi(200, 3, 5);
    for (int r = 1; r <= 3; ++r) {
        for (Vertex u = 0; u < 40; ++u)
            for (Vertex v = u + 1; v < 40; ++v)
                if (lwc::extract_ball(g, u, r).code == lwc::extract_ball(g, v, r).code)
                    CHECK(lwc::extract_ball(g, u, r - 1).code == lwc::extract_ball(g, v, r - 1).code);
    }
}

TEST_CASE("equal codes iff rooted isomorphic (brute force oracle)") {
    auto rng = make_stream(11, "test.iso");
    int equal_pairs = 0, different_pairs = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const auto n = static_cast<Vertex>(3 + rng.below(6));
        const auto g = random_connected(n, static_cast<int>(rng.below(5)), rng);
        Graph h = relabel_fixing_root(g, rng);
        if (rng.below(3) != 0) h = swap_edges(h, rng);
        if (!connected(h)) continue;
        const bool iso = rooted_isomorphic(g, h);
        const bool same = lwc::canonical_code(g, n) == lwc::canonical_code(h, n);
        CHECK(iso == same);
        (iso ? equal_pairs : different_pairs)++;
    }
    CHECK(equal_pairs > 100);
    CHECK(different_pairs > 100);
}

TEST_CASE("cyclic balls with pendant trees") {
    // Triangle with a pendant path, rooted at the far end versus at a cycle vertex.
    const Graph a(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 4}});
    const Graph b(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(lwc::canonical_code(a, 5) != lwc::canonical_code(b, 5));
    auto rng = make_stream(3, "test.cyc");
    for (int i = 0; i < 20; ++i) CHECK(lwc::canonical_code(relabel_fixing_root(a, rng), 5) == lwc::canonical_code(a, 5));
}
