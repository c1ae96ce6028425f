#include "doctest.h"

#include <cmath>
#include <map>

#include "sgspec/errors.hpp"
#include "sgspec/generators.hpp"

using namespace sgspec;

namespace {

Graph complete(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph(n, e);
}

// Sizes of the connected components of a graph whose degrees are all 2.
std::vector<int> cycle_lengths(const Graph& g) {
    const auto adj = g.adjacency();
    std::vector<bool> seen(g.n(), false);
    std::vector<int> out;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        Vertex prev = -1, cur = s;
        do {
            seen[cur] = true;
            ++len;
            const Vertex next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
        } while (cur != s);
        out.push_back(len);
    }
    return out;
}

}  // namespace

TEST_CASE("regular: K4 is the only 3-regular graph on 4 vertices") {
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(gen::regular(4, 3, s) == complete(4));
}

TEST_CASE("regular: k = 0 gives the empty graph") { CHECK(gen::regular(9, 0, 1) == Graph(9)); }

TEST_CASE("regular: 2-regular graphs on 6 vertices are unions of cycles") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Graph g = gen::regular(6, 2, s);
        CHECK(validate(g).empty());
        for (int d : g.degrees()) CHECK(d == 2);
        int total = 0;
        for (int len : cycle_lengths(g)) {
            CHECK(len >= 3);
            total += len;
        }
        CHECK(total == 6);
    }
}

TEST_CASE("regular: degree histogram is exact and sampling is deterministic") {
    const Graph g = gen::regular(200, 3, 42);
    std::map<int, int> hist;
    for (int d : g.degrees()) ++hist[d];
    CHECK(hist == std::map<int, int>{{3, 200}});
    CHECK(to_edge_list(g) == to_edge_list(gen::regular(200, 3, 42)));
    CHECK(g != gen::regular(200, 3, 43));
}

TEST_CASE("regular: parameter errors") {
    CHECK_THROWS_AS(gen::regular(5, 3, 0), InvalidArgument);
    CHECK_THROWS_AS(gen::regular(4, 4, 0), InvalidArgument);
    CHECK_THROWS_AS(gen::regular(4, -1, 0), InvalidArgument);
}

TEST_CASE("erdos renyi: trivial cases") {
    CHECK(gen::erdos_renyi(30, 0.0, 1) == Graph(30));
    CHECK(gen::erdos_renyi(5, 5.0, 1) == complete(5));
    CHECK_THROWS_AS(gen::erdos_renyi(5, -0.1, 1), InvalidArgument);
    CHECK_THROWS_AS(gen::erdos_renyi(5, 5.5, 1), InvalidArgument);
}

TEST_CASE("erdos renyi: mean edge count over 1000 seeds") {
    // m ~ Binomial(4950, 0.02): mean 99, variance 97.02
    double sum = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) sum += static_cast<double>(gen::erdos_renyi(100, 2.0, s).m());
    CHECK(std::abs(sum / seeds - 99.0) <= 3 * std::sqrt(97.02 / seeds));
}

TEST_CASE("configuration: examples") {
    CHECK(gen::configuration(10, DegreeDistribution::delta(0), 3) == Graph(10));
    CHECK(gen::configuration(2, DegreeDistribution::delta(1), 3) == Graph(2, {{0, 1}}));
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(validate(gen::configuration(300, DegreeDistribution::poisson(3), s)).empty());
}

TEST_CASE("configuration: erasure is vanishing for delta 2") {
    auto off = [](Vertex n) {
        double bad = 0;
        for (std::uint64_t s = 0; s < 10; ++s)
            for (int d : gen::configuration(n, DegreeDistribution::delta(2), s).degrees()) bad += d != 2;
        return bad / (10.0 * n);
    };
    const double small = off(100), large = off(10000);
    CHECK(large < small);
    CHECK(large < 0.01);
}

TEST_CASE("configuration: empirical degree law is close to fstar") {
    const auto fstar = DegreeDistribution::parse("1:0.3,2:0.3,4:0.4");
    const Graph g = gen::configuration(10000, fstar, 5);
    std::map<int, double> pmf;
    for (int d : g.degrees()) pmf[d] += 1e-4;
    double total = 0;
    for (const auto& [k, p] : pmf) total += p;
    // Renormalize against rounding in the 1e-4 increments.
    for (auto& [k, p] : pmf) p /= total;
    CHECK(total_variation(DegreeDistribution::from_map(pmf), fstar) <= 0.02);
}

TEST_CASE("uniform tree: small cases") {
    CHECK(gen::uniform_tree(1, 0) == Graph(1));
    CHECK(gen::uniform_tree(2, 0) == Graph(2, {{0, 1}}));
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Graph t = gen::uniform_tree(500, s);
        CHECK(t.m() == 499);
        CHECK(is_connected(t));
    }
}

TEST_CASE("uniform tree: the three labelled paths on 3 vertices are equally likely") {
    std::map<Vertex, int> centre;
    const int seeds = 10000;
    for (int s = 0; s < seeds; ++s) {
        const auto deg = gen::uniform_tree(3, s).degrees();
        for (Vertex v = 0; v < 3; ++v)
            if (deg[v] == 2) ++centre[v];
    }
    const double se = std::sqrt((1.0 / 3) * (2.0 / 3) / seeds);
    for (Vertex v = 0; v < 3; ++v) CHECK(std::abs(centre[v] / double(seeds) - 1.0 / 3) <= 3 * se);
}

TEST_CASE("uniform tree: all 16 labelled trees on 4 vertices appear") {
    std::map<std::string, int> seen;
    for (int s = 0; s < 4000; ++s) ++seen[to_edge_list(gen::uniform_tree(4, s))];
    CHECK(seen.size() == 16);
    for (const auto& [text, count] : seen) CHECK(std::abs(count - 250) < 80);
}

TEST_CASE("bipartite configuration") {
    const auto d0 = DegreeDistribution::delta(0);
    CHECK(gen::bipartite_configuration(3, 4, d0, d0, 1) == Graph(7));
    for (std::uint64_t s = 0; s < 30; ++s) {
        std::int64_t added = -1;
        const Graph g = gen::bipartite_configuration(2, 3, DegreeDistribution::delta(3), DegreeDistribution::delta(2), s, &added);
        CHECK(added == 0);
        CHECK(is_bipartite_split(g, 2));
        CHECK(validate(g).empty());
    }
    std::int64_t added = 0;
    const Graph g = gen::bipartite_configuration(50, 50, DegreeDistribution::delta(3), DegreeDistribution::delta(2), 9, &added);
    CHECK(added == 50);
    CHECK(is_bipartite_split(g, 50));
}

TEST_CASE("attach weights") {
    const Graph g = gen::erdos_renyi(400, 4.0, 2);
    const auto ones = gen::attach_weights(g, WeightSpec::parse("constant:1"), 3);
    for (double w : ones.weights()) CHECK(w == 1.0);
    const auto gauss = gen::attach_weights(g, WeightSpec::parse("gaussian:0,1"), 3);
    double mean = 0;
    for (double w : gauss.weights()) mean += w;
    mean /= static_cast<double>(g.m());
    CHECK(std::abs(mean) <= 3 / std::sqrt(static_cast<double>(g.m())));
    CHECK(gen::attach_weights(Graph(5), WeightSpec::parse("rademacher"), 1).weights().empty());
}

TEST_CASE("galton watson trees") {
    const auto root = gen::sample_gwt(DegreeDistribution::delta(0), 5, 100, 1);
    CHECK(root.size() == 1);

    const auto t = gen::sample_gwt(DegreeDistribution::delta(3), 2, 100, 1);
    CHECK(t.size() == 10);
    CHECK(t.generation_sizes() == std::vector<int>{1, 3, 6});
    CHECK_FALSE(t.truncated);

    const auto cut = gen::sample_gwt(DegreeDistribution::delta(3), 10, 50, 1);
    CHECK(cut.truncated);
    CHECK(cut.size() <= 50);

    double sum = 0, sum2 = 0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) {
        const auto g = gen::sample_gwt(DegreeDistribution::poisson(1), 5, 100000, s).generation_sizes();
        const double first = g.size() > 1 ? g[1] : 0;
        sum += first;
        sum2 += first * first;
    }
    const double mean = sum / samples;
    const double sd = std::sqrt(sum2 / samples - mean * mean);
    CHECK(std::abs(mean - 1) <= 3 * sd / std::sqrt(samples));
}
