#include "sgspec/generators.hpp"

#include <algorithm>
#include <queue>

#include "sgspec/errors.hpp"

namespace sgspec::gen {

namespace {

std::vector<Vertex> stubs_from_degrees(const std::vector<int>& degree, Vertex offset = 0) {
    std::vector<Vertex> stubs;
    for (std::size_t v = 0; v < degree.size(); ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(degree[v]), static_cast<Vertex>(v) + offset);
    return stubs;
}

}  // namespace

Graph regular(Vertex n, int k, std::uint64_t seed) {
    if (n < 0 || k < 0) throw InvalidArgument("regular graph: n and k must be nonnegative");
    if ((static_cast<std::int64_t>(n) * k) % 2 != 0) {
        throw InvalidArgument("regular graph: n*k must be even (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    if (k == 0) return Graph(n);
    if (k >= n) throw InvalidArgument("regular graph: need k < n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");

    auto rng = make_stream(seed, "gen.regular");
    const std::vector<int> degree(static_cast<std::size_t>(n), k);
    for (int attempt = 0; attempt < kMaxRegularAttempts; ++attempt) {
        auto stubs = stubs_from_degrees(degree);
        rng.shuffle(stubs.begin(), stubs.end());
        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        bool simple = true;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            if (stubs[i] == stubs[i + 1]) {
                simple = false;
                break;
            }
            edges.push_back(stubs[i] < stubs[i + 1] ? Edge{stubs[i], stubs[i + 1]} : Edge{stubs[i + 1], stubs[i]});
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw NumericalError("regular graph: pairing model rejected " + std::to_string(kMaxRegularAttempts) +
                         " samples in a row (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                         "); acceptance ~exp(-(k^2-1)/4) is too small for this k");
}

Graph erdos_renyi(Vertex n, double p, std::uint64_t seed) {
    if (n < 0) throw InvalidArgument("erdos-renyi: negative n");
    if (!(p >= 0.0) || p > n) throw InvalidArgument("erdos-renyi: need 0 <= p <= n");
    if (p == 0.0 || n < 2) return Graph(n);
    const double q = p / n;
    auto rng = make_stream(seed, "gen.erdos_renyi");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform() < q) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph configuration(Vertex n, const DegreeDistribution& fstar, std::uint64_t seed) {
    if (n < 0) throw InvalidArgument("configuration: negative n");
    auto rng = make_stream(seed, "gen.configuration");
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::int64_t total = 0;
    for (auto& d : degree) total += d = fstar.sample(rng);
    if (total % 2 != 0) ++degree[rng.below(static_cast<std::uint64_t>(n))];
    auto stubs = stubs_from_degrees(degree);
    rng.shuffle(stubs.begin(), stubs.end());
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
    return Graph::erased(n, std::move(edges));
}

Graph uniform_tree(Vertex n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("uniform tree: need n >= 1");
    if (n == 1) return Graph(1);
    if (n == 2) return Graph(2, {{0, 1}});
    auto rng = make_stream(seed, "gen.uniform_tree");
    std::vector<Vertex> code(static_cast<std::size_t>(n - 2));
    for (auto& c : code) c = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));

    // Linear-time Pruefer decoding.
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (const auto c : code) ++degree[c];
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    Vertex ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    Vertex leaf = ptr;
    for (const auto v : code) {
        edges.push_back({leaf, v});
        if (--degree[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back({leaf, n - 1});
    return Graph(n, std::move(edges));
}

Graph bipartite_configuration(Vertex na, Vertex nb, const DegreeDistribution& fstar, const DegreeDistribution& gstar,
                              std::uint64_t seed, std::int64_t* reconciled_stubs) {
    if (na < 1 || nb < 1) throw InvalidArgument("bipartite configuration: need na, nb >= 1");
    auto rng = make_stream(seed, "gen.bipartite");
    std::vector<int> da(static_cast<std::size_t>(na)), db(static_cast<std::size_t>(nb));
    std::int64_t ta = 0, tb = 0;
    for (auto& d : da) ta += d = fstar.sample(rng);
    for (auto& d : db) tb += d = gstar.sample(rng);
    const std::int64_t added = std::abs(ta - tb);
    for (; ta < tb; ++ta) ++da[rng.below(static_cast<std::uint64_t>(na))];
    for (; tb < ta; ++tb) ++db[rng.below(static_cast<std::uint64_t>(nb))];
    if (reconciled_stubs) *reconciled_stubs = added;

    const auto sa = stubs_from_degrees(da);
    auto sb = stubs_from_degrees(db, na);
    rng.shuffle(sb.begin(), sb.end());
    std::vector<Edge> edges;
    edges.reserve(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) edges.push_back({sa[i], sb[i]});
    return Graph::erased(na + nb, std::move(edges));
}

WeightedGraph attach_weights(const Graph& g, const WeightSpec& dist, std::uint64_t seed) {
    auto rng = make_stream(seed, "gen.weights");
    std::vector<double> w(g.m());
    for (auto& x : w) x = dist.sample(rng);
    return WeightedGraph(g, std::move(w));
}

RootedTree sample_gwt(const DegreeDistribution& fstar, const DegreeDistribution& offspring, int depth,
                      std::size_t max_nodes, Philox& rng) {
    if (depth < 0) throw InvalidArgument("gwt: negative depth");
    if (max_nodes < 1) throw InvalidArgument("gwt: max_nodes must be >= 1");
    RootedTree t;
    t.parent.push_back(-1);
    t.depth.push_back(0);
    // Nodes are appended in breadth-first order, so a running index is the queue.
    for (std::size_t head = 0; head < t.parent.size(); ++head) {
        const int d = t.depth[head];
        if (d >= depth) break;
        const int children = head == 0 ? fstar.sample(rng) : offspring.sample(rng);
        for (int c = 0; c < children; ++c) {
            if (t.parent.size() >= max_nodes) {
                t.truncated = true;
                return t;
            }
            t.parent.push_back(static_cast<Vertex>(head));
            t.depth.push_back(d + 1);
        }
    }
    return t;
}

RootedTree sample_gwt(const DegreeDistribution& fstar, int depth, std::size_t max_nodes, std::uint64_t seed) {
    auto rng = make_stream(seed, "gen.gwt");
    if (fstar.mean() == 0.0) return sample_gwt(fstar, fstar, depth, max_nodes, rng);
    return sample_gwt(fstar, size_biased_offspring(fstar), depth, max_nodes, rng);
}

}  // namespace sgspec::gen
