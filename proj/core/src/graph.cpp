#include "sgspec/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sgspec/errors.hpp"
#include "sgspec/format.hpp"

namespace sgspec {

namespace {

Edge oriented(Edge e) { return e.u < e.v ? e : Edge{e.v, e.u}; }

void check_range(Vertex n, const Edge& e) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") has an endpoint outside [0," + std::to_string(n) + ")");
    }
}

}  // namespace

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw InvalidArgument("negative vertex count");
    for (auto& e : edges_) {
        check_range(n, e);
        if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
        e = oriented(e);
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw InvalidArgument("repeated edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    }
}

Graph Graph::erased(Vertex n, std::vector<Edge> edges) {
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const auto& e : edges) {
        check_range(n, e);
        if (e.u != e.v) kept.push_back(oriented(e));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    Graph g(n);
    g.edges_ = std::move(kept);
    return g;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

std::vector<std::vector<Vertex>> Graph::adjacency() const {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
    for (const auto& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    return std::binary_search(edges_.begin(), edges_.end(), oriented({u, v}));
}

WeightedGraph::WeightedGraph(Graph g, std::vector<double> weights) : graph_(std::move(g)), weights_(std::move(weights)) {
    if (weights_.size() != graph_.m()) throw InvalidArgument("weight count does not match edge count");
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
    const auto& es = graph_.edges();
    const auto it = std::lower_bound(es.begin(), es.end(), oriented({u, v}));
    if (it == es.end() || *it != oriented({u, v})) throw InvalidArgument("no such edge");
    return weights_[static_cast<std::size_t>(it - es.begin())];
}

Graph RootedTree::to_graph() const {
    std::vector<Edge> edges;
    edges.reserve(parent.size());
    for (std::size_t i = 1; i < parent.size(); ++i) edges.push_back({parent[i], static_cast<Vertex>(i)});
    return Graph(static_cast<Vertex>(parent.size()), std::move(edges));
}

std::vector<int> RootedTree::generation_sizes() const {
    std::vector<int> sizes;
    for (const int d : depth) {
        if (static_cast<std::size_t>(d) >= sizes.size()) sizes.resize(static_cast<std::size_t>(d) + 1, 0);
        ++sizes[static_cast<std::size_t>(d)];
    }
    return sizes;
}

std::string validate(const Graph& g) {
    const auto& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto& e = es[i];
        if (e.u < 0 || e.v >= g.n()) return "endpoint out of range";
        if (e.u >= e.v) return e.u == e.v ? "self-loop" : "edge not oriented u < v";
        if (i > 0 && !(es[i - 1] < e)) return "edges not strictly increasing (duplicate or unsorted)";
    }
    return {};
}

bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    std::vector<Vertex> comp(static_cast<std::size_t>(g.n()));
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](Vertex x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    int parts = g.n();
    for (const auto& e : g.edges()) {
        const auto a = find(e.u), b = find(e.v);
        if (a != b) {
            comp[a] = b;
            --parts;
        }
    }
    return parts == 1;
}

bool is_bipartite_split(const Graph& g, Vertex na) {
    return std::all_of(g.edges().begin(), g.edges().end(), [na](const Edge& e) { return (e.u < na) != (e.v < na); });
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.n() << ' ' << g.m() << '\n';
    for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
    os << g.graph().n() << ' ' << g.graph().m() << '\n';
    const auto& es = g.graph().edges();
    for (std::size_t i = 0; i < es.size(); ++i) os << es[i].u << ' ' << es[i].v << ' ' << fmt17(g.weights()[i]) << '\n';
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

namespace {

template <class Row>
void read_rows(std::istream& is, Vertex& n, std::size_t& m, Row&& row) {
    long long nn = -1, mm = -1;
    if (!(is >> nn >> mm) || nn < 0 || mm < 0) throw InvalidArgument("edge list: malformed header, expected \"n m\"");
    n = static_cast<Vertex>(nn);
    m = static_cast<std::size_t>(mm);
    for (std::size_t i = 0; i < m; ++i) {
        if (!row(i)) throw InvalidArgument("edge list: malformed row " + std::to_string(i + 2));
    }
}

}  // namespace

Graph read_edge_list(std::istream& is) {
    Vertex n = 0;
    std::size_t m = 0;
    std::vector<Edge> edges;
    read_rows(is, n, m, [&](std::size_t) {
        Edge e{};
        if (!(is >> e.u >> e.v)) return false;
        edges.push_back(e);
        return true;
    });
    return Graph(n, std::move(edges));
}

WeightedGraph read_weighted_edge_list(std::istream& is) {
    Vertex n = 0;
    std::size_t m = 0;
    std::vector<std::pair<Edge, double>> rows;
    read_rows(is, n, m, [&](std::size_t) {
        Edge e{};
        double w = 0;
        if (!(is >> e.u >> e.v >> w)) return false;
        rows.push_back({oriented(e), w});
        return true;
    });
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Edge> edges;
    std::vector<double> weights;
    for (const auto& [e, w] : rows) {
        edges.push_back(e);
        weights.push_back(w);
    }
    return WeightedGraph(Graph(n, std::move(edges)), std::move(weights));
}

}  // namespace sgspec
