#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sgspec {

using Vertex = std::int32_t;

struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are stored once as (u, v) with u < v, sorted lexicographically and
/// without duplicates. The constructor validates; there is no way to build an
/// instance holding a self-loop, a repeated edge or an out-of-range endpoint.
class Graph {
public:
    Graph() = default;
    explicit Graph(Vertex n) : n_(n) {}

    /// Normalizes orientation and order. Throws InvalidArgument on a self-loop,
    /// a duplicate edge or an endpoint outside [0, n).
    Graph(Vertex n, std::vector<Edge> edges);

    /// Like the constructor but silently drops self-loops and collapses
    /// duplicates (the erased configuration model).
    static Graph erased(Vertex n, std::vector<Edge> edges);

    Vertex n() const noexcept { return n_; }
    std::size_t m() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::vector<int> degrees() const;
    std::vector<std::vector<Vertex>> adjacency() const;
    bool has_edge(Vertex u, Vertex v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
};

/// Graph with one real weight per edge, aligned with graph().edges().
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(Graph g, std::vector<double> weights);

    const Graph& graph() const noexcept { return graph_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Weight of edge {u, v}; throws InvalidArgument if absent.
    double weight(Vertex u, Vertex v) const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    Graph graph_;
    std::vector<double> weights_;
};

/// Rooted tree as a parent array; node 0 is the root (parent -1).
struct RootedTree {
    std::vector<Vertex> parent;
    std::vector<int> depth;
    bool truncated = false;  ///< generation limit not reached because max_nodes was hit

    std::size_t size() const noexcept { return parent.size(); }
    Graph to_graph() const;
    std::vector<int> generation_sizes() const;
};

/// Structural check used by tests and by the readers: returns an empty string
/// when every invariant holds, otherwise a description of the first violation.
std::string validate(const Graph& g);
bool is_connected(const Graph& g);
/// Proper two-coloring by side: vertices < na on side a.
bool is_bipartite_split(const Graph& g, Vertex na);

// Edge-list text format: "n m" then m lines "u v" (u < v) in lexicographic order;
// the weighted variant adds a third column with 17 significant digits.
void write_edge_list(std::ostream& os, const Graph& g);
void write_edge_list(std::ostream& os, const WeightedGraph& g);
std::string to_edge_list(const Graph& g);
Graph read_edge_list(std::istream& is);
WeightedGraph read_weighted_edge_list(std::istream& is);

}  // namespace sgspec
