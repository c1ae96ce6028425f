#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sgspec/distributions.hpp"
#include "sgspec/graph.hpp"

namespace sgspec::lwc {

inline constexpr int kDefaultBallCap = 64;

/// Canonical code of the radius-r ball around a vertex. Two balls get equal
/// codes iff they are rooted-isomorphic. The radius is part of the code, so
/// codes of different radii never compare equal.
struct RootedBall {
    std::string code;
    int radius = 0;
    int vertices = 0;

    friend bool operator==(const RootedBall&, const RootedBall&) = default;
};

/// Empirical law of ball codes, kept as integer counts so the frequencies
/// sum to one exactly.
struct BallDistribution {
    int radius = 0;
    std::size_t sample_count = 0;
    std::map<std::string, std::size_t> counts;

    double freq(const std::string& code) const;
};

/// Canonical code of a rooted graph (root = vertex 0 of `g`). Trees use the
/// AHU encoding; graphs with cycles strip their pendant trees into vertex
/// labels and canonize the remaining core by exhaustive individualization
/// with colour refinement. Throws CapacityError if the search exceeds its node budget.
std::string canonical_code(const Graph& g, int radius);

/// Induced subgraph on the vertices within distance r of v, relabelled with
/// v as vertex 0 (BFS order). Throws CapacityError naming v if it has more
/// than ball_cap vertices.
Graph ball_subgraph(const Graph& g, const std::vector<std::vector<Vertex>>& adj, Vertex v, int r,
                    int ball_cap = kDefaultBallCap);

RootedBall extract_ball(const Graph& g, Vertex v, int r, int ball_cap = kDefaultBallCap);

/// Exact distribution over all n roots.
BallDistribution ball_distribution(const Graph& g, int r, int ball_cap = kDefaultBallCap);

/// Monte Carlo over `samples` Galton-Watson trees (root law fstar) cut at depth r.
BallDistribution gwt_ball_distribution(const DegreeDistribution& fstar, int r, std::size_t samples,
                                       std::uint64_t seed, int ball_cap = kDefaultBallCap);

/// (1/2) sum |a - b| over the union of codes; InvalidArgument on radius mismatch.
double tv_distance(const BallDistribution& a, const BallDistribution& b);

/// TV distance between the joint code law of `samples` uniform ordered vertex
/// pairs (drawn with replacement) and the product of its two marginals.
double pair_independence_stat(const Graph& g, int r, std::size_t samples, std::uint64_t seed,
                              int ball_cap = kDefaultBallCap);

struct TailPoint {
    int ell;
    double tail_mass;
};
/// Mean over vertices of (deg + 1) 1(deg > ell) for ell in {0, 1, 2, 4, 8, ...}
/// up to the maximum degree.
std::vector<TailPoint> uniform_integrability_profile(const Graph& g);
double tail_mass(const Graph& g, int ell);

/// JSON {r, sample_count, entries: [{code_hex, freq}]}.
std::string to_json(const BallDistribution& d);
BallDistribution ball_distribution_from_json(const std::string& text);

std::string to_hex(const std::string& bytes);
std::string from_hex(const std::string& hex);

}  // namespace sgspec::lwc
