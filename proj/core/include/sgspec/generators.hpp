#pragma once

#include <cstdint>

#include "sgspec/distributions.hpp"
#include "sgspec/graph.hpp"

namespace sgspec::gen {

/// Uniform simple k-regular graph on n vertices: pairing model, whole sample
/// rejected on any self-loop or multi-edge. Throws InvalidArgument if n*k is
/// odd or k >= n (k = 0 is allowed), NumericalError after kMaxRegularAttempts
/// rejected pairings.
inline constexpr int kMaxRegularAttempts = 1000;
Graph regular(Vertex n, int k, std::uint64_t seed);

/// G(n, p/n): each pair independently with probability p/n, 0 <= p <= n.
Graph erdos_renyi(Vertex n, double p, std::uint64_t seed);

/// Erased configuration model with iid degrees from fstar. An odd stub total is
/// fixed by adding one stub to a uniformly chosen vertex.
Graph configuration(Vertex n, const DegreeDistribution& fstar, std::uint64_t seed);

/// Uniform labeled tree via a uniform Pruefer sequence.
Graph uniform_tree(Vertex n, std::uint64_t seed);

/// Bipartite erased configuration model; vertices [0, na) form side a.
///
/// Side-a degrees are iid fstar, side-b iid gstar. When the stub totals
/// differ, the deficient side receives extra stubs one at a time at uniformly
/// chosen vertices until they agree. `reconciled_stubs` (if given) receives the
/// number of stubs added.
Graph bipartite_configuration(Vertex na, Vertex nb, const DegreeDistribution& fstar, const DegreeDistribution& gstar,
                              std::uint64_t seed, std::int64_t* reconciled_stubs = nullptr);

/// One iid weight per edge, independent of the graph.
WeightedGraph attach_weights(const Graph& g, const WeightSpec& dist, std::uint64_t seed);

/// Galton-Watson tree: root offspring fstar, every other node offspring
/// size_biased_offspring(fstar). Generated breadth first up to generation
/// `depth`; stops with truncated = true once max_nodes would be exceeded.
RootedTree sample_gwt(const DegreeDistribution& fstar, int depth, std::size_t max_nodes, std::uint64_t seed);

/// Same, with the non-root offspring law given explicitly (used when F is
/// already at hand).
RootedTree sample_gwt(const DegreeDistribution& fstar, const DegreeDistribution& offspring, int depth,
                      std::size_t max_nodes, Philox& rng);

}  // namespace sgspec::gen
