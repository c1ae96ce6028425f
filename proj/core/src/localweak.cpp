#include "sgspec/localweak.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "sgspec/errors.hpp"
#include "sgspec/generators.hpp"
#include "sgspec/json17.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/random.hpp"

namespace sgspec::lwc {

namespace {

// Search nodes allowed per cyclic core before giving up.
constexpr std::size_t kSearchBudget = 200000;

using Adjacency = std::vector<std::vector<int>>;

std::string radius_prefix(int radius, char kind) { return "r" + std::to_string(radius) + ":" + kind; }

// AHU code of the subtree at v, children given explicitly.
std::string ahu(int v, const Adjacency& children) {
    std::vector<std::string> parts;
    parts.reserve(children[v].size());
    for (int c : children[v]) parts.push_back(ahu(c, children));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
}

std::string tree_code(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    Adjacency children(n);
    std::vector<int> parent(n, -1);
    std::vector<int> order{0};
    parent[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        for (int w : adj[v]) {
            if (parent[w] != -1) continue;
            parent[w] = v;
            children[v].push_back(w);
            order.push_back(w);
        }
    }
    return ahu(0, children);
}

// Colour refinement to the coarsest equitable partition. Colours are ranks of
// label-free signatures, so the result is invariant under relabelling.
void refine(const Adjacency& adj, std::vector<int>& colour) {
    const int n = static_cast<int>(adj.size());
    int classes = static_cast<int>(std::set<int>(colour.begin(), colour.end()).size());
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(colour[v]);
            std::vector<int> nb;
            for (int w : adj[v]) nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        std::vector<std::vector<int>> distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        const int next = static_cast<int>(distinct.size());
        if (next == classes) return;
        classes = next;
    }
}

struct CoreSearch {
    const Adjacency& adj;
    const std::vector<std::string>& labels;
    std::vector<std::vector<bool>> edge;
    std::string best;
    bool have_best = false;
    std::size_t nodes = 0;

    CoreSearch(const Adjacency& a, const std::vector<std::string>& l) : adj(a), labels(l) {
        const int n = static_cast<int>(adj.size());
        edge.assign(n, std::vector<bool>(n, false));
        for (int v = 0; v < n; ++v)
            for (int w : adj[v]) edge[v][w] = true;
    }

    std::string leaf_code(const std::vector<int>& colour) const {
        const int n = static_cast<int>(adj.size());
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[colour[v]] = v;
        std::string out = std::to_string(n) + "|";
        for (int v : order) out += labels[v] + "|";
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out += edge[order[i]][order[j]] ? '1' : '0';
        return out;
    }

    bool twins(int u, int v) const {
        for (std::size_t w = 0; w < adj.size(); ++w) {
            if (static_cast<int>(w) == u || static_cast<int>(w) == v) continue;
            if (edge[u][w] != edge[v][w]) return false;
        }
        return true;
    }

    void search(std::vector<int> colour) {
        if (++nodes > kSearchBudget) throw CapacityError("ball canonization exceeded its search budget");
        refine(adj, colour);
        const int n = static_cast<int>(adj.size());
        std::vector<int> size(n, 0);
        for (int c : colour) ++size[c];
        int target = -1;
        for (int c = 0; c < n; ++c)
            if (size[c] > 1) {
                target = c;
                break;
            }
        if (target < 0) {
            std::string code = leaf_code(colour);
            if (!have_best || code < best) {
                best = std::move(code);
                have_best = true;
            }
            return;
        }
        std::vector<int> tried;
        for (int v = 0; v < n; ++v) {
            if (colour[v] != target) continue;
            if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twins(u, v); })) continue;
            tried.push_back(v);
            std::vector<int> next(n);
            for (int w = 0; w < n; ++w) next[w] = 2 * colour[w] + (colour[w] == target && w != v ? 1 : 0);
            search(std::move(next));
        }
    }
};

std::string cyclic_code(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    // Strip pendant trees (never the root) into per-vertex child lists.
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());
    std::vector<bool> removed(n, false);
    Adjacency children(n);
    std::deque<int> queue;
    for (int v = 1; v < n; ++v)
        if (degree[v] == 1) queue.push_back(v);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        removed[v] = true;
        for (int w : adj[v]) {
            if (removed[w]) continue;
            children[w].push_back(v);
            if (--degree[w] == 1 && w != 0) queue.push_back(w);
        }
    }

    std::vector<int> core;
    std::vector<int> index(n, -1);
    for (int v = 0; v < n; ++v)
        if (!removed[v]) {
            index[v] = static_cast<int>(core.size());
            core.push_back(v);
        }
    const int k = static_cast<int>(core.size());
    Adjacency core_adj(k);
    std::vector<std::string> labels(k);
    for (int i = 0; i < k; ++i) {
        for (int w : adj[core[i]])
            if (index[w] >= 0) core_adj[i].push_back(index[w]);
        labels[i] = (core[i] == 0 ? "R" : "") + ahu(core[i], children);
    }

    std::vector<std::string> distinct = labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> colour(k);
    for (int i = 0; i < k; ++i)
        colour[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), labels[i]) - distinct.begin());

    CoreSearch s(core_adj, labels);
    s.search(std::move(colour));
    return s.best;
}

std::vector<std::string> vertex_codes(const Graph& g, int r, int ball_cap) {
    const auto adj = g.adjacency();
    std::vector<std::string> codes(static_cast<std::size_t>(g.n()));
    parallel_for(codes.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t v = lo; v < hi; ++v)
            codes[v] = canonical_code(ball_subgraph(g, adj, static_cast<Vertex>(v), r, ball_cap), r);
    });
    return codes;
}

}  // namespace

double BallDistribution::freq(const std::string& code) const {
    const auto it = counts.find(code);
    if (it == counts.end() || sample_count == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(sample_count);
}

std::string canonical_code(const Graph& g, int radius) {
    if (radius < 0) throw InvalidArgument("ball radius must be >= 0");
    if (g.n() < 1) throw InvalidArgument("rooted graph needs at least one vertex");
    Adjacency adj(g.n());
    for (const auto& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    if (!is_connected(g)) throw InvalidArgument("rooted ball must be connected");
    if (g.m() + 1 == static_cast<std::size_t>(g.n())) return radius_prefix(radius, 'T') + tree_code(adj);
    return radius_prefix(radius, 'G') + cyclic_code(adj);
}

Graph ball_subgraph(const Graph& g, const std::vector<std::vector<Vertex>>& adj, Vertex v, int r, int ball_cap) {
    if (v < 0 || v >= g.n()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    if (r < 0) throw InvalidArgument("ball radius must be >= 0");
    std::unordered_map<Vertex, int> index{{v, 0}};
    std::vector<Vertex> order{v};
    std::vector<int> dist{0};
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (dist[i] == r) continue;
        for (Vertex w : adj[order[i]]) {
            if (index.count(w)) continue;
            if (static_cast<int>(order.size()) >= ball_cap)
                throw CapacityError("ball of radius " + std::to_string(r) + " around vertex " + std::to_string(v) +
                                    " exceeds ball_cap " + std::to_string(ball_cap));
            index.emplace(w, static_cast<int>(order.size()));
            order.push_back(w);
            dist.push_back(dist[i] + 1);
        }
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex w : adj[order[i]]) {
            const auto it = index.find(w);
            if (it != index.end() && static_cast<int>(i) < it->second) edges.push_back({static_cast<Vertex>(i), it->second});
        }
    return Graph(static_cast<Vertex>(order.size()), std::move(edges));
}

RootedBall extract_ball(const Graph& g, Vertex v, int r, int ball_cap) {
    const Graph ball = ball_subgraph(g, g.adjacency(), v, r, ball_cap);
    return {canonical_code(ball, r), r, ball.n()};
}

BallDistribution ball_distribution(const Graph& g, int r, int ball_cap) {
    if (g.n() == 0) throw InvalidArgument("ball distribution of an empty graph");
    BallDistribution d;
    d.radius = r;
    d.sample_count = static_cast<std::size_t>(g.n());
    for (auto& code : vertex_codes(g, r, ball_cap)) ++d.counts[std::move(code)];
    return d;
}

BallDistribution gwt_ball_distribution(const DegreeDistribution& fstar, int r, std::size_t samples,
                                       std::uint64_t seed, int ball_cap) {
    if (samples == 0) throw InvalidArgument("gwt_ball_distribution needs samples >= 1");
    if (r < 0) throw InvalidArgument("ball radius must be >= 0");
    const DegreeDistribution offspring = fstar.mean() > 0 ? size_biased_offspring(fstar) : fstar;
    std::vector<std::string> codes(samples);
    parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            Philox rng = make_stream(seed, "lwc.gwt", s);
            const RootedTree t = gen::sample_gwt(fstar, offspring, r, static_cast<std::size_t>(ball_cap), rng);
            if (t.truncated)
                throw CapacityError("Galton-Watson sample " + std::to_string(s) + " exceeds ball_cap " +
                                    std::to_string(ball_cap));
            codes[s] = canonical_code(t.to_graph(), r);
        }
    });
    BallDistribution d;
    d.radius = r;
    d.sample_count = samples;
    for (auto& code : codes) ++d.counts[std::move(code)];
    return d;
}

double tv_distance(const BallDistribution& a, const BallDistribution& b) {
    if (a.radius != b.radius) throw InvalidArgument("tv_distance needs equal radii");
    double sum = 0;
    for (const auto& [code, count] : a.counts) sum += std::abs(a.freq(code) - b.freq(code));
    for (const auto& [code, count] : b.counts)
        if (!a.counts.count(code)) sum += b.freq(code);
    return 0.5 * sum;
}

double pair_independence_stat(const Graph& g, int r, std::size_t samples, std::uint64_t seed, int ball_cap) {
    if (g.n() == 0) throw InvalidArgument("pair statistic of an empty graph");
    if (samples == 0) throw InvalidArgument("pair statistic needs samples >= 1");
    const auto adj = g.adjacency();
    std::unordered_map<Vertex, int> cache;
    std::map<std::string, int> ids;
    auto code_id = [&](Vertex v) {
        if (const auto it = cache.find(v); it != cache.end()) return it->second;
        const std::string code = canonical_code(ball_subgraph(g, adj, v, r, ball_cap), r);
        const int id = ids.emplace(code, static_cast<int>(ids.size())).first->second;
        cache.emplace(v, id);
        return id;
    };

    Philox rng = make_stream(seed, "lwc.pairs", 0);
    std::map<std::pair<int, int>, std::size_t> joint;
    std::map<int, std::size_t> first, second;
    for (std::size_t s = 0; s < samples; ++s) {
        const int a = code_id(static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.n()))));
        const int b = code_id(static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.n()))));
        ++joint[{a, b}];
        ++first[a];
        ++second[b];
    }
    const double total = static_cast<double>(samples);
    // Product mass off the joint support contributes fully; add it as the complement.
    double sum = 0, covered = 0;
    for (const auto& [key, count] : joint) {
        const double prod = first[key.first] / total * (second[key.second] / total);
        sum += std::abs(count / total - prod);
        covered += prod;
    }
    sum += std::max(0.0, 1.0 - covered);
    return 0.5 * sum;
}

double tail_mass(const Graph& g, int ell) {
    if (g.n() == 0) throw InvalidArgument("tail mass of an empty graph");
    std::uint64_t acc = 0;
    for (int d : g.degrees())
        if (d > ell) acc += static_cast<std::uint64_t>(d) + 1;
    return static_cast<double>(acc) / g.n();
}

std::vector<TailPoint> uniform_integrability_profile(const Graph& g) {
    const auto deg = g.degrees();
    const int dmax = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    std::vector<TailPoint> out{{0, tail_mass(g, 0)}};
    for (int ell = 1;; ell *= 2) {
        out.push_back({ell, tail_mass(g, ell)});
        if (ell >= dmax) break;
    }
    return out;
}

std::string to_hex(const std::string& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (unsigned char c : bytes) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

std::string from_hex(const std::string& hex) {
    if (hex.size() % 2) throw InvalidArgument("hex string has odd length");
    auto nibble = [](char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw InvalidArgument(std::string("invalid hex digit '") + c + "'");
    };
    std::string out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) out += static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1]));
    return out;
}

std::string to_json(const BallDistribution& d) {
    nlohmann::json j;
    j["r"] = d.radius;
    j["sample_count"] = d.sample_count;
    j["entries"] = nlohmann::json::array();
    for (const auto& [code, count] : d.counts) j["entries"].push_back({{"code_hex", to_hex(code)}, {"freq", d.freq(code)}});
    return dump17(j);
}

BallDistribution ball_distribution_from_json(const std::string& text) {
    BallDistribution d;
    try {
        const auto j = nlohmann::json::parse(text);
        d.radius = j.at("r").get<int>();
        d.sample_count = j.at("sample_count").get<std::size_t>();
        std::size_t total = 0;
        for (const auto& e : j.at("entries")) {
            const double f = e.at("freq").get<double>();
            const auto count = static_cast<std::size_t>(std::llround(f * static_cast<double>(d.sample_count)));
            d.counts[from_hex(e.at("code_hex").get<std::string>())] = count;
            total += count;
        }
        if (total != d.sample_count) throw InvalidArgument("ball distribution counts do not add up to sample_count");
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed ball distribution JSON: ") + e.what());
    }
    return d;
}

}  // namespace sgspec::lwc
