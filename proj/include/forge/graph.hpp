#pragma once

// Finite multigraphs with exact girth, connectivity/bipartiteness checks, and
// Cayley / coset graph builders over arbitrary finite groups.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge::graphs {

/// Undirected multigraph.  Edges are kept as a flat sorted pair list with
/// multiplicities (u <= v; loops allowed).  Adjacency over the distinct pairs
/// is materialized as index ranges for BFS.
struct MultiGraph {
    struct Edge {
        int u, v; // u <= v
        int mult; // parallel-edge count, >= 1
    };

    int n = 0;
    std::vector<Edge> edges; // sorted by (u, v)
    std::optional<int> declared_degree;
    bool is_vertex_transitive = false;

    // CSR over distinct edges; entries are (neighbor, edge index).
    std::vector<int> adj_offset;
    std::vector<std::pair<int, int>> adj;

    static MultiGraph from_edge_multiset(int n, std::vector<std::pair<int, int>> pairs,
                                         std::optional<int> degree = std::nullopt,
                                         bool vertex_transitive = false) {
        MultiGraph g;
        g.n = n;
        g.declared_degree = degree;
        g.is_vertex_transitive = vertex_transitive;
        for (auto& [u, v] : pairs) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw DomainError("MultiGraph: vertex index out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(pairs.begin(), pairs.end());
        for (size_t i = 0; i < pairs.size();) {
            size_t j = i;
            while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
            g.edges.push_back({pairs[i].first, pairs[i].second, static_cast<int>(j - i)});
            i = j;
        }
        g.finalize();
        return g;
    }

    void finalize() {
        adj_offset.assign(n + 1, 0);
        for (const auto& e : edges) {
            ++adj_offset[e.u + 1];
            if (e.v != e.u) ++adj_offset[e.v + 1];
        }
        for (int i = 0; i < n; ++i) adj_offset[i + 1] += adj_offset[i];
        adj.resize(adj_offset[n]);
        std::vector<int> cursor(adj_offset.begin(), adj_offset.end() - 1);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            adj[cursor[edges[e].u]++] = {edges[e].v, e};
            if (edges[e].v != edges[e].u) adj[cursor[edges[e].v]++] = {edges[e].u, e};
        }
        if (declared_degree) {
            auto deg = degrees();
            for (int v = 0; v < n; ++v)
                if (deg[v] != *declared_degree)
                    throw StructuralError("MultiGraph: declared degree violated at vertex " +
                                          std::to_string(v));
        }
    }

    long long edge_count() const {
        long long m = 0;
        for (const auto& e : edges) m += e.mult;
        return m;
    }

    // Loops count 2; parallel edges count separately.
    std::vector<int> degrees() const {
        std::vector<int> deg(n, 0);
        for (const auto& e : edges) {
            if (e.u == e.v) {
                deg[e.u] += 2 * e.mult;
            } else {
                deg[e.u] += e.mult;
                deg[e.v] += e.mult;
            }
        }
        return deg;
    }

    bool has_loop() const {
        for (const auto& e : edges)
            if (e.u == e.v) return true;
        return false;
    }

    bool has_parallel() const {
        for (const auto& e : edges)
            if (e.u != e.v && e.mult >= 2) return true;
        return false;
    }

    std::optional<int> regular_degree() const {
        if (n == 0) return std::nullopt;
        auto deg = degrees();
        for (int v = 1; v < n; ++v)
            if (deg[v] != deg[0]) return std::nullopt;
        return deg[0];
    }
};

namespace detail {

// Shortest cycle through `root` in the simple support of g (loops and
// parallel edges must be handled by the caller).  Prunes once no closure can
// beat `best`.
inline int girth_from_root(const MultiGraph& g, int root, int best) {
    std::vector<int> dist(g.n, -1), parent_edge(g.n, -1);
    std::vector<int> frontier{root}, next;
    dist[root] = 0;
    int depth = 0;
    while (!frontier.empty() && 2 * depth + 1 < best) {
        next.clear();
        for (int u : frontier) {
            for (int a = g.adj_offset[u]; a < g.adj_offset[u + 1]; ++a) {
                auto [v, eid] = g.adj[a];
                if (eid == parent_edge[u]) continue;
                if (dist[v] == -1) {
                    dist[v] = depth + 1;
                    parent_edge[v] = eid;
                    next.push_back(v);
                } else {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
        frontier.swap(next);
        ++depth;
    }
    return best;
}

} // namespace detail

/// Exact girth: 1 if a loop exists, 2 if parallel edges exist, otherwise the
/// shortest cycle length via per-root BFS (one root suffices for
/// vertex-transitive builds).  nullopt means acyclic.
inline std::optional<int> girth(const MultiGraph& g) {
    if (g.has_loop()) return 1;
    if (g.has_parallel()) return 2;
    int best = std::numeric_limits<int>::max();
    int roots = g.is_vertex_transitive ? std::min(g.n, 1) : g.n;
    for (int r = 0; r < roots; ++r) best = detail::girth_from_root(g, r, best);
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

struct Bipartition {
    std::vector<int> color; // vertex -> {0, 1}
};

struct ConnectivityReport {
    bool connected = false;
    std::optional<Bipartition> bipartition;
};

inline ConnectivityReport connectivity_and_bipartition(const MultiGraph& g) {
    ConnectivityReport rep;
    std::vector<int> color(g.n, -1);
    bool odd_walk = g.has_loop();
    int components = 0;
    std::queue<int> bfs;
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        ++components;
        color[s] = 0;
        bfs.push(s);
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int a = g.adj_offset[u]; a < g.adj_offset[u + 1]; ++a) {
                int v = g.adj[a].first;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    bfs.push(v);
                } else if (color[v] == color[u]) {
                    odd_walk = true;
                }
            }
        }
    }
    rep.connected = components <= 1;
    if (!odd_walk) rep.bipartition = Bipartition{std::move(color)};
    return rep;
}

/// Cayley graph on `elements` with a symmetric generator multiset: one edge
/// {h, s*h} per inverse-pair {s, s^-1} per vertex; an involution contributes
/// one edge, the identity generator a loop per two copies.  Degree equals the
/// generator count.
template <class Elem, class Mul, class Inv, class Key>
MultiGraph cayley_graph(const std::vector<Elem>& elements, const std::vector<Elem>& generators,
                        Mul mul, Inv inv, Key key) {
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(elements.size() * 2);
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
        if (!index.emplace(key(elements[i]), i).second)
            throw DomainError("cayley_graph: duplicate element");
    }
    auto lookup = [&](const Elem& e) {
        auto it = index.find(key(e));
        if (it == index.end())
            throw ClosureViolation("cayley_graph: product left the element set");
        return it->second;
    };

    // Collapse the generator multiset and verify closure under inverse.
    std::vector<std::pair<Elem, int>> distinct;
    for (const Elem& s : generators) {
        bool found = false;
        for (auto& [t, m] : distinct)
            if (key(t) == key(s)) {
                ++m;
                found = true;
                break;
            }
        if (!found) distinct.emplace_back(s, 1);
    }
    auto mult_of = [&](const Elem& e) {
        for (const auto& [t, m] : distinct)
            if (key(t) == key(e)) return m;
        return 0;
    };

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(elements.size() * generators.size() / 2 + 1);
    for (const auto& [s, m] : distinct) {
        Elem si = inv(s);
        if (key(si) == key(s)) {
            bool is_identity = !elements.empty() && key(mul(s, elements[0])) == key(elements[0]);
            if (is_identity) {
                if (m % 2 != 0)
                    throw NonSymmetricGenerators("cayley_graph: odd multiplicity of identity");
                for (int i = 0; i < static_cast<int>(elements.size()); ++i)
                    for (int c = 0; c < m / 2; ++c) pairs.emplace_back(i, i);
                continue;
            }
            // Involution: one edge per unordered pair of endpoints.
            for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
                int j = lookup(mul(s, elements[i]));
                if (i < j)
                    for (int c = 0; c < m; ++c) pairs.emplace_back(i, j);
            }
        } else {
            if (mult_of(si) != m)
                throw NonSymmetricGenerators("cayley_graph: generator multiset not inverse-closed");
            if (key(si) < key(s)) continue; // handle each pair once
            for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
                int j = lookup(mul(s, elements[i]));
                for (int c = 0; c < m; ++c) pairs.emplace_back(i, j);
            }
        }
    }
    return MultiGraph::from_edge_multiset(static_cast<int>(elements.size()), std::move(pairs),
                                          static_cast<int>(generators.size()), true);
}

struct CosetGraphResult {
    MultiGraph graph;
    bool generates;             // whether <a, b> is the whole element set
    std::vector<int> coset_a;   // element index -> color-0 vertex
    std::vector<int> coset_b;   // element index -> color-1 vertex
};

/// Bipartite coset graph: vertices are left cosets h<a> (color 0) and h<b>
/// (color 1); each element h contributes the edge {h<a>, h<b>}.  Requires
/// order(a) = order(b) = k.  k-regular with |V| = 2|H|/k and |E| = |H|.
///
/// `ra` and `rb` map an element index to the index of its right translate by
/// a resp. b.
template <class RA, class RB>
CosetGraphResult coset_graph(int k, int n_elements, int id_index, RA ra, RB rb) {
    auto order_of = [&](auto act) {
        int steps = 1, at = act(id_index);
        while (at != id_index) {
            at = act(at);
            if (++steps > n_elements)
                throw StructuralError("coset_graph: action does not close");
        }
        return steps;
    };
    if (order_of(ra) != k || order_of(rb) != k)
        throw OrderMismatch("coset_graph: generator order != k");

    auto orbits = [&](auto act, std::vector<int>& coset) {
        coset.assign(n_elements, -1);
        int next = 0;
        for (int i = 0; i < n_elements; ++i) {
            if (coset[i] != -1) continue;
            int at = i;
            do {
                coset[at] = next;
                at = act(at);
            } while (at != i);
            ++next;
        }
        return next;
    };

    CosetGraphResult res;
    int na = orbits(ra, res.coset_a);
    int nb = orbits(rb, res.coset_b);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n_elements);
    for (int h = 0; h < n_elements; ++h)
        pairs.emplace_back(res.coset_a[h], na + res.coset_b[h]);
    res.graph = MultiGraph::from_edge_multiset(na + nb, std::move(pairs), k);

    // <a, b> is the component of the identity's a-coset.
    res.generates = connectivity_and_bipartition(res.graph).connected;
    return res;
}

/// Edge-list text format: header `n m k bipartite_flag`, then m lines `u v`
/// (0-based, parallel edges repeated, loops as `u u`).
inline void write_edge_list(const MultiGraph& g, std::ostream& os) {
    int bip = connectivity_and_bipartition(g).bipartition.has_value() ? 1 : 0;
    os << g.n << ' ' << g.edge_count() << ' ' << g.declared_degree.value_or(0) << ' ' << bip
       << '\n';
    for (const auto& e : g.edges)
        for (int c = 0; c < e.mult; ++c) os << e.u << ' ' << e.v << '\n';
}

inline MultiGraph read_edge_list(std::istream& is) {
    int n, k, bip;
    long long m;
    if (!(is >> n >> m >> k >> bip)) throw DomainError("read_edge_list: bad header");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw DomainError("read_edge_list: truncated edge list");
        pairs.emplace_back(u, v);
    }
    return MultiGraph::from_edge_multiset(
        n, std::move(pairs), k > 0 ? std::optional<int>(k) : std::nullopt);
}

inline std::string to_edge_list_string(const MultiGraph& g) {
    std::ostringstream ss;
    write_edge_list(g, ss);
    return ss.str();
}

} // namespace forge::graphs
