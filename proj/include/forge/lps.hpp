#pragma once

// LPS quotient graphs X^{p,q}: Cayley graphs of PGL2(q) or PSL2(q) on the
// p+1 projective matrices coming from the four-square representations of p.
// Includes the structural checks, the published girth lower bound, the
// Nielsen-Schreier rank cross-check, and a matrix-free girth computation
// that never materializes the vertex set.

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "forge/arith.hpp"
#include "forge/errors.hpp"
#include "forge/graph.hpp"
#include "forge/projective.hpp"

namespace forge::lps {

using projective::ProjMat;
using std::int64_t;
using std::uint64_t;

struct LpsParams {
    int64_t p = 0;
    int64_t q = 0;
    int k = 0;            // p + 1
    int legendre_pq = 0;  // legendre(p, q), in {-1, +1}

    static LpsParams validate(int64_t p, int64_t q) {
        if (!arith::is_prime(p) || p % 4 != 1 || p < 5)
            throw DomainError("lps: p must be a prime = 1 mod 4, p >= 5");
        if (!arith::is_prime(q) || q % 4 != 1)
            throw DomainError("lps: q must be a prime = 1 mod 4");
        if (q == p) throw DomainError("lps: q must differ from p");
        if (q >= 65536) throw DomainError("lps: q must be < 2^16");
        return {p, q, static_cast<int>(p + 1), arith::legendre(p, q)};
    }
};

/// The p+1 generator matrices: alpha = (x0,x1,x2,x3) in S(p) maps to the
/// canonical form of [[x0+e*x1, x2+e*x3], [-x2+e*x3, x0-e*x1]] mod q, where
/// e^2 = -1 mod q.  Quaternion conjugates map to mutually inverse matrices.
inline std::vector<ProjMat> generators_mod_q(int64_t p, int64_t q) {
    auto params = LpsParams::validate(p, q);
    int64_t eps = arith::sqrt_minus_one(q).value();
    std::vector<ProjMat> gens;
    gens.reserve(static_cast<size_t>(params.k));
    for (const auto& a : arith::enumerate_S(p).members)
        gens.push_back(projective::canonicalize(a.x0 + eps * a.x1, a.x2 + eps * a.x3,
                                                -a.x2 + eps * a.x3, a.x0 - eps * a.x1, q));
    return gens;
}

struct LpsGraph {
    LpsParams params;
    std::vector<ProjMat> generators;   // multiset of size p+1
    std::vector<ProjMat> vertex_labels; // canonical matrices in build order
    graphs::MultiGraph graph;
    bool bipartite = false;
};

/// Explicit build.  Vertices are PGL2(q) when legendre(p,q) = -1 (bipartite
/// case, the generators swap the two PSL2 cosets) and PSL2(q) otherwise.
inline LpsGraph build_lps(int64_t p, int64_t q, int64_t cap = 5'000'000) {
    LpsGraph out;
    out.params = LpsParams::validate(p, q);
    out.generators = generators_mod_q(p, q);

    auto expected_class = out.params.legendre_pq == -1 ? projective::DetClass::NonSquare
                                                       : projective::DetClass::Square;
    for (const auto& s : out.generators)
        if (projective::psl2_class(s) != expected_class)
            throw StructuralError("build_lps: generator det class disagrees with legendre(p,q)");

    auto all = projective::pgl2_elements(q, out.params.legendre_pq == -1 ? cap : 2 * cap);
    if (out.params.legendre_pq == -1) {
        out.vertex_labels = std::move(all);
    } else {
        out.vertex_labels.reserve(all.size() / 2);
        for (const auto& m : all)
            if (projective::psl2_class(m) == projective::DetClass::Square)
                out.vertex_labels.push_back(m);
    }
    if (static_cast<int64_t>(out.vertex_labels.size()) > cap)
        throw CapExceeded("build_lps: vertex count exceeds cap");

    out.graph = graphs::cayley_graph(
        out.vertex_labels, out.generators,
        [](const ProjMat& a, const ProjMat& b) { return projective::compose(a, b); },
        [](const ProjMat& m) { return projective::inverse(m); },
        [](const ProjMat& m) { return projective::pack(m); });

    auto conn = graphs::connectivity_and_bipartition(out.graph);
    if (!conn.connected)
        throw ConnectivityFailure("build_lps: quotient graph is disconnected");
    out.bipartite = conn.bipartition.has_value();
    if (out.bipartite != (out.params.legendre_pq == -1))
        throw StructuralError("build_lps: bipartiteness disagrees with legendre(p,q)");
    return out;
}

/// (4/3) log_p(q), the published lower bound for the girth of X^{p,q}.
inline double paper_girth_bound(int64_t p, int64_t q) {
    LpsParams::validate(p, q);
    return (4.0 / 3.0) * std::log(static_cast<double>(q)) / std::log(static_cast<double>(p));
}

struct GirthResult {
    bool exact = false;
    int value = 0; // girth if exact, else a certified lower bound (girth >= value)
};

namespace detail {

// Open-addressing map from packed canonical matrices (nonzero) to BFS depth.
// unordered_map overhead is what dominates the lazy BFS memory otherwise.
class FlatDepthMap {
  public:
    explicit FlatDepthMap(size_t expected) {
        size_t want = 16;
        while (want < expected * 2) want <<= 1;
        keys_.assign(want, 0);
        depth_.assign(want, 0);
        mask_ = want - 1;
    }

    // Returns the stored depth, or -1 after inserting the key fresh.
    int find_or_insert(uint64_t key, uint8_t depth) {
        if (size_ * 2 >= keys_.size()) grow();
        size_t at = hash(key) & mask_;
        while (keys_[at] != 0) {
            if (keys_[at] == key) return depth_[at];
            at = (at + 1) & mask_;
        }
        keys_[at] = key;
        depth_[at] = depth;
        ++size_;
        return -1;
    }

    size_t size() const { return size_; }

  private:
    static uint64_t hash(uint64_t x) {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        x *= 0xc4ceb9fe1a85ec53ULL;
        x ^= x >> 33;
        return x;
    }

    void grow() {
        std::vector<uint64_t> old_keys = std::move(keys_);
        std::vector<uint8_t> old_depth = std::move(depth_);
        keys_.assign(old_keys.size() * 2, 0);
        depth_.assign(old_keys.size() * 2, 0);
        mask_ = keys_.size() - 1;
        for (size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == 0) continue;
            size_t at = hash(old_keys[i]) & mask_;
            while (keys_[at] != 0) at = (at + 1) & mask_;
            keys_[at] = old_keys[i];
            depth_[at] = old_depth[i];
        }
    }

    std::vector<uint64_t> keys_;
    std::vector<uint8_t> depth_;
    size_t mask_ = 0;
    size_t size_ = 0;
};

} // namespace detail

/// Exact girth of X^{p,q} by breadth-first exploration from the identity,
/// multiplying out canonical matrices on demand (valid for the whole graph
/// by vertex-transitivity).  Stops after depth_cap levels and returns a
/// certified lower bound if no cycle has closed.
inline GirthResult girth_lazy(int64_t p, int64_t q, int depth_cap = 8) {
    LpsParams::validate(p, q);
    if (depth_cap < 1 || depth_cap > 120) throw DomainError("girth_lazy: bad depth cap");
    auto gens = generators_mod_q(p, q);

    const auto id = projective::identity(q);
    std::vector<uint64_t> gen_keys;
    for (const auto& s : gens) gen_keys.push_back(projective::pack(s));
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gen_keys[i] == projective::pack(id)) return {true, 1}; // loop
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (gen_keys[i] == gen_keys[j]) return {true, 2}; // parallel edges
    }
    // Generator index of s^-1, used to skip the tree edge back to the parent.
    std::vector<int> inv_index(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        uint64_t ik = projective::pack(projective::inverse(gens[i]));
        int at = -1;
        for (size_t j = 0; j < gens.size(); ++j)
            if (gen_keys[j] == ik) at = static_cast<int>(j);
        if (at < 0) throw StructuralError("girth_lazy: generator multiset not inverse-closed");
        inv_index[i] = at;
    }

    // Frontier entries carry the packed matrix plus the generator that
    // reached it; matrices are unpacked on expansion to keep levels small.
    struct Node {
        uint64_t key;
        int16_t via; // -1 at the root
    };

    // Canonicalization by inverse table instead of extended gcd; entries of
    // canonical matrices lie in [0, q) so products of sums stay below 2^33.
    std::vector<int64_t> inv_table(q, 0);
    for (int64_t x = 1; x < q; ++x) inv_table[x] = arith::mod_inv(x, q);
    auto compose_packed = [&](const ProjMat& s, uint64_t mkey) -> uint64_t {
        int64_t ma = static_cast<int64_t>(mkey >> 48), mb = static_cast<int64_t>((mkey >> 32) & 0xffff);
        int64_t mc = static_cast<int64_t>((mkey >> 16) & 0xffff), md = static_cast<int64_t>(mkey & 0xffff);
        int64_t a = (s.a * ma + s.b * mc) % q, b = (s.a * mb + s.b * md) % q;
        int64_t c = (s.c * ma + s.d * mc) % q, d = (s.c * mb + s.d * md) % q;
        int64_t iv = inv_table[a != 0 ? a : b != 0 ? b : c != 0 ? c : d];
        a = a * iv % q;
        b = b * iv % q;
        c = c * iv % q;
        d = d * iv % q;
        return (static_cast<uint64_t>(a) << 48) | (static_cast<uint64_t>(b) << 32) |
               (static_cast<uint64_t>(c) << 16) | static_cast<uint64_t>(d);
    };

    detail::FlatDepthMap seen(1 << 20);
    seen.find_or_insert(projective::pack(id), 0);
    std::vector<Node> frontier{{projective::pack(id), -1}}, next;

    int best = std::numeric_limits<int>::max();
    for (int depth = 0; depth < depth_cap; ++depth) {
        if (2 * depth + 1 >= best) break;
        next.clear();
        for (const auto& node : frontier) {
            for (size_t si = 0; si < gens.size(); ++si) {
                if (node.via >= 0 && inv_index[node.via] == static_cast<int>(si))
                    continue; // the unique edge back to the parent
                uint64_t wkey = compose_packed(gens[si], node.key);
                int prev = seen.find_or_insert(wkey, static_cast<uint8_t>(depth + 1));
                if (prev < 0) {
                    next.push_back({wkey, static_cast<int16_t>(si)});
                } else {
                    best = std::min(best, depth + prev + 1);
                }
            }
        }
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    if (best == std::numeric_limits<int>::max()) return {false, 2 * depth_cap};
    return {true, best};
}

struct RankCheck {
    long long computed = 0;  // E - V + 1
    long long predicted = 0; // V*((p+1)/2 - 1) + 1, Nielsen-Schreier at index V
    bool match = false;
};

inline RankCheck rank_check(const LpsGraph& g) {
    RankCheck rc;
    rc.computed = g.graph.edge_count() - g.graph.n + 1;
    rc.predicted = static_cast<long long>(g.graph.n) * ((g.params.p + 1) / 2 - 1) + 1;
    rc.match = rc.computed == rc.predicted;
    return rc;
}

/// Sidecar vertex labels: line i holds the canonical matrix of vertex i as
/// `a b c d`.
inline void write_labels(const LpsGraph& g, std::ostream& os) {
    for (const auto& m : g.vertex_labels)
        os << m.a << ' ' << m.b << ' ' << m.c << ' ' << m.d << '\n';
}

} // namespace forge::lps
