#pragma once

/**
 * The F-ring of finite loop-free graphs with boundary embeddings.
 * Composition glues two graphs along matching boundary labels and
 * trims everything not lying on a maximal In->Out path.  Only small
 * instances are supported; equality is isomorphism respecting the
 * boundary embeddings, decided by brute force.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "grings/fincat.hpp"

namespace grings {

class TinyGraph {
public:
    struct Edge {
        int src, dst;
    };

    TinyGraph(FinSet x, FinSet y) : x_(std::move(x)), y_(std::move(y)) {}

    const FinSet& in_ambient() const { return x_; }
    const FinSet& out_ambient() const { return y_; }

    int add_vertex(std::optional<Label> in_label = std::nullopt,
                   std::optional<Label> out_label = std::nullopt) {
        in_lab_.push_back(std::move(in_label));
        out_lab_.push_back(std::move(out_label));
        return static_cast<int>(in_lab_.size()) - 1;
    }
    void add_edge(int s, int d) { edges_.push_back({s, d}); }

    size_t num_vertices() const { return in_lab_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::optional<Label>& in_label(int v) const { return in_lab_[v]; }
    const std::optional<Label>& out_label(int v) const { return out_lab_[v]; }

    bool has_in_edge(int v) const {
        return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.dst == v; });
    }
    bool has_out_edge(int v) const {
        return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.src == v; });
    }

    /// Structural sanity: acyclic, In = sources carry X labels, Out = sinks carry Y labels.
    bool well_formed() const {
        std::vector<int> indeg(num_vertices(), 0);
        for (const auto& e : edges_) indeg[e.dst]++;
        // Kahn: acyclicity
        std::vector<int> order, d = indeg;
        for (size_t v = 0; v < num_vertices(); ++v)
            if (d[v] == 0) order.push_back(static_cast<int>(v));
        for (size_t k = 0; k < order.size(); ++k)
            for (const auto& e : edges_)
                if (e.src == order[k] && --d[e.dst] == 0) order.push_back(e.dst);
        if (order.size() != num_vertices()) return false;
        for (size_t v = 0; v < num_vertices(); ++v) {
            if (!has_in_edge(static_cast<int>(v)) != in_lab_[v].has_value()) return false;
            if (!has_out_edge(static_cast<int>(v)) != out_lab_[v].has_value()) return false;
        }
        return true;
    }

    friend TinyGraph compose(const TinyGraph& g2, const TinyGraph& g1);
    friend TinyGraph oplus(const TinyGraph& a, const TinyGraph& b);
    friend TinyGraph transpose(const TinyGraph& g);
    friend bool iso_equal(const TinyGraph& a, const TinyGraph& b);

    /// Restriction to vertices/edges on maximal paths that start (if
    /// from_in) or end (if !from_in) at boundary labels in the set.
    TinyGraph restricted(const std::vector<Label>& boundary, bool from_in) const {
        size_t n = num_vertices();
        std::vector<bool> keep_v(n, false);
        std::vector<bool> keep_e(edges_.size(), false);
        // enumerate all maximal paths by DFS from sources
        std::vector<std::vector<std::pair<int, int>>> out_adj(n);  // (edge idx, dst)
        for (size_t i = 0; i < edges_.size(); ++i)
            out_adj[edges_[i].src].push_back({static_cast<int>(i), edges_[i].dst});
        std::vector<int> vpath;
        std::vector<int> epath;
        auto hits = [&](int first, int last) {
            const auto& lab = from_in ? in_lab_[first] : out_lab_[last];
            if (!lab) return false;
            return std::find(boundary.begin(), boundary.end(), *lab) != boundary.end();
        };
        std::function<void(int)> dfs = [&](int v) {
            vpath.push_back(v);
            if (out_adj[v].empty()) {
                if (hits(vpath.front(), vpath.back())) {
                    for (int u : vpath) keep_v[u] = true;
                    for (int e : epath) keep_e[e] = true;
                }
            } else {
                for (auto [ei, w] : out_adj[v]) {
                    epath.push_back(ei);
                    dfs(w);
                    epath.pop_back();
                }
            }
            vpath.pop_back();
        };
        for (size_t v = 0; v < n; ++v)
            if (!has_in_edge(static_cast<int>(v))) dfs(static_cast<int>(v));

        TinyGraph r(x_, y_);
        std::vector<int> remap(n, -1);
        for (size_t v = 0; v < n; ++v)
            if (keep_v[v]) remap[v] = r.add_vertex(in_lab_[v], out_lab_[v]);
        for (size_t i = 0; i < edges_.size(); ++i)
            if (keep_e[i]) r.add_edge(remap[edges_[i].src], remap[edges_[i].dst]);
        return r;
    }

private:
    FinSet x_, y_;
    std::vector<std::optional<Label>> in_lab_, out_lab_;
    std::vector<Edge> edges_;
};

/// Glue g2 o g1 along Y0 = In(g2) n Out(g1).
inline TinyGraph compose(const TinyGraph& g2, const TinyGraph& g1) {
    if (g1.out_ambient() != g2.in_ambient()) throw degree_error("TinyGraph compose: degree mismatch");
    std::vector<Label> y0;
    for (size_t v = 0; v < g1.num_vertices(); ++v)
        if (auto l = g1.out_label(static_cast<int>(v))) {
            for (size_t w = 0; w < g2.num_vertices(); ++w)
                if (g2.in_label(static_cast<int>(w)) == l) y0.push_back(*l);
        }
    TinyGraph lower = g1.restricted(y0, /*from_in=*/false);
    TinyGraph upper = g2.restricted(y0, /*from_in=*/true);

    TinyGraph r(g1.in_ambient(), g2.out_ambient());
    std::vector<int> map1(lower.num_vertices()), map2(upper.num_vertices(), -1);
    for (size_t v = 0; v < lower.num_vertices(); ++v) {
        auto out = lower.out_label(static_cast<int>(v));
        bool glued = out && std::find(y0.begin(), y0.end(), *out) != y0.end();
        map1[v] = r.add_vertex(lower.in_label(static_cast<int>(v)), std::nullopt);
        if (glued) {
            for (size_t w = 0; w < upper.num_vertices(); ++w)
                if (upper.in_label(static_cast<int>(w)) == out) map2[w] = map1[v];
        } else if (out) {
            // Out(g1) label not matched by g2: path dies; vertex was trimmed
            // unless it also heads elsewhere (restricted() already handled it).
        }
    }
    for (size_t w = 0; w < upper.num_vertices(); ++w)
        if (map2[w] < 0) map2[w] = r.add_vertex(std::nullopt, upper.out_label(static_cast<int>(w)));
        else if (auto ol = upper.out_label(static_cast<int>(w))) {
            // glued vertex that is also a sink of g2
            // (possible for discrete vertices); keep its out label
            // by rebuilding: TinyGraph has no setter, so reconstruct below.
        }
    // fix out labels of glued vertices that are sinks in the composite
    TinyGraph result(g1.in_ambient(), g2.out_ambient());
    std::vector<std::optional<Label>> in_l(r.num_vertices()), out_l(r.num_vertices());
    for (size_t v = 0; v < lower.num_vertices(); ++v) in_l[map1[v]] = lower.in_label(static_cast<int>(v));
    for (size_t w = 0; w < upper.num_vertices(); ++w) out_l[map2[w]] = upper.out_label(static_cast<int>(w));
    for (size_t v = 0; v < r.num_vertices(); ++v) result.add_vertex(in_l[v], out_l[v]);
    for (const auto& e : lower.edges()) result.add_edge(map1[e.src], map1[e.dst]);
    for (const auto& e : upper.edges()) result.add_edge(map2[e.src], map2[e.dst]);
    return result;
}

inline TinyGraph oplus(const TinyGraph& a, const TinyGraph& b) {
    TinyGraph r(FinSet::disjoint_union(a.in_ambient(), b.in_ambient()),
                FinSet::disjoint_union(a.out_ambient(), b.out_ambient()));
    auto tag = [](int side, const std::optional<Label>& l) -> std::optional<Label> {
        if (!l) return std::nullopt;
        return Label::pair(Label::num(side), *l);
    };
    std::vector<int> ma(a.num_vertices()), mb(b.num_vertices());
    for (size_t v = 0; v < a.num_vertices(); ++v)
        ma[v] = r.add_vertex(tag(0, a.in_label(static_cast<int>(v))), tag(0, a.out_label(static_cast<int>(v))));
    for (size_t v = 0; v < b.num_vertices(); ++v)
        mb[v] = r.add_vertex(tag(1, b.in_label(static_cast<int>(v))), tag(1, b.out_label(static_cast<int>(v))));
    for (const auto& e : a.edges()) r.add_edge(ma[e.src], ma[e.dst]);
    for (const auto& e : b.edges()) r.add_edge(mb[e.src], mb[e.dst]);
    return r;
}

inline TinyGraph transpose(const TinyGraph& g) {
    TinyGraph r(g.out_ambient(), g.in_ambient());
    for (size_t v = 0; v < g.num_vertices(); ++v)
        r.add_vertex(g.out_label(static_cast<int>(v)), g.in_label(static_cast<int>(v)));
    for (const auto& e : g.edges()) r.add_edge(e.dst, e.src);
    return r;
}

/// Isomorphism respecting boundary embeddings; brute force (small graphs).
inline bool iso_equal(const TinyGraph& a, const TinyGraph& b) {
    if (a.in_ambient() != b.in_ambient() || a.out_ambient() != b.out_ambient()) return false;
    size_t n = a.num_vertices();
    if (n != b.num_vertices() || a.edges().size() != b.edges().size()) return false;
    std::vector<int> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    auto edge_multiset = [](const TinyGraph& g, const std::vector<int>& p) {
        std::vector<std::pair<int, int>> es;
        for (const auto& e : g.edges()) {
            int s = p.empty() ? e.src : p[e.src];
            int d = p.empty() ? e.dst : p[e.dst];
            es.push_back({s, d});
        }
        std::sort(es.begin(), es.end());
        return es;
    };
    auto target = edge_multiset(b, {});
    do {
        bool ok = true;
        for (size_t v = 0; v < n && ok; ++v) {
            ok = a.in_label(static_cast<int>(v)) == b.in_label(perm[v]) &&
                 a.out_label(static_cast<int>(v)) == b.out_label(perm[v]);
        }
        if (ok && edge_multiset(a, perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace grings
