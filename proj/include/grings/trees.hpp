#pragma once

/**
 * Rooted finite trees with per-node data: an optional edge label (the
 * injection into a generator degree, for the labelled-tree free objects),
 * an optional sort index (for families of generators), and an optional
 * orientation bit (for the oriented-tree variant).  Node identities are
 * canonicalized by a deterministic traversal keyed on (label, recursive
 * encoding); isomorphism testing is canonical-form equality.
 */

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grings/fincat.hpp"

namespace grings {

class Tree {
public:
    struct Node {
        int parent = -1;
        std::vector<int> children;
        std::optional<Label> label;  // mu(b), an element of W_{sort(parent)}
        int sort = 0;                // generator index of this node's fiber labels
        int orient = -1;             // -1: unoriented; 0/1 for oriented trees
    };

    Tree() = default;

    static Tree empty() { return Tree(); }

    static Tree unit() {
        Tree t;
        t.nodes_.push_back(Node{});
        return t;
    }

    /// Root plus one child per element of w (children labelled by w).
    static Tree corolla(const FinSet& w, int sort = 0, int orient = -1) {
        Tree t = unit();
        t.nodes_[0].sort = sort;
        t.nodes_[0].orient = orient;
        for (const auto& l : w.labels()) {
            Node c;
            c.parent = 0;
            c.label = l;
            t.nodes_[0].children.push_back(static_cast<int>(t.nodes_.size()));
            t.nodes_.push_back(c);
        }
        return t;
    }

    /// Ladder of length n (used by the one-generator normal forms).
    static Tree ladder(Int n, const Label& rung, int orient = -1) {
        Tree t = unit();
        t.nodes_[0].orient = orient;
        int cur = 0;
        for (Int i = 0; i < n; ++i) {
            Node c;
            c.parent = cur;
            c.label = rung;
            if (orient >= 0) c.orient = -1;  // assigned below if internal
            int id = static_cast<int>(t.nodes_.size());
            t.nodes_[cur].children.push_back(id);
            t.nodes_.push_back(c);
            cur = id;
        }
        return t;
    }

    bool is_empty() const { return nodes_.empty(); }
    bool is_unit() const { return nodes_.size() == 1; }
    size_t size() const { return nodes_.size(); }
    const Node& node(int i) const { return nodes_.at(static_cast<size_t>(i)); }
    Node& node(int i) { return nodes_.at(static_cast<size_t>(i)); }
    int root() const { return nodes_.empty() ? -1 : 0; }

    int add_node(int parent, std::optional<Label> label, int sort = 0, int orient = -1) {
        Node n;
        n.parent = parent;
        n.label = std::move(label);
        n.sort = sort;
        n.orient = orient;
        int id = static_cast<int>(nodes_.size());
        if (parent >= 0) nodes_[static_cast<size_t>(parent)].children.push_back(id);
        nodes_.push_back(n);
        return id;
    }

    Int nu(int i) const { return static_cast<Int>(node(i).children.size()); }

    Int height(int i) const {
        Int h = 0;
        while (node(i).parent >= 0) {
            i = node(i).parent;
            ++h;
        }
        return h;
    }

    Int depth() const {
        Int d = 0;
        for (int b : boundary()) d = std::max(d, height(b));
        return d;
    }

    /// Boundary (leaves) in deterministic DFS order.
    std::vector<int> boundary() const {
        std::vector<int> out;
        if (is_empty()) return out;
        std::function<void(int)> dfs = [&](int v) {
            if (node(v).children.empty()) {
                out.push_back(v);
                return;
            }
            for (int c : node(v).children) dfs(c);
        };
        dfs(0);
        return out;
    }

    /**
     * Reduced tree: keep only the boundary nodes flagged in `keep`
     * (indexed along boundary() order) and their ancestors; nodes whose
     * entire boundary is dropped disappear.  Returns the reduced tree
     * and, for each kept boundary node, its index in the new boundary.
     */
    std::pair<Tree, std::vector<std::optional<size_t>>> reduce(const std::vector<bool>& keep) const {
        std::vector<int> bd = boundary();
        std::vector<bool> alive(nodes_.size(), false);
        for (size_t k = 0; k < bd.size(); ++k)
            if (keep.at(k)) {
                int v = bd[k];
                while (v >= 0 && !alive[static_cast<size_t>(v)]) {
                    alive[static_cast<size_t>(v)] = true;
                    v = node(v).parent;
                }
            }
        Tree r;
        std::vector<int> remap(nodes_.size(), -1);
        if (!nodes_.empty() && alive[0]) {
            std::function<void(int)> build = [&](int v) {
                remap[static_cast<size_t>(v)] =
                    r.add_node(node(v).parent < 0 ? -1 : remap[static_cast<size_t>(node(v).parent)],
                               node(v).label, node(v).sort, node(v).orient);
                for (int c : node(v).children)
                    if (alive[static_cast<size_t>(c)]) build(c);
            };
            build(0);
        }
        std::vector<int> new_bd = r.boundary();
        std::vector<std::optional<size_t>> where(bd.size(), std::nullopt);
        for (size_t k = 0; k < bd.size(); ++k) {
            if (!keep[k]) continue;
            int nv = remap[static_cast<size_t>(bd[k])];
            for (size_t j = 0; j < new_bd.size(); ++j)
                if (new_bd[j] == nv) where[k] = j;
        }
        return {r, where};
    }

    /**
     * Grafting: at each boundary node b of *this, glue the tree g_b
     * (indexed along boundary() order).  Empty g_b prune the boundary
     * point; the result's boundary is the union of the g_b boundaries.
     * Returns the tree plus the location map (b, boundary index of g_b)
     * -> new boundary index.
     */
    std::pair<Tree, std::map<std::pair<size_t, size_t>, size_t>> graft(
        const std::vector<Tree>& gs) const {
        std::vector<int> bd = boundary();
        if (gs.size() != bd.size()) throw degree_error("graft: family size mismatch");
        std::vector<bool> keep(bd.size());
        for (size_t k = 0; k < bd.size(); ++k) keep[k] = !gs[k].is_empty();
        auto [base, where] = reduce(keep);

        std::map<std::pair<size_t, size_t>, size_t> loc;
        std::vector<int> base_bd = base.boundary();
        // attach each g_b under the corresponding kept boundary node
        Tree r = base;
        std::vector<std::vector<int>> attach_children(base_bd.size());
        for (size_t k = 0; k < bd.size(); ++k) {
            if (!keep[k]) continue;
            size_t at = *where[k];
            int host = base_bd[at];
            const Tree& g = gs[k];
            if (g.is_unit()) {
                // boundary point survives as itself
                continue;
            }
            // host absorbs g's root data (sort/orientation/labels of children)
            r.node(host).sort = g.node(0).sort;
            r.node(host).orient = g.node(0).orient;
            std::function<void(int, int)> copy = [&](int src, int dst_parent) {
                int nid = r.add_node(dst_parent, g.node(src).label, g.node(src).sort,
                                     g.node(src).orient);
                for (int c : g.node(src).children) copy(c, nid);
            };
            for (int c : g.node(0).children) copy(c, host);
        }
        // recompute boundary locations
        std::vector<int> new_bd = r.boundary();
        auto bd_index = [&](int v) {
            for (size_t j = 0; j < new_bd.size(); ++j)
                if (new_bd[j] == v) return j;
            throw std::logic_error("graft: lost boundary node");
        };
        for (size_t k = 0; k < bd.size(); ++k) {
            if (!keep[k]) continue;
            size_t at = *where[k];
            int host = base_bd[at];
            const Tree& g = gs[k];
            if (g.is_unit()) {
                loc[{k, 0}] = bd_index(host);
                continue;
            }
            // the copies of g's boundary under host appear in DFS order;
            // match them by walking both boundaries under host
            std::vector<int> sub;
            std::function<void(int)> dfs = [&](int v) {
                if (r.node(v).children.empty()) {
                    sub.push_back(v);
                    return;
                }
                for (int c : r.node(v).children) dfs(c);
            };
            dfs(host);
            std::vector<int> gbd = g.boundary();
            if (sub.size() != gbd.size()) throw std::logic_error("graft: boundary mismatch");
            for (size_t j = 0; j < gbd.size(); ++j) loc[{k, j}] = bd_index(sub[j]);
        }
        return {r, loc};
    }

    /// Deterministic canonical form.  Children are ordered by
    /// (label, recursive encoding); returns the canonical copy and the
    /// permutation sending old boundary indices to canonical ones.
    std::pair<Tree, std::vector<size_t>> canonical() const {
        if (is_empty()) return {Tree::empty(), {}};
        std::vector<std::string> enc(nodes_.size());
        std::function<void(int)> pass = [&](int v) {
            std::vector<std::pair<std::string, int>> kids;
            for (int c : node(v).children) {
                pass(c);
                std::string key = (node(c).label ? node(c).label->repr() : std::string("_")) +
                                  "|" + enc[static_cast<size_t>(c)];
                kids.push_back({key, c});
            }
            std::sort(kids.begin(), kids.end());
            std::string e = "(" + std::to_string(node(v).sort) + ";" +
                            std::to_string(node(v).orient) + ";";
            for (auto& [k, c] : kids) e += k + ",";
            e += ")";
            enc[static_cast<size_t>(v)] = e;
        };
        pass(0);

        Tree r;
        std::vector<int> remap(nodes_.size(), -1);
        std::function<void(int, int)> build = [&](int v, int parent) {
            remap[static_cast<size_t>(v)] = r.add_node(parent, node(v).label, node(v).sort,
                                                       node(v).orient);
            std::vector<std::pair<std::string, int>> kids;
            for (int c : node(v).children) {
                std::string key = (node(c).label ? node(c).label->repr() : std::string("_")) +
                                  "|" + enc[static_cast<size_t>(c)];
                kids.push_back({key, c});
            }
            std::sort(kids.begin(), kids.end());
            for (auto& [k, c] : kids) build(c, remap[static_cast<size_t>(v)]);
        };
        build(0, -1);

        std::vector<int> old_bd = boundary(), new_bd = r.boundary();
        std::vector<size_t> perm(old_bd.size());
        for (size_t i = 0; i < old_bd.size(); ++i) {
            int nv = remap[static_cast<size_t>(old_bd[i])];
            for (size_t j = 0; j < new_bd.size(); ++j)
                if (new_bd[j] == nv) perm[i] = j;
        }
        return {r, perm};
    }

    std::string encode() const {
        if (is_empty()) return "0";
        auto [c, perm] = canonical();
        std::function<std::string(int)> enc = [&](int v) -> std::string {
            std::string e = "(" + std::to_string(c.node(v).sort) + ";" +
                            std::to_string(c.node(v).orient) + ";";
            for (int ch : c.node(v).children)
                e += (c.node(ch).label ? c.node(ch).label->repr() : std::string("_")) + "|" +
                     enc(ch) + ",";
            return e + ")";
        };
        return enc(0);
    }

    /**
     * All permutations of the boundary induced by tree automorphisms
     * (needed only for unlabelled/oriented trees, which may have
     * isomorphic sibling blocks).  Assumes *this is canonical.
     */
    std::vector<std::vector<size_t>> boundary_automorphisms(size_t cap = 20000) const {
        std::vector<int> bd = boundary();
        std::map<int, size_t> bd_index;
        for (size_t i = 0; i < bd.size(); ++i) bd_index[bd[i]] = i;
        if (is_empty()) return {{}};

        std::vector<std::string> enc(nodes_.size());
        std::function<void(int)> pass = [&](int v) {
            std::string e = "(" + std::to_string(node(v).sort) + ";" +
                            std::to_string(node(v).orient) + ";";
            for (int c : node(v).children) {
                pass(c);
                e += (node(c).label ? node(c).label->repr() : std::string("_")) + "|" +
                     enc[static_cast<size_t>(c)] + ",";
            }
            enc[static_cast<size_t>(v)] = e + ")";
        };
        pass(0);

        // maps: list of (source boundary node -> image boundary node)
        using Map = std::vector<std::pair<int, int>>;
        std::function<std::vector<Map>(int, int)> match = [&](int u, int v) -> std::vector<Map> {
            // all isomorphisms subtree(u) -> subtree(v); enc equal assumed
            if (node(u).children.empty()) return {Map{{u, v}}};
            // group v's children by (label, enc); try assignments of u's children
            std::vector<int> uc = node(u).children, vc = node(v).children;
            std::vector<Map> results;
            std::vector<bool> used(vc.size(), false);
            Map acc;
            std::function<void(size_t)> rec = [&](size_t i) {
                if (results.size() >= cap) return;
                if (i == uc.size()) {
                    results.push_back(acc);
                    return;
                }
                for (size_t j = 0; j < vc.size(); ++j) {
                    if (used[j]) continue;
                    if (node(uc[i]).label != node(vc[j]).label) continue;
                    if (enc[static_cast<size_t>(uc[i])] != enc[static_cast<size_t>(vc[j])]) continue;
                    for (const auto& sub : match(uc[i], vc[j])) {
                        used[j] = true;
                        size_t before = acc.size();
                        acc.insert(acc.end(), sub.begin(), sub.end());
                        rec(i + 1);
                        acc.resize(before);
                        used[j] = false;
                    }
                }
            };
            rec(0);
            return results;
        };

        std::vector<std::vector<size_t>> perms;
        for (const auto& m : match(0, 0)) {
            std::vector<size_t> p(bd.size());
            for (const auto& [a, b] : m) p[bd_index.at(a)] = bd_index.at(b);
            perms.push_back(p);
        }
        return perms;
    }

    friend bool operator==(const Tree& a, const Tree& b) { return a.encode() == b.encode(); }
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

    json to_json() const {
        json nodes = json::array();
        for (size_t i = 0; i < nodes_.size(); ++i) {
            json n{{"parent", nodes_[i].parent}};
            if (nodes_[i].label) n["label"] = nodes_[i].label->to_json();
            if (nodes_[i].sort) n["sort"] = nodes_[i].sort;
            if (nodes_[i].orient >= 0) n["orient"] = nodes_[i].orient;
            nodes.push_back(n);
        }
        return json{{"nodes", nodes}};
    }
    static Tree from_json(const json& j) {
        Tree t;
        for (const auto& n : j.at("nodes")) {
            int parent = n.at("parent").get<int>();
            std::optional<Label> lab;
            if (n.contains("label")) lab = Label::from_json(n["label"]);
            t.add_node(parent, lab, n.value("sort", 0), n.value("orient", -1));
        }
        return t;
    }

private:
    std::vector<Node> nodes_;
};

}  // namespace grings
