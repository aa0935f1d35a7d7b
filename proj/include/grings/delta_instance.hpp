#pragma once

/**
 * The labelled-tree free objects packaged as Instance implementations,
 * so the generic family machinery (axiom suite, samplers) applies to
 * them directly.
 *
 * DeltaInstance realizes the tree construction before dividing by
 * right-linearity: all generalized-ring axioms except right-linearity
 * hold on the nose, and every right-linearity "witness" the axiom
 * checker finds is a pair of equivalent representatives -- exactly the
 * one-step move generators used for the equivalence testing.
 *
 * UpsilonInstance is the oriented variant with 1- and <|-reduction
 * applied as a canonical form after every operation.
 */

#include <vector>

#include "grings/delta.hpp"
#include "grings/genring.hpp"

namespace grings {

class DeltaInstance : public Instance {
public:
    /// sorts[i] = degree of the i-th generator.
    explicit DeltaInstance(std::vector<FinSet> sorts) : sorts_(std::move(sorts)) {}

    const std::vector<FinSet>& sorts() const { return sorts_; }
    std::string name() const override { return "Delta"; }

    GenElement wrap(TreeElement t) const {
        t = normal(std::move(t));
        FinSet deg = t.degree;
        return {this, deg, {}, {}, {}, {}, std::make_shared<const TreeElement>(std::move(t))};
    }

    GenElement zero(const FinSet& x) const override { return wrap(TreeElement::zero_elem(x)); }
    GenElement unit() const override { return wrap(TreeElement::unit_elem()); }
    GenElement generator(int sort) const {
        return wrap(TreeElement::generator(sorts_.at(static_cast<size_t>(sort)), sort, orient_of(sort)));
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        check_mult(a, f, fam);
        TreeFamily tf{f, {}};
        for (const auto& c : fam) tf.comp.push_back(*c.tree);
        return wrap(tree_mult(*a.tree, tf));
    }

    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        check_contract(a, f, fam);
        TreeFamily tf{f, {}};
        for (const auto& c : fam) tf.comp.push_back(*c.tree);
        return wrap(tree_contract(*a.tree, tf));
    }

    /// Functorial action: prune the boundary pairs pointing outside the
    /// domain of h, then reindex the bar trees along h.
    GenElement act(const PartialBijection& h, const GenElement& a) const override {
        const TreeElement& t = *a.tree;
        if (!(t.degree == h.dom())) throw degree_error("Delta act: degree mismatch");
        std::vector<bool> keep1(t.sigma.size());
        for (size_t b = 0; b < t.sigma.size(); ++b)
            keep1[b] = h.image_index(t.sigma[b].first).has_value();
        TreeElement r;
        r.degree = h.cod();
        auto [nf1, where1] = t.f1.reduce(keep1);
        r.f1 = nf1;
        r.bars.assign(h.cod().size(), Tree::empty());
        std::vector<std::optional<size_t>> from(h.cod().size(), std::nullopt);
        for (size_t i = 0; i < h.dom().size(); ++i)
            if (auto j = h.image_index(i)) {
                r.bars[*j] = t.bars[i];
                from[*j] = i;
            }
        r.sigma.assign(r.f1.boundary().size(), {0, 0});
        for (size_t b = 0; b < t.sigma.size(); ++b) {
            if (!keep1[b]) continue;
            auto [x, c] = t.sigma[b];
            r.sigma[*where1[b]] = {*h.image_index(x), c};
        }
        r.validate();
        return wrap(std::move(r));
    }

    bool eq(const GenElement& a, const GenElement& b) const override {
        return a.degree == b.degree && *a.tree == *b.tree;
    }

    /// A deterministic pool: the F-elements plus generator-built ones.
    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<GenElement> out{zero(x)};
        for (const auto& l : x.labels()) out.push_back(wrap(TreeElement::from_label(x, l)));
        if (bound >= 1) {
            for (size_t s = 0; s < sorts_.size(); ++s) {
                if (sorts_[s].size() != x.size()) continue;
                GenElement g = generator(static_cast<int>(s));
                out.push_back(act(PartialBijection::relabeling(
                                      sorts_[s], x, [&](const Label& l) {
                                          return x.at(*sorts_[s].index_of(l));
                                      }),
                                  g));
            }
        }
        if (bound >= 2) {
            // one extra layer: contract a generator against itself when
            // degrees allow, to get depth-2 pool members
            size_t base = out.size();
            for (size_t i = 1; i < base && out.size() < base + 8; ++i) {
                const GenElement& g = out[i];
                SetMap c = SetMap::constant(x);
                if (x.size() == 0) continue;
                std::vector<GenElement> fam{g};
                GenElement scalar = contract(g, c, fam);
                // re-expand to degree x through the constant map
                if (x.size() == 1) {
                    out.push_back(act(PartialBijection::relabeling(
                                          scalar.degree, x,
                                          [&](const Label&) { return x.at(0); }),
                                      scalar));
                }
            }
        }
        return out;
    }

    json payload_json(const GenElement& a) const override { return a.tree->to_json(); }
    GenElement payload_from_json(const FinSet&, const json& j) const override {
        return wrap(TreeElement::from_json(j));
    }

    /// Random element of degree x with tree depth <= depth.
    GenElement random_element(Rng& rng, const FinSet& x, Int depth) const {
        TreeElement t = random_tree_element(rng, x, depth);
        return wrap(std::move(t));
    }

protected:
    virtual int orient_of(int) const { return -1; }
    virtual TreeElement normal(TreeElement t) const { return t; }

    Tree random_tree(Rng& rng, Int depth, int force_orient = -1) const {
        if (depth <= 0 || rng.below(3) == 0) return Tree::unit();
        size_t s = rng.below(sorts_.size());
        const FinSet& w = sorts_[s];
        int orient = orient_of(static_cast<int>(s));
        if (force_orient >= 0) orient = force_orient;
        Tree t = Tree::unit();
        t.node(0).sort = static_cast<int>(s);
        t.node(0).orient = orient;
        for (const auto& l : w.labels()) {
            if (rng.below(4) == 0) continue;  // drop some fiber labels
            Tree sub = random_tree(rng, depth - 1);
            int child = t.add_node(0, l, 0, -1);
            if (!sub.is_unit()) {
                // splice sub under child
                t.node(child).sort = sub.node(0).sort;
                t.node(child).orient = sub.node(0).orient;
                std::function<void(const Tree&, int, int)> copy = [&](const Tree& g, int src,
                                                                      int parent) {
                    int nid = t.add_node(parent, g.node(src).label, g.node(src).sort,
                                         g.node(src).orient);
                    for (int c : g.node(src).children) copy(g, c, nid);
                };
                for (int c : sub.node(0).children) copy(sub, c, child);
            }
        }
        return t;
    }

    TreeElement random_tree_element(Rng& rng, const FinSet& x, Int depth) const {
        TreeElement t;
        t.degree = x;
        t.f1 = random_tree(rng, depth);
        size_t n1 = t.f1.boundary().size();
        // distribute n1 boundary points over bar trees with matching budget
        for (size_t i = 0; i < x.size(); ++i) t.bars.push_back(Tree::empty());
        std::vector<std::pair<size_t, size_t>> slots;  // (x, c)
        size_t assigned = 0;
        for (size_t i = 0; i < x.size() && assigned < n1; ++i) {
            // grow a bar tree until it has at least one boundary point
            Tree b = random_tree(rng, depth);
            size_t nb = b.boundary().size();
            if (assigned + nb > n1 || nb == 0) b = Tree::unit(), nb = 1;
            if (assigned + nb > n1) continue;
            t.bars[i] = b;
            for (size_t c = 0; c < nb; ++c) slots.push_back({i, c});
            assigned += nb;
        }
        while (assigned < n1) {
            // put leftovers on the last coordinate as extra unit bars:
            // impossible (one bar per coordinate), so retry smaller f1
            t.f1 = Tree::unit();
            n1 = 1;
            slots.clear();
            for (auto& b : t.bars) b = Tree::empty();
            if (x.empty()) {
                t.f1 = Tree::empty();
                n1 = 0;
                assigned = 0;
                break;
            }
            t.bars[rng.below(x.size())] = Tree::unit();
            for (size_t i = 0; i < x.size(); ++i)
                if (!t.bars[i].is_empty()) slots.push_back({i, 0});
            assigned = 1;
        }
        // random bijection
        std::vector<size_t> perm(slots.size());
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        t.sigma.clear();
        for (size_t b = 0; b < n1; ++b) t.sigma.push_back(slots[perm[b]]);
        t.validate();
        return t;
    }

    std::vector<FinSet> sorts_;
};

/// Oriented trees modulo 1-reduction and <|-reduction; the sum of two
/// copies of G(N).  Generators: sort 0 with orientation 0, sort 1 with
/// orientation 1, in every arity (sorts are supplied per use).
class UpsilonInstance : public DeltaInstance {
public:
    /// Two generator families delta^0, delta^1 of the same degree.
    explicit UpsilonInstance(const FinSet& w)
        : DeltaInstance({w, w}) {}

    std::string name() const override { return "Upsilon"; }

    static Tree one_reduce(Tree t) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t v = 0; v < t.size() && !changed; ++v) {
                if (t.node(static_cast<int>(v)).children.size() != 1) continue;
                t = remove_node(t, static_cast<int>(v));
                changed = true;
            }
        }
        return t;
    }

    static Tree tri_reduce(Tree t) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t v = 0; v < t.size() && !changed; ++v) {
                const auto& nd = t.node(static_cast<int>(v));
                if (nd.parent < 0 || nd.children.empty()) continue;
                if (nd.orient < 0) continue;
                if (nd.orient == t.node(nd.parent).orient) {
                    t = remove_node(t, static_cast<int>(v));
                    changed = true;
                }
            }
        }
        return t;
    }

    static Tree reduce_oriented(Tree t) {
        // interleave to a fixpoint; the reduced form is unique
        std::string prev;
        while (true) {
            t = tri_reduce(one_reduce(std::move(t)));
            std::string cur = t.encode();
            if (cur == prev) break;
            prev = cur;
        }
        return t;
    }

    GenElement delta(const FinSet& x, int orient) const {
        TreeElement t;
        t.degree = x;
        Tree f1 = Tree::unit();
        f1.node(0).sort = orient;
        f1.node(0).orient = orient;
        for (size_t i = 0; i < x.size(); ++i) f1.add_node(0, std::nullopt, 0, -1);
        t.f1 = f1;
        t.bars.assign(x.size(), Tree::unit());
        for (size_t i = 0; i < x.size(); ++i) t.sigma.push_back({i, 0});
        return wrap(std::move(t));
    }

    /// The diagonal onto boundary counts, landing in G(N).
    std::vector<Int> nabla(const GenElement& a) const {
        std::vector<Int> out;
        for (const auto& b : a.tree->bars) out.push_back(static_cast<Int>(b.boundary().size()));
        return out;
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<GenElement> out{zero(x)};
        for (const auto& l : x.labels()) out.push_back(wrap(TreeElement::from_label(x, l)));
        if (bound >= 1 && !x.empty()) {
            out.push_back(delta(x, 0));
            out.push_back(delta(x, 1));
        }
        return out;
    }

    /// All single 1-reduction / <|-reduction steps of an oriented tree.
    static std::vector<Tree> reduction_steps(const Tree& t) {
        std::vector<Tree> out;
        for (size_t v = 0; v < t.size(); ++v) {
            const auto& nd = t.node(static_cast<int>(v));
            bool one_red = nd.children.size() == 1;
            bool tri_red = nd.parent >= 0 && !nd.children.empty() && nd.orient >= 0 &&
                           nd.orient == t.node(nd.parent).orient;
            if (one_red || tri_red) out.push_back(remove_node(t, static_cast<int>(v)));
        }
        return out;
    }

    /// A random unlabeled oriented tree of bounded depth.
    static Tree random_oriented_tree(Rng& rng, Int depth, Int max_width = 3) {
        Tree t = Tree::unit();
        if (depth <= 0) return t;
        t.node(0).orient = static_cast<int>(rng.below(2));
        std::function<void(int, Int)> grow = [&](int v, Int d) {
            if (d <= 0) return;
            Int width = rng.range(0, max_width);
            for (Int i = 0; i < width; ++i) {
                int c = t.add_node(v, std::nullopt, 0, -1);
                if (d > 1 && rng.below(2) == 0) {
                    t.node(c).orient = static_cast<int>(rng.below(2));
                    grow(c, d - 1);
                    if (t.node(c).children.empty()) t.node(c).orient = -1;
                }
            }
        };
        grow(0, depth);
        if (t.node(0).children.empty()) t.node(0).orient = -1;
        return t;
    }

protected:
    int orient_of(int sort) const override { return sort; }

    TreeElement normal(TreeElement t) const override {
        // reduce each tree; reductions never touch the boundary, but the
        // boundary order may shift, so go through the reduce() plumbing
        t.f1 = reduce_keeping_boundary(t.f1, t.sigma, true);
        for (size_t x = 0; x < t.bars.size(); ++x)
            t.bars[x] = reduce_keeping_boundary_bar(t.bars[x], t.sigma, x);
        t.validate();
        return t;
    }

private:
    /// Remove an internal node, splicing its children into its place.
    static Tree remove_node(const Tree& t, int victim) {
        Tree r;
        std::function<int(int, int)> build = [&](int v, int parent) -> int {
            int nid = -1;
            if (v == victim) {
                for (int c : t.node(v).children) build(c, parent);
                return -1;
            }
            nid = r.add_node(parent, t.node(v).label, t.node(v).sort, t.node(v).orient);
            for (int c : t.node(v).children) build(c, nid);
            return nid;
        };
        if (t.is_empty()) return r;
        if (t.root() == victim) {
            // root removal: only valid when the root has one child
            int child = t.node(t.root()).children.at(0);
            std::function<int(int, int)> b2 = [&](int v, int parent) -> int {
                int nid = r.add_node(parent, v == child ? std::nullopt : t.node(v).label,
                                     t.node(v).sort, t.node(v).orient);
                for (int c : t.node(v).children) b2(c, nid);
                return nid;
            };
            b2(child, -1);
            return r;
        }
        build(t.root(), -1);
        return r;
    }

    /// Reductions do not change the boundary as an ordered list (nodes
    /// are only removed from the interior and children are spliced in
    /// place), so sigma stays valid.
    static Tree reduce_keeping_boundary(const Tree& t, std::vector<std::pair<size_t, size_t>>&,
                                        bool) {
        return reduce_oriented(t);
    }
    static Tree reduce_keeping_boundary_bar(const Tree& t,
                                            std::vector<std::pair<size_t, size_t>>&, size_t) {
        return reduce_oriented(t);
    }
};

}  // namespace grings
