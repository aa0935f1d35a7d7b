#pragma once

/**
 * Free commutative generalized rings on labelled trees: elements are
 * triples (F1; {bar F_x}; sigma) of labelled trees with a boundary
 * bijection; multiplication and contraction are grafting; the universal
 * evaluator sends them into any commutative instance.  The oriented
 * variant (orientation bits, 1- and <|-reduction, the diagonal onto
 * boundary counts) lives here too.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grings/genring.hpp"
#include "grings/trees.hpp"

namespace grings {

/// Datum (F1; {bar F_x}_{x in X}; sigma), sigma a bijection from the
/// boundary of F1 onto the disjoint union of the bar boundaries.
struct TreeElement {
    FinSet degree;
    Tree f1;
    std::vector<Tree> bars;                             // indexed by degree positions
    std::vector<std::pair<size_t, size_t>> sigma;       // f1 boundary idx -> (x, bar boundary idx)

    static TreeElement zero_elem(const FinSet& x) {
        TreeElement t;
        t.degree = x;
        t.f1 = Tree::empty();
        t.bars.assign(x.size(), Tree::empty());
        return t;
    }

    static TreeElement unit_elem() {
        TreeElement t;
        t.degree = FinSet::range(1);
        t.f1 = Tree::unit();
        t.bars = {Tree::unit()};
        t.sigma = {{0, 0}};
        return t;
    }

    /// The basic generator: corolla over w (of the given sort) against
    /// unit bar trees, sigma the identity.
    static TreeElement generator(const FinSet& w, int sort = 0, int orient = -1) {
        TreeElement t;
        t.degree = w;
        t.f1 = Tree::corolla(w, sort, orient);
        t.bars.assign(w.size(), Tree::unit());
        for (size_t i = 0; i < w.size(); ++i) t.sigma.push_back({i, 0});
        return t;
    }

    /// The image of a label (an F-element): unit against unit at x0.
    static TreeElement from_label(const FinSet& x, const Label& x0) {
        TreeElement t;
        t.degree = x;
        t.f1 = Tree::unit();
        t.bars.assign(x.size(), Tree::empty());
        auto i = x.index_of(x0);
        if (!i) throw degree_error("TreeElement::from_label: label outside degree");
        t.bars[*i] = Tree::unit();
        t.sigma = {{*i, 0}};
        return t;
    }

    bool is_zero() const { return f1.is_empty(); }

    /// Position -> degree label of the bar side hit by sigma.
    size_t sigma_under(size_t b) const { return sigma.at(b).first; }

    void validate() const {
        if (bars.size() != degree.size()) throw degree_error("TreeElement: bars/degree mismatch");
        size_t nb = f1.boundary().size();
        if (sigma.size() != nb) throw degree_error("TreeElement: sigma size mismatch");
        std::vector<std::vector<bool>> hit;
        for (const auto& t : bars) hit.push_back(std::vector<bool>(t.boundary().size(), false));
        for (auto [x, c] : sigma) {
            if (x >= bars.size() || c >= hit[x].size() || hit[x][c])
                throw degree_error("TreeElement: sigma not a bijection");
            hit[x][c] = true;
        }
        for (const auto& h : hit)
            for (bool b : h)
                if (!b) throw degree_error("TreeElement: sigma not onto");
    }

    Int deg() const {
        Int d = 0;
        std::vector<int> bd = f1.boundary();
        std::vector<std::vector<int>> bb;
        for (const auto& t : bars) bb.push_back(t.boundary());
        for (size_t b = 0; b < sigma.size(); ++b) {
            auto [x, c] = sigma[b];
            d = std::max(d, f1.height(bd[b]) + bars[x].height(bb[x][c]));
        }
        return d;
    }

    /// Canonical encoding; isomorphism classes compare equal.  For
    /// oriented/unlabelled trees the boundary bijection is minimized
    /// over the tree automorphism groups.
    std::string encode() const {
        auto [cf1, p1] = f1.canonical();
        std::vector<Tree> cbars;
        std::vector<std::vector<size_t>> pb;
        for (const auto& t : bars) {
            auto [ct, p] = t.canonical();
            cbars.push_back(ct);
            pb.push_back(p);
        }
        std::vector<std::pair<size_t, size_t>> s(sigma.size());
        for (size_t b = 0; b < sigma.size(); ++b) {
            auto [x, c] = sigma[b];
            s[p1[b]] = {x, pb[x][c]};
        }
        // minimize over automorphisms
        auto a1 = cf1.boundary_automorphisms();
        std::vector<std::vector<std::vector<size_t>>> ax;
        bool trivial = a1.size() == 1;
        for (const auto& t : cbars) {
            ax.push_back(t.boundary_automorphisms());
            trivial = trivial && ax.back().size() == 1;
        }
        auto render = [&](const std::vector<std::pair<size_t, size_t>>& sg) {
            std::string out;
            for (auto [x, c] : sg) out += std::to_string(x) + ":" + std::to_string(c) + ";";
            return out;
        };
        std::string best;
        if (trivial) {
            best = render(s);
        } else {
            // enumerate the product group action; cap is generous for
            // desk-scale trees
            std::vector<size_t> choice(ax.size(), 0);
            bool first = true;
            for (const auto& q1 : a1) {
                std::function<void(size_t)> rec = [&](size_t i) {
                    if (i == ax.size()) {
                        std::vector<std::pair<size_t, size_t>> cand(s.size());
                        for (size_t b = 0; b < s.size(); ++b) {
                            auto [x, c] = s[b];
                            cand[q1[b]] = {x, ax[x][choice[x]][c]};
                        }
                        std::string r = render(cand);
                        if (first || r < best) {
                            best = r;
                            first = false;
                        }
                        return;
                    }
                    for (size_t k = 0; k < ax[i].size(); ++k) {
                        choice[i] = k;
                        rec(i + 1);
                    }
                };
                rec(0);
            }
        }
        std::string e = "[" + cf1.encode() + "]";
        for (const auto& t : cbars) e += "{" + t.encode() + "}";
        return e + "|" + best;
    }

    friend bool operator==(const TreeElement& a, const TreeElement& b) {
        return a.degree == b.degree && a.encode() == b.encode();
    }
    friend bool operator!=(const TreeElement& a, const TreeElement& b) { return !(a == b); }

    json to_json() const {
        json bs = json::array();
        for (size_t x = 0; x < bars.size(); ++x)
            bs.push_back(json::array({degree.at(x).to_json(), bars[x].to_json()}));
        json sg = json::array();
        for (size_t b = 0; b < sigma.size(); ++b)
            sg.push_back(json::array({b, sigma[b].first, sigma[b].second}));
        return json{{"degree", degree.to_json()}, {"F1", f1.to_json()}, {"barF", bs}, {"sigma", sg}};
    }
    static TreeElement from_json(const json& j) {
        TreeElement t;
        t.degree = FinSet::from_json(j.at("degree"));
        t.f1 = Tree::from_json(j.at("F1"));
        for (const auto& e : j.at("barF")) t.bars.push_back(Tree::from_json(e[1]));
        t.sigma.resize(j.at("sigma").size());
        for (const auto& e : j.at("sigma"))
            t.sigma[e[0].get<size_t>()] = {e[1].get<size_t>(), e[2].get<size_t>()};
        t.validate();
        return t;
    }
};

/// Family of tree elements over the fibers of a base map.
struct TreeFamily {
    SetMap f;
    std::vector<TreeElement> comp;  // indexed by dst(f)
};

/// Multiplication G <| F (eq. of the labelled-tree construction):
/// the first tree grafts the component first-trees, each bar tree
/// grafts a copy of the corresponding bar of G; the boundary bijection
/// is the induced pairing.
inline TreeElement tree_mult(const TreeElement& g, const TreeFamily& fam) {
    if (!(g.degree == fam.f.dst())) throw degree_error("tree_mult: degree mismatch");
    const SetMap& f = fam.f;
    TreeElement out;
    out.degree = f.src();

    // F1' = G1 <| F_{tau(.)}
    std::vector<Tree> graft_f1;
    for (size_t b = 0; b < g.sigma.size(); ++b)
        graft_f1.push_back(fam.comp[g.sigma_under(b)].f1);
    auto [nf1, loc1] = g.f1.graft(graft_f1);
    out.f1 = nf1;

    // bars'_x = barF_x <| (copies of barG_{f(x)})
    std::vector<std::map<std::pair<size_t, size_t>, size_t>> locx;
    for (size_t xi = 0; xi < f.src().size(); ++xi) {
        size_t y = *f.image_index(xi);
        size_t pos_in_fiber = 0;
        {
            auto idx = f.fiber_indices(y);
            for (size_t k = 0; k < idx.size(); ++k)
                if (idx[k] == xi) pos_in_fiber = k;
        }
        const Tree& fbar = fam.comp[y].bars[pos_in_fiber];
        std::vector<Tree> copies(fbar.boundary().size(), g.bars[y]);
        auto [nb, loc] = fbar.graft(copies);
        out.bars.push_back(nb);
        locx.push_back(loc);
    }

    // sigma': (b, cbar) -> (x, (cF, cG))
    out.sigma.assign(out.f1.boundary().size(), {0, 0});
    for (size_t b = 0; b < g.sigma.size(); ++b) {
        auto [y, cg] = g.sigma[b];
        const TreeElement& fy = fam.comp[y];
        size_t nfy = fy.f1.boundary().size();
        for (size_t cbar = 0; cbar < nfy; ++cbar) {
            auto it = loc1.find({b, cbar});
            if (it == loc1.end()) continue;
            auto [xf, cf] = fy.sigma[cbar];
            // xf is a position within the fiber over y; find global x
            size_t x = f.fiber_indices(y).at(xf);
            out.sigma[it->second] = {x, locx[x].at({cf, cg})};
        }
    }
    out.validate();
    return out;
}

/// Contraction G // F: dual grafting.
inline TreeElement tree_contract(const TreeElement& g, const TreeFamily& fam) {
    if (!(g.degree == fam.f.src())) throw degree_error("tree_contract: degree mismatch");
    const SetMap& f = fam.f;
    TreeElement out;
    out.degree = f.dst();

    // F1' = G1 <| barF_{tau(.)}
    std::vector<Tree> graft_f1;
    for (size_t b = 0; b < g.sigma.size(); ++b) {
        size_t x = g.sigma_under(b);
        size_t y = *f.image_index(x);
        size_t pos = 0;
        auto idx = f.fiber_indices(y);
        for (size_t k = 0; k < idx.size(); ++k)
            if (idx[k] == x) pos = k;
        graft_f1.push_back(fam.comp[y].bars[pos]);
    }
    auto [nf1, loc1] = g.f1.graft(graft_f1);
    out.f1 = nf1;

    // bars'_y = F_y <| barG_{sigma_y(.)}
    std::vector<std::map<std::pair<size_t, size_t>, size_t>> locy;
    for (size_t y = 0; y < f.dst().size(); ++y) {
        const TreeElement& fy = fam.comp[y];
        auto idx = f.fiber_indices(y);
        std::vector<Tree> att;
        for (size_t c = 0; c < fy.sigma.size(); ++c) {
            size_t x = idx.at(fy.sigma_under(c));
            att.push_back(g.bars[x]);
        }
        auto [nb, loc] = fy.f1.graft(att);
        out.bars.push_back(nb);
        locy.push_back(loc);
    }

    // sigma': boundary (b, cbar) of F1' with tau(b) = (x, cG), cbar in
    // boundary of barF_x; image = (y, position of (sigma_y^{-1}(x,cbar), cG))
    out.sigma.assign(out.f1.boundary().size(), {0, 0});
    for (size_t b = 0; b < g.sigma.size(); ++b) {
        auto [x, cg] = g.sigma[b];
        size_t y = *f.image_index(x);
        const TreeElement& fy = fam.comp[y];
        // position of x within its fiber
        size_t pos = 0;
        auto idx = f.fiber_indices(y);
        for (size_t k = 0; k < idx.size(); ++k)
            if (idx[k] == x) pos = k;
        size_t nbar = fy.bars[pos].boundary().size();
        for (size_t cbar = 0; cbar < nbar; ++cbar) {
            auto it = loc1.find({b, cbar});
            if (it == loc1.end()) continue;
            // find c with sigma_y(c) = (pos, cbar)
            std::optional<size_t> cfound;
            for (size_t c = 0; c < fy.sigma.size(); ++c)
                if (fy.sigma[c] == std::make_pair(pos, cbar)) cfound = c;
            if (!cfound) throw std::logic_error("tree_contract: sigma not onto");
            out.sigma[it->second] = {y, locy[y].at({*cfound, cg})};
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
//  Universal evaluation
// ---------------------------------------------------------------------------

/// Evaluate a bare labelled tree in A, producing an element over the
/// canonical position set [#boundary].
inline GenElement eval_tree(const Tree& t, const std::vector<GenElement>& gens,
                            const Instance& A, int node = -1) {
    if (t.is_empty()) return A.zero(FinSet::range(0));
    int v = node < 0 ? t.root() : node;
    const auto& nd = t.node(v);
    if (nd.children.empty()) {
        return A.unit();
    }
    const GenElement& gen = gens.at(static_cast<size_t>(nd.sort));
    // restrict the generator along the fiber labels
    size_t m = nd.children.size();
    FinSet slots = FinSet::range(static_cast<Int>(m));
    std::vector<std::pair<Label, Label>> pairs;
    for (size_t i = 0; i < m; ++i) {
        const auto& lab = t.node(nd.children[i]).label;
        if (!lab) throw degree_error("eval_tree: unlabeled internal fiber");
        pairs.push_back({*lab, slots.at(i)});
    }
    GenElement restricted =
        A.act(PartialBijection::from_pairs(gen.degree, slots, pairs), gen);

    std::vector<GenElement> comps;
    std::vector<Int> sizes;
    for (size_t i = 0; i < m; ++i) {
        GenElement e = eval_tree(t, gens, A, nd.children[i]);
        sizes.push_back(static_cast<Int>(e.degree.size()));
        comps.push_back(std::move(e));
    }
    Int total = 0;
    for (Int s : sizes) total += s;
    FinSet src = FinSet::range(total);
    SetMap f(src, slots);
    Int off = 0;
    std::vector<GenElement> fam;
    for (size_t i = 0; i < m; ++i) {
        for (Int k = 0; k < sizes[i]; ++k) f.assign(static_cast<size_t>(off + k), i);
        FinSet fib = f.fiber_set(i);
        Int base = off;
        fam.push_back(A.act(
            PartialBijection::relabeling(comps[i].degree, fib,
                                         [&](const Label& l) {
                                             return Label::num(base + l.as_num());
                                         }),
            comps[i]));
        off += sizes[i];
    }
    return A.mult(restricted, f, fam);
}

/**
 * The universal evaluator: structural recursion over F1, a single
 * contraction mediated by sigma against the bar trees.  `gens[i]` is
 * the image of the i-th generator (an element of A over its degree).
 */
inline GenElement evaluate(const TreeElement& t, const std::vector<GenElement>& gens,
                           const Instance& A) {
    GenElement e1 = eval_tree(t.f1, gens, A);
    // base map: boundary positions -> degree, by sigma-underline
    SetMap f(e1.degree, t.degree);
    for (size_t b = 0; b < t.sigma.size(); ++b) f.assign(b, t.sigma[b].first);
    std::vector<GenElement> fam;
    for (size_t x = 0; x < t.degree.size(); ++x) {
        GenElement ex = eval_tree(t.bars[x], gens, A);
        FinSet fib = f.fiber_set(x);
        // align bar boundary position c with the f1-boundary b paired to it
        std::vector<std::pair<Label, Label>> pairs;
        for (size_t b = 0; b < t.sigma.size(); ++b)
            if (t.sigma[b].first == x)
                pairs.push_back({ex.degree.at(t.sigma[b].second), e1.degree.at(b)});
        fam.push_back(A.act(PartialBijection::from_pairs(ex.degree, fib, pairs), ex));
    }
    return A.contract(e1, f, fam);
}

// ---------------------------------------------------------------------------
//  Co-multiplication and co-contraction elements
// ---------------------------------------------------------------------------

/// delta^f for f in Set_*(Z, W): sorts are 0 (degree-W generator) and
/// 1+i (degree f^{-1}(w_i) generators).
inline TreeElement comult_element(const SetMap& f) {
    const FinSet& z = f.src();
    const FinSet& w = f.dst();
    TreeElement t;
    t.degree = z;
    Tree f1 = Tree::unit();
    f1.node(0).sort = 0;
    std::vector<int> wnode(w.size(), -1);
    for (size_t j = 0; j < w.size(); ++j)
        if (!f.fiber_indices(j).empty())
            wnode[j] = f1.add_node(0, w.at(j), static_cast<int>(1 + j));
    std::vector<size_t> bpos;  // z-index of each boundary leaf, in creation order
    for (size_t j = 0; j < w.size(); ++j) {
        for (size_t i : f.fiber_indices(j)) {
            f1.add_node(wnode[j], z.at(i));
            bpos.push_back(i);
        }
    }
    t.f1 = f1;
    t.bars.assign(z.size(), Tree::empty());
    for (size_t i = 0; i < z.size(); ++i)
        if (f.image_index(i)) t.bars[i] = Tree::unit();
    // boundary order of f1 follows creation order here
    std::vector<int> bd = t.f1.boundary();
    t.sigma.assign(bd.size(), {0, 0});
    for (size_t b = 0; b < bd.size(); ++b) t.sigma[b] = {bpos[b], 0};
    t.validate();
    return t;
}

/// epsilon^f for f in Set_*(Z, W): the dual element of degree W.
inline TreeElement cocontract_element(const SetMap& f) {
    const FinSet& z = f.src();
    const FinSet& w = f.dst();
    TreeElement t;
    t.degree = w;
    Tree f1 = Tree::unit();
    f1.node(0).sort = 0;
    std::vector<size_t> bpos;
    for (size_t i = 0; i < z.size(); ++i)
        if (f.image_index(i)) {
            f1.add_node(0, z.at(i));
            bpos.push_back(i);
        }
    t.f1 = f1;
    for (size_t j = 0; j < w.size(); ++j) {
        if (f.fiber_indices(j).empty())
            t.bars.push_back(Tree::empty());
        else
            t.bars.push_back(Tree::corolla(f.fiber_set(j), static_cast<int>(1 + j)));
    }
    std::vector<int> bd = t.f1.boundary();
    t.sigma.assign(bd.size(), {0, 0});
    for (size_t b = 0; b < bd.size(); ++b) {
        size_t i = bpos[b];
        size_t j = *f.image_index(i);
        auto idx = f.fiber_indices(j);
        size_t pos = 0;
        for (size_t k = 0; k < idx.size(); ++k)
            if (idx[k] == i) pos = k;
        t.sigma[b] = {j, pos};
    }
    t.validate();
    return t;
}

// ---------------------------------------------------------------------------
//  Functor structure along injections
// ---------------------------------------------------------------------------

/// Relabel a W-labelled tree along an injection j: W -> W'.
inline Tree relabel_tree(const Tree& t, const PartialBijection& j) {
    Tree r = t;
    for (size_t v = 0; v < r.size(); ++v)
        if (r.node(static_cast<int>(v)).label) {
            auto img = j.apply(*r.node(static_cast<int>(v)).label);
            if (!img) throw degree_error("relabel_tree: label outside injection");
            r.node(static_cast<int>(v)).label = *img;
        }
    return r;
}

inline TreeElement delta_functor(const TreeElement& t, const PartialBijection& j) {
    TreeElement r = t;
    r.f1 = relabel_tree(t.f1, j);
    for (auto& b : r.bars) b = relabel_tree(b, j);
    return r;
}

/// Reduction along j^t: keep the boundary points whose ancestor labels
/// all lie in the image of j, then relabel backwards.
inline TreeElement delta_cofunctor(const TreeElement& t, const PartialBijection& j) {
    auto allowed = [&](const Tree& tr, int b) {
        int v = b;
        while (tr.node(v).parent >= 0) {
            if (!tr.node(v).label || !transpose(j).apply(*tr.node(v).label)) return false;
            v = tr.node(v).parent;
        }
        return true;
    };
    // keep b in boundary(F1) iff allowed in F1 and allowed at sigma(b)
    std::vector<int> bd1 = t.f1.boundary();
    std::vector<std::vector<int>> bdb;
    for (const auto& b : t.bars) bdb.push_back(b.boundary());
    std::vector<bool> keep1(bd1.size());
    std::vector<std::vector<bool>> keepb;
    for (const auto& b : bdb) keepb.push_back(std::vector<bool>(b.size(), false));
    for (size_t b = 0; b < t.sigma.size(); ++b) {
        auto [x, c] = t.sigma[b];
        keep1[b] = allowed(t.f1, bd1[b]) && allowed(t.bars[x], bdb[x][c]);
        if (keep1[b]) keepb[x][c] = true;
    }
    TreeElement r;
    r.degree = t.degree;
    auto [nf1, where1] = t.f1.reduce(keep1);
    r.f1 = relabel_tree(nf1, transpose(j));
    std::vector<std::vector<std::optional<size_t>>> whereb;
    for (size_t x = 0; x < t.bars.size(); ++x) {
        auto [nb, wb] = t.bars[x].reduce(keepb[x]);
        r.bars.push_back(relabel_tree(nb, transpose(j)));
        whereb.push_back(wb);
    }
    r.sigma.assign(r.f1.boundary().size(), {0, 0});
    for (size_t b = 0; b < t.sigma.size(); ++b) {
        if (!keep1[b]) continue;
        auto [x, c] = t.sigma[b];
        r.sigma[*where1[b]] = {x, *whereb[x][c]};
    }
    r.validate();
    return r;
}

// ---------------------------------------------------------------------------
//  The one-generator normal form (ladders)
// ---------------------------------------------------------------------------

/// For a single generator of degree [1], every element of degree X is a
/// pair of ladders at one position: returns (x index, n, m) or nullopt
/// for zero.
inline std::optional<std::tuple<size_t, Int, Int>> ladder_normal_form(const TreeElement& t) {
    if (t.is_zero()) return std::nullopt;
    std::vector<int> bd = t.f1.boundary();
    if (bd.size() != 1) throw degree_error("ladder_normal_form: not a one-generator element");
    auto [x, c] = t.sigma[0];
    std::vector<int> bb = t.bars[x].boundary();
    return std::make_tuple(x, t.f1.height(bd[0]), t.bars[x].height(bb[c]));
}

}  // namespace grings
