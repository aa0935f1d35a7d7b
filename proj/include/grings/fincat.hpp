#pragma once

/**
 * The base category of finite sets and partial bijections, with its two
 * symmetric monoidal structures (disjoint union and product), transpose,
 * and the canonical relabeling isomorphisms materialized as explicit maps.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grings/base.hpp"

namespace grings {

using json = nlohmann::json;

/// A label atom: integer, string, or an ordered pair of labels.  Pairs
/// arise from tagged disjoint unions (side, label) and products (x, y).
class Label {
public:
    Label() : kind_(0), n_(0) {}

    static Label num(Int v) {
        Label l;
        l.kind_ = 0;
        l.n_ = v;
        return l;
    }
    static Label str(std::string s) {
        Label l;
        l.kind_ = 1;
        l.s_ = std::move(s);
        return l;
    }
    static Label pair(Label a, Label b) {
        Label l;
        l.kind_ = 2;
        l.p_ = std::make_shared<const std::pair<Label, Label>>(std::move(a), std::move(b));
        return l;
    }

    int kind() const { return kind_; }
    Int as_num() const { return n_; }
    const std::string& as_str() const { return s_; }
    const Label& first() const { return p_->first; }
    const Label& second() const { return p_->second; }

    friend bool operator==(const Label& a, const Label& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case 0: return a.n_ == b.n_;
            case 1: return a.s_ == b.s_;
            default: return a.first() == b.first() && a.second() == b.second();
        }
    }
    friend bool operator<(const Label& a, const Label& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        switch (a.kind_) {
            case 0: return a.n_ < b.n_;
            case 1: return a.s_ < b.s_;
            default:
                if (!(a.first() == b.first())) return a.first() < b.first();
                return a.second() < b.second();
        }
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

    json to_json() const {
        switch (kind_) {
            case 0: return json(n_);
            case 1: return json(s_);
            default: return json::array({first().to_json(), second().to_json()});
        }
    }
    static Label from_json(const json& j) {
        if (j.is_number_integer()) return num(j.get<Int>());
        if (j.is_string()) return str(j.get<std::string>());
        if (j.is_array() && j.size() == 2) return pair(from_json(j[0]), from_json(j[1]));
        throw std::invalid_argument("Label::from_json: bad encoding");
    }

    std::string repr() const { return to_json().dump(); }

private:
    int kind_;
    Int n_ = 0;
    std::string s_;
    std::shared_ptr<const std::pair<Label, Label>> p_;
};

/// Finite set of pairwise distinct, ordered labels.  [n] = {1..n}.
class FinSet {
public:
    FinSet() = default;
    explicit FinSet(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::set<Label> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second)
                throw std::invalid_argument("FinSet: duplicate label " + l.repr());
    }

    /// Canonical set [n] = {1,...,n}; [0] is the empty set.
    static FinSet range(Int n) {
        std::vector<Label> ls;
        ls.reserve(static_cast<size_t>(n));
        for (Int i = 1; i <= n; ++i) ls.push_back(Label::num(i));
        return FinSet(std::move(ls));
    }

    static FinSet singleton(Label l) { return FinSet({std::move(l)}); }

    size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const Label& at(size_t i) const { return labels_.at(i); }
    const std::vector<Label>& labels() const { return labels_; }

    std::optional<size_t> index_of(const Label& l) const {
        for (size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == l) return i;
        return std::nullopt;
    }
    bool contains(const Label& l) const { return index_of(l).has_value(); }

    friend bool operator==(const FinSet& a, const FinSet& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }
    friend bool operator<(const FinSet& a, const FinSet& b) { return a.labels_ < b.labels_; }

    /// Tagged disjoint union {(i,x) : x in X_i}, per the (side, label) convention.
    static FinSet disjoint_union(const FinSet& x0, const FinSet& x1) {
        std::vector<Label> ls;
        for (const auto& l : x0.labels_) ls.push_back(Label::pair(Label::num(0), l));
        for (const auto& l : x1.labels_) ls.push_back(Label::pair(Label::num(1), l));
        return FinSet(std::move(ls));
    }

    /// Product {(x0,x1)} in row-major order.
    static FinSet product(const FinSet& x0, const FinSet& x1) {
        std::vector<Label> ls;
        for (const auto& a : x0.labels_)
            for (const auto& b : x1.labels_) ls.push_back(Label::pair(a, b));
        return FinSet(std::move(ls));
    }

    /// Indexed sum over X of a family: {(x, y) : y in Y_x}.
    static FinSet indexed_sum(const FinSet& x, const std::vector<FinSet>& ys) {
        if (ys.size() != x.size()) throw degree_error("indexed_sum: family size mismatch");
        std::vector<Label> ls;
        for (size_t i = 0; i < x.size(); ++i)
            for (const auto& y : ys[i].labels()) ls.push_back(Label::pair(x.at(i), y));
        return FinSet(std::move(ls));
    }

    json to_json() const {
        json a = json::array();
        for (const auto& l : labels_) a.push_back(l.to_json());
        return a;
    }
    static FinSet from_json(const json& j) {
        std::vector<Label> ls;
        for (const auto& e : j) ls.push_back(Label::from_json(e));
        return FinSet(std::move(ls));
    }

private:
    std::vector<Label> labels_;
};

/// Arrow of the base category: a bijection D(f) -> I(f) between subsets
/// of dom and cod.  Equivalently a {0,1}-matrix with at most one 1 in
/// every row and column.
class PartialBijection {
public:
    PartialBijection() = default;
    PartialBijection(FinSet dom, FinSet cod)
        : dom_(std::move(dom)), cod_(std::move(cod)), fwd_(dom_.size(), std::nullopt) {}

    static PartialBijection identity(const FinSet& x) {
        PartialBijection f(x, x);
        for (size_t i = 0; i < x.size(); ++i) f.fwd_[i] = i;
        return f;
    }

    /// Empty map (the zero of F_{cod,dom}).
    static PartialBijection zero(const FinSet& dom, const FinSet& cod) {
        return PartialBijection(dom, cod);
    }

    /// j_x : [1] -> X, 1 |-> x.
    static PartialBijection include_one(const FinSet& x, const Label& pt) {
        PartialBijection f(FinSet::range(1), x);
        auto i = x.index_of(pt);
        if (!i) throw degree_error("include_one: label not in set");
        f.fwd_[0] = *i;
        return f;
    }

    /// Inclusion of a subset (labels shared between dom and cod).
    static PartialBijection inclusion(const FinSet& sub, const FinSet& whole) {
        PartialBijection f(sub, whole);
        for (size_t i = 0; i < sub.size(); ++i) {
            auto j = whole.index_of(sub.at(i));
            if (!j) throw degree_error("inclusion: " + sub.at(i).repr() + " not in target");
            f.fwd_[i] = *j;
        }
        return f;
    }

    /// Build from explicit label pairs [(x, y)].
    static PartialBijection from_pairs(const FinSet& dom, const FinSet& cod,
                                       const std::vector<std::pair<Label, Label>>& pairs) {
        PartialBijection f(dom, cod);
        std::set<size_t> used;
        for (const auto& [x, y] : pairs) {
            auto i = dom.index_of(x), j = cod.index_of(y);
            if (!i || !j) throw degree_error("from_pairs: label outside dom/cod");
            if (f.fwd_[*i]) throw std::invalid_argument("from_pairs: source repeated");
            if (!used.insert(*j).second) throw std::invalid_argument("from_pairs: target repeated");
            f.fwd_[*i] = *j;
        }
        return f;
    }

    /// Total bijection dom -> cod given by a label-rewriting function.
    template <class F>
    static PartialBijection relabeling(const FinSet& dom, const FinSet& cod, F&& rewrite) {
        PartialBijection f(dom, cod);
        std::set<size_t> used;
        for (size_t i = 0; i < dom.size(); ++i) {
            Label y = rewrite(dom.at(i));
            auto j = cod.index_of(y);
            if (!j) throw degree_error("relabeling: image " + y.repr() + " not in cod");
            if (!used.insert(*j).second) throw std::invalid_argument("relabeling: not injective");
            f.fwd_[i] = *j;
        }
        return f;
    }

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }

    std::optional<Label> apply(const Label& x) const {
        auto i = dom_.index_of(x);
        if (!i || !fwd_[*i]) return std::nullopt;
        return cod_.at(*fwd_[*i]);
    }

    bool defined_at_index(size_t i) const { return fwd_.at(i).has_value(); }
    std::optional<size_t> image_index(size_t i) const { return fwd_.at(i); }

    /// D(f), as a subset of dom (in dom order).
    std::vector<Label> domain_of_definition() const {
        std::vector<Label> d;
        for (size_t i = 0; i < dom_.size(); ++i)
            if (fwd_[i]) d.push_back(dom_.at(i));
        return d;
    }
    /// I(f), as a subset of cod (in cod order).
    std::vector<Label> image() const {
        std::vector<bool> hit(cod_.size(), false);
        for (auto& j : fwd_)
            if (j) hit[*j] = true;
        std::vector<Label> im;
        for (size_t j = 0; j < cod_.size(); ++j)
            if (hit[j]) im.push_back(cod_.at(j));
        return im;
    }

    bool is_total() const {
        return std::all_of(fwd_.begin(), fwd_.end(), [](auto& o) { return o.has_value(); });
    }

    /// Composition g o f; degrees must match.  D(g o f) = f^{-1}(I(f) n D(g)).
    friend PartialBijection compose(const PartialBijection& g, const PartialBijection& f) {
        if (f.cod_ != g.dom_) throw degree_error("compose: cod(f) != dom(g)");
        PartialBijection h(f.dom_, g.cod_);
        for (size_t i = 0; i < f.dom_.size(); ++i)
            if (f.fwd_[i] && g.fwd_[*f.fwd_[i]]) h.fwd_[i] = *g.fwd_[*f.fwd_[i]];
        return h;
    }

    friend PartialBijection oplus(const PartialBijection& f0, const PartialBijection& f1) {
        PartialBijection h(FinSet::disjoint_union(f0.dom_, f1.dom_),
                           FinSet::disjoint_union(f0.cod_, f1.cod_));
        for (size_t i = 0; i < f0.dom_.size(); ++i)
            if (f0.fwd_[i]) h.fwd_[i] = *f0.fwd_[i];
        for (size_t i = 0; i < f1.dom_.size(); ++i)
            if (f1.fwd_[i]) h.fwd_[f0.dom_.size() + i] = f0.cod_.size() + *f1.fwd_[i];
        return h;
    }

    friend PartialBijection otimes(const PartialBijection& f0, const PartialBijection& f1) {
        PartialBijection h(FinSet::product(f0.dom_, f1.dom_), FinSet::product(f0.cod_, f1.cod_));
        size_t d1 = f1.dom_.size(), c1 = f1.cod_.size();
        for (size_t i = 0; i < f0.dom_.size(); ++i)
            for (size_t j = 0; j < d1; ++j)
                if (f0.fwd_[i] && f1.fwd_[j]) h.fwd_[i * d1 + j] = *f0.fwd_[i] * c1 + *f1.fwd_[j];
        return h;
    }

    friend PartialBijection transpose(const PartialBijection& f) {
        PartialBijection h(f.cod_, f.dom_);
        for (size_t i = 0; i < f.dom_.size(); ++i)
            if (f.fwd_[i]) h.fwd_[*f.fwd_[i]] = i;
        return h;
    }

    friend bool operator==(const PartialBijection& a, const PartialBijection& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.fwd_ == b.fwd_;
    }
    friend bool operator!=(const PartialBijection& a, const PartialBijection& b) { return !(a == b); }

    json to_json() const {
        json pairs = json::array();
        for (size_t i = 0; i < dom_.size(); ++i)
            if (fwd_[i]) pairs.push_back(json::array({dom_.at(i).to_json(), cod_.at(*fwd_[i]).to_json()}));
        return json{{"dom", dom_.to_json()}, {"cod", cod_.to_json()}, {"pairs", pairs}};
    }
    static PartialBijection from_json(const json& j) {
        FinSet dom = FinSet::from_json(j.at("dom")), cod = FinSet::from_json(j.at("cod"));
        std::vector<std::pair<Label, Label>> ps;
        for (const auto& e : j.at("pairs")) ps.emplace_back(Label::from_json(e[0]), Label::from_json(e[1]));
        return from_pairs(dom, cod, ps);
    }

private:
    FinSet dom_, cod_;
    std::vector<std::optional<size_t>> fwd_;
};

// ---- canonical isomorphisms, materialized as explicit relabelings ----

/// a : (X0 + X1) + X2 ~ X0 + (X1 + X2)
inline PartialBijection assoc_oplus(const FinSet& x0, const FinSet& x1, const FinSet& x2) {
    FinSet lhs = FinSet::disjoint_union(FinSet::disjoint_union(x0, x1), x2);
    FinSet rhs = FinSet::disjoint_union(x0, FinSet::disjoint_union(x1, x2));
    return PartialBijection::relabeling(lhs, rhs, [](const Label& l) {
        if (l.first() == Label::num(1))  // (1, x2) -> (1,(1,x2))
            return Label::pair(Label::num(1), Label::pair(Label::num(1), l.second()));
        const Label& inner = l.second();
        if (inner.first() == Label::num(0)) return Label::pair(Label::num(0), inner.second());
        return Label::pair(Label::num(1), Label::pair(Label::num(0), inner.second()));
    });
}

/// c : X0 + X1 ~ X1 + X0
inline PartialBijection comm_oplus(const FinSet& x0, const FinSet& x1) {
    FinSet lhs = FinSet::disjoint_union(x0, x1), rhs = FinSet::disjoint_union(x1, x0);
    return PartialBijection::relabeling(lhs, rhs, [](const Label& l) {
        Int side = l.first().as_num();
        return Label::pair(Label::num(1 - side), l.second());
    });
}

/// u : X + [0] ~ X
inline PartialBijection unit_oplus(const FinSet& x) {
    FinSet lhs = FinSet::disjoint_union(x, FinSet::range(0));
    return PartialBijection::relabeling(lhs, x, [](const Label& l) { return l.second(); });
}

/// The canonical isomorphism  +_X Y ~ X (x) Y  (labels coincide).
inline PartialBijection sum_as_product(const FinSet& x, const FinSet& y) {
    FinSet lhs = FinSet::indexed_sum(x, std::vector<FinSet>(x.size(), y));
    return PartialBijection::relabeling(lhs, FinSet::product(x, y), [](const Label& l) { return l; });
}

/// The canonical isomorphism  +_Y X ~ X (x) Y  (coordinate swap).
inline PartialBijection swapped_sum_as_product(const FinSet& x, const FinSet& y) {
    FinSet lhs = FinSet::indexed_sum(y, std::vector<FinSet>(y.size(), x));
    return PartialBijection::relabeling(lhs, FinSet::product(x, y),
                                        [](const Label& l) { return Label::pair(l.second(), l.first()); });
}

/// Swap X (x) Y ~ Y (x) X.
inline PartialBijection swap_product(const FinSet& x, const FinSet& y) {
    return PartialBijection::relabeling(FinSet::product(x, y), FinSet::product(y, x),
                                        [](const Label& l) { return Label::pair(l.second(), l.first()); });
}

}  // namespace grings
