#pragma once

/**
 * Generalized rings: degree-indexed carriers with multiplication (a <| b,
 * substitution along a set map) and contraction (a // b, pairing along a
 * set map), concrete instances, the derived involution a^t = 1 // a, and
 * an exact axiom property-checker returning replayable witnesses.
 */

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grings/fincat.hpp"
#include "grings/fring.hpp"
#include "grings/realprime.hpp"
#include "grings/rig.hpp"

namespace grings {

/// Map of finite sets, possibly partial; the fibration device over
/// which the multiple operations run.
class SetMap {
public:
    SetMap(FinSet src, FinSet dst)
        : src_(std::move(src)), dst_(std::move(dst)), fwd_(src_.size(), std::nullopt) {}

    static SetMap identity(const FinSet& x) {
        SetMap f(x, x);
        for (size_t i = 0; i < x.size(); ++i) f.fwd_[i] = i;
        return f;
    }
    /// The constant (fold) map X -> [1].
    static SetMap constant(const FinSet& x) {
        SetMap f(x, FinSet::range(1));
        for (size_t i = 0; i < x.size(); ++i) f.fwd_[i] = 0;
        return f;
    }
    static SetMap from_pairs(const FinSet& src, const FinSet& dst,
                             const std::vector<std::pair<Label, Label>>& pairs) {
        SetMap f(src, dst);
        for (const auto& [x, z] : pairs) {
            auto i = src.index_of(x), j = dst.index_of(z);
            if (!i || !j) throw degree_error("SetMap::from_pairs: label outside src/dst");
            if (f.fwd_[*i]) throw std::invalid_argument("SetMap::from_pairs: source repeated");
            f.fwd_[*i] = *j;
        }
        return f;
    }
    static SetMap from_partial_bijection(const PartialBijection& f) {
        SetMap g(f.dom(), f.cod());
        for (size_t i = 0; i < f.dom().size(); ++i) g.fwd_[i] = f.image_index(i);
        return g;
    }

    const FinSet& src() const { return src_; }
    const FinSet& dst() const { return dst_; }
    void assign(size_t i, size_t j) { fwd_.at(i) = j; }
    std::optional<size_t> image_index(size_t i) const { return fwd_.at(i); }

    bool is_total() const {
        for (const auto& o : fwd_)
            if (!o) return false;
        return true;
    }

    /// Source indices of the fiber over dst index j (in src order).
    std::vector<size_t> fiber_indices(size_t j) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < src_.size(); ++i)
            if (fwd_[i] && *fwd_[i] == j) out.push_back(i);
        return out;
    }
    FinSet fiber_set(size_t j) const {
        std::vector<Label> ls;
        for (size_t i : fiber_indices(j)) ls.push_back(src_.at(i));
        return FinSet(std::move(ls));
    }

    friend SetMap compose(const SetMap& g, const SetMap& f) {
        if (f.dst_ != g.src_) throw degree_error("SetMap compose: degree mismatch");
        SetMap h(f.src_, g.dst_);
        for (size_t i = 0; i < f.src_.size(); ++i)
            if (f.fwd_[i] && g.fwd_[*f.fwd_[i]]) h.fwd_[i] = *g.fwd_[*f.fwd_[i]];
        return h;
    }

    friend bool operator==(const SetMap& a, const SetMap& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.fwd_ == b.fwd_;
    }

    json to_json() const {
        json pairs = json::array();
        for (size_t i = 0; i < src_.size(); ++i)
            if (fwd_[i]) pairs.push_back(json::array({src_.at(i).to_json(), dst_.at(*fwd_[i]).to_json()}));
        return json{{"src", src_.to_json()}, {"dst", dst_.to_json()}, {"map", pairs}};
    }
    static SetMap from_json(const json& j) {
        SetMap f(FinSet::from_json(j.at("src")), FinSet::from_json(j.at("dst")));
        for (const auto& e : j.at("map")) {
            auto i = f.src_.index_of(Label::from_json(e[0]));
            auto k = f.dst_.index_of(Label::from_json(e[1]));
            if (!i || !k) throw degree_error("SetMap::from_json: label outside src/dst");
            f.fwd_[*i] = *k;
        }
        return f;
    }

private:
    FinSet src_, dst_;
    std::vector<std::optional<size_t>> fwd_;
};

/// Pullback Z x_Y X of  Z -g-> Y <-f- X, with tagged-pair labels (z,x)
/// and the two projections.
struct Pullback {
    FinSet carrier;
    SetMap to_left;   // (z,x) -> z
    SetMap to_right;  // (z,x) -> x
};

inline Pullback pullback(const SetMap& g, const SetMap& f) {
    if (g.dst() != f.dst()) throw degree_error("pullback: targets differ");
    std::vector<Label> ls;
    std::vector<std::pair<size_t, size_t>> idx;
    for (size_t z = 0; z < g.src().size(); ++z) {
        auto gz = g.image_index(z);
        if (!gz) continue;
        for (size_t x = 0; x < f.src().size(); ++x) {
            auto fx = f.image_index(x);
            if (fx && *fx == *gz) {
                ls.push_back(Label::pair(g.src().at(z), f.src().at(x)));
                idx.push_back({z, x});
            }
        }
    }
    FinSet p(ls);
    SetMap pl(p, g.src()), pr(p, f.src());
    for (size_t k = 0; k < idx.size(); ++k) {
        pl.assign(k, idx[k].first);
        pr.assign(k, idx[k].second);
    }
    return Pullback{p, pl, pr};
}

class Instance;

struct TreeElement;

/// Element of A_X for some instance; carries its degree set.
struct GenElement {
    const Instance* inst = nullptr;
    FinSet degree;
    // payloads; exactly one is meaningful, per instance kind
    std::optional<Label> flabel;                               // F: a label of X, or zero
    std::vector<Rat> vec;                                      // G(R) / real prime: coordinates
    std::optional<std::pair<Label, std::string>> mono;         // F{M}: (x, m)
    std::shared_ptr<const RigMatrix> rowmat;                   // G(A) for a matrix F-ring A
    std::shared_ptr<const TreeElement> tree;                   // free labelled-tree instances
};

/// Family of elements over the fibers of a base map.
struct FiberFamily {
    SetMap f;
    std::vector<GenElement> comp;  // indexed by dst(f); comp[z] has degree fiber_set(z)
};

/**
 * Abstract generalized-ring instance.  The interface exposes only the
 * elementary multiple operations over a SetMap (total on its source;
 * empty fibers are allowed and realize the zero axioms); multi-step
 * formulas are built by the caller.
 */
class Instance {
public:
    virtual ~Instance() = default;
    virtual std::string name() const = 0;

    virtual GenElement zero(const FinSet& x) const = 0;
    virtual GenElement unit() const = 0;  // 1 in A_[1]

    /// a over dst(f), family over f; result over src(f).
    virtual GenElement mult(const GenElement& a, const SetMap& f,
                            const std::vector<GenElement>& fam) const = 0;
    /// a over src(f), family over f; result over dst(f).
    virtual GenElement contract(const GenElement& a, const SetMap& f,
                                const std::vector<GenElement>& fam) const = 0;

    /// Functorial action along a partial bijection f: a over dom(f) -> over cod(f).
    virtual GenElement act(const PartialBijection& f, const GenElement& a) const = 0;

    virtual bool eq(const GenElement& a, const GenElement& b) const = 0;
    virtual std::vector<GenElement> enumerate(const FinSet& x, Int bound) const = 0;

    virtual json payload_json(const GenElement& a) const = 0;
    virtual GenElement payload_from_json(const FinSet& x, const json& j) const = 0;

    // ---- derived, instance-independent helpers ----

    GenElement one_at(const FinSet& x, const Label& pt) const {
        return act(PartialBijection::include_one(x, pt), unit());
    }
    std::vector<GenElement> unit_family(const SetMap& f) const {
        std::vector<GenElement> fam;
        for (size_t z = 0; z < f.dst().size(); ++z) {
            FinSet fib = f.fiber_set(z);
            if (fib.size() != 1)
                fam.push_back(fib.empty() ? zero(fib) : one_diag(fib));
            else
                fam.push_back(one_at(fib, fib.at(0)));
        }
        return fam;
    }
    /// 1_{id_X}-style family: for a unit family every fiber must be a
    /// singleton; other fibers get the diagonal padding below.
    GenElement one_diag(const FinSet& x) const {
        // only used for singleton fibers in practice; general fallback:
        if (x.size() == 1) return one_at(x, x.at(0));
        throw degree_error("one_diag: unit family needs singleton fibers");
    }

    /// The involution a^t = 1 // a on A_[1].
    GenElement involute(const GenElement& a) const {
        if (a.degree.size() != 1) throw degree_error("involute: degree must be [1]");
        SetMap id1 = SetMap::identity(unit().degree);
        GenElement arg = a;
        if (!(a.degree == unit().degree))
            arg = act(PartialBijection::relabeling(a.degree, unit().degree,
                                                   [&](const Label&) { return unit().degree.at(0); }),
                      a);
        return contract(unit(), id1, {arg});
    }

    /// Matrix coefficients a |-> (a // 1_x)_x in A_[1].
    std::vector<GenElement> matrix_coeffs(const GenElement& a) const {
        std::vector<GenElement> out;
        for (size_t i = 0; i < a.degree.size(); ++i) {
            SetMap c = SetMap::constant(a.degree);
            out.push_back(contract(a, c, {one_at(a.degree, a.degree.at(i))}));
        }
        return out;
    }

    /// Multiplication at a single point z0: result over (Z \ z0) + tagged X.
    GenElement mult_at(const GenElement& c, const Label& z0, const GenElement& a) const {
        const FinSet& z = c.degree;
        if (!z.contains(z0)) throw degree_error("mult_at: point not in degree");
        std::vector<Label> src_labels;
        for (const auto& l : z.labels())
            if (!(l == z0)) src_labels.push_back(l);
        std::vector<Label> tagged;
        for (const auto& l : a.degree.labels()) tagged.push_back(Label::pair(z0, l));
        for (const auto& l : tagged) src_labels.push_back(l);
        FinSet src{src_labels};
        SetMap f(src, z);
        for (size_t i = 0; i < src.size(); ++i) {
            const Label& l = src.at(i);
            bool is_tag = i >= src.size() - tagged.size();
            f.assign(i, *z.index_of(is_tag ? z0 : l));
        }
        std::vector<GenElement> fam;
        for (size_t j = 0; j < z.size(); ++j) {
            FinSet fib = f.fiber_set(j);
            if (z.at(j) == z0)
                fam.push_back(act(PartialBijection::relabeling(
                                      a.degree, fib, [&](const Label& l) { return Label::pair(z0, l); }),
                                  a));
            else
                fam.push_back(one_at(fib, fib.at(0)));
        }
        return mult(c, f, fam);
    }

    /// Contraction by a single subset X0 of the degree of b: the
    /// contracted block collapses to the point ("*", first label of X0).
    GenElement contract_subset(const GenElement& b, const std::vector<Label>& x0,
                               const GenElement& a) const {
        const FinSet& y = b.degree;
        Label star = Label::pair(Label::str("*"), x0.empty() ? Label::num(0) : x0.front());
        std::vector<Label> dst_labels;
        for (const auto& l : y.labels()) {
            bool in0 = std::find(x0.begin(), x0.end(), l) != x0.end();
            if (!in0) dst_labels.push_back(l);
        }
        dst_labels.push_back(star);
        FinSet dst{dst_labels};
        SetMap f(y, dst);
        for (size_t i = 0; i < y.size(); ++i) {
            bool in0 = std::find(x0.begin(), x0.end(), y.at(i)) != x0.end();
            f.assign(i, in0 ? dst.size() - 1 : *dst.index_of(y.at(i)));
        }
        std::vector<GenElement> fam;
        for (size_t j = 0; j < dst.size(); ++j) {
            FinSet fib = f.fiber_set(j);
            if (j + 1 == dst.size()) {
                if (!(fib == a.degree)) {
                    fam.push_back(act(PartialBijection::inclusion(a.degree, fib), a));
                } else {
                    fam.push_back(a);
                }
            } else {
                fam.push_back(one_at(fib, fib.at(0)));
            }
        }
        return contract(b, f, fam);
    }

protected:
    void check_mult(const GenElement& a, const SetMap& f, const std::vector<GenElement>& fam) const {
        if (a.inst != this) throw degree_error("mult: instance mismatch");
        if (!(a.degree == f.dst())) throw degree_error("mult: degree of a must be dst(f)");
        if (!f.is_total()) throw degree_error("mult: base map must be total on its source");
        if (fam.size() != f.dst().size()) throw degree_error("mult: family size mismatch");
        for (size_t z = 0; z < fam.size(); ++z)
            if (!(fam[z].degree == f.fiber_set(z))) throw degree_error("mult: fiber degree mismatch");
    }
    void check_contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const {
        if (a.inst != this) throw degree_error("contract: instance mismatch");
        if (!(a.degree == f.src())) throw degree_error("contract: degree of a must be src(f)");
        if (!f.is_total()) throw degree_error("contract: base map must be total on its source");
        if (fam.size() != f.dst().size()) throw degree_error("contract: family size mismatch");
        for (size_t z = 0; z < fam.size(); ++z)
            if (!(fam[z].degree == f.fiber_set(z)))
                throw degree_error("contract: fiber degree mismatch");
    }
};

// ---------------------------------------------------------------------------
//  Instances
// ---------------------------------------------------------------------------

/// The initial instance: F_X = X u {0}.
class FInstance : public Instance {
public:
    std::string name() const override { return "F"; }

    GenElement zero(const FinSet& x) const override { return {this, x, std::nullopt, {}, {}, {}}; }
    GenElement unit() const override {
        FinSet one = FinSet::range(1);
        return {this, one, one.at(0), {}, {}, {}};
    }
    GenElement make(const FinSet& x, const Label& l) const {
        if (!x.contains(l)) throw degree_error("F::make: label outside degree");
        return {this, x, l, {}, {}, {}};
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        check_mult(a, f, fam);
        if (!a.flabel) return zero(f.src());
        size_t z0 = *f.dst().index_of(*a.flabel);
        const GenElement& comp = fam.at(z0);
        if (!comp.flabel) return zero(f.src());
        return {this, f.src(), *comp.flabel, {}, {}, {}};
    }

    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        check_contract(a, f, fam);
        if (!a.flabel) return zero(f.dst());
        size_t i = *a.degree.index_of(*a.flabel);
        size_t z = *f.image_index(i);
        const GenElement& comp = fam.at(z);
        if (comp.flabel && *comp.flabel == *a.flabel) return {this, f.dst(), f.dst().at(z), {}, {}, {}};
        return zero(f.dst());
    }

    GenElement act(const PartialBijection& f, const GenElement& a) const override {
        if (!(a.degree == f.dom())) throw degree_error("F::act: degree mismatch");
        if (!a.flabel) return zero(f.cod());
        auto img = f.apply(*a.flabel);
        if (!img) return zero(f.cod());
        return {this, f.cod(), *img, {}, {}, {}};
    }

    bool eq(const GenElement& a, const GenElement& b) const override {
        return a.degree == b.degree && a.flabel == b.flabel;
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int) const override {
        std::vector<GenElement> out{zero(x)};
        for (const auto& l : x.labels()) out.push_back(make(x, l));
        return out;
    }

    json payload_json(const GenElement& a) const override {
        return a.flabel ? a.flabel->to_json() : json(nullptr);
    }
    GenElement payload_from_json(const FinSet& x, const json& j) const override {
        if (j.is_null()) return zero(x);
        return make(x, Label::from_json(j));
    }
};

/// G(R) for a rig R: A_X = R^X, multiplication is coordinatewise
/// scaling along the map, contraction is the fiberwise bilinear sum.
class GRigInstance : public FInstance {
public:
    explicit GRigInstance(Rig rig) : rig_(std::move(rig)) {}

    const Rig& rig() const { return rig_; }
    std::string name() const override { return "G(" + rig_.name() + ")"; }

    GenElement zero(const FinSet& x) const override {
        return {this, x, {}, std::vector<Rat>(x.size(), rig_.zero()), {}, {}};
    }
    GenElement unit() const override {
        return {this, FinSet::range(1), {}, {rig_.one()}, {}, {}};
    }
    GenElement make(const FinSet& x, std::vector<Rat> coords) const {
        if (coords.size() != x.size()) throw degree_error("G(R)::make: size mismatch");
        for (auto& c : coords) {
            c = rig_.normalize(c);
            if (!rig_.valid(c)) throw std::invalid_argument("G(R)::make: value not in rig");
        }
        return {this, x, {}, std::move(coords), {}, {}};
    }
    /// The all-ones vector over X.
    GenElement ones(const FinSet& x) const {
        return make(x, std::vector<Rat>(x.size(), rig_.one()));
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        check_mult(a, f, fam);
        std::vector<Rat> out(f.src().size(), rig_.zero());
        for (size_t z = 0; z < f.dst().size(); ++z) {
            auto idx = f.fiber_indices(z);
            for (size_t k = 0; k < idx.size(); ++k)
                out[idx[k]] = rig_.mul(a.vec[z], fam[z].vec[k]);
        }
        return {this, f.src(), {}, std::move(out), {}, {}};
    }

    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        check_contract(a, f, fam);
        std::vector<Rat> out(f.dst().size(), rig_.zero());
        for (size_t z = 0; z < f.dst().size(); ++z) {
            auto idx = f.fiber_indices(z);
            for (size_t k = 0; k < idx.size(); ++k)
                out[z] = rig_.add(out[z], rig_.mul(a.vec[idx[k]], fam[z].vec[k]));
        }
        return {this, f.dst(), {}, std::move(out), {}, {}};
    }

    GenElement act(const PartialBijection& f, const GenElement& a) const override {
        if (!(a.degree == f.dom())) throw degree_error("act: degree mismatch");
        std::vector<Rat> out(f.cod().size(), rig_.zero());
        for (size_t i = 0; i < f.dom().size(); ++i)
            if (auto j = f.image_index(i)) out[*j] = a.vec[i];
        return {this, f.cod(), {}, std::move(out), {}, {}};
    }

    bool eq(const GenElement& a, const GenElement& b) const override {
        return a.degree == b.degree && a.vec == b.vec;
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<Rat> vals = rig_.enumerate(bound);
        std::vector<GenElement> out;
        size_t total = 1;
        for (size_t i = 0; i < x.size(); ++i) total *= vals.size();
        for (size_t code = 0; code < total; ++code) {
            std::vector<Rat> v;
            size_t c = code;
            for (size_t i = 0; i < x.size(); ++i) {
                v.push_back(vals[c % vals.size()]);
                c /= vals.size();
            }
            out.push_back(make(x, std::move(v)));
        }
        return out;
    }

    json payload_json(const GenElement& a) const override {
        json v = json::array();
        for (const auto& q : a.vec) v.push_back(q.get_str());
        return v;
    }
    GenElement payload_from_json(const FinSet& x, const json& j) const override {
        std::vector<Rat> v;
        for (const auto& e : j) v.push_back(Rat(e.get<std::string>()));
        return make(x, std::move(v));
    }

private:
    Rig rig_;
};

/// The real prime O (unit L2 ball over Q) and its residue field k;
/// both compute in G(Q), with k truncating below-norm-1 results to 0.
class RealPrimeInstance : public GRigInstance {
public:
    explicit RealPrimeInstance(bool residue)
        : GRigInstance(Rig::rationals()), residue_(residue) {}

    bool is_residue() const { return residue_; }
    std::string name() const override { return residue_ ? "k" : "O_eta"; }

    bool contains(const GenElement& a) const {
        Rat n = norm_squared(a.vec);
        return residue_ ? (n == 1 || n == 0) : n <= 1;
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        return gate(GRigInstance::mult(a, f, fam));
    }
    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        return gate(GRigInstance::contract(a, f, fam));
    }
    GenElement act(const PartialBijection& f, const GenElement& a) const override {
        return gate(GRigInstance::act(f, a));
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<GenElement> all = GRigInstance::enumerate(x, bound);
        std::vector<GenElement> out;
        for (auto& a : all)
            if (contains(a)) out.push_back(std::move(a));
        return out;
    }

private:
    GenElement gate(GenElement e) const {
        if (residue_ && norm_squared(e.vec) != 1)
            for (auto& c : e.vec) c = rat(0);
        return e;
    }
    bool residue_;
};

/// F{M} for a monoid-with-zero M: elements are (x, m) with x in the
/// degree and m a nonzero monoid element, plus zero.
class MonInstance : public FInstance {
public:
    explicit MonInstance(Monoid m, Int word_bound = 2) : mon_(std::move(m)), bound_(word_bound) {}

    const Monoid& monoid() const { return mon_; }
    std::string name() const override { return "F{" + mon_.name() + "}"; }

    GenElement zero(const FinSet& x) const override { return {this, x, {}, {}, std::nullopt, {}}; }
    GenElement unit() const override {
        FinSet one = FinSet::range(1);
        return {this, one, {}, {}, std::make_pair(one.at(0), Monoid::unit()), {}};
    }
    GenElement make(const FinSet& x, const Label& pos, const std::string& m) const {
        if (!x.contains(pos)) throw degree_error("F{M}::make: label outside degree");
        if (mon_.is_zero(m)) return zero(x);
        return {this, x, {}, {}, std::make_pair(pos, m), {}};
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        check_mult(a, f, fam);
        if (!a.mono) return zero(f.src());
        auto [y0, m0] = *a.mono;
        size_t z0 = *f.dst().index_of(y0);
        const GenElement& comp = fam.at(z0);
        if (!comp.mono) return zero(f.src());
        return make(f.src(), comp.mono->first, mon_.mul(m0, comp.mono->second));
    }

    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        check_contract(a, f, fam);
        if (!a.mono) return zero(f.dst());
        auto [x0, m0] = *a.mono;
        size_t i = *a.degree.index_of(x0);
        size_t z = *f.image_index(i);
        const GenElement& comp = fam.at(z);
        if (!comp.mono || !(comp.mono->first == x0)) return zero(f.dst());
        return make(f.dst(), f.dst().at(z), mon_.mul(m0, mon_.involute(comp.mono->second)));
    }

    GenElement act(const PartialBijection& f, const GenElement& a) const override {
        if (!(a.degree == f.dom())) throw degree_error("act: degree mismatch");
        if (!a.mono) return zero(f.cod());
        auto img = f.apply(a.mono->first);
        if (!img) return zero(f.cod());
        return make(f.cod(), *img, a.mono->second);
    }

    bool eq(const GenElement& a, const GenElement& b) const override {
        return a.degree == b.degree && a.mono == b.mono;
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<GenElement> out{zero(x)};
        for (const auto& l : x.labels())
            for (const auto& m : mon_.enumerate_nonzero(std::min(bound, bound_)))
                out.push_back(make(x, l, m));
        return out;
    }

    json payload_json(const GenElement& a) const override {
        if (!a.mono) return json(nullptr);
        return json::array({a.mono->first.to_json(), a.mono->second});
    }
    GenElement payload_from_json(const FinSet& x, const json& j) const override {
        if (j.is_null()) return zero(x);
        return make(x, Label::from_json(j[0]), j[1].get<std::string>());
    }

private:
    Monoid mon_;
    Int bound_;
};

/// G(A) for a matrix F-ring A over an involutive rig: A_X = rows 1 x X;
/// multiplication is a_Z o (+_z a_z^f), contraction composes with the
/// transposed block sum.
class FRingGenInstance : public Instance {
public:
    FRingGenInstance(Rig rig, bool monomial_only, Int entry_bound = 1)
        : rig_(std::move(rig)), monomial_(monomial_only), bound_(entry_bound) {
        if (!rig_.has_involution()) throw unsupported_error("G(A): F-ring must have involution");
    }

    std::string name() const override {
        return monomial_ ? "G(F-as-fring)" : "G(F(" + rig_.name() + "))";
    }

    GenElement wrap(RigMatrix m) const {
        if (m.rows().size() != 1) throw degree_error("G(A): payload must be a row");
        FinSet deg = m.cols();
        return {this, deg, {}, {}, {}, std::make_shared<const RigMatrix>(std::move(m))};
    }

    GenElement zero(const FinSet& x) const override {
        return wrap(RigMatrix(rig_, FinSet::range(1), x));
    }
    GenElement unit() const override {
        return wrap(RigMatrix::scalar(rig_, rig_.one()));
    }

    GenElement mult(const GenElement& a, const SetMap& f,
                    const std::vector<GenElement>& fam) const override {
        check_mult(a, f, fam);
        return wrap(mat_compose(*a.rowmat, block_sum(f, fam)));
    }

    GenElement contract(const GenElement& a, const SetMap& f,
                        const std::vector<GenElement>& fam) const override {
        check_contract(a, f, fam);
        return wrap(mat_compose(*a.rowmat, mat_transpose(block_sum(f, fam))));
    }

    GenElement act(const PartialBijection& f, const GenElement& a) const override {
        RigMatrix m =
            mat_compose(*a.rowmat, RigMatrix::from_partial_bijection(rig_, transpose(f)));
        return wrap(m);
    }

    bool eq(const GenElement& a, const GenElement& b) const override {
        return *a.rowmat == *b.rowmat;
    }

    std::vector<GenElement> enumerate(const FinSet& x, Int bound) const override {
        std::vector<GenElement> out;
        std::vector<Rat> vals = rig_.enumerate(std::min(bound, bound_));
        size_t total = 1;
        for (size_t i = 0; i < x.size(); ++i) total *= vals.size();
        for (size_t code = 0; code < total; ++code) {
            RigMatrix m(rig_, FinSet::range(1), x);
            size_t c = code;
            size_t nonzero = 0;
            for (size_t i = 0; i < x.size(); ++i) {
                Rat v = vals[c % vals.size()];
                if (v != rig_.zero()) ++nonzero;
                m.set(0, i, v);
                c /= vals.size();
            }
            if (monomial_ && nonzero > 1) continue;
            out.push_back(wrap(std::move(m)));
        }
        return out;
    }

    json payload_json(const GenElement& a) const override { return a.rowmat->to_json(); }
    GenElement payload_from_json(const FinSet&, const json& j) const override {
        return wrap(RigMatrix::from_json(j));
    }

private:
    /// +_{z in Z} a_z^f written directly on dst(f) x src(f).
    RigMatrix block_sum(const SetMap& f, const std::vector<GenElement>& fam) const {
        RigMatrix m(rig_, f.dst(), f.src());
        for (size_t z = 0; z < f.dst().size(); ++z) {
            auto idx = f.fiber_indices(z);
            const RigMatrix& comp = *fam.at(z).rowmat;
            for (size_t k = 0; k < idx.size(); ++k) m.set(z, idx[k], comp.get(0, k));
        }
        return m;
    }

    Rig rig_;
    bool monomial_;
    Int bound_;
};

}  // namespace grings
