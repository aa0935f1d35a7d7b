#pragma once

/**
 * Property checkers for F-ring instances: the commutativity classes of
 * totally/left/right/1-/x-/central/commutative, the matrix property
 * (injectivity of matrix coefficients) and tameness.  Checkers are
 * exhaustive over caller-supplied pools and return witnesses, never
 * bare booleans.
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grings/fring.hpp"
#include "grings/graphfr.hpp"

namespace grings {

enum class CommClass { Total, Left, Right, One, Cross, Central, Commutative };

inline CommClass parse_comm_class(const std::string& s) {
    if (s == "total") return CommClass::Total;
    if (s == "left") return CommClass::Left;
    if (s == "right") return CommClass::Right;
    if (s == "one") return CommClass::One;
    if (s == "cross") return CommClass::Cross;
    if (s == "central") return CommClass::Central;
    if (s == "commutative") return CommClass::Commutative;
    throw std::invalid_argument("unknown commutativity class: " + s);
}

/// World over F(R): element type RigMatrix.
struct MatrixWorld {
    using Elem = RigMatrix;
    Rig rig;
    Int entry_bound = 1;

    Elem compose(const Elem& a, const Elem& b) const { return mat_compose(a, b); }
    Elem embed(const PartialBijection& f) const { return RigMatrix::from_partial_bijection(rig, f); }
    Elem indexed_osum(const FinSet& j, const Elem& a) const { return a.indexed_osum(j); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    FinSet rows(const Elem& a) const { return a.rows(); }
    FinSet cols(const Elem& a) const { return a.cols(); }

    std::vector<Elem> enumerate(const FinSet& y, const FinSet& x) const {
        std::vector<Rat> vals = rig.enumerate(entry_bound);
        std::vector<Elem> out;
        size_t cells = y.size() * x.size();
        size_t total = 1;
        for (size_t i = 0; i < cells; ++i) {
            if (total > 500000) throw std::invalid_argument("enumerate: too many matrices");
            total *= vals.size();
        }
        for (size_t code = 0; code < total; ++code) {
            Elem m(rig, y, x);
            size_t c = code;
            for (size_t r = 0; r < y.size(); ++r)
                for (size_t k = 0; k < x.size(); ++k) {
                    m.set(r, k, vals[c % vals.size()]);
                    c /= vals.size();
                }
            out.push_back(m);
        }
        return out;
    }
};

/// World over F{M}: monomial matrices over a monoid.
struct MonomialWorld {
    using Elem = MonomialMatrix;
    Monoid monoid;
    Int word_bound = 2;

    Elem compose(const Elem& a, const Elem& b) const { return mat_compose(a, b); }
    Elem embed(const PartialBijection& f) const {
        return MonomialMatrix::from_partial_bijection(monoid, f);
    }
    Elem indexed_osum(const FinSet& j, const Elem& a) const { return a.indexed_osum(j); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    FinSet rows(const Elem& a) const { return a.rows(); }
    FinSet cols(const Elem& a) const { return a.cols(); }

    std::vector<Elem> enumerate(const FinSet& y, const FinSet& x) const {
        std::vector<std::string> vals = monoid.enumerate_nonzero(word_bound);
        std::vector<Elem> out;
        // all placements of at most min(|Y|,|X|) nonzero entries, one per row/col;
        // enumerate partial injections rows -> cols with values
        std::function<void(size_t, Elem&)> rec = [&](size_t r, Elem& m) {
            if (r == y.size()) {
                out.push_back(m);
                return;
            }
            rec(r + 1, m);  // row stays empty
            for (size_t c = 0; c < x.size(); ++c) {
                bool taken = false;
                for (const auto& [rc, v] : m.entries()) taken = taken || rc.second == c;
                if (taken) continue;
                for (const auto& v : vals) {
                    Elem m2 = m;
                    m2.set(r, c, v);
                    rec(r + 1, m2);
                }
            }
        };
        Elem empty(monoid, y, x);
        rec(0, empty);
        return out;
    }
};

/// World over the graph F-ring of small loop-free graphs.
struct GraphWorld {
    using Elem = TinyGraph;

    Elem compose(const Elem& a, const Elem& b) const { return grings::compose(a, b); }
    Elem embed(const PartialBijection& f) const {
        TinyGraph g(f.dom(), f.cod());
        for (size_t i = 0; i < f.dom().size(); ++i)
            if (auto j = f.image_index(i)) {
                // a discrete vertex embedded on both sides realizes x |-> f(x)
                int v = g.add_vertex(f.dom().at(i), f.cod().at(*j));
                (void)v;
            }
        return g;
    }
    Elem indexed_osum(const FinSet& j, const Elem& a) const {
        TinyGraph r(FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), a.in_ambient())),
                    FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), a.out_ambient())));
        for (size_t k = 0; k < j.size(); ++k) {
            std::vector<int> remap(a.num_vertices());
            auto tag = [&](const std::optional<Label>& l) -> std::optional<Label> {
                if (!l) return std::nullopt;
                return Label::pair(j.at(k), *l);
            };
            for (size_t v = 0; v < a.num_vertices(); ++v)
                remap[v] = r.add_vertex(tag(a.in_label(static_cast<int>(v))),
                                        tag(a.out_label(static_cast<int>(v))));
            for (const auto& e : a.edges()) r.add_edge(remap[e.src], remap[e.dst]);
        }
        return r;
    }
    bool eq(const Elem& a, const Elem& b) const { return iso_equal(a, b); }
    FinSet rows(const Elem& a) const { return a.out_ambient(); }
    FinSet cols(const Elem& a) const { return a.in_ambient(); }
};

template <class World>
struct CommWitness {
    typename World::Elem lhs, rhs;
    std::string description;
};

namespace detail {

template <class World>
typename World::Elem conj(const World& w, const typename World::Elem& m,
                          const PartialBijection& row_iso, const PartialBijection& col_iso) {
    return w.compose(w.embed(row_iso), w.compose(m, w.embed(transpose(col_iso))));
}

inline PartialBijection swap_pairs(const FinSet& from, const FinSet& to) {
    return PartialBijection::relabeling(from, to,
                                        [](const Label& l) { return Label::pair(l.second(), l.first()); });
}
inline PartialBijection drop_unit_right(const FinSet& from, const FinSet& to) {
    // (x, 1) -> x
    return PartialBijection::relabeling(from, to, [](const Label& l) { return l.first(); });
}
inline PartialBijection add_unit_right(const FinSet& from, const FinSet& to) {
    // x -> (x, 1)
    return PartialBijection::relabeling(from, to,
                                        [](const Label& l) { return Label::pair(l, Label::num(1)); });
}

}  // namespace detail

/**
 * Check one commutativity clause on all pairs (a, b) [and d] from the
 * pools; returns the first violating tuple, or nullopt for a pass.
 * The canonical isomorphisms between the two sides' degrees are
 * materialized as relabeling maps, so the comparison is on the nose.
 */
template <class World>
std::optional<CommWitness<World>> commutativity_class(
    const World& w, CommClass cls,
    const std::function<std::vector<typename World::Elem>(const FinSet&, const FinSet&)>& pool,
    Int deg_bound) {
    using Elem = typename World::Elem;
    const FinSet one = FinSet::range(1);

    std::vector<FinSet> degs;
    for (Int n = 0; n <= deg_bound; ++n) degs.push_back(FinSet::range(n));

    auto mismatch = [&](const Elem& l, const Elem& r, const std::string& d)
        -> std::optional<CommWitness<World>> {
        if (!w.eq(l, r)) return CommWitness<World>{l, r, d};
        return std::nullopt;
    };

    auto total_clause = [&](const Elem& a, const Elem& b) -> std::optional<CommWitness<World>> {
        FinSet y = w.rows(a), x = w.cols(a), j = w.rows(b), i = w.cols(b);
        Elem oja = w.indexed_osum(j, a);
        Elem oxb = w.indexed_osum(x, b);
        Elem lhs = w.compose(oja, w.compose(w.embed(detail::swap_pairs(w.rows(oxb), w.cols(oja))), oxb));
        Elem oyb = w.indexed_osum(y, b);
        Elem oia = w.indexed_osum(i, a);
        Elem rhs0 = w.compose(oyb, w.compose(w.embed(detail::swap_pairs(w.rows(oia), w.cols(oyb))), oia));
        Elem rhs = detail::conj(w, rhs0, detail::swap_pairs(w.rows(rhs0), w.rows(lhs)),
                                detail::swap_pairs(w.cols(rhs0), w.cols(lhs)));
        return mismatch(lhs, rhs, "total-commutativity");
    };

    switch (cls) {
        case CommClass::Total: {
            for (const auto& ys : degs)
                for (const auto& xs : degs)
                    for (const auto& js : degs)
                        for (const auto& is : degs)
                            for (const auto& a : pool(ys, xs))
                                for (const auto& b : pool(js, is))
                                    if (auto c = total_clause(a, b)) return c;
            return std::nullopt;
        }
        case CommClass::Left: {
            for (const auto& xs : degs)
                for (const auto& is : degs)
                    for (const auto& a : pool(one, xs))
                        for (const auto& b : pool(one, is)) {
                            Elem oxb = w.indexed_osum(xs, b);
                            Elem lhs = w.compose(
                                a, w.compose(w.embed(detail::drop_unit_right(w.rows(oxb), xs)), oxb));
                            Elem oia = w.indexed_osum(is, a);
                            Elem rhs0 = w.compose(
                                b, w.compose(w.embed(detail::drop_unit_right(w.rows(oia), is)), oia));
                            if (w.cols(lhs).size() == 0 && w.cols(rhs0).size() == 0) continue;
                            Elem rhs = detail::conj(w, rhs0, PartialBijection::identity(one),
                                                    detail::swap_pairs(w.cols(rhs0), w.cols(lhs)));
                            if (auto c = mismatch(lhs, rhs, "left-commutativity")) return c;
                        }
            return std::nullopt;
        }
        case CommClass::Right: {
            for (const auto& ys : degs)
                for (const auto& js : degs)
                    for (const auto& a : pool(ys, one))
                        for (const auto& b : pool(js, one)) {
                            Elem oja = w.indexed_osum(js, a);
                            Elem lhs = w.compose(
                                oja, w.compose(w.embed(detail::add_unit_right(js, w.cols(oja))), b));
                            Elem oyb = w.indexed_osum(ys, b);
                            Elem rhs0 = w.compose(
                                oyb, w.compose(w.embed(detail::add_unit_right(ys, w.cols(oyb))), a));
                            if (w.rows(lhs).size() == 0 && w.rows(rhs0).size() == 0) continue;
                            Elem rhs = detail::conj(w, rhs0, detail::swap_pairs(w.rows(rhs0), w.rows(lhs)),
                                                    PartialBijection::identity(one));
                            if (auto c = mismatch(lhs, rhs, "right-commutativity")) return c;
                        }
            return std::nullopt;
        }
        case CommClass::One: {
            if (auto c = commutativity_class(w, CommClass::Left, pool, deg_bound)) return c;
            return commutativity_class(w, CommClass::Right, pool, deg_bound);
        }
        case CommClass::Cross: {
            for (const auto& ys : degs)
                for (const auto& is : degs)
                    for (const auto& a : pool(ys, one))
                        for (const auto& b : pool(one, is)) {
                            Elem lhs = w.compose(a, b);
                            Elem oyb = w.indexed_osum(ys, b);
                            Elem oia = w.indexed_osum(is, a);
                            Elem rhs0 = w.compose(
                                oyb, w.compose(w.embed(detail::swap_pairs(w.rows(oia), w.cols(oyb))), oia));
                            if (ys.size() == 0 || is.size() == 0) continue;
                            Elem rhs = detail::conj(w, rhs0, detail::drop_unit_right(w.rows(rhs0), ys),
                                                    detail::drop_unit_right(w.cols(rhs0), is));
                            if (auto c = mismatch(lhs, rhs, "cross-commutativity")) return c;
                        }
            return std::nullopt;
        }
        case CommClass::Central:
        case CommClass::Commutative: {
            bool full = cls == CommClass::Commutative;
            for (const auto& ys : degs)
                for (const auto& xs : degs)
                    for (const auto& js : full ? degs : std::vector<FinSet>{one})
                        for (const auto& a : pool(ys, xs))
                            for (const auto& b : pool(one, js))
                                for (const auto& d : full ? pool(js, one) : std::vector<Elem>{w.embed(PartialBijection::identity(one))}) {
                                    Elem bd = w.compose(b, d);  // element of A_{1,1}
                                    Elem oxbd = w.indexed_osum(xs, bd);
                                    Elem lhs =
                                        xs.size() == 0
                                            ? a
                                            : w.compose(a, w.compose(w.embed(detail::drop_unit_right(
                                                                         w.rows(oxbd), xs)),
                                                                     w.compose(oxbd,
                                                                               w.embed(detail::add_unit_right(
                                                                                   xs, w.cols(oxbd))))));
                                    Elem oybd = w.indexed_osum(ys, bd);
                                    Elem rhs =
                                        ys.size() == 0
                                            ? a
                                            : w.compose(w.embed(detail::drop_unit_right(w.rows(oybd), ys)),
                                                        w.compose(oybd,
                                                                  w.compose(w.embed(detail::add_unit_right(
                                                                                ys, w.cols(oybd))),
                                                                            a)));
                                    if (auto c = mismatch(lhs, rhs, "central clause")) return c;
                                    if (!full) continue;
                                    if (ys.size() == 0 || xs.size() == 0) continue;
                                    // third expression: (+_Y b) o (+_J a) o (+_X d)
                                    Elem oyb = w.indexed_osum(ys, b);
                                    Elem oja = w.indexed_osum(js, a);
                                    Elem oxd = w.indexed_osum(xs, d);
                                    Elem mid = w.compose(
                                        oyb, w.compose(w.embed(detail::swap_pairs(w.rows(oja), w.cols(oyb))),
                                                       w.compose(oja, w.compose(w.embed(detail::swap_pairs(
                                                                                    w.rows(oxd), w.cols(oja))),
                                                                                oxd))));
                                    Elem third = detail::conj(
                                        w, mid, detail::drop_unit_right(w.rows(mid), ys),
                                        detail::drop_unit_right(w.cols(mid), xs));
                                    if (auto c = mismatch(lhs, third, "commutativity third form"))
                                        return c;
                                }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

template <class World>
struct PairWitness {
    typename World::Elem a, b;
    std::string description;
};

/// Matrix property: J_{Y,X}(a) = (j_y^t o a o j_x) injective on the pool.
template <class World>
std::optional<PairWitness<World>> is_matrix_fring(
    const World& w, const std::vector<typename World::Elem>& pool, const FinSet& y, const FinSet& x) {
    using Elem = typename World::Elem;
    auto coeffs = [&](const Elem& a) {
        std::vector<Elem> cs;
        for (const auto& yy : y.labels())
            for (const auto& xx : x.labels()) {
                PartialBijection jy = PartialBijection::include_one(y, yy);
                PartialBijection jx = PartialBijection::include_one(x, xx);
                cs.push_back(w.compose(w.embed(transpose(jy)), w.compose(a, w.embed(jx))));
            }
        return cs;
    };
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t k = i + 1; k < pool.size(); ++k) {
            if (w.eq(pool[i], pool[k])) continue;
            auto ci = coeffs(pool[i]), ck = coeffs(pool[k]);
            bool same = true;
            for (size_t t = 0; t < ci.size(); ++t) same = same && w.eq(ci[t], ck[t]);
            if (same) return PairWitness<World>{pool[i], pool[k], "distinct elements with equal matrix coefficients"};
        }
    return std::nullopt;
}

/// Tameness: probes b o a o d separate distinct elements of the pool.
template <class World>
std::optional<PairWitness<World>> is_tame(
    const World& w, const std::vector<typename World::Elem>& pool,
    const std::vector<typename World::Elem>& probes_left,
    const std::vector<typename World::Elem>& probes_right) {
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t k = i + 1; k < pool.size(); ++k) {
            if (w.eq(pool[i], pool[k])) continue;
            bool separated = false;
            for (const auto& b : probes_left) {
                for (const auto& d : probes_right) {
                    auto lhs = w.compose(b, w.compose(pool[i], d));
                    auto rhs = w.compose(b, w.compose(pool[k], d));
                    if (!w.eq(lhs, rhs)) {
                        separated = true;
                        break;
                    }
                }
                if (separated) break;
            }
            if (!separated)
                return PairWitness<World>{pool[i], pool[k], "distinct elements not separated by probes"};
        }
    return std::nullopt;
}

}  // namespace grings
