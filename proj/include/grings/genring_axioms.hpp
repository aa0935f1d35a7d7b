#pragma once

/**
 * The fiber-extended axioms of a (commutative) generalized ring as an
 * exact property suite: associativity, the two adjunctions, left and
 * right linearity (the latter via the explicit pullback with tagged
 * labels), units, zeros, and the three disjointness clauses.  Samplers
 * are seeded and enumerate small degrees first, so every counterexample
 * is reproducible.
 */

#include <optional>
#include <string>
#include <vector>

#include "grings/genring.hpp"

namespace grings {

enum class GenAxiom {
    Assoc,
    LeftAdj,
    RightAdj,
    LeftLin,
    RightLin,
    Unit,
    DisjointI,
    DisjointII,
    DisjointIII,
    ZeroI,
    ZeroII,
    ZeroIII,
    ZeroIV,
};

inline GenAxiom parse_gen_axiom(const std::string& s) {
    if (s == "assoc") return GenAxiom::Assoc;
    if (s == "left-adj") return GenAxiom::LeftAdj;
    if (s == "right-adj") return GenAxiom::RightAdj;
    if (s == "left-lin") return GenAxiom::LeftLin;
    if (s == "right-lin") return GenAxiom::RightLin;
    if (s == "unit") return GenAxiom::Unit;
    if (s == "disjoint-I") return GenAxiom::DisjointI;
    if (s == "disjoint-II") return GenAxiom::DisjointII;
    if (s == "disjoint-III") return GenAxiom::DisjointIII;
    if (s == "zero-i") return GenAxiom::ZeroI;
    if (s == "zero-ii") return GenAxiom::ZeroII;
    if (s == "zero-iii") return GenAxiom::ZeroIII;
    if (s == "zero-iv") return GenAxiom::ZeroIV;
    throw std::invalid_argument("unknown axiom: " + s);
}

inline std::vector<GenAxiom> all_gen_axioms() {
    return {GenAxiom::Assoc,      GenAxiom::LeftAdj,    GenAxiom::RightAdj,
            GenAxiom::LeftLin,    GenAxiom::RightLin,   GenAxiom::Unit,
            GenAxiom::DisjointI,  GenAxiom::DisjointII, GenAxiom::DisjointIII,
            GenAxiom::ZeroI,      GenAxiom::ZeroII,     GenAxiom::ZeroIII,
            GenAxiom::ZeroIV};
}

inline std::string gen_axiom_name(GenAxiom a) {
    switch (a) {
        case GenAxiom::Assoc: return "assoc";
        case GenAxiom::LeftAdj: return "left-adj";
        case GenAxiom::RightAdj: return "right-adj";
        case GenAxiom::LeftLin: return "left-lin";
        case GenAxiom::RightLin: return "right-lin";
        case GenAxiom::Unit: return "unit";
        case GenAxiom::DisjointI: return "disjoint-I";
        case GenAxiom::DisjointII: return "disjoint-II";
        case GenAxiom::DisjointIII: return "disjoint-III";
        case GenAxiom::ZeroI: return "zero-i";
        case GenAxiom::ZeroII: return "zero-ii";
        case GenAxiom::ZeroIII: return "zero-iii";
        case GenAxiom::ZeroIV: return "zero-iv";
    }
    return "?";
}

// ----- families over maps, and family-level operations -----

inline FiberFamily sample_family(const Instance& A, const SetMap& f, Rng& rng, Int bound) {
    FiberFamily fam{f, {}};
    for (size_t z = 0; z < f.dst().size(); ++z) {
        auto pool = A.enumerate(f.fiber_set(z), bound);
        fam.comp.push_back(pool[rng.below(pool.size())]);
    }
    return fam;
}

inline bool family_eq(const Instance& A, const FiberFamily& a, const FiberFamily& b) {
    if (!(a.f == b.f)) return false;
    for (size_t z = 0; z < a.comp.size(); ++z)
        if (!A.eq(a.comp[z], b.comp[z])) return false;
    return true;
}

/// Restriction of f to the fiber of g over w: src = (g o f)^{-1}(w), dst = g^{-1}(w).
inline SetMap restrict_map(const SetMap& f, const SetMap& g, size_t w) {
    FinSet dst = g.fiber_set(w);
    SetMap gof = compose(g, f);
    FinSet src = gof.fiber_set(w);
    SetMap r(src, dst);
    for (size_t i = 0; i < src.size(); ++i) {
        size_t global = *f.src().index_of(src.at(i));
        r.assign(i, *dst.index_of(f.dst().at(*f.image_index(global))));
    }
    return r;
}

/// [ (a^g) <| (b^f) ]_w = a^g_w <| (b^f restricted over w):  A_g x A_f -> A_{g o f}.
inline FiberFamily family_mult(const Instance& A, const FiberFamily& ag, const FiberFamily& bf) {
    if (!(bf.f.dst() == ag.f.src())) throw degree_error("family_mult: maps not composable");
    SetMap gof = compose(ag.f, bf.f);
    FiberFamily out{gof, {}};
    for (size_t w = 0; w < ag.f.dst().size(); ++w) {
        SetMap fw = restrict_map(bf.f, ag.f, w);
        std::vector<GenElement> comps;
        for (size_t zz = 0; zz < fw.dst().size(); ++zz) {
            size_t z = *bf.f.dst().index_of(fw.dst().at(zz));
            comps.push_back(bf.comp[z]);
        }
        out.comp.push_back(A.mult(ag.comp[w], fw, comps));
    }
    return out;
}

/// [ (a^{g o f}) // (b^f) ]_w:  A_{g o f} x A_f -> A_g.
inline FiberFamily family_contract(const Instance& A, const FiberFamily& agf,
                                   const FiberFamily& bf, const SetMap& g) {
    if (!(agf.f == compose(g, bf.f))) throw degree_error("family_contract: base map mismatch");
    FiberFamily out{g, {}};
    for (size_t w = 0; w < g.dst().size(); ++w) {
        SetMap fw = restrict_map(bf.f, g, w);
        std::vector<GenElement> comps;
        for (size_t zz = 0; zz < fw.dst().size(); ++zz) {
            size_t z = *bf.f.dst().index_of(fw.dst().at(zz));
            comps.push_back(bf.comp[z]);
        }
        out.comp.push_back(A.contract(agf.comp[w], fw, comps));
    }
    return out;
}

inline FiberFamily unit_fam(const Instance& A, const SetMap& id_map) {
    FiberFamily fam{id_map, {}};
    for (size_t z = 0; z < id_map.dst().size(); ++z) {
        FinSet fib = id_map.fiber_set(z);
        fam.comp.push_back(A.one_at(fib, fib.at(0)));
    }
    return fam;
}

/// f^* a for the pullback square: components a^{(f(x))} relabeled onto
/// the tagged fibers of the projection.
inline FiberFamily pullback_family(const Instance& A, const FiberFamily& ag, const SetMap& f,
                                   const SetMap& proj, bool tag_on_right) {
    // proj : P -> X (or P -> Z); fiber over x is {(z,x) : g(z)=f(x)}
    FiberFamily out{proj, {}};
    for (size_t x = 0; x < proj.dst().size(); ++x) {
        auto fx = f.image_index(*f.src().index_of(proj.dst().at(x)));
        FinSet fib = proj.fiber_set(x);
        const GenElement& base = ag.comp.at(*fx);
        PartialBijection rel = PartialBijection::relabeling(
            base.degree, fib, [&](const Label& l) {
                return tag_on_right ? Label::pair(l, proj.dst().at(x))
                                    : Label::pair(proj.dst().at(x), l);
            });
        out.comp.push_back(A.act(rel, base));
    }
    return out;
}

struct AxiomWitness {
    std::string axiom;
    std::string detail;
    json data;
};

namespace detail_ax {

inline SetMap random_total_map(Rng& rng, const FinSet& src, const FinSet& dst) {
    SetMap f(src, dst);
    for (size_t i = 0; i < src.size(); ++i)
        f.assign(i, static_cast<size_t>(rng.below(dst.size())));
    return f;
}

inline FinSet random_set(Rng& rng, Int max_size, bool allow_empty = true) {
    Int lo = allow_empty ? 0 : 1;
    return FinSet::range(rng.range(lo, max_size));
}

inline json fam_json(const Instance& A, const FiberFamily& fam) {
    json comps = json::array();
    for (const auto& c : fam.comp) comps.push_back(A.payload_json(c));
    return json{{"map", fam.f.to_json()}, {"components", comps}};
}

}  // namespace detail_ax

/**
 * Run one named axiom on `samples` seeded random diagrams with degrees
 * <= size_bound and element pools bounded by elem_bound; every sampled
 * identity is checked exactly, and the first violation is returned.
 */
inline std::optional<AxiomWitness> axiom_suite(const Instance& A, GenAxiom ax, Rng rng,
                                               int samples, Int size_bound, Int elem_bound) {
    using detail_ax::random_total_map;
    using detail_ax::random_set;

    for (int s = 0; s < samples; ++s) {
        Rng r = rng.split(static_cast<std::uint64_t>(s));
        FinSet x = random_set(r, size_bound), y = random_set(r, size_bound, false),
               z = random_set(r, size_bound, false), w = random_set(r, size_bound, false);
        SetMap f = random_total_map(r, x, y);
        SetMap g = random_total_map(r, y, z);
        SetMap h = random_total_map(r, z, w);

        switch (ax) {
            case GenAxiom::Assoc: {
                FiberFamily d = sample_family(A, h, r, elem_bound);
                FiberFamily c = sample_family(A, g, r, elem_bound);
                FiberFamily b = sample_family(A, f, r, elem_bound);
                FiberFamily lhs = family_mult(A, d, family_mult(A, c, b));
                FiberFamily rhs = family_mult(A, family_mult(A, d, c), b);
                if (!family_eq(A, lhs, rhs))
                    return AxiomWitness{"assoc", "d<|(c<|b) != (d<|c)<|b",
                                        json{{"d", detail_ax::fam_json(A, d)},
                                             {"c", detail_ax::fam_json(A, c)},
                                             {"b", detail_ax::fam_json(A, b)}}};
                break;
            }
            case GenAxiom::LeftAdj: {
                SetMap hgf = compose(h, compose(g, f));
                FiberFamily d = sample_family(A, hgf, r, elem_bound);
                FiberFamily a = sample_family(A, g, r, elem_bound);
                FiberFamily c = sample_family(A, f, r, elem_bound);
                FiberFamily lhs = family_contract(A, d, family_mult(A, a, c), h);
                FiberFamily rhs = family_contract(A, family_contract(A, d, c, compose(h, g)), a, h);
                if (!family_eq(A, lhs, rhs))
                    return AxiomWitness{"left-adj", "d//(a<|c) != (d//c)//a",
                                        json{{"d", detail_ax::fam_json(A, d)},
                                             {"a", detail_ax::fam_json(A, a)},
                                             {"c", detail_ax::fam_json(A, c)}}};
                break;
            }
            case GenAxiom::RightAdj: {
                FiberFamily d = sample_family(A, compose(h, g), r, elem_bound);
                FiberFamily a = sample_family(A, compose(g, f), r, elem_bound);
                FiberFamily c = sample_family(A, f, r, elem_bound);
                FiberFamily lhs = family_contract(A, family_mult(A, d, c), a, h);
                FiberFamily rhs = family_contract(A, d, family_contract(A, a, c, g), h);
                if (!family_eq(A, lhs, rhs))
                    return AxiomWitness{"right-adj", "(d<|c)//a != d//(a//c)",
                                        json{{"d", detail_ax::fam_json(A, d)},
                                             {"a", detail_ax::fam_json(A, a)},
                                             {"c", detail_ax::fam_json(A, c)}}};
                break;
            }
            case GenAxiom::LeftLin: {
                FiberFamily d = sample_family(A, h, r, elem_bound);
                FiberFamily a = sample_family(A, compose(g, f), r, elem_bound);
                FiberFamily c = sample_family(A, f, r, elem_bound);
                FiberFamily lhs = family_contract(A, family_mult(A, d, a), c, compose(h, g));
                FiberFamily rhs = family_mult(A, d, family_contract(A, a, c, g));
                if (!family_eq(A, lhs, rhs))
                    return AxiomWitness{"left-lin", "(d<|a)//c != d<|(a//c)",
                                        json{{"d", detail_ax::fam_json(A, d)},
                                             {"a", detail_ax::fam_json(A, a)},
                                             {"c", detail_ax::fam_json(A, c)}}};
                break;
            }
            case GenAxiom::RightLin: {
                // Z -g-> Y <-f- X, W <-h- Y; d over h o f, a over g, c over f
                SetMap g2 = random_total_map(r, z, y);
                SetMap h2 = random_total_map(r, y, w);
                FiberFamily d = sample_family(A, compose(h2, f), r, elem_bound);
                FiberFamily a = sample_family(A, g2, r, elem_bound);
                FiberFamily c = sample_family(A, f, r, elem_bound);
                FiberFamily lhs = family_mult(A, family_contract(A, d, c, h2), a);
                Pullback pb = pullback(g2, f);
                FiberFamily fa = pullback_family(A, a, f, pb.to_right, /*tag_on_right=*/false);
                FiberFamily gc = pullback_family(A, c, g2, pb.to_left, /*tag_on_right=*/true);
                FiberFamily rhs =
                    family_contract(A, family_mult(A, d, fa), gc, compose(h2, g2));
                if (!family_eq(A, lhs, rhs))
                    return AxiomWitness{"right-lin", "(d//c)<|a != (d<|f*a)//g*c",
                                        json{{"d", detail_ax::fam_json(A, d)},
                                             {"a", detail_ax::fam_json(A, a)},
                                             {"c", detail_ax::fam_json(A, c)},
                                             {"pullback", pb.carrier.to_json()}}};
                break;
            }
            case GenAxiom::Unit: {
                FiberFamily d = sample_family(A, h, r, elem_bound);
                SetMap idz = SetMap::identity(z), idw = SetMap::identity(w);
                FiberFamily lhs1 = family_mult(A, d, unit_fam(A, idz));
                FiberFamily lhs2 = family_mult(A, unit_fam(A, idw), d);
                FiberFamily lhs3 = family_contract(A, d, unit_fam(A, idz), h);
                if (!family_eq(A, lhs1, d) || !family_eq(A, lhs2, d) || !family_eq(A, lhs3, d))
                    return AxiomWitness{"unit", "unit law failed",
                                        json{{"d", detail_ax::fam_json(A, d)}}};
                break;
            }
            case GenAxiom::DisjointI: {
                // b in A_Y, disjoint X0, X1 inside Y
                if (y.size() < 2) break;
                auto pool = A.enumerate(y, elem_bound);
                GenElement b = pool[r.below(pool.size())];
                size_t cut = 1 + r.below(y.size() - 1);
                std::vector<Label> x0, x1;
                for (size_t i = 0; i < y.size(); ++i)
                    (i < cut ? x0 : x1).push_back(y.at(i));
                if (x1.empty()) break;
                auto p0 = A.enumerate(FinSet(x0), elem_bound);
                auto p1 = A.enumerate(FinSet(x1), elem_bound);
                GenElement a0 = p0[r.below(p0.size())], a1 = p1[r.below(p1.size())];
                GenElement lhs = A.contract_subset(A.contract_subset(b, x1, a1), x0, a0);
                GenElement rhs = A.contract_subset(A.contract_subset(b, x0, a0), x1, a1);
                // the two results live on the same label set up to the
                // placement of the two stars; realign by relabeling
                PartialBijection align = PartialBijection::relabeling(
                    rhs.degree, lhs.degree, [](const Label& l) { return l; });
                if (!A.eq(lhs, A.act(align, rhs)))
                    return AxiomWitness{"disjoint-I", "(b//a1)//a0 != (b//a0)//a1",
                                        json{{"b", A.payload_json(b)},
                                             {"a0", A.payload_json(a0)},
                                             {"a1", A.payload_json(a1)}}};
                break;
            }
            case GenAxiom::DisjointII: {
                if (z.size() < 2) break;
                auto pool = A.enumerate(z, elem_bound);
                GenElement c = pool[r.below(pool.size())];
                Label z0 = z.at(0), z1 = z.at(1);
                auto px = A.enumerate(x, elem_bound);
                auto py = A.enumerate(y, elem_bound);
                GenElement a0 = px[r.below(px.size())], a1 = py[r.below(py.size())];
                GenElement lhs = A.mult_at(A.mult_at(c, z0, a0), z1, a1);
                GenElement rhs = A.mult_at(A.mult_at(c, z1, a1), z0, a0);
                PartialBijection align = PartialBijection::relabeling(
                    rhs.degree, lhs.degree, [](const Label& l) { return l; });
                if (!A.eq(lhs, A.act(align, rhs)))
                    return AxiomWitness{"disjoint-II", "(c<|a0)<|a1 != (c<|a1)<|a0",
                                        json{{"c", A.payload_json(c)},
                                             {"a0", A.payload_json(a0)},
                                             {"a1", A.payload_json(a1)}}};
                break;
            }
            case GenAxiom::DisjointIII: {
                if (z.size() < 2) break;
                auto pool = A.enumerate(z, elem_bound);
                GenElement b = pool[r.below(pool.size())];
                size_t cut = 1 + r.below(z.size() - 1);
                std::vector<Label> x0;
                for (size_t i = 0; i < cut; ++i) x0.push_back(z.at(i));
                Label z1 = z.at(z.size() - 1);
                if (std::find(x0.begin(), x0.end(), z1) != x0.end()) break;
                auto p0 = A.enumerate(FinSet(x0), elem_bound);
                GenElement a0 = p0[r.below(p0.size())];
                auto p1 = A.enumerate(x, elem_bound);
                GenElement a1 = p1[r.below(p1.size())];
                GenElement lhs = A.mult_at(A.contract_subset(b, x0, a0), z1, a1);
                GenElement rhs = A.contract_subset(A.mult_at(b, z1, a1), x0, a0);
                PartialBijection align = PartialBijection::relabeling(
                    rhs.degree, lhs.degree, [](const Label& l) { return l; });
                if (!A.eq(lhs, A.act(align, rhs)))
                    return AxiomWitness{"disjoint-III", "(b//a0)<|a1 != (b<|a1)//a0",
                                        json{{"b", A.payload_json(b)},
                                             {"a0", A.payload_json(a0)},
                                             {"a1", A.payload_json(a1)}}};
                break;
            }
            case GenAxiom::ZeroI: {
                FiberFamily b = sample_family(A, f, r, elem_bound);
                GenElement lhs = A.mult(A.zero(y), f, b.comp);
                if (!A.eq(lhs, A.zero(x)))
                    return AxiomWitness{"zero-i", "0 <| b != 0",
                                        json{{"b", detail_ax::fam_json(A, b)}}};
                break;
            }
            case GenAxiom::ZeroII: {
                FiberFamily b = sample_family(A, f, r, elem_bound);
                GenElement lhs = A.contract(A.zero(x), f, b.comp);
                if (!A.eq(lhs, A.zero(y)))
                    return AxiomWitness{"zero-ii", "0 // b != 0",
                                        json{{"b", detail_ax::fam_json(A, b)}}};
                break;
            }
            case GenAxiom::ZeroIII: {
                // c <| 0 at z0 restricts c; and elements supported away
                // from z0 ignore the multiplier entirely.
                auto pool = A.enumerate(z, elem_bound);
                GenElement c = pool[r.below(pool.size())];
                Label z0 = z.at(r.below(z.size()));
                GenElement lhs = A.mult_at(c, z0, A.zero(FinSet::range(0)));
                std::vector<Label> rest;
                for (const auto& l : z.labels())
                    if (!(l == z0)) rest.push_back(l);
                PartialBijection proj = PartialBijection::inclusion(FinSet(rest), z);
                GenElement rhs = A.act(transpose(proj), c);
                PartialBijection align = PartialBijection::relabeling(
                    rhs.degree, lhs.degree, [](const Label& l) { return l; });
                if (!A.eq(lhs, A.act(align, rhs)))
                    return AxiomWitness{"zero-iii", "c <| 0 != restriction of c",
                                        json{{"c", A.payload_json(c)}}};
                // second clause: elements of A_{Z \ z0} inside A_Z
                auto pool2 = A.enumerate(FinSet(rest), elem_bound);
                GenElement b = pool2[r.below(pool2.size())];
                GenElement b_in_z = A.act(proj, b);
                auto px = A.enumerate(x, elem_bound);
                GenElement ax2 = px[r.below(px.size())];
                GenElement lhs2 = A.mult_at(b_in_z, z0, ax2);
                PartialBijection into = PartialBijection::inclusion(FinSet(rest), lhs2.degree);
                GenElement rhs2 = A.act(into, b);
                if (!A.eq(lhs2, rhs2))
                    return AxiomWitness{"zero-iii", "a_Z <| a_X != phi(a_Z) for a_Z in A_{Z-z0}",
                                        json{{"b", A.payload_json(b)}, {"a", A.payload_json(ax2)}}};
                break;
            }
            case GenAxiom::ZeroIV: {
                auto pool = A.enumerate(y, elem_bound);
                GenElement b = pool[r.below(pool.size())];
                if (y.size() < 1) break;
                size_t cut = 1 + r.below(y.size());
                std::vector<Label> x0;
                for (size_t i = 0; i < cut; ++i) x0.push_back(y.at(i));
                GenElement lhs = A.contract_subset(b, x0, A.zero(FinSet(x0)));
                std::vector<Label> rest;
                for (const auto& l : y.labels())
                    if (std::find(x0.begin(), x0.end(), l) == x0.end()) rest.push_back(l);
                PartialBijection proj =
                    transpose(PartialBijection::inclusion(FinSet(rest), y));
                GenElement restr = A.act(proj, b);
                PartialBijection emb = PartialBijection::inclusion(FinSet(rest), lhs.degree);
                GenElement rhs = A.act(emb, restr);
                if (!A.eq(lhs, rhs))
                    return AxiomWitness{"zero-iv", "b // 0 != restriction of b",
                                        json{{"b", A.payload_json(b)}}};
                break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace grings
