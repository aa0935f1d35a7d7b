#pragma once

/**
 * Matrix F-rings F(R) over a rig and monomial F-rings F{M} over a
 * monoid: Y x X matrices, composition = matrix product, direct sum,
 * and (when the coefficients carry an involution) transpose.
 */

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "grings/fincat.hpp"
#include "grings/rig.hpp"

namespace grings {

/// Sparse Y x X matrix over a rig; zero entries are never stored.
class RigMatrix {
public:
    RigMatrix(Rig rig, FinSet rows, FinSet cols)
        : rig_(std::move(rig)), rows_(std::move(rows)), cols_(std::move(cols)) {}

    static RigMatrix from_partial_bijection(const Rig& rig, const PartialBijection& f) {
        RigMatrix m(rig, f.cod(), f.dom());
        for (size_t i = 0; i < f.dom().size(); ++i)
            if (auto j = f.image_index(i)) m.set(*j, i, rig.one());
        return m;
    }

    /// Row vector (1 x X) from coordinates.
    static RigMatrix row(const Rig& rig, const FinSet& x, const std::vector<Rat>& coords) {
        if (coords.size() != x.size()) throw degree_error("row: size mismatch");
        RigMatrix m(rig, FinSet::range(1), x);
        for (size_t i = 0; i < coords.size(); ++i) m.set(0, i, coords[i]);
        return m;
    }

    static RigMatrix scalar(const Rig& rig, const Rat& v) {
        return row(rig, FinSet::range(1), {v});
    }

    const Rig& rig() const { return rig_; }
    const FinSet& rows() const { return rows_; }
    const FinSet& cols() const { return cols_; }

    Rat get(size_t r, size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? rig_.zero() : it->second;
    }
    void set(size_t r, size_t c, const Rat& v) {
        if (r >= rows_.size() || c >= cols_.size()) throw degree_error("set: index out of range");
        Rat n = rig_.normalize(v);
        if (!rig_.valid(n)) throw std::invalid_argument("set: value not in rig " + rig_.name());
        if (n == rig_.zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = n;
    }
    const std::map<std::pair<size_t, size_t>, Rat>& entries() const { return entries_; }

    friend RigMatrix mat_compose(const RigMatrix& a, const RigMatrix& b) {
        if (a.rig_ != b.rig_) throw degree_error("mat_compose: different rigs");
        if (a.cols_ != b.rows_) throw degree_error("mat_compose: degree mismatch");
        RigMatrix m(a.rig_, a.rows_, b.cols_);
        for (const auto& [ij, v] : a.entries_)
            for (size_t c = 0; c < b.cols_.size(); ++c) {
                Rat w = b.get(ij.second, c);
                if (w == a.rig_.zero()) continue;
                m.set(ij.first, c, a.rig_.add(m.get(ij.first, c), a.rig_.mul(v, w)));
            }
        return m;
    }

    friend RigMatrix mat_oplus(const RigMatrix& a, const RigMatrix& b) {
        if (a.rig_ != b.rig_) throw degree_error("mat_oplus: different rigs");
        RigMatrix m(a.rig_, FinSet::disjoint_union(a.rows_, b.rows_),
                    FinSet::disjoint_union(a.cols_, b.cols_));
        for (const auto& [ij, v] : a.entries_) m.set(ij.first, ij.second, v);
        for (const auto& [ij, v] : b.entries_)
            m.set(a.rows_.size() + ij.first, a.cols_.size() + ij.second, v);
        return m;
    }

    friend RigMatrix mat_transpose(const RigMatrix& a) {
        if (!a.rig_.has_involution())
            throw unsupported_error("mat_transpose: rig has no involution");
        RigMatrix m(a.rig_, a.cols_, a.rows_);
        for (const auto& [ij, v] : a.entries_) m.set(ij.second, ij.first, a.rig_.involute(v));
        return m;
    }

    /// Conjugate by relabeling isomorphisms: rows via r, cols via c^t.
    RigMatrix conjugate(const PartialBijection& row_iso, const PartialBijection& col_iso) const {
        RigMatrix r = mat_compose(from_partial_bijection(rig_, row_iso), *this);
        return mat_compose(r, from_partial_bijection(rig_, transpose(col_iso)));
    }

    /// Block sum of copies of *this indexed by J: rows {(j,y)}, cols {(j,x)}.
    RigMatrix indexed_osum(const FinSet& j) const {
        RigMatrix m(rig_, FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), rows_)),
                    FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), cols_)));
        for (size_t k = 0; k < j.size(); ++k)
            for (const auto& [rc, v] : entries_)
                m.set(k * rows_.size() + rc.first, k * cols_.size() + rc.second, v);
        return m;
    }

    /// Matrix coefficient a_{y,x} = j_y^t o a o j_x.
    Rat coeff(const Label& y, const Label& x) const {
        auto r = rows_.index_of(y), c = cols_.index_of(x);
        if (!r || !c) throw degree_error("coeff: label outside degree");
        return get(*r, *c);
    }

    friend bool operator==(const RigMatrix& a, const RigMatrix& b) {
        return a.rig_ == b.rig_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }
    friend bool operator!=(const RigMatrix& a, const RigMatrix& b) { return !(a == b); }

    json to_json() const {
        json es = json::array();
        for (const auto& [rc, v] : entries_)
            es.push_back(json::array(
                {rows_.at(rc.first).to_json(), cols_.at(rc.second).to_json(), v.get_str()}));
        return json{{"rows", rows_.to_json()},
                    {"cols", cols_.to_json()},
                    {"entries", es},
                    {"rig", rig_.name()}};
    }
    static RigMatrix from_json(const json& j) {
        RigMatrix m(Rig::parse(j.at("rig").get<std::string>()), FinSet::from_json(j.at("rows")),
                    FinSet::from_json(j.at("cols")));
        for (const auto& e : j.at("entries")) {
            auto r = m.rows_.index_of(Label::from_json(e[0]));
            auto c = m.cols_.index_of(Label::from_json(e[1]));
            if (!r || !c) throw degree_error("matrix from_json: label outside degree");
            m.set(*r, *c, Rat(e[2].get<std::string>()));
        }
        return m;
    }

private:
    Rig rig_;
    FinSet rows_, cols_;
    std::map<std::pair<size_t, size_t>, Rat> entries_;
};

/// Matrix over a monoid-with-zero, at most one nonzero entry per row
/// and per column.  Composition needs no addition: at most one term of
/// the matrix product survives.
class MonomialMatrix {
public:
    MonomialMatrix(Monoid m, FinSet rows, FinSet cols)
        : mon_(std::move(m)), rows_(std::move(rows)), cols_(std::move(cols)) {}

    static MonomialMatrix from_partial_bijection(const Monoid& mon, const PartialBijection& f) {
        MonomialMatrix m(mon, f.cod(), f.dom());
        for (size_t i = 0; i < f.dom().size(); ++i)
            if (auto j = f.image_index(i)) m.set(*j, i, Monoid::unit());
        return m;
    }

    const Monoid& monoid() const { return mon_; }
    const FinSet& rows() const { return rows_; }
    const FinSet& cols() const { return cols_; }

    std::string get(size_t r, size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Monoid::zero() : it->second;
    }
    void set(size_t r, size_t c, const std::string& v) {
        if (r >= rows_.size() || c >= cols_.size()) throw degree_error("set: index out of range");
        if (mon_.is_zero(v)) {
            entries_.erase({r, c});
            return;
        }
        for (const auto& [rc, w] : entries_)
            if ((rc.first == r || rc.second == c) && rc != std::make_pair(r, c))
                throw std::invalid_argument("MonomialMatrix: row/column already occupied");
        entries_[{r, c}] = v;
    }
    const std::map<std::pair<size_t, size_t>, std::string>& entries() const { return entries_; }

    friend MonomialMatrix mat_compose(const MonomialMatrix& a, const MonomialMatrix& b) {
        if (a.cols_ != b.rows_) throw degree_error("mat_compose: degree mismatch");
        MonomialMatrix m(a.mon_, a.rows_, b.cols_);
        for (const auto& [ij, v] : a.entries_)
            for (const auto& [jk, w] : b.entries_)
                if (ij.second == jk.first) m.set(ij.first, jk.second, a.mon_.mul(v, w));
        return m;
    }

    friend MonomialMatrix mat_oplus(const MonomialMatrix& a, const MonomialMatrix& b) {
        MonomialMatrix m(a.mon_, FinSet::disjoint_union(a.rows_, b.rows_),
                         FinSet::disjoint_union(a.cols_, b.cols_));
        for (const auto& [ij, v] : a.entries_) m.set(ij.first, ij.second, v);
        for (const auto& [ij, v] : b.entries_)
            m.set(a.rows_.size() + ij.first, a.cols_.size() + ij.second, v);
        return m;
    }

    friend MonomialMatrix mat_transpose(const MonomialMatrix& a) {
        MonomialMatrix m(a.mon_, a.cols_, a.rows_);
        for (const auto& [ij, v] : a.entries_) m.set(ij.second, ij.first, a.mon_.involute(v));
        return m;
    }

    MonomialMatrix indexed_osum(const FinSet& j) const {
        MonomialMatrix m(mon_, FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), rows_)),
                         FinSet::indexed_sum(j, std::vector<FinSet>(j.size(), cols_)));
        for (size_t k = 0; k < j.size(); ++k)
            for (const auto& [rc, v] : entries_)
                m.set(k * rows_.size() + rc.first, k * cols_.size() + rc.second, v);
        return m;
    }

    friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
        return a.mon_ == b.mon_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }
    friend bool operator!=(const MonomialMatrix& a, const MonomialMatrix& b) { return !(a == b); }

private:
    Monoid mon_;
    FinSet rows_, cols_;
    std::map<std::pair<size_t, size_t>, std::string> entries_;
};

}  // namespace grings
