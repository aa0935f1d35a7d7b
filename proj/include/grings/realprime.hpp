#pragma once

/**
 * The real prime: exact membership in the unit ball of the L2 operator
 * norm over Q, the residue structure on exact unit vectors, and the
 * valuation-axiom checkers.  No irrational norm is ever materialized;
 * comparisons against rational thresholds are decided by an exact
 * positive-semidefiniteness test (recursive Schur complement).
 */

#include <optional>
#include <vector>

#include "grings/base.hpp"
#include "grings/fincat.hpp"
#include "grings/fring.hpp"

namespace grings {

/// Dense matrix of exact rationals, rows x cols.
class QMatrix {
public:
    QMatrix(FinSet rows, FinSet cols)
        : rows_(std::move(rows)), cols_(std::move(cols)),
          a_(rows_.size(), std::vector<Rat>(cols_.size(), rat(0))) {}

    static QMatrix row_vector(const std::vector<Rat>& v) {
        QMatrix m(FinSet::range(1), FinSet::range(static_cast<Int>(v.size())));
        for (size_t i = 0; i < v.size(); ++i) m.at(0, i) = v[i];
        return m;
    }
    static QMatrix col_vector(const std::vector<Rat>& v) {
        QMatrix m(FinSet::range(static_cast<Int>(v.size())), FinSet::range(1));
        for (size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }
    static QMatrix identity(const FinSet& x) {
        QMatrix m(x, x);
        for (size_t i = 0; i < x.size(); ++i) m.at(i, i) = rat(1);
        return m;
    }
    static QMatrix from_rigmatrix(const RigMatrix& r) {
        QMatrix m(r.rows(), r.cols());
        for (const auto& [rc, v] : r.entries()) m.at(rc.first, rc.second) = v;
        return m;
    }

    const FinSet& rows() const { return rows_; }
    const FinSet& cols() const { return cols_; }
    size_t nrows() const { return rows_.size(); }
    size_t ncols() const { return cols_.size(); }
    Rat& at(size_t r, size_t c) { return a_.at(r).at(c); }
    const Rat& at(size_t r, size_t c) const { return a_.at(r).at(c); }

    friend QMatrix compose(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw degree_error("QMatrix compose: degree mismatch");
        QMatrix m(a.rows_, b.cols_);
        for (size_t i = 0; i < a.nrows(); ++i)
            for (size_t k = 0; k < a.ncols(); ++k) {
                if (a.at(i, k) == 0) continue;
                for (size_t j = 0; j < b.ncols(); ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return m;
    }
    friend QMatrix oplus(const QMatrix& a, const QMatrix& b) {
        QMatrix m(FinSet::disjoint_union(a.rows_, b.rows_), FinSet::disjoint_union(a.cols_, b.cols_));
        for (size_t i = 0; i < a.nrows(); ++i)
            for (size_t j = 0; j < a.ncols(); ++j) m.at(i, j) = a.at(i, j);
        for (size_t i = 0; i < b.nrows(); ++i)
            for (size_t j = 0; j < b.ncols(); ++j) m.at(a.nrows() + i, a.ncols() + j) = b.at(i, j);
        return m;
    }
    friend QMatrix transpose(const QMatrix& a) {
        QMatrix m(a.cols_, a.rows_);
        for (size_t i = 0; i < a.nrows(); ++i)
            for (size_t j = 0; j < a.ncols(); ++j) m.at(j, i) = a.at(i, j);
        return m;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    FinSet rows_, cols_;
    std::vector<std::vector<Rat>> a_;
};

/**
 * Exact positive-semidefiniteness of a symmetric rational matrix.
 * Recursive Schur complement; a zero diagonal pivot forces its whole
 * row/column to vanish, which settles the semidefinite boundary exactly.
 */
inline bool is_psd(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    for (size_t k = 0; k < n; ++k) {
        const Rat& piv = m[k][k];
        if (piv < 0) return false;
        if (piv == 0) {
            for (size_t j = k + 1; j < n; ++j)
                if (m[k][j] != 0) return false;
            continue;
        }
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / piv;
            for (size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
        }
        for (size_t j = k + 1; j < n; ++j) m[k][j] = rat(0);
    }
    return true;
}

/// Exact decision of ||a||_2 <= c via  c^2 I - a^t a  >= 0.
inline bool norm_le(const QMatrix& a, const Rat& c) {
    if (c < 0) throw std::invalid_argument("norm_le: negative threshold");
    size_t n = a.ncols();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n, rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat s = rat(0);
            for (size_t r = 0; r < a.nrows(); ++r) s += a.at(r, i) * a.at(r, j);
            g[i][j] = -s;
            if (i == j) g[i][j] += c * c;
        }
    return is_psd(std::move(g));
}

/// Membership in the unit ball O_eta (operator L2 norm <= 1).
inline bool in_O_eta(const QMatrix& a) { return norm_le(a, rat(1)); }

inline Rat norm_squared(const std::vector<Rat>& v) {
    Rat s = rat(0);
    for (const auto& x : v) s += x * x;
    return s;
}

/// Element of the residue structure at the real prime: an exact unit
/// vector (sum of squares exactly 1), or the zero marker.
class SphereVector {
public:
    SphereVector() : zero_(true) {}
    explicit SphereVector(std::vector<Rat> coords) : zero_(false), coords_(std::move(coords)) {
        if (norm_squared(coords_) != 1)
            throw std::invalid_argument("SphereVector: squared norm must be exactly 1");
    }
    static SphereVector zero(size_t dim) {
        SphereVector v;
        v.dim_ = dim;
        return v;
    }

    bool is_zero() const { return zero_; }
    size_t dim() const { return zero_ ? dim_ : coords_.size(); }
    const std::vector<Rat>& coords() const { return coords_; }

    friend bool operator==(const SphereVector& a, const SphereVector& b) {
        if (a.zero_ != b.zero_) return false;
        return a.zero_ ? a.dim_ == b.dim_ : a.coords_ == b.coords_;
    }

private:
    bool zero_;
    size_t dim_ = 0;
    std::vector<Rat> coords_;
};

/// Multiplication in the residue structure: compute in G(Q) along the
/// fibration given by fiber sizes, then project to zero unless the
/// squared norm stays exactly 1.
inline SphereVector residue_mult(const SphereVector& a, const std::vector<SphereVector>& fam) {
    if (fam.size() != a.dim()) throw degree_error("residue_mult: family size mismatch");
    size_t total = 0;
    for (const auto& f : fam) total += f.dim();
    if (a.is_zero()) return SphereVector::zero(total);
    std::vector<Rat> out;
    for (size_t y = 0; y < fam.size(); ++y) {
        if (fam[y].is_zero()) {
            for (size_t i = 0; i < fam[y].dim(); ++i) out.push_back(rat(0));
        } else {
            for (const auto& b : fam[y].coords()) out.push_back(a.coords()[y] * b);
        }
    }
    if (norm_squared(out) != 1) return SphereVector::zero(total);
    return SphereVector(std::move(out));
}

/// Contraction: sum a_x b_x over each fiber, projected by the norm gate.
inline SphereVector residue_contract(const SphereVector& a, const std::vector<SphereVector>& fam) {
    size_t total = 0;
    for (const auto& f : fam) total += f.dim();
    if (total != a.dim()) throw degree_error("residue_contract: fiber sizes must partition degree");
    if (a.is_zero()) return SphereVector::zero(fam.size());
    std::vector<Rat> out;
    size_t off = 0;
    for (const auto& f : fam) {
        Rat s = rat(0);
        if (!f.is_zero())
            for (size_t i = 0; i < f.dim(); ++i) s += a.coords()[off + i] * f.coords()[i];
        out.push_back(s);
        off += f.dim();
    }
    if (norm_squared(out) != 1) return SphereVector::zero(fam.size());
    return SphereVector(std::move(out));
}

/// Matrix coefficients a // 1_x of a residue vector: each is a 1-dim
/// sphere "vector" (i.e. +-1) or zero.
inline std::vector<SphereVector> residue_matrix_coeffs(const SphereVector& a) {
    std::vector<SphereVector> out;
    for (size_t x = 0; x < a.dim(); ++x) {
        if (!a.is_zero() && (a.coords()[x] == 1 || a.coords()[x] == -1))
            out.push_back(SphereVector({a.coords()[x]}));
        else
            out.push_back(SphereVector::zero(1));
    }
    return out;
}

enum class ValuationAxiom { IMult, IIISubmult, IIIOplus, IIITranspose };

inline ValuationAxiom parse_valuation_axiom(const std::string& s) {
    if (s == "I-mult") return ValuationAxiom::IMult;
    if (s == "III-submult") return ValuationAxiom::IIISubmult;
    if (s == "III-oplus") return ValuationAxiom::IIIOplus;
    if (s == "III-transpose") return ValuationAxiom::IIITranspose;
    throw std::invalid_argument("unknown valuation axiom: " + s);
}

struct ValuationWitness {
    QMatrix a, b;
    Rat c1, c2;
    std::string description;
};

/// Sample random rational matrices with entries num/den, |num| <= span.
inline QMatrix random_qmatrix(Rng& rng, Int max_dim, Int span, Int max_den) {
    Int r = rng.range(1, max_dim), c = rng.range(1, max_dim);
    QMatrix m(FinSet::range(r), FinSet::range(c));
    for (Int i = 0; i < r; ++i)
        for (Int j = 0; j < c; ++j)
            m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                rat(rng.range(-span, span), rng.range(1, max_den));
    return m;
}

/**
 * Check a valuation axiom on random samples; thresholds are scanned
 * over a small rational grid so the universally quantified statement
 * is probed only through exact <= comparisons.
 */
inline std::optional<ValuationWitness> valuation_axiom_check(ValuationAxiom ax, Rng rng,
                                                             int samples) {
    std::vector<Rat> grid;
    for (Int n = 0; n <= 8; ++n) grid.push_back(rat(n, 2));  // 0, 1/2, ..., 4

    for (int s = 0; s < samples; ++s) {
        switch (ax) {
            case ValuationAxiom::IMult: {
                // on degree (1,1) the norm is |q| exactly
                Rat x1 = rat(rng.range(-20, 20), rng.range(1, 9));
                Rat x2 = rat(rng.range(-20, 20), rng.range(1, 9));
                Rat lhs = abs(x1 * x2), rhs = abs(x1) * abs(x2);
                if (lhs != rhs)
                    return ValuationWitness{QMatrix::row_vector({x1}), QMatrix::row_vector({x2}),
                                            rat(0), rat(0), "|x1 x2| != |x1||x2|"};
                break;
            }
            case ValuationAxiom::IIISubmult: {
                QMatrix a = random_qmatrix(rng, 3, 2, 3);
                QMatrix b(a.cols(), FinSet::range(rng.range(1, 3)));
                for (size_t i = 0; i < b.nrows(); ++i)
                    for (size_t j = 0; j < b.ncols(); ++j)
                        b.at(i, j) = rat(rng.range(-2, 2), rng.range(1, 3));
                for (const auto& c1 : grid)
                    for (const auto& c2 : grid) {
                        if (norm_le(a, c1) && norm_le(b, c2) && !norm_le(compose(a, b), c1 * c2))
                            return ValuationWitness{a, b, c1, c2, "submultiplicativity failed"};
                    }
                break;
            }
            case ValuationAxiom::IIIOplus: {
                QMatrix a = random_qmatrix(rng, 3, 2, 3);
                QMatrix b = random_qmatrix(rng, 3, 2, 3);
                for (const auto& c : grid) {
                    bool both = norm_le(a, c) && norm_le(b, c);
                    bool sum = norm_le(oplus(a, b), c);
                    if (both != sum)
                        return ValuationWitness{a, b, c, c, "|a0 + a1| != max(|a0|,|a1|)"};
                }
                break;
            }
            case ValuationAxiom::IIITranspose: {
                QMatrix a = random_qmatrix(rng, 3, 2, 3);
                for (const auto& c : grid)
                    if (norm_le(a, c) != norm_le(transpose(a), c))
                        return ValuationWitness{a, a, c, c, "|a^t| != |a|"};
                break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace grings
