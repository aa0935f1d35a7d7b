#pragma once

/**
 * Rigs (rings without negatives) and monoids-with-zero, as runtime
 * descriptors.  Carriers are exact: rationals for rigs, token strings
 * for monoids.  Instances cover N, Z, Q, Z/n, the Boolean rig {0,1}
 * with max as addition, and the frozen rig N^0 (max-plus on N).
 */

#include <string>
#include <vector>

#include "grings/base.hpp"

namespace grings {

class Rig {
public:
    enum class Kind { Nat, Integers, Rationals, Zmod, Boolean, Frozen };

    static Rig nat() { return Rig(Kind::Nat, 0); }
    static Rig integers() { return Rig(Kind::Integers, 0); }
    static Rig rationals() { return Rig(Kind::Rationals, 0); }
    static Rig zmod(Int n) {
        if (n < 2) throw std::invalid_argument("zmod: modulus must be >= 2");
        return Rig(Kind::Zmod, n);
    }
    static Rig boolean() { return Rig(Kind::Boolean, 0); }
    static Rig frozen() { return Rig(Kind::Frozen, 0); }

    static Rig parse(const std::string& name) {
        if (name == "N") return nat();
        if (name == "Z") return integers();
        if (name == "Q") return rationals();
        if (name == "bool") return boolean();
        if (name == "frozen") return frozen();
        if (name.rfind("Zmod:", 0) == 0) return zmod(std::stoll(name.substr(5)));
        throw std::invalid_argument("unknown rig: " + name);
    }

    Kind kind() const { return kind_; }
    Int modulus() const { return mod_; }

    std::string name() const {
        switch (kind_) {
            case Kind::Nat: return "N";
            case Kind::Integers: return "Z";
            case Kind::Rationals: return "Q";
            case Kind::Zmod: return "Zmod:" + std::to_string(mod_);
            case Kind::Boolean: return "bool";
            case Kind::Frozen: return "frozen";
        }
        return "?";
    }

    Rat zero() const { return rat(0); }
    Rat one() const { return rat(1); }

    bool is_commutative() const { return true; }
    bool has_negation() const {
        return kind_ == Kind::Integers || kind_ == Kind::Rationals || kind_ == Kind::Zmod;
    }
    /// All carriers here are commutative, so the identity involution works.
    bool has_involution() const { return true; }
    Rat involute(const Rat& a) const { return a; }

    Rat add(const Rat& a, const Rat& b) const {
        switch (kind_) {
            case Kind::Boolean:
            case Kind::Frozen: return a > b ? a : b;
            case Kind::Zmod: return reduce(a + b);
            default: return a + b;
        }
    }
    Rat mul(const Rat& a, const Rat& b) const {
        if (kind_ == Kind::Zmod) return reduce(a * b);
        return a * b;
    }

    bool valid(const Rat& a) const {
        switch (kind_) {
            case Kind::Nat:
            case Kind::Frozen: return is_integer(a) && a >= 0;
            case Kind::Integers: return is_integer(a);
            case Kind::Rationals: return true;
            case Kind::Zmod: return is_integer(a) && a >= 0 && a < mod_;
            case Kind::Boolean: return a == 0 || a == 1;
        }
        return false;
    }

    /// The canonical representative (used when importing raw values).
    Rat normalize(const Rat& a) const {
        if (kind_ == Kind::Zmod) return reduce(a);
        if (kind_ == Kind::Boolean) return a == 0 ? rat(0) : rat(1);
        return a;
    }

    /// All elements up to |.| <= bound (exhaustive for Zmod/Boolean).
    std::vector<Rat> enumerate(Int bound) const {
        std::vector<Rat> out;
        switch (kind_) {
            case Kind::Nat:
            case Kind::Frozen:
                for (Int i = 0; i <= bound; ++i) out.push_back(rat(i));
                break;
            case Kind::Integers:
                for (Int i = -bound; i <= bound; ++i) out.push_back(rat(i));
                break;
            case Kind::Rationals:
                for (Int d = 1; d <= bound; ++d)
                    for (Int n = -bound; n <= bound; ++n) {
                        Rat q = rat(n, d);
                        bool dup = false;
                        for (auto& e : out) dup = dup || e == q;
                        if (!dup) out.push_back(q);
                    }
                break;
            case Kind::Zmod:
                for (Int i = 0; i < mod_; ++i) out.push_back(rat(i));
                break;
            case Kind::Boolean:
                out = {rat(0), rat(1)};
                break;
        }
        return out;
    }

    friend bool operator==(const Rig& a, const Rig& b) {
        return a.kind_ == b.kind_ && a.mod_ == b.mod_;
    }
    friend bool operator!=(const Rig& a, const Rig& b) { return !(a == b); }

private:
    Rig(Kind k, Int m) : kind_(k), mod_(m) {}

    Rat reduce(const Rat& a) const {
        BigInt n = a.get_num();  // integral by construction
        BigInt m(mod_);
        BigInt r = n % m;
        if (r < 0) r += m;
        return Rat(r);
    }

    Kind kind_;
    Int mod_;
};

/// Monoid with unit and zero; optional nontrivial involution.  Elements
/// are tokens: "0" is the zero, "" the unit, otherwise kind-specific.
class Monoid {
public:
    enum class Kind {
        ZmodMult,   ///< multiplicative monoid of Z/n; tokens are decimal residues
        Signs,      ///< {0, +1, -1}; tokens "1", "-1"
        FreeWords,  ///< free monoid on letters a..z with word-reversal involution
        FreeComm,   ///< free commutative monoid on letters (sorted words)
    };

    static Monoid zmod_mult(Int n) { return Monoid(Kind::ZmodMult, n, 0); }
    static Monoid signs() { return Monoid(Kind::Signs, 0, 0); }
    static Monoid free_words(Int letters) { return Monoid(Kind::FreeWords, 0, letters); }
    static Monoid free_comm(Int letters) { return Monoid(Kind::FreeComm, 0, letters); }

    Kind kind() const { return kind_; }

    std::string name() const {
        switch (kind_) {
            case Kind::ZmodMult: return "ZmodMult:" + std::to_string(mod_);
            case Kind::Signs: return "signs";
            case Kind::FreeWords: return "free:" + std::to_string(letters_);
            case Kind::FreeComm: return "freecomm:" + std::to_string(letters_);
        }
        return "?";
    }

    static std::string zero() { return "0"; }
    static std::string unit() { return "1"; }
    bool is_zero(const std::string& a) const { return a == "0"; }

    bool is_commutative() const { return kind_ != Kind::FreeWords; }

    std::string mul(const std::string& a, const std::string& b) const {
        if (is_zero(a) || is_zero(b)) return zero();
        switch (kind_) {
            case Kind::ZmodMult: {
                Int r = (std::stoll(a) * std::stoll(b)) % mod_;
                return std::to_string(r == 0 ? 0 : r);
            }
            case Kind::Signs: {
                return (a == b) ? unit() : "-1";
            }
            case Kind::FreeWords:
            case Kind::FreeComm: {
                std::string w = word(a) + word(b);
                if (kind_ == Kind::FreeComm) std::sort(w.begin(), w.end());
                return w.empty() ? unit() : w;
            }
        }
        return zero();
    }

    /// Involution: word reversal on free words, identity elsewhere.
    std::string involute(const std::string& a) const {
        if (kind_ == Kind::FreeWords && a != zero() && a != unit()) {
            std::string w(a.rbegin(), a.rend());
            return w;
        }
        return a;
    }

    /// Nonzero elements up to the given word length / all residues.
    std::vector<std::string> enumerate_nonzero(Int bound) const {
        std::vector<std::string> out{unit()};
        switch (kind_) {
            case Kind::ZmodMult:
                for (Int i = 2; i < mod_; ++i) out.push_back(std::to_string(i));
                break;
            case Kind::Signs:
                out.push_back("-1");
                break;
            case Kind::FreeWords:
            case Kind::FreeComm: {
                std::vector<std::string> layer{""};
                for (Int len = 1; len <= bound; ++len) {
                    std::vector<std::string> next;
                    for (const auto& w : layer)
                        for (Int c = 0; c < letters_; ++c) {
                            std::string e = w + static_cast<char>('a' + c);
                            if (kind_ == Kind::FreeComm) {
                                std::string s = e;
                                std::sort(s.begin(), s.end());
                                if (s != e) continue;
                            }
                            next.push_back(e);
                            out.push_back(e);
                        }
                    layer = std::move(next);
                }
                break;
            }
        }
        return out;
    }

    friend bool operator==(const Monoid& a, const Monoid& b) {
        return a.kind_ == b.kind_ && a.mod_ == b.mod_ && a.letters_ == b.letters_;
    }

private:
    Monoid(Kind k, Int m, Int l) : kind_(k), mod_(m), letters_(l) {}

    static std::string word(const std::string& a) { return a == unit() ? "" : a; }

    Kind kind_;
    Int mod_;
    Int letters_;
};

}  // namespace grings
