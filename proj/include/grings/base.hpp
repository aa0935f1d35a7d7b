#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace grings {

using Int = long long;
using BigInt = mpz_class;
using Rat = mpq_class;

/// Thrown when degrees (index sets) of operands do not line up.
struct degree_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is not available on the given structure
/// (e.g. transpose over a rig without involution).
struct unsupported_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rat rat(Int num, Int den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(BigInt(num), BigInt(den));
    r.canonicalize();
    return r;
}

inline Rat rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline BigInt pow_int(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return rat(1);
    BigInt num = b.get_num(), den = b.get_den();
    if (e < 0) {
        if (num == 0) throw std::domain_error("pow_rat: 0^negative");
        std::swap(num, den);
        e = -e;
    }
    Rat r(pow_int(num, static_cast<unsigned long>(e)), pow_int(den, static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
}

/// p-adic valuation v_p(n) for n != 0.
inline int valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline int valuation(Int n, Int p) { return valuation(BigInt(n), BigInt(p)); }

inline bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Splittable deterministic RNG (splitmix64). All randomness in the
/// project flows from one root seed; children are derived by label so
/// parallel consumers stay reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        return next_u64() % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    Int range(Int lo, Int hi) {
        return lo + static_cast<Int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Derive an independent child stream.
    Rng split(std::uint64_t label) {
        std::uint64_t s = state_ ^ (0x5851f42d4c957f2dULL * (label + 1));
        Rng child(s);
        child.next_u64();
        return child;
    }

    Rng split(const std::string& label) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : label) { h ^= c; h *= 1099511628211ULL; }
        return split(h);
    }

private:
    std::uint64_t state_;
};

}  // namespace grings
