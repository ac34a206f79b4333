#ifndef K3LAT_MONOMIAL_HPP
#define K3LAT_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>

namespace k3lat {

/// Hard cap on ring size.  The largest ambient space in the pipelines is
/// PP^44 (45 variables), plus slack for auxiliary variables in elimination
/// and saturation tricks.
constexpr int kMaxVars = 48;

/// Exponent vector with cached total degree.  Fixed capacity keeps terms
/// trivially copyable; rings know their true variable count.
struct Monomial {
    uint16_t deg = 0;
    std::array<uint8_t, kMaxVars> e{};

    static Monomial one() { return Monomial{}; }

    static Monomial var(int i, uint8_t k = 1) {
        Monomial m;
        m.e[i] = k;
        m.deg = k;
        return m;
    }

    bool is_one() const { return deg == 0; }

    bool operator==(const Monomial& o) const {
        return deg == o.deg && e == o.e;
    }

    /// 1 bit per variable: set iff the variable occurs.  a | b mismatch gives
    /// a cheap non-divisibility rejection before the byte loop.
    uint64_t divmask() const {
        uint64_t m = 0;
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i]) m |= (1ULL << (i & 63));
        return m;
    }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = static_cast<uint16_t>(a.deg + b.deg);
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(a.e[i] + b.e[i]);
    return r;
}

/// a / b; caller guarantees divisibility.
inline Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = static_cast<uint16_t>(a.deg - b.deg);
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(a.e[i] - b.e[i]);
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    uint32_t d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        d += r.e[i];
    }
    r.deg = static_cast<uint16_t>(d);
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        uint64_t h = 1469598103934665603ULL;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= m.e[i];
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h ^ (uint64_t(m.deg) << 32));
    }
};

enum class Order : uint8_t {
    GrevLex,  // graded reverse lexicographic
    Lex,      // plain lexicographic
    Elim,     // block order eliminating the first k variables, grevlex blocks
};

/// Graded reverse lex on the first n variables: higher total degree wins;
/// on ties the rightmost differing exponent decides, smaller exponent wins.
inline int cmp_grevlex(const Monomial& a, const Monomial& b, int n) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (int i = n - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

inline int cmp_lex(const Monomial& a, const Monomial& b, int n) {
    for (int i = 0; i < n; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

/// Block grevlex on [lo, hi).
inline int cmp_grevlex_block(const Monomial& a, const Monomial& b, int lo, int hi) {
    uint32_t da = 0, db = 0;
    for (int i = lo; i < hi; ++i) { da += a.e[i]; db += b.e[i]; }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    return 0;
}

/// Returns <0, 0, >0 like strcmp; "greater" means larger in the order.
inline int mono_cmp(const Monomial& a, const Monomial& b, Order ord, int n, int elim_k) {
    switch (ord) {
        case Order::GrevLex: return cmp_grevlex(a, b, n);
        case Order::Lex: return cmp_lex(a, b, n);
        case Order::Elim: {
            int c = cmp_grevlex_block(a, b, 0, elim_k);
            if (c) return c;
            return cmp_grevlex_block(a, b, elim_k, n);
        }
    }
    return 0;
}

}  // namespace k3lat

#endif
