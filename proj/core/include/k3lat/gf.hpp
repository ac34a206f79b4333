#ifndef K3LAT_GF_HPP
#define K3LAT_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace k3lat {

/// Arithmetic in the prime field GF(p) for a word-sized prime p.
///
/// Values are stored as uint32_t in [0, p).  All operations are branch-light
/// wrappers around 64-bit intermediate arithmetic; there is no Montgomery
/// form, which keeps values directly readable in serialized output.
struct FieldSpec {
    uint32_t p = 65521;  // largest 16-bit prime, the default modulus

    explicit FieldSpec(uint32_t prime = 65521) : p(prime) {
        if (prime < 2) throw std::invalid_argument("FieldSpec: modulus must be >= 2");
        if (!is_prime(prime))
            throw std::invalid_argument("FieldSpec: " + std::to_string(prime) + " is not prime");
    }

    static bool is_prime(uint32_t n) {
        if (n < 2) return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t base = a % p, r = 1;
        while (e) {
            if (e & 1) r = (r * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return static_cast<uint32_t>(r);
    }
    /// Multiplicative inverse by extended Euclid; throws on 0.
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("GF(p): inverse of zero");
        int64_t t = 0, newt = 1;
        int64_t r = p, newr = a % p;
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += p;
        return static_cast<uint32_t>(t);
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    /// Reduce a signed integer into [0, p).
    uint32_t from_int(int64_t v) const {
        int64_t m = v % static_cast<int64_t>(p);
        if (m < 0) m += p;
        return static_cast<uint32_t>(m);
    }

    bool operator==(const FieldSpec& o) const { return p == o.p; }
};

}  // namespace k3lat

#endif
