#ifndef K3LAT_UNIVAR_HPP
#define K3LAT_UNIVAR_HPP

#include <cstdint>
#include <vector>

#include "gf.hpp"
#include "rng.hpp"

namespace k3lat {

/// Dense univariate polynomial over GF(p): coefficients low to high, no
/// trailing zeros (empty = zero polynomial).
struct UniPoly {
    std::vector<uint32_t> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

UniPoly uni_add(const FieldSpec& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const FieldSpec& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const FieldSpec& F, const UniPoly& a, const UniPoly& b);
/// Remainder of a mod b (b nonzero).
UniPoly uni_rem(const FieldSpec& F, UniPoly a, const UniPoly& b);
UniPoly uni_gcd(const FieldSpec& F, UniPoly a, UniPoly b);  // monic gcd
/// (base^e) mod m
UniPoly uni_powmod(const FieldSpec& F, UniPoly base, uint64_t e, const UniPoly& m);
uint32_t uni_eval(const FieldSpec& F, const UniPoly& a, uint32_t x);
void uni_make_monic(const FieldSpec& F, UniPoly& a);

/// All roots in GF(p), each listed once, sorted ascending.  Uses gcd with
/// x^p - x to split off the linear factors, then equal-degree splitting.
/// Throws on the zero polynomial.
std::vector<uint32_t> univariate_roots(const FieldSpec& F, const UniPoly& f, Rng& rng);

}  // namespace k3lat

#endif
