#ifndef K3LAT_LATTICE_HPP
#define K3LAT_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

/// Coordinates of a divisor class in the basis {h1, h2}.
struct DivisorClass {
    int64_t a = 0;
    int64_t b = 0;
    bool operator==(const DivisorClass& o) const { return a == o.a && b == o.b; }
};

/// Rank-2 lattice with Gram matrix [2g-2, d; d, n]; h1 is the
/// quasi-polarization of genus g and h2 the marked curve class.
struct LatticeK3 {
    int64_t g;  // genus of h1
    int64_t d;  // h1 . h2
    int64_t n;  // h2^2

    LatticeK3(int64_t genus, int64_t dd, int64_t nn);

    int64_t disc() const { return (2 * g - 2) * n - d * d; }

    int64_t dot(const DivisorClass& x, const DivisorClass& y) const {
        return (2 * g - 2) * x.a * y.a + d * (x.a * y.b + x.b * y.a) + n * x.b * y.b;
    }
    int64_t square(const DivisorClass& x) const { return dot(x, x); }

    /// D^2 / 2 + 1; asserts evenness (automatic in an even lattice).
    int64_t genus_of(const DivisorClass& x) const;
};

/// Classes R with R^2 = -2 inside the coefficient box, up to sign, reported
/// with the orientation R.h1 >= 0 (ties: b > 0).  Only degree-bounded
/// representatives (|R.h1| <= 4g) are listed: hyperbolic lattices can carry
/// infinite Pell families of (-2)-classes of unbounded degree, which are
/// irrelevant for the nef screening here.
struct MinusTwoResult {
    std::vector<DivisorClass> classes;
    int64_t box = 0;          // final certified coefficient box
    bool exhausted = false;   // two consecutive doublings added nothing
};
MinusTwoResult minus_two_classes(const LatticeK3& L, int64_t bound_box = 0);

/// Necessary-condition screening for "D big and nef": D^2 > 0, D.h1 > 0 and
/// no (-2)-class R with R.h1 > 0 and R.D < 0 in the certified compact
/// region; the marked class h2 (when h2^2 = -2) is additionally required to
/// meet D non-negatively.  This is a screen, not an ampleness proof.
struct BigNefVerdict {
    bool ok = false;
    std::optional<DivisorClass> witness;
    int64_t box = 0;
};
BigNefVerdict is_big_nef_candidate(const LatticeK3& L, const DivisorClass& D);

struct NLTarget {
    int64_t genus = 0;
    bool primitive = false;
};
/// Genus of the Noether-Lefschetz target lattice <D^2>; requires D^2 > 0.
NLTarget nl_target_genus(const LatticeK3& L, const DivisorClass& D);

/// Brill-Noether generality screen: enumerate decompositions D = M + N with
/// both summands effective candidates and compare max h0(M) h0(N) against
/// h0(D) = 2 + D^2/2.  h0 estimates are Riemann-Roch without h1 corrections
/// (heuristic for irregular classes).
struct BNReport {
    bool general = false;
    int64_t h0_D = 0;
    int64_t best_product = 0;      // 0 when no decomposition exists
    DivisorClass M, N;             // maximizing decomposition, when any
    int64_t h0_M = 0, h0_N = 0;
    bool heuristic = true;
};
BNReport brill_noether_general(const LatticeK3& L, const DivisorClass& D);

/// h0 estimate for an effective candidate class (RR without corrections);
/// nullopt when the class fails the effectivity screen.
std::optional<int64_t> h0_estimate(const LatticeK3& L, const DivisorClass& M);

}  // namespace k3lat

#endif
